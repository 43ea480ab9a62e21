// Python bindings for the main operations: exact and spectral spanning-tree
// counts, balancing certificates, shape enumeration and lattice bounds.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "gridtrees/balancing.hpp"
#include "gridtrees/exact.hpp"
#include "gridtrees/explorer.hpp"
#include "gridtrees/shape.hpp"
#include "gridtrees/spectral.hpp"
#include "gridtrees/verify.hpp"

namespace py = pybind11;
using namespace gridtrees;

namespace {

using PyCells = std::vector<std::pair<int, int>>;

CellSet to_cellset(const PyCells& cells) {
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (auto [x, y] : cells) out.push_back({x, y});
    return CellSet(std::move(out));
}

PyCells from_cellset(const CellSet& cells) {
    PyCells out;
    out.reserve(cells.cells().size());
    for (const Cell& c : cells.cells()) out.emplace_back(c.x, c.y);
    return out;
}

py::int_ to_py_int(const mpz_class& value) {
    PyObject* obj = PyLong_FromString(value.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

EnumMode parse_mode(const std::string& mode) {
    if (mode == "fixed") return EnumMode::fixed;
    if (mode == "free") return EnumMode::free;
    throw py::value_error("mode must be 'fixed' or 'free'");
}

py::dict certificate_dict(const BalancingCertificate& cert) {
    py::dict out;
    out["original"] = py::make_tuple(cert.A, cert.B);
    out["balanced"] = py::make_tuple(cert.a, cert.b);
    out["t"] = py::make_tuple(to_py_int(cert.t.get_num()), to_py_int(cert.t.get_den()));
    out["linear_term"] = cert.linear_term;
    out["residual_term"] = cert.residual_term;
    out["log_diff_spectral"] = cert.log_diff_spectral;
    out["log_diff_exact"] =
        cert.log_diff_exact ? py::object(py::float_(*cert.log_diff_exact)) : py::none();
    out["closure_residual"] = cert.closure_residual;
    out["closure_budget"] = cert.closure_budget;
    out["closes"] = cert.closes();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spanning-tree counts of grid graphs: exact Kirchhoff determinants, "
              "the eigenvalue product formula, balancing certificates, and "
              "exhaustive shape enumeration";

    m.def(
        "tau_exact",
        [](int rows, int cols) { return to_py_int(tree_count_exact(RectShape{rows, cols})); },
        py::arg("rows"), py::arg("cols"),
        "Exact spanning-tree count of the rows x cols grid");

    m.def(
        "tau_exact_cells",
        [](const PyCells& cells) { return to_py_int(tree_count_exact(to_cellset(cells))); },
        py::arg("cells"), "Exact spanning-tree count of an induced cell set");

    m.def(
        "tau_bruteforce",
        [](const PyCells& cells) {
            return to_py_int(tree_count_bruteforce(induced_graph(to_cellset(cells))));
        },
        py::arg("cells"), "Oracle count by exhaustive edge-subset enumeration");

    m.def(
        "tau_log",
        [](int rows, int cols) {
            LogTau lt = tau_product_log(RectShape{rows, cols});
            return py::make_tuple(lt.log_value, lt.err_bound);
        },
        py::arg("rows"), py::arg("cols"),
        "(log tau, absolute error bound) from the eigenvalue product formula");

    m.def(
        "tau_rounded",
        [](int rows, int cols) { return to_py_int(tau_product_rounded(RectShape{rows, cols})); },
        py::arg("rows"), py::arg("cols"),
        "Spanning-tree count recovered from the product formula with certified rounding");

    m.def(
        "path_spectrum", [](int r) { return path_spectrum(r).eigenvalues; }, py::arg("r"),
        "Laplacian eigenvalues of the path on r vertices, ascending");

    m.def("c_func", &c_func, py::arg("x"), "2 asinh(sin(pi x / 2)) on [0, 1]");
    m.def("c_sum", &c_sum, py::arg("r"), "Sum of c(j/r) over 1 <= j <= r-1");
    m.def("q_eval", &q_eval, py::arg("r"), py::arg("x"),
          "Chebyshev-style recurrence value q_r(x)");
    m.def("q_hyperbolic", &q_hyperbolic, py::arg("r"), py::arg("theta"),
          "sinh(r theta)/sinh(theta)");
    m.def("log_q_hyperbolic", &log_q_hyperbolic, py::arg("r"), py::arg("theta"));
    m.def("g_func", &g_func, py::arg("t"), py::arg("z"),
          "Residual G_t(z) = log((1 - exp(-2 t z)) / (1 - exp(-2 z)))");
    m.def("h_func", &h_func, py::arg("t"), py::arg("z"),
          "H_t(z) = (t - 1) z + G_t(z) = log(sinh(t z)/sinh(z))");

    m.def(
        "riemann_average",
        [](const std::function<double(double)>& f, int r) { return riemann_average(f, r); },
        py::arg("f"), py::arg("r"), "(1/r) sum of f(j/r) over 1 <= j <= r-1");
    m.def("min_kernel_average", &min_kernel_average, py::arg("u"), py::arg("r"),
          "(1/r) sum of min(j/r, u), closed form");
    m.def(
        "matching_indices",
        [](long a, long b) { return matching_indices(a, b); }, py::arg("short_count"),
        py::arg("long_count"), "k_j = floor(j * b / a) for 1 <= j <= a-1");
    m.def(
        "residual_gamma",
        [](long a, long b, long t_num, long t_den) {
            mpq_class t(t_num, t_den);
            t.canonicalize();
            return residual_gamma(a, b, t);
        },
        py::arg("side_a"), py::arg("side_b"), py::arg("t_num"), py::arg("t_den") = 1);

    m.def(
        "balancing_certificate",
        [](long rows, long cols, long rows2, long cols2) {
            return certificate_dict(balancing_certificate(rows, cols, rows2, cols2));
        },
        py::arg("rows"), py::arg("cols"), py::arg("rows2"), py::arg("cols2"),
        "Linear + residual decomposition of log(tau(rows2,cols2)/tau(rows,cols))");

    m.def(
        "enumerate_shapes",
        [](int area, const std::string& mode) {
            std::vector<PyCells> out;
            enumerate_shapes(area, parse_mode(mode),
                             [&out](const CellSet& shape) { out.push_back(from_cellset(shape)); });
            return out;
        },
        py::arg("area"), py::arg("mode") = "fixed",
        "All connected shapes of the given area, canonical translation");

    m.def(
        "count_shapes",
        [](int area, const std::string& mode) { return count_shapes(area, parse_mode(mode)); },
        py::arg("area"), py::arg("mode") = "fixed");

    m.def(
        "explore",
        [](int n, const std::string& mode, bool allow_big, int workers) {
            ExploreOptions options;
            options.mode = parse_mode(mode);
            options.allow_big = allow_big;
            options.workers = workers;
            ExplorationReport report = explore_conjecture(n, options);
            py::dict out;
            out["n"] = report.n;
            out["mode"] = mode;
            out["exhaustive"] = report.exhaustive;
            out["shapes_examined"] = report.shapes_examined;
            out["square_tau"] = to_py_int(report.square_tau);
            out["max_tau"] = to_py_int(report.max_tau);
            py::list argmax;
            for (const CellSet& shape : report.argmax_shapes) {
                argmax.append(from_cellset(shape));
            }
            out["argmax"] = argmax;
            py::list counterexamples;
            for (const CellSet& shape : report.counterexamples) {
                counterexamples.append(from_cellset(shape));
            }
            out["counterexamples"] = counterexamples;
            out["conjecture_holds"] = report.conjecture_holds;
            return out;
        },
        py::arg("n"), py::arg("mode") = "fixed", py::arg("allow_big") = false,
        py::arg("workers") = 1,
        "Exhaustive max-tau search over connected shapes of area n^2");

    m.def(
        "bounds_report",
        [](const PyCells& cells) {
            BoundsReport report = bounds_report(to_cellset(cells));
            py::dict out;
            out["area"] = report.area;
            out["n"] = report.n;
            out["edges"] = report.edges;
            out["boundary"] = report.boundary;
            out["occupied_cols"] = report.occupied_cols;
            out["occupied_rows"] = report.occupied_rows;
            out["cycle_rank"] = report.cycle_rank;
            out["is_square_shape"] = report.is_square_shape;
            out["identity_holds"] = report.identity_holds;
            out["edge_bound_holds"] = report.edge_bound_holds;
            out["chain_holds"] = report.chain_holds;
            out["rank_bound_holds"] = report.rank_bound_holds;
            out["equality_is_square"] = report.equality_is_square;
            out["all_hold"] = report.all_hold();
            return out;
        },
        py::arg("cells"), "Edge, boundary and cycle-rank bounds of a connected shape");

    m.def(
        "boundary_incidences",
        [](const PyCells& cells) { return boundary_incidences(to_cellset(cells)); },
        py::arg("cells"));

    m.def(
        "is_connected", [](const PyCells& cells) { return is_connected(to_cellset(cells)); },
        py::arg("cells"));

    m.def(
        "canonicalize",
        [](const PyCells& cells, const std::string& mode) {
            CanonMode canon = mode == "free" ? CanonMode::dihedral_min
                                             : CanonMode::translation_only;
            if (mode != "free" && mode != "translation") {
                throw py::value_error("mode must be 'translation' or 'free'");
            }
            return from_cellset(canonicalize(to_cellset(cells), canon));
        },
        py::arg("cells"), py::arg("mode") = "translation");

    m.def(
        "parse_cells",
        [](const std::string& text) { return from_cellset(parse_cells(text)); },
        py::arg("text"), "Parse a shape file (art or coordinate format)");

    m.def(
        "serialize_cells",
        [](const PyCells& cells, const std::string& format) {
            ShapeFormat fmt = format == "coords" ? ShapeFormat::coords : ShapeFormat::art;
            if (format != "coords" && format != "art") {
                throw py::value_error("format must be 'art' or 'coords'");
            }
            return serialize_cells(to_cellset(cells), fmt);
        },
        py::arg("cells"), py::arg("format") = "art");

    m.def(
        "lemma_checks",
        []() {
            py::list out;
            for (const CheckResult& r : lemma_suite()) {
                py::dict check;
                check["name"] = r.name;
                check["range"] = r.range;
                check["observed"] = r.observed;
                check["threshold"] = r.threshold;
                check["pass"] = r.pass;
                out.append(check);
            }
            return out;
        },
        "Run the closed-form identity and inequality suite");

    m.attr("__version__") = "0.1.0";
}
