// gridtrees command line: exact and spectral spanning-tree counts, identity
// verification sweeps, exhaustive shape exploration, and lattice bounds.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 mathematical check failed
// or counterexample found, 3 non-exhaustive abort (budget exceeded).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "gridtrees/balancing.hpp"
#include "gridtrees/exact.hpp"
#include "gridtrees/explorer.hpp"
#include "gridtrees/shape.hpp"
#include "gridtrees/spectral.hpp"
#include "gridtrees/verify.hpp"

using json = nlohmann::json;
using namespace gridtrees;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode {
    kExitOk = 0,
    kExitUsage = 1,
    kExitCheckFailed = 2,
    kExitNonExhaustive = 3,
};

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string rect_label(const RectShape& shape) {
    return std::to_string(shape.rows) + "x" + std::to_string(shape.cols);
}

// art serialization on a single line, rows joined by '/'
std::string serialize_inline(const CellSet& cells) {
    std::string art = serialize_cells(cells, ShapeFormat::art);
    std::string out;
    for (char ch : art) {
        if (ch == '\n') {
            out += '/';
        } else {
            out += ch;
        }
    }
    if (!out.empty() && out.back() == '/') out.pop_back();
    return out;
}

RectShape parse_rect_arg(const std::string& text) {
    auto sep = text.find('x');
    if (sep == std::string::npos) sep = text.find('X');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= text.size()) {
        throw CLI::ValidationError("--rect", "expected LxM, e.g. 3x7");
    }
    int rows = 0, cols = 0;
    try {
        rows = std::stoi(text.substr(0, sep));
        cols = std::stoi(text.substr(sep + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--rect", "expected integer sides, e.g. 3x7");
    }
    if (rows < 1 || cols < 1) {
        throw CLI::ValidationError("--rect", "sides must be >= 1");
    }
    return {rows, cols};
}

CellSet load_cells(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_cells(buffer.str());
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    out << text;
    return kExitOk;
}

struct CommonArgs {
    std::string format = "text";
    std::string out_path;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_workers = true) {
    cmd->add_option("--format", args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", args.out_path, "Write output to a file instead of stdout");
    if (with_workers) {
        if (args.workers < 1) args.workers = 1;
        cmd->add_option("--workers", args.workers, "Worker thread count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }
}

json common_config(const std::string& command, const CommonArgs& args) {
    json config;
    config["command"] = command;
    config["format"] = args.format;
    config["out"] = args.out_path.empty() ? json() : json(args.out_path);
    config["workers"] = args.workers;
    config["version"] = kVersion;
    return config;
}

// ---------------------------------------------------------------- tau ----

struct TauArgs {
    std::string rect;
    std::string cells_path;
    std::string method = "exact";
    CommonArgs common;
};

int run_tau(const TauArgs& args) {
    std::optional<RectShape> rect;
    std::optional<CellSet> cells;
    std::string shape_label;

    if (!args.rect.empty()) {
        rect = parse_rect_arg(args.rect);
        shape_label = rect_label(*rect);
    } else {
        cells = load_cells(args.cells_path);
        shape_label = args.cells_path;
        rect = as_rectangle(*cells);
    }

    const bool want_exact = args.method == "exact" || args.method == "both";
    const bool want_spectral = args.method == "spectral" || args.method == "both";
    if (want_spectral && !rect) {
        std::cerr << "error: the spectral method needs a full rectangle\n";
        return kExitUsage;
    }

    std::optional<TreeCount> tau;
    if (want_exact) {
        tau = cells ? tree_count_exact(*cells) : tree_count_exact(*rect);
    }
    std::optional<LogTau> log_tau;
    if (want_spectral) log_tau = tau_product_log(*rect);

    bool agree = true;
    if (tau && log_tau) {
        agree = *tau > 0 &&
                std::fabs(log_tau->log_value - log_mpz(*tau)) <=
                    log_tau->err_bound + kLogMpzErrorBound;
    }

    json config = common_config("tau", args.common);
    config["shape"] = shape_label;
    config["method"] = args.method;

    std::string text;
    if (args.common.format == "json") {
        json out;
        out["config"] = config;
        if (tau) out["tau"] = tau->get_str();
        if (log_tau) {
            out["log_tau"] = log_tau->log_value;
            out["err_bound"] = log_tau->err_bound;
        }
        if (tau && log_tau) {
            out["agree"] = agree;
            out["agree_tolerance"] = log_tau->err_bound + kLogMpzErrorBound;
        }
        text = out.dump(2) + "\n";
    } else if (args.common.format == "csv") {
        text = "shape,method,tau,log_tau,err_bound,agree\n";
        text += shape_label + "," + args.method + ",";
        text += (tau ? tau->get_str() : "") + std::string(",");
        text += (log_tau ? format_double(log_tau->log_value) : "") + std::string(",");
        text += (log_tau ? format_double(log_tau->err_bound) : "") + std::string(",");
        text += (tau && log_tau ? (agree ? "true" : "false") : "") + std::string("\n");
    } else {
        text = "shape = " + shape_label + "\n";
        if (tau) text += "tau = " + tau->get_str() + "\n";
        if (log_tau) {
            text += "log_tau = " + format_double(log_tau->log_value) + "\n";
            text += "err_bound = " + format_double(log_tau->err_bound) + "\n";
        }
        if (tau && log_tau) text += std::string("agree = ") + (agree ? "true" : "false") + "\n";
    }

    int emit_code = emit(text, args.common.out_path);
    if (emit_code != kExitOk) return emit_code;
    return agree ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------- verify ----

struct VerifyArgs {
    long max_area = 144;
    int max_r = 0;  // 0 keeps the built-in per-check ranges
    CommonArgs common;
};

int run_verify_lemmas(const VerifyArgs& args) {
    LemmaSuiteConfig config;
    if (args.max_r > 0) {
        config.ladder_r_max = args.max_r;
        config.scaled_sum_r_max = args.max_r;
    }
    std::vector<CheckResult> results = lemma_suite(config);
    bool pass = all_pass(results);

    json config_json = common_config("verify lemmas", args.common);
    config_json["max_r"] = args.max_r;

    std::string text;
    if (args.common.format == "json") {
        json out;
        out["config"] = config_json;
        out["checks"] = json::array();
        for (const CheckResult& r : results) {
            out["checks"].push_back({{"name", r.name},
                                     {"range", r.range},
                                     {"observed", r.observed},
                                     {"threshold", r.threshold},
                                     {"pass", r.pass}});
        }
        out["all_pass"] = pass;
        text = out.dump(2) + "\n";
    } else if (args.common.format == "csv") {
        text = "check,range,observed,threshold,pass\n";
        for (const CheckResult& r : results) {
            text += r.name + "," + r.range + "," + format_double(r.observed) + "," +
                    format_double(r.threshold) + "," + (r.pass ? "true" : "false") + "\n";
        }
    } else {
        for (const CheckResult& r : results) {
            text += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.name + " (" + r.range +
                    "): observed " + format_double(r.observed) + ", threshold " +
                    format_double(r.threshold) + "\n";
        }
        text += std::string("all checks: ") + (pass ? "pass" : "FAIL") + "\n";
    }

    int emit_code = emit(text, args.common.out_path);
    if (emit_code != kExitOk) return emit_code;
    return pass ? kExitOk : kExitCheckFailed;
}

int run_verify_balancing(const VerifyArgs& args) {
    BalancingSweep sweep = balancing_sweep(args.max_area, args.common.workers);

    json config_json = common_config("verify balancing", args.common);
    config_json["max_area"] = args.max_area;

    std::string text;
    if (args.common.format == "json") {
        json out;
        out["config"] = config_json;
        out["certificates"] = json::array();
        for (const SweepEntry& entry : sweep.entries) {
            const BalancingCertificate& cert = entry.cert;
            json row;
            row["area"] = entry.area;
            row["original"] = {cert.A, cert.B};
            row["balanced"] = {cert.a, cert.b};
            row["t"] = cert.t.get_str();
            row["linear_term"] = cert.linear_term;
            row["residual_term"] = cert.residual_term;
            row["log_diff_spectral"] = cert.log_diff_spectral;
            if (cert.log_diff_exact) row["log_diff_exact"] = *cert.log_diff_exact;
            row["closure_residual"] = cert.closure_residual;
            row["closure_budget"] = cert.closure_budget;
            row["tau_original"] = entry.tau_original.get_str();
            row["tau_balanced"] = entry.tau_balanced.get_str();
            row["pass"] = entry.pass();
            out["certificates"].push_back(row);
        }
        out["certificate_count"] = sweep.entries.size();
        out["all_pass"] = sweep.all_pass;
        text = out.dump(2) + "\n";
    } else if (args.common.format == "csv") {
        text = "area,A,B,a,b,t,linear_term,residual_term,log_diff_spectral,log_diff_exact,"
               "closure_residual,closure_budget,tau_original,tau_balanced,pass\n";
        for (const SweepEntry& entry : sweep.entries) {
            const BalancingCertificate& cert = entry.cert;
            text += std::to_string(entry.area) + ",";
            text += std::to_string(cert.A) + "," + std::to_string(cert.B) + ",";
            text += std::to_string(cert.a) + "," + std::to_string(cert.b) + ",";
            text += cert.t.get_str() + ",";
            text += format_double(cert.linear_term) + ",";
            text += format_double(cert.residual_term) + ",";
            text += format_double(cert.log_diff_spectral) + ",";
            text += (cert.log_diff_exact ? format_double(*cert.log_diff_exact) : "") +
                    std::string(",");
            text += format_double(cert.closure_residual) + ",";
            text += format_double(cert.closure_budget) + ",";
            text += entry.tau_original.get_str() + "," + entry.tau_balanced.get_str() + ",";
            text += std::string(entry.pass() ? "true" : "false") + "\n";
        }
    } else {
        long failures = 0;
        for (const SweepEntry& entry : sweep.entries) {
            if (!entry.pass()) {
                ++failures;
                text += "FAIL  area " + std::to_string(entry.area) + ": (" +
                        std::to_string(entry.cert.A) + "," + std::to_string(entry.cert.B) +
                        ") vs (" + std::to_string(entry.cert.a) + "," +
                        std::to_string(entry.cert.b) + ")\n";
            }
        }
        text += "areas <= " + std::to_string(args.max_area) + ": " +
                std::to_string(sweep.entries.size()) + " certificates, " +
                std::to_string(failures) + " failures\n";
        text += std::string("all certificates: ") + (sweep.all_pass ? "pass" : "FAIL") + "\n";
    }

    int emit_code = emit(text, args.common.out_path);
    if (emit_code != kExitOk) return emit_code;
    return sweep.all_pass ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------ explore ----

struct ExploreArgs {
    int n = 0;
    std::string mode = "fixed";
    bool allow_big = false;
    std::string backend = "exact";
    CommonArgs common;
};

int run_explore(const ExploreArgs& args) {
    ExploreOptions options;
    options.mode = args.mode == "free" ? EnumMode::free : EnumMode::fixed;
    options.backend = args.backend == "spectral" ? TauBackend::spectral_crosscheck
                                                 : TauBackend::exact;
    options.workers = args.common.workers;
    options.allow_big = args.allow_big;
    if (static_cast<long>(args.n) * args.n > options.area_budget) {
        options.progress = [](unsigned long done, unsigned long total) {
            std::cerr << "progress: " << done << "/" << total << " subtrees\n";
        };
    }

    ExplorationReport report = explore_conjecture(args.n, options);
    if (!report.exhaustive) {
        std::cerr << "non-exhaustive: area " << static_cast<long>(args.n) * args.n
                  << " exceeds the enumeration budget " << options.area_budget
                  << " (use --allow-big to override)\n";
    }

    json config = common_config("explore", args.common);
    config["n"] = args.n;
    config["mode"] = args.mode;
    config["allow_big"] = args.allow_big;
    config["backend"] = args.backend;
    config["area_budget"] = options.area_budget;

    std::string text;
    if (args.common.format == "json") {
        json out;
        out["config"] = config;
        out["exhaustive"] = report.exhaustive;
        out["shapes_examined"] = report.shapes_examined;
        out["square_tau"] = report.square_tau.get_str();
        out["max_tau"] = report.max_tau.get_str();
        out["argmax"] = json::array();
        for (const CellSet& shape : report.argmax_shapes) {
            out["argmax"].push_back(serialize_inline(shape));
        }
        out["counterexamples"] = json::array();
        for (const CellSet& shape : report.counterexamples) {
            out["counterexamples"].push_back(serialize_inline(shape));
        }
        out["conjecture_holds"] = report.conjecture_holds;
        if (options.backend == TauBackend::spectral_crosscheck) {
            out["spectral_crosschecks"] = report.spectral_crosschecks;
            out["spectral_crosscheck_failures"] = report.spectral_crosscheck_failures;
        }
        text = out.dump(2) + "\n";
    } else if (args.common.format == "csv") {
        text = "n,mode,shapes_examined,tau_max_decimal,shape_serialized\n";
        for (const CellSet& shape : report.argmax_shapes) {
            text += std::to_string(report.n) + "," + args.mode + "," +
                    std::to_string(report.shapes_examined) + "," + report.max_tau.get_str() +
                    "," + serialize_inline(shape) + "\n";
        }
        for (const CellSet& shape : report.counterexamples) {
            text += std::to_string(report.n) + "," + args.mode + "," +
                    std::to_string(report.shapes_examined) + "," +
                    tree_count_exact(shape).get_str() + "," + serialize_inline(shape) + "\n";
        }
    } else {
        text += "n = " + std::to_string(report.n) + " (area " +
                std::to_string(static_cast<long>(report.n) * report.n) + "), mode " +
                args.mode + "\n";
        text += "exhaustive = " + std::string(report.exhaustive ? "true" : "false") + "\n";
        text += "shapes_examined = " + std::to_string(report.shapes_examined) + "\n";
        text += "square_tau = " + report.square_tau.get_str() + "\n";
        text += "max_tau = " + report.max_tau.get_str() + "\n";
        for (const CellSet& shape : report.argmax_shapes) {
            text += "maximizer: " + serialize_inline(shape) + "\n";
        }
        for (const CellSet& shape : report.counterexamples) {
            text += "counterexample: " + serialize_inline(shape) + "\n";
        }
        text += "conjecture_holds = " +
                std::string(report.conjecture_holds ? "true" : "false") + "\n";
    }

    int emit_code = emit(text, args.common.out_path);
    if (emit_code != kExitOk) return emit_code;
    if (!report.exhaustive) return kExitNonExhaustive;
    if (!report.conjecture_holds || report.spectral_crosscheck_failures > 0) {
        return kExitCheckFailed;
    }
    return kExitOk;
}

// ------------------------------------------------------------- bounds ----

struct BoundsArgs {
    std::string cells_path;
    CommonArgs common;
};

int run_bounds(const BoundsArgs& args) {
    CellSet cells = load_cells(args.cells_path);
    if (!is_connected(cells)) {
        std::cerr << "error: shape is disconnected\n";
        return kExitCheckFailed;
    }
    BoundsReport report = bounds_report(cells);

    json config = common_config("bounds", args.common);
    config["cells"] = args.cells_path;

    std::string text;
    if (args.common.format == "json") {
        json out;
        out["config"] = config;
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
        text = out.dump(2) + "\n";
    } else if (args.common.format == "csv") {
        text = "area,n,edges,boundary,occupied_cols,occupied_rows,cycle_rank,identity_holds,"
               "edge_bound_holds,chain_holds,rank_bound_holds,equality_is_square,all_hold\n";
        text += std::to_string(report.area) + "," + std::to_string(report.n) + "," +
                std::to_string(report.edges) + "," + std::to_string(report.boundary) + "," +
                std::to_string(report.occupied_cols) + "," +
                std::to_string(report.occupied_rows) + "," +
                std::to_string(report.cycle_rank) + "," +
                (report.identity_holds ? "true" : "false") + std::string(",") +
                (report.edge_bound_holds ? "true" : "false") + std::string(",") +
                (report.chain_holds ? "true" : "false") + std::string(",") +
                (report.rank_bound_holds ? "true" : "false") + std::string(",") +
                (report.equality_is_square ? "true" : "false") + std::string(",") +
                (report.all_hold() ? "true" : "false") + "\n";
    } else {
        text += "area = " + std::to_string(report.area) + "\n";
        if (report.n > 0) text += "n = " + std::to_string(report.n) + "\n";
        text += "edges = " + std::to_string(report.edges) + "\n";
        text += "boundary_incidences = " + std::to_string(report.boundary) + "\n";
        text += "occupied_cols = " + std::to_string(report.occupied_cols) + "\n";
        text += "occupied_rows = " + std::to_string(report.occupied_rows) + "\n";
        text += "cycle_rank = " + std::to_string(report.cycle_rank) + "\n";
        text += "identity 4|S| = 2E + b: " +
                std::string(report.identity_holds ? "holds" : "VIOLATED") + "\n";
        if (report.n > 0) {
            text += "edge bound E <= 2n(n-1): " +
                    std::string(report.edge_bound_holds ? "holds" : "VIOLATED") + "\n";
            text += "boundary chain b >= 2w+2h >= 4sqrt(wh) >= 4n: " +
                    std::string(report.chain_holds ? "holds" : "VIOLATED") + "\n";
            text += "rank bound rho <= (n-1)^2: " +
                    std::string(report.rank_bound_holds ? "holds" : "VIOLATED") + "\n";
            text += "edge-bound equality only at the square: " +
                    std::string(report.equality_is_square ? "holds" : "VIOLATED") + "\n";
            text += "square shape: " +
                    std::string(report.is_square_shape ? "true" : "false") + "\n";
        }
    }

    int emit_code = emit(text, args.common.out_path);
    if (emit_code != kExitOk) return emit_code;
    return report.all_hold() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spanning trees of grid graphs: exact counts, spectral identities, "
                 "balancing certificates, exhaustive shape search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    TauArgs tau_args;
    CLI::App* tau_cmd = app.add_subcommand("tau", "Count spanning trees of one shape");
    auto* rect_opt = tau_cmd->add_option("--rect", tau_args.rect, "Rectangle sides LxM");
    auto* cells_opt = tau_cmd->add_option("--cells", tau_args.cells_path, "Shape file");
    rect_opt->excludes(cells_opt);
    tau_cmd->add_option("--method", tau_args.method, "exact, spectral or both")
        ->check(CLI::IsMember({"exact", "spectral", "both"}))
        ->capture_default_str();
    add_common(tau_cmd, tau_args.common, false);

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run verification sweeps");
    verify_cmd->require_subcommand(1);
    CLI::App* lemmas_cmd =
        verify_cmd->add_subcommand("lemmas", "Closed-form identity and inequality checks");
    lemmas_cmd->add_option("--max-r", verify_args.max_r,
                           "Override the Riemann-ladder and scaled-sum ranges");
    add_common(lemmas_cmd, verify_args.common);
    CLI::App* balancing_cmd = verify_cmd->add_subcommand(
        "balancing", "Certificates for every factor-pair comparison per area");
    balancing_cmd->add_option("--max-area", verify_args.max_area, "Largest area to sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(balancing_cmd, verify_args.common);

    ExploreArgs explore_args;
    CLI::App* explore_cmd =
        app.add_subcommand("explore", "Exhaustive max-tau search over shapes of area n^2");
    explore_cmd->add_option("--n", explore_args.n, "Square side length")
        ->required()
        ->check(CLI::PositiveNumber);
    explore_cmd->add_option("--mode", explore_args.mode, "fixed or free enumeration")
        ->check(CLI::IsMember({"fixed", "free"}))
        ->capture_default_str();
    explore_cmd->add_flag("--allow-big", explore_args.allow_big,
                          "Enumerate beyond the default area budget");
    explore_cmd->add_option("--backend", explore_args.backend,
                            "exact, or spectral to cross-check rectangles")
        ->check(CLI::IsMember({"exact", "spectral"}))
        ->capture_default_str();
    add_common(explore_cmd, explore_args.common);

    BoundsArgs bounds_args;
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "Edge, boundary and cycle-rank bounds of a shape");
    bounds_cmd->add_option("--cells", bounds_args.cells_path, "Shape file")->required();
    add_common(bounds_cmd, bounds_args.common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (tau_cmd->parsed()) {
            if (tau_args.rect.empty() && tau_args.cells_path.empty()) {
                std::cerr << "error: tau needs --rect or --cells\n";
                return kExitUsage;
            }
            return run_tau(tau_args);
        }
        if (verify_cmd->parsed()) {
            if (lemmas_cmd->parsed()) return run_verify_lemmas(verify_args);
            return run_verify_balancing(verify_args);
        }
        if (explore_cmd->parsed()) return run_explore(explore_args);
        if (bounds_cmd->parsed()) return run_bounds(bounds_args);
    } catch (const ShapeParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
