#include "gridtrees/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>

#include "gridtrees/balancing.hpp"
#include "gridtrees/parallel.hpp"
#include "gridtrees/spectral.hpp"

namespace gridtrees {

namespace {

// Redelmeier growth. The root cell is the (y, x)-minimum of every shape:
// the board is the half plane y > 0 plus the ray y == 0, x >= 0, so each
// translation class appears exactly once.
class Enumerator {
public:
    Enumerator(int area, std::function<void(std::vector<Cell>&)> emit)
        : area_(area),
          width_(2 * area - 1),
          emit_(std::move(emit)),
          status_(static_cast<size_t>(width_) * area, 0) {}

    struct Snapshot {
        std::vector<uint8_t> status;
        std::vector<int> frontier;
        std::vector<int> occupied;
        int resume_index = 0;
    };

    // split_depth == 0 enumerates everything; otherwise subtrees rooted at
    // that depth are captured into `tasks` instead of being walked.
    void run(int split_depth, std::vector<Snapshot>* tasks) {
        split_depth_ = split_depth;
        tasks_ = tasks;
        int origin = cell_index(0, 0);
        status_[origin] = 1;
        frontier_.push_back(origin);
        descend(0);
        status_[origin] = 0;
        frontier_.clear();
    }

    void resume(const Snapshot& snap) {
        split_depth_ = 0;
        tasks_ = nullptr;
        status_ = snap.status;
        frontier_ = snap.frontier;
        occupied_ = snap.occupied;
        expand_and_descend(snap.resume_index);
        occupied_.pop_back();
    }

private:
    int cell_index(int x, int y) const { return y * width_ + (x + area_ - 1); }
    int cell_x(int index) const { return index % width_ - (area_ - 1); }
    int cell_y(int index) const { return index / width_; }

    bool allowed(int x, int y) const {
        if (y < 0 || y >= area_) return false;
        if (x <= -area_ || x >= area_) return false;
        return y > 0 || x >= 0;
    }

    void descend(int first) {
        for (int i = first; i < static_cast<int>(frontier_.size()); ++i) {
            occupied_.push_back(frontier_[i]);
            if (static_cast<int>(occupied_.size()) == area_) {
                cells_.clear();
                for (int idx : occupied_) cells_.push_back({cell_x(idx), cell_y(idx)});
                emit_(cells_);
            } else if (split_depth_ > 0 &&
                       static_cast<int>(occupied_.size()) == split_depth_) {
                tasks_->push_back({status_, frontier_, occupied_, i + 1});
            } else {
                expand_and_descend(i + 1);
            }
            occupied_.pop_back();
        }
    }

    void expand_and_descend(int next_index) {
        const int current = occupied_.back();
        const int x = cell_x(current);
        const int y = cell_y(current);
        const int base = static_cast<int>(frontier_.size());

        auto push = [this](int cx, int cy) {
            if (!allowed(cx, cy)) return;
            int idx = cell_index(cx, cy);
            if (status_[idx] == 0) {
                status_[idx] = 1;
                frontier_.push_back(idx);
            }
        };
        push(x + 1, y);
        push(x - 1, y);
        push(x, y + 1);
        push(x, y - 1);

        descend(next_index);

        for (int j = base; j < static_cast<int>(frontier_.size()); ++j) {
            status_[frontier_[j]] = 0;
        }
        frontier_.resize(base);
    }

    const int area_;
    const int width_;
    std::function<void(std::vector<Cell>&)> emit_;
    std::vector<uint8_t> status_;
    std::vector<int> frontier_;
    std::vector<int> occupied_;
    std::vector<Cell> cells_;
    int split_depth_ = 0;
    std::vector<Snapshot>* tasks_ = nullptr;
};

bool is_free_canonical(const CellSet& shape) {
    for (const CellSet& image : dihedral_images(shape)) {
        if (image < shape) return false;
    }
    return true;
}

int default_split_depth(int area) {
    if (area >= 10) return 5;
    if (area >= 6) return 4;
    return 0;
}

// Fraction-free elimination over machine integers. Intermediate entries are
// minors of the Laplacian minor, so for dimension <= 16 they stay below
// sqrt(20)^16 < 2^35 and the cross products fit comfortably in 128 bits.
long small_tree_count(const GridGraph& graph) {
    const int n = graph.size() - 1;
    int64_t m[16][16] = {};
    for (int v = 1; v <= n; ++v) {
        m[v - 1][v - 1] = graph.degree[v];
        for (int i = 0; i < graph.degree[v]; ++i) {
            int u = graph.adj[v][i];
            if (u >= 1) m[v - 1][u - 1] = -1;
        }
    }
    int sign = 1;
    int64_t prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            // cannot happen for connected shapes (the minor is positive
            // definite); kept for safety on arbitrary input
            int pivot_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (m[i][k] != 0) {
                    pivot_row = i;
                    break;
                }
            }
            if (pivot_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m[k][j], m[pivot_row][j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                __int128 num = static_cast<__int128>(m[i][j]) * m[k][k] -
                               static_cast<__int128>(m[i][k]) * m[k][j];
                m[i][j] = static_cast<int64_t>(num / prev);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return static_cast<long>(sign * m[n - 1][n - 1]);
}

TreeCount shape_tau(const CellSet& cells) {
    GridGraph graph = induced_graph(cells);
    if (graph.size() == 1) return 1;
    if (!is_connected(graph)) return 0;
    if (graph.size() <= 17) return TreeCount(small_tree_count(graph));
    return tree_count_exact(graph);
}

}  // namespace

void enumerate_shapes(int area, EnumMode mode,
                      const std::function<void(const CellSet&)>& yield) {
    if (area < 1) throw std::invalid_argument("enumerate_shapes: area must be >= 1");
    auto emit = [&](std::vector<Cell>& cells) {
        CellSet shape(cells);
        if (mode == EnumMode::free && !is_free_canonical(shape)) return;
        yield(shape);
    };
    Enumerator e(area, emit);
    e.run(0, nullptr);
}

unsigned long count_shapes(int area, EnumMode mode) {
    unsigned long count = 0;
    enumerate_shapes(area, mode, [&count](const CellSet&) { ++count; });
    return count;
}

long boundary_incidences(const CellSet& cells) {
    long count = 0;
    for (const Cell& c : cells.cells()) {
        if (!cells.contains({c.x + 1, c.y})) ++count;
        if (!cells.contains({c.x - 1, c.y})) ++count;
        if (!cells.contains({c.x, c.y + 1})) ++count;
        if (!cells.contains({c.x, c.y - 1})) ++count;
    }
    return count;
}

BoundsReport bounds_report(const CellSet& cells) {
    if (!is_connected(cells)) {
        throw std::invalid_argument("bounds_report: shape must be connected");
    }
    GridGraph graph = induced_graph(cells);

    BoundsReport report;
    report.area = cells.size();
    report.edges = graph.edges;
    report.boundary = boundary_incidences(cells);
    report.occupied_cols = cells.occupied_cols();
    report.occupied_rows = cells.occupied_rows();
    report.cycle_rank = report.edges - report.area + 1;
    report.identity_holds = 4 * report.area == 2 * report.edges + report.boundary;

    long root = std::lround(std::sqrt(static_cast<double>(report.area)));
    while (root * root > report.area) --root;
    while ((root + 1) * (root + 1) <= report.area) ++root;
    if (root * root != report.area) return report;  // square bounds do not apply

    const long n = root;
    report.n = n;
    report.is_square_shape =
        cells.width() == n && cells.height() == n && report.area == n * n;
    report.edge_bound_holds = report.edges <= 2 * n * (n - 1);
    const long w = report.occupied_cols;
    const long h = report.occupied_rows;
    report.chain_holds = report.boundary >= 2 * w + 2 * h &&
                         (2 * w + 2 * h) * (2 * w + 2 * h) >= 16 * w * h && w * h >= n * n;
    report.rank_bound_holds = report.cycle_rank <= (n - 1) * (n - 1);
    report.equality_is_square =
        report.edges < 2 * n * (n - 1) || report.is_square_shape;
    return report;
}

ExplorationReport explore_conjecture(int n, const ExploreOptions& options) {
    if (n < 1) throw std::invalid_argument("explore_conjecture: n must be >= 1");
    const long area = static_cast<long>(n) * n;

    ExplorationReport report;
    report.n = n;
    report.mode = options.mode;
    report.square_tau = tree_count_exact(RectShape{n, n});
    report.max_tau = 0;

    if (area > options.area_budget && !options.allow_big) {
        report.exhaustive = false;
        return report;
    }

    struct Partial {
        unsigned long count = 0;
        TreeCount max_tau = 0;
        std::vector<CellSet> argmax;
        std::vector<CellSet> counterexamples;
        unsigned long crosschecks = 0;
        unsigned long crosscheck_failures = 0;
    };

    const TreeCount& square_tau = report.square_tau;
    const bool crosscheck = options.backend == TauBackend::spectral_crosscheck;

    auto consume = [&](Partial& out, const CellSet& shape) {
        if (options.mode == EnumMode::free && !is_free_canonical(shape)) return;
        ++out.count;
        TreeCount tau = shape_tau(shape);
        if (crosscheck) {
            if (auto rect = as_rectangle(shape)) {
                ++out.crosschecks;
                LogTau lt = tau_product_log(*rect);
                double gap = std::fabs(lt.log_value - log_mpz(tau));
                if (gap > lt.err_bound + kLogMpzErrorBound) ++out.crosscheck_failures;
            }
        }
        if (tau > out.max_tau) {
            out.max_tau = tau;
            out.argmax.assign(1, shape);
        } else if (tau == out.max_tau) {
            out.argmax.push_back(shape);
        }
        if (tau > square_tau) out.counterexamples.push_back(shape);
    };

    const int split_depth = default_split_depth(static_cast<int>(area));
    std::vector<Partial> partials;

    if (split_depth == 0 || area == 1) {
        partials.resize(1);
        auto emit = [&](std::vector<Cell>& cells) { consume(partials[0], CellSet(cells)); };
        Enumerator e(static_cast<int>(area), emit);
        e.run(0, nullptr);
    } else {
        // snapshot the search tree at a fixed depth; the task list and the
        // per-task results do not depend on the worker count
        std::vector<Enumerator::Snapshot> tasks;
        {
            Enumerator e(static_cast<int>(area), [](std::vector<Cell>&) {});
            e.run(split_depth, &tasks);
        }
        partials.resize(tasks.size());
        std::mutex progress_mutex;
        unsigned long tasks_done = 0;
        run_indexed_tasks(tasks.size(), options.workers, [&](std::size_t idx) {
            Enumerator e(static_cast<int>(area), [&, idx](std::vector<Cell>& cells) {
                consume(partials[idx], CellSet(cells));
            });
            e.resume(tasks[idx]);
            if (options.progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                options.progress(++tasks_done, tasks.size());
            }
        });
    }

    for (Partial& p : partials) {
        report.shapes_examined += p.count;
        report.spectral_crosschecks += p.crosschecks;
        report.spectral_crosscheck_failures += p.crosscheck_failures;
        if (p.max_tau > report.max_tau) {
            report.max_tau = p.max_tau;
            report.argmax_shapes = std::move(p.argmax);
        } else if (p.max_tau == report.max_tau) {
            for (CellSet& s : p.argmax) report.argmax_shapes.push_back(std::move(s));
        }
        for (CellSet& s : p.counterexamples) report.counterexamples.push_back(std::move(s));
    }
    std::sort(report.argmax_shapes.begin(), report.argmax_shapes.end());
    std::sort(report.counterexamples.begin(), report.counterexamples.end());
    report.conjecture_holds = report.counterexamples.empty();
    report.exhaustive = true;
    return report;
}

CellSet random_connected_shape(std::mt19937_64& rng, int area) {
    if (area < 1) throw std::invalid_argument("random_connected_shape: area must be >= 1");
    std::vector<Cell> cells{{0, 0}};
    std::vector<Cell> candidates{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    auto member = [&cells](Cell c) {
        return std::find(cells.begin(), cells.end(), c) != cells.end();
    };
    while (static_cast<int>(cells.size()) < area) {
        std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
        size_t i = pick(rng);
        Cell c = candidates[i];
        candidates[i] = candidates.back();
        candidates.pop_back();
        if (member(c)) continue;
        cells.push_back(c);
        for (Cell nb : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1},
                        Cell{c.x, c.y - 1}}) {
            if (!member(nb)) candidates.push_back(nb);
        }
    }
    return CellSet(std::move(cells));
}

}  // namespace gridtrees
