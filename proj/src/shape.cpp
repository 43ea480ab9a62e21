#include "gridtrees/shape.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

namespace gridtrees {

CellSet::CellSet(std::vector<Cell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) {
        throw std::invalid_argument("CellSet: empty cell list");
    }
    int min_x = std::numeric_limits<int>::max();
    int min_y = std::numeric_limits<int>::max();
    int max_x = std::numeric_limits<int>::min();
    int max_y = std::numeric_limits<int>::min();
    for (const Cell& c : cells_) {
        min_x = std::min(min_x, c.x);
        min_y = std::min(min_y, c.y);
        max_x = std::max(max_x, c.x);
        max_y = std::max(max_y, c.y);
    }
    for (Cell& c : cells_) {
        c.x -= min_x;
        c.y -= min_y;
    }
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    width_ = max_x - min_x + 1;
    height_ = max_y - min_y + 1;
}

bool CellSet::contains(Cell c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

int CellSet::occupied_cols() const {
    std::vector<int> xs;
    xs.reserve(cells_.size());
    for (const Cell& c : cells_) xs.push_back(c.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return static_cast<int>(xs.size());
}

int CellSet::occupied_rows() const {
    int count = 0;
    int last = std::numeric_limits<int>::min();
    for (const Cell& c : cells_) {  // already sorted by y
        if (c.y != last) {
            ++count;
            last = c.y;
        }
    }
    return count;
}

CellSet rect_cells(const RectShape& shape) {
    if (shape.rows < 1 || shape.cols < 1) {
        throw std::invalid_argument("rect_cells: side lengths must be >= 1");
    }
    std::vector<Cell> cells;
    cells.reserve(static_cast<size_t>(shape.rows) * shape.cols);
    for (int y = 0; y < shape.rows; ++y) {
        for (int x = 0; x < shape.cols; ++x) {
            cells.push_back({x, y});
        }
    }
    return CellSet(std::move(cells));
}

GridGraph induced_graph(const CellSet& cells) {
    const std::vector<Cell>& cs = cells.cells();
    const int n = cells.size();
    GridGraph g;
    g.vertices = cs;
    g.adj.assign(n, {});
    g.degree.assign(n, 0);

    auto index_of = [&cs](Cell c) -> int {
        auto it = std::lower_bound(cs.begin(), cs.end(), c);
        if (it != cs.end() && *it == c) return static_cast<int>(it - cs.begin());
        return -1;
    };

    auto link = [&g](int u, int v) {
        g.adj[u][g.degree[u]++] = v;
        g.adj[v][g.degree[v]++] = u;
        ++g.edges;
    };

    for (int u = 0; u < n; ++u) {
        const Cell c = cs[u];
        // only +x and +y directions, so each edge is made once
        int v = index_of({c.x + 1, c.y});
        if (v >= 0) link(u, v);
        v = index_of({c.x, c.y + 1});
        if (v >= 0) link(u, v);
    }
    for (int u = 0; u < n; ++u) {
        std::sort(g.adj[u].begin(), g.adj[u].begin() + g.degree[u]);
    }
    return g;
}

bool is_connected(const GridGraph& graph) {
    const int n = graph.size();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int i = 0; i < graph.degree[u]; ++i) {
            int v = graph.adj[u][i];
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

bool is_connected(const CellSet& cells) {
    return is_connected(induced_graph(cells));
}

namespace {

Cell transform_cell(Cell c, int which) {
    switch (which) {
        case 0: return {c.x, c.y};
        case 1: return {-c.y, c.x};    // rotate 90
        case 2: return {-c.x, -c.y};   // rotate 180
        case 3: return {c.y, -c.x};    // rotate 270
        case 4: return {-c.x, c.y};    // mirror x
        case 5: return {c.y, c.x};     // transpose
        case 6: return {c.x, -c.y};    // mirror y
        default: return {-c.y, -c.x};  // anti-transpose
    }
}

}  // namespace

std::array<CellSet, 8> dihedral_images(const CellSet& cells) {
    auto make = [&cells](int which) {
        std::vector<Cell> out;
        out.reserve(cells.cells().size());
        for (const Cell& c : cells.cells()) out.push_back(transform_cell(c, which));
        return CellSet(std::move(out));
    };
    return {make(0), make(1), make(2), make(3), make(4), make(5), make(6), make(7)};
}

CellSet canonicalize(std::vector<Cell> cells, CanonMode mode) {
    CellSet base(std::move(cells));
    if (mode == CanonMode::translation_only) return base;
    std::array<CellSet, 8> images = dihedral_images(base);
    return *std::min_element(images.begin(), images.end());
}

CellSet canonicalize(const CellSet& cells, CanonMode mode) {
    if (mode == CanonMode::translation_only) return cells;
    std::array<CellSet, 8> images = dihedral_images(cells);
    return *std::min_element(images.begin(), images.end());
}

std::optional<RectShape> as_rectangle(const CellSet& cells) {
    long box = static_cast<long>(cells.width()) * cells.height();
    if (box != cells.size()) return std::nullopt;
    return RectShape{cells.height(), cells.width()};
}

ShapeParseError::ShapeParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    // drop trailing carriage returns from files with CRLF endings
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }
    return lines;
}

bool blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Format detection: skip lines that could be coordinate-format comments
// (leading '#'); the first remaining character decides. A file whose every
// line starts with '#' can only be a solid art shape, since a comment-only
// coordinate file would be empty.
ShapeFormat detect_format(const std::vector<std::string_view>& lines) {
    for (std::string_view line : lines) {
        if (blank(line)) continue;
        size_t pos = line.find_first_not_of(" \t");
        char first = line[pos];
        if (first == '#') continue;
        if (first == '.') return ShapeFormat::art;
        return ShapeFormat::coords;
    }
    return ShapeFormat::art;
}

CellSet parse_art(const std::vector<std::string_view>& lines) {
    std::vector<Cell> cells;
    const int rows = static_cast<int>(lines.size());
    for (int i = 0; i < rows; ++i) {
        std::string_view line = lines[i];
        for (size_t j = 0; j < line.size(); ++j) {
            char ch = line[j];
            if (ch == '#') {
                // top line is the highest row
                cells.push_back({static_cast<int>(j), rows - 1 - i});
            } else if (ch != '.') {
                throw ShapeParseError(i + 1, std::string("unexpected character '") + ch + "'");
            }
        }
    }
    if (cells.empty()) throw ShapeParseError(rows, "empty shape");
    return CellSet(std::move(cells));
}

CellSet parse_coords(const std::vector<std::string_view>& lines) {
    std::vector<Cell> cells;
    std::vector<std::pair<Cell, int>> seen;  // cell -> first line, for duplicate reports
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (blank(line)) continue;
        size_t pos = line.find_first_not_of(" \t");
        if (line[pos] == '#') continue;
        std::istringstream in{std::string(line)};
        long x = 0, y = 0;
        if (!(in >> x >> y)) {
            throw ShapeParseError(static_cast<int>(i + 1), "expected two integers");
        }
        std::string rest;
        if (in >> rest) {
            throw ShapeParseError(static_cast<int>(i + 1), "trailing content '" + rest + "'");
        }
        constexpr long kCoordLimit = 1L << 30;
        if (x < -kCoordLimit || x > kCoordLimit || y < -kCoordLimit || y > kCoordLimit) {
            throw ShapeParseError(static_cast<int>(i + 1), "coordinate out of range");
        }
        Cell c{static_cast<int>(x), static_cast<int>(y)};
        for (const auto& [prev, line_no] : seen) {
            if (prev == c) {
                throw ShapeParseError(static_cast<int>(i + 1),
                                      "duplicate cell (already on line " + std::to_string(line_no) + ")");
            }
        }
        seen.emplace_back(c, static_cast<int>(i + 1));
        cells.push_back(c);
    }
    if (cells.empty()) throw ShapeParseError(static_cast<int>(lines.size()), "empty shape");
    return CellSet(std::move(cells));
}

}  // namespace

CellSet parse_cells(std::string_view text) {
    std::vector<std::string_view> lines = split_lines(text);
    if (detect_format(lines) == ShapeFormat::art) return parse_art(lines);
    return parse_coords(lines);
}

std::string serialize_cells(const CellSet& cells, ShapeFormat format) {
    std::string out;
    if (format == ShapeFormat::art) {
        const int w = cells.width();
        const int h = cells.height();
        std::vector<std::string> rows(h, std::string(w, '.'));
        for (const Cell& c : cells.cells()) {
            rows[h - 1 - c.y][c.x] = '#';
        }
        for (const std::string& row : rows) {
            out += row;
            out += '\n';
        }
    } else {
        for (const Cell& c : cells.cells()) {
            out += std::to_string(c.x);
            out += ' ';
            out += std::to_string(c.y);
            out += '\n';
        }
    }
    return out;
}

}  // namespace gridtrees
