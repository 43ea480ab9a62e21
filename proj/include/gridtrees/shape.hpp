#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridtrees {

// One lattice cell. Cells order row-major (y first, then x); this order is
// the vertex order of every matrix built from a shape, so it must never
// change behind the library's back.
struct Cell {
    int x = 0;
    int y = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend bool operator<(const Cell& a, const Cell& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// Rectangle side lengths: rows x cols with rows, cols >= 1.
struct RectShape {
    int rows = 1;
    int cols = 1;
};

// Finite nonempty set of lattice cells in canonical translation:
// min x = 0, min y = 0, sorted row-major, no duplicates.
class CellSet {
public:
    // Canonicalizes the translation and removes duplicates.
    // Throws std::invalid_argument on empty input.
    explicit CellSet(std::vector<Cell> cells);

    const std::vector<Cell>& cells() const { return cells_; }
    int size() const { return static_cast<int>(cells_.size()); }
    bool contains(Cell c) const;

    // Bounding box (the set touches x = 0 and y = 0 by construction).
    int width() const { return width_; }
    int height() const { return height_; }

    // Number of distinct occupied columns / rows. For connected sets these
    // equal the bounding-box dimensions; for disconnected sets they may not.
    int occupied_cols() const;
    int occupied_rows() const;

    friend bool operator==(const CellSet&, const CellSet&) = default;
    friend bool operator<(const CellSet& a, const CellSet& b) {
        return a.cells_ < b.cells_;
    }

private:
    std::vector<Cell> cells_;
    int width_ = 0;
    int height_ = 0;
};

// Induced subgraph of the square lattice on a cell set. Vertices keep the
// row-major cell order; neighbor lists are sorted and symmetric.
struct GridGraph {
    std::vector<Cell> vertices;
    std::vector<std::array<int, 4>> adj;  // adj[v][0..degree[v])
    std::vector<int> degree;
    long edges = 0;

    int size() const { return static_cast<int>(vertices.size()); }
};

CellSet rect_cells(const RectShape& shape);
GridGraph induced_graph(const CellSet& cells);
bool is_connected(const CellSet& cells);
bool is_connected(const GridGraph& graph);

enum class CanonMode {
    translation_only,  // shift so min coordinates are 0
    dihedral_min,      // least among the 8 dihedral images (free polyomino form)
};

CellSet canonicalize(std::vector<Cell> cells, CanonMode mode);
CellSet canonicalize(const CellSet& cells, CanonMode mode);

// The 8 images of a cell set under the dihedral group of the lattice,
// each in canonical translation.
std::array<CellSet, 8> dihedral_images(const CellSet& cells);

// If the set fills its bounding box exactly, view it as a rectangle.
std::optional<RectShape> as_rectangle(const CellSet& cells);

// Shape files. Format art: rows of '#' (occupied) and '.' over the bounding
// box, top row first. Format coords: one "x y" pair per line, lines starting
// with '#' are comments. parse_cells auto-detects the format.
enum class ShapeFormat { art, coords };

class ShapeParseError : public std::runtime_error {
public:
    ShapeParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

CellSet parse_cells(std::string_view text);
std::string serialize_cells(const CellSet& cells, ShapeFormat format = ShapeFormat::art);

}  // namespace gridtrees
