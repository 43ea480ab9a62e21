#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gridtrees/shape.hpp"
#include "test_support.hpp"

using namespace gridtrees;

TEST_CASE("rect_cells basic shapes") {
    CHECK(rect_cells({1, 1}).cells() == std::vector<Cell>{{0, 0}});
    CHECK(rect_cells({2, 2}).cells() == std::vector<Cell>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});

    CellSet r23 = rect_cells({2, 3});
    CHECK(r23.size() == 6);
    CHECK(r23.height() == 2);
    CHECK(r23.width() == 3);
    CHECK_THROWS_AS(rect_cells({0, 3}), std::invalid_argument);
}

TEST_CASE("induced_graph small shapes") {
    GridGraph single = induced_graph(CellSet({{4, 7}}));
    CHECK(single.size() == 1);
    CHECK(single.edges == 0);

    GridGraph square = induced_graph(rect_cells({2, 2}));
    CHECK(square.size() == 4);
    CHECK(square.edges == 4);

    GridGraph l_tromino = induced_graph(CellSet({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(l_tromino.size() == 3);
    CHECK(l_tromino.edges == 2);
}

TEST_CASE("rectangle edge count formula") {
    for (int rows = 1; rows <= 9; ++rows) {
        for (int cols = 1; cols <= 9; ++cols) {
            GridGraph g = induced_graph(rect_cells({rows, cols}));
            CHECK(g.size() == rows * cols);
            CHECK(g.edges == 2 * rows * cols - rows - cols);
        }
    }
}

TEST_CASE("adjacency is symmetric and loop-free on random cell sets") {
    std::mt19937_64 rng(20260809);
    for (int trial = 0; trial < 200; ++trial) {
        CellSet cells(testing::random_cells(rng, 12, 3));
        GridGraph g = induced_graph(cells);
        long degree_total = 0;
        for (int v = 0; v < g.size(); ++v) {
            degree_total += g.degree[v];
            CHECK(g.degree[v] <= 4);
            for (int i = 0; i < g.degree[v]; ++i) {
                int u = g.adj[v][i];
                CHECK(u != v);
                bool back = false;
                for (int k = 0; k < g.degree[u]; ++k) back = back || g.adj[u][k] == v;
                CHECK(back);
            }
        }
        CHECK(degree_total == 2 * g.edges);
    }
}

TEST_CASE("connectivity") {
    CHECK(is_connected(rect_cells({2, 2})));
    CHECK_FALSE(is_connected(CellSet({{0, 0}, {2, 0}})));
    for (int rows : {1, 2, 5}) {
        for (int cols : {1, 3, 7}) {
            CHECK(is_connected(rect_cells({rows, cols})));
        }
    }
}

TEST_CASE("canonicalize translation and dihedral modes") {
    CellSet shifted = canonicalize(std::vector<Cell>{{5, 7}, {6, 7}}, CanonMode::translation_only);
    CHECK(shifted.cells() == std::vector<Cell>{{0, 0}, {1, 0}});

    CellSet vertical = canonicalize(std::vector<Cell>{{0, 0}, {0, 1}}, CanonMode::dihedral_min);
    CHECK(vertical.cells() == std::vector<Cell>{{0, 0}, {1, 0}});

    CellSet square = rect_cells({2, 2});
    CHECK(canonicalize(square, CanonMode::dihedral_min) == square);
}

TEST_CASE("canonicalize is idempotent and dihedral-invariant") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        CellSet cells(testing::random_cells(rng, 9, 4));
        for (CanonMode mode : {CanonMode::translation_only, CanonMode::dihedral_min}) {
            CellSet once = canonicalize(cells, mode);
            CHECK(canonicalize(once, mode) == once);
        }
        CellSet free_form = canonicalize(cells, CanonMode::dihedral_min);
        for (const CellSet& image : dihedral_images(cells)) {
            CHECK(canonicalize(image, CanonMode::dihedral_min) == free_form);
        }
    }
}

TEST_CASE("parse art format") {
    CellSet block = parse_cells("##\n##\n");
    CHECK(block == rect_cells({2, 2}));

    CellSet gap = parse_cells("#.#\n");
    CHECK(gap.size() == 2);
    CHECK_FALSE(is_connected(gap));

    // top line is the top row
    CellSet l_shape = parse_cells("#.\n##\n");
    CHECK(l_shape.contains({0, 1}));
    CHECK(l_shape.contains({0, 0}));
    CHECK(l_shape.contains({1, 0}));
}

TEST_CASE("parse coordinate format") {
    CellSet domino = parse_cells("0 0\n1 0\n");
    CHECK(domino.cells() == std::vector<Cell>{{0, 0}, {1, 0}});

    CellSet commented = parse_cells("# a shape\n-3 4\n-2 4\n");
    CHECK(commented == domino);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_cells(""), ShapeParseError);
    CHECK_THROWS_AS(parse_cells("...\n"), ShapeParseError);  // empty shape

    try {
        parse_cells("#x\n");
        FAIL("expected parse error");
    } catch (const ShapeParseError& e) {
        CHECK(e.line() == 1);
    }

    try {
        parse_cells("0 0\nbad line\n");
        FAIL("expected parse error");
    } catch (const ShapeParseError& e) {
        CHECK(e.line() == 2);
    }

    try {
        parse_cells("0 0\n1 0\n0 0\n");
        FAIL("expected duplicate error");
    } catch (const ShapeParseError& e) {
        CHECK(e.line() == 3);
    }

    CHECK_THROWS_AS(parse_cells("0 0 7\n"), ShapeParseError);
}

TEST_CASE("serialize round trips in both formats") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        CellSet cells(testing::random_cells(rng, 8, 3));
        for (ShapeFormat format : {ShapeFormat::art, ShapeFormat::coords}) {
            std::string text = serialize_cells(cells, format);
            CellSet parsed = parse_cells(text);
            CHECK(parsed == cells);
            CHECK(serialize_cells(parsed, format) == text);
        }
    }
}

TEST_CASE("as_rectangle detects filled boxes only") {
    CHECK(as_rectangle(rect_cells({3, 5})).has_value());
    auto rect = as_rectangle(rect_cells({3, 5}));
    CHECK(rect->rows == 3);
    CHECK(rect->cols == 5);
    CHECK_FALSE(as_rectangle(CellSet({{0, 0}, {1, 0}, {0, 1}})).has_value());
}

TEST_CASE("occupied rows and columns") {
    CellSet diagonal(std::vector<Cell>{{0, 0}, {2, 2}});
    CHECK(diagonal.occupied_cols() == 2);
    CHECK(diagonal.occupied_rows() == 2);
    CHECK(diagonal.width() == 3);
    CHECK(diagonal.height() == 3);
    CHECK(rect_cells({2, 3}).occupied_cols() == 3);
    CHECK(rect_cells({2, 3}).occupied_rows() == 2);
}
