#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gridtrees/exact.hpp"
#include "gridtrees/explorer.hpp"
#include "test_support.hpp"

using namespace gridtrees;

TEST_CASE("laplacian minor of the four cycle") {
    GridGraph square = induced_graph(rect_cells({2, 2}));
    IntegerMatrix m = laplacian_minor(square, 0);
    REQUIRE(m.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(m.at(i, i) == 2);
    // vertices 1=(1,0), 2=(0,1), 3=(1,1); 1 and 2 are not adjacent
    CHECK(m.at(0, 1) == 0);
    CHECK(m.at(0, 2) == -1);
    CHECK(m.at(1, 2) == -1);
}

TEST_CASE("laplacian minor of the three path") {
    GridGraph path = induced_graph(rect_cells({1, 3}));
    IntegerMatrix m = laplacian_minor(path, 0);
    REQUIRE(m.size() == 2);
    CHECK(m.at(0, 0) == 2);
    CHECK(m.at(0, 1) == -1);
    CHECK(m.at(1, 0) == -1);
    CHECK(m.at(1, 1) == 1);

    CHECK_THROWS_AS(laplacian_minor(induced_graph(CellSet({{0, 0}})), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(laplacian_minor(path, 3), std::invalid_argument);
}

TEST_CASE("empty minor has determinant one") {
    // the single-cell grid: the minor is empty, the count is 1
    CHECK(bareiss_determinant(IntegerMatrix(0)) == 1);
    CHECK(crt_determinant(IntegerMatrix(0)) == 1);
    CHECK(tree_count_exact(induced_graph(CellSet({{3, 4}}))) == 1);
}

TEST_CASE("minor entries are degree-bounded and symmetric") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        CellSet shape = random_connected_shape(rng, 9);
        GridGraph g = induced_graph(shape);
        IntegerMatrix m = laplacian_minor(g, trial % g.size());
        for (int i = 0; i < m.size(); ++i) {
            CHECK(m.at(i, i) >= 0);
            CHECK(m.at(i, i) <= 4);
            for (int j = i + 1; j < m.size(); ++j) {
                CHECK(m.at(i, j) == m.at(j, i));
                CHECK((m.at(i, j) == 0 || m.at(i, j) == -1));
            }
        }
    }
}

TEST_CASE("tree counts of small rectangles") {
    CHECK(tree_count_exact(RectShape{1, 1}) == 1);
    for (int m = 1; m <= 12; ++m) CHECK(tree_count_exact(RectShape{1, m}) == 1);
    CHECK(tree_count_exact(RectShape{2, 2}) == 4);
    CHECK(tree_count_exact(RectShape{2, 3}) == 15);
    CHECK(tree_count_exact(RectShape{3, 3}) == 192);
    CHECK(tree_count_exact(RectShape{4, 4}) == 100352);
    CHECK(tree_count_exact(RectShape{5, 5}) == 557568000);
}

TEST_CASE("brute force oracle grounds the determinant") {
    GridGraph square = induced_graph(rect_cells({2, 2}));
    CHECK(tree_count_bruteforce(square) == 4);

    GridGraph r23 = induced_graph(rect_cells({2, 3}));
    CHECK(tree_count_bruteforce(r23) == 15);
    CHECK(tree_count_bruteforce(r23) == tree_count_exact(r23));

    GridGraph r33 = induced_graph(rect_cells({3, 3}));
    CHECK(tree_count_bruteforce(r33) == 192);
    CHECK(tree_count_bruteforce(r33) == tree_count_exact(r33));

    GridGraph gap = induced_graph(CellSet({{0, 0}, {2, 0}}));
    CHECK(tree_count_bruteforce(gap) == 0);
    CHECK(tree_count_exact(gap) == 0);

    // guard: 4x5 has 31 edges
    CHECK_THROWS_AS(tree_count_bruteforce(induced_graph(rect_cells({4, 5}))),
                    std::invalid_argument);
}

TEST_CASE("exact equals brute force on every connected shape up to 7 cells") {
    for (int area = 1; area <= 7; ++area) {
        for (const CellSet& shape : testing::grown_shapes(area, CanonMode::translation_only)) {
            GridGraph g = induced_graph(shape);
            CHECK(tree_count_exact(g) == tree_count_bruteforce(g));
        }
    }
}

TEST_CASE("root independence of the Kirchhoff minor") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        CellSet shape = random_connected_shape(rng, 8);
        GridGraph g = induced_graph(shape);
        mpz_class reference = bareiss_determinant(laplacian_minor(g, 0));
        for (int root = 1; root < g.size(); root += 3) {
            CHECK(bareiss_determinant(laplacian_minor(g, root)) == reference);
        }
    }
}

TEST_CASE("tree count is dihedral invariant") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        CellSet shape = random_connected_shape(rng, 9);
        TreeCount reference = tree_count_exact(shape);
        for (const CellSet& image : dihedral_images(shape)) {
            CHECK(tree_count_exact(image) == reference);
        }
    }
}

TEST_CASE("transpose symmetry of rectangle counts") {
    for (int rows = 1; rows <= 7; ++rows) {
        for (int cols = rows; cols <= 7; ++cols) {
            CHECK(tree_count_exact(RectShape{rows, cols}) ==
                  tree_count_exact(RectShape{cols, rows}));
        }
    }
}

TEST_CASE("modular CRT backend agrees with Bareiss") {
    for (int rows = 1; rows <= 8; ++rows) {
        for (int cols = rows; cols <= 8; ++cols) {
            RectShape shape{rows, cols};
            CHECK(tree_count_exact(shape, DetBackend::modular_crt) ==
                  tree_count_exact(shape, DetBackend::bareiss));
        }
    }
    CHECK(tree_count_exact(RectShape{10, 10}, DetBackend::modular_crt) ==
          tree_count_exact(RectShape{10, 10}, DetBackend::bareiss));

    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 25; ++trial) {
        CellSet shape = random_connected_shape(rng, 10 + trial % 5);
        CHECK(tree_count_exact(shape, DetBackend::modular_crt) ==
              tree_count_exact(shape, DetBackend::bareiss));
    }
}

TEST_CASE("crt determinant handles signed values") {
    IntegerMatrix m(2);
    m.at(0, 0) = 3;
    m.at(0, 1) = 7;
    m.at(1, 0) = 2;
    m.at(1, 1) = 1;
    CHECK(crt_determinant(m) == -11);
    CHECK(bareiss_determinant(m) == -11);
}
