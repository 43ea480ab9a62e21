#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "gridtrees/explorer.hpp"
#include "test_support.hpp"

using namespace gridtrees;

TEST_CASE("enumerator counts match bounded-box subset enumeration") {
    // literal oracle: every size-k subset of the k x k box, connectivity
    // filtered, deduplicated by canonical translation
    for (int area = 1; area <= 5; ++area) {
        const int box = area;
        std::vector<Cell> box_cells;
        for (int y = 0; y < box; ++y) {
            for (int x = 0; x < box; ++x) box_cells.push_back({x, y});
        }
        const int total = box * box;
        std::set<CellSet> found;
        std::vector<int> pick(area);
        for (int i = 0; i < area; ++i) pick[i] = i;
        while (true) {
            std::vector<Cell> subset;
            for (int idx : pick) subset.push_back(box_cells[idx]);
            CellSet candidate(subset);
            if (is_connected(candidate)) found.insert(candidate);
            int i = area - 1;
            while (i >= 0 && pick[i] == total - area + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < area; ++j) pick[j] = pick[j - 1] + 1;
        }
        CHECK(found.size() == count_shapes(area, EnumMode::fixed));
        std::set<CellSet> streamed;
        enumerate_shapes(area, EnumMode::fixed,
                         [&](const CellSet& s) { streamed.insert(s); });
        CHECK(streamed == found);
    }
}

TEST_CASE("enumerator counts match the growth oracle") {
    // fixed: one shape per translation class
    const unsigned long expected_fixed[] = {1, 2, 6, 19, 63, 216, 760, 2725};
    for (int area = 1; area <= 8; ++area) {
        unsigned long counted = count_shapes(area, EnumMode::fixed);
        CHECK(counted == expected_fixed[area - 1]);
        CHECK(counted == testing::grown_shapes(area, CanonMode::translation_only).size());
    }
    // free: one shape per dihedral class
    const unsigned long expected_free[] = {1, 1, 2, 5, 12, 35, 108};
    for (int area = 1; area <= 7; ++area) {
        unsigned long counted = count_shapes(area, EnumMode::free);
        CHECK(counted == expected_free[area - 1]);
        CHECK(counted == testing::grown_shapes(area, CanonMode::dihedral_min).size());
    }
}

TEST_CASE("enumerated shapes are valid, canonical and unique") {
    for (int area = 1; area <= 7; ++area) {
        std::set<CellSet> seen;
        enumerate_shapes(area, EnumMode::fixed, [&](const CellSet& shape) {
            CHECK(shape.size() == area);
            CHECK(is_connected(shape));
            CHECK(seen.insert(shape).second);  // no duplicates
        });
        CHECK(seen == testing::grown_shapes(area, CanonMode::translation_only));
    }

    std::set<CellSet> free_seen;
    enumerate_shapes(6, EnumMode::free, [&](const CellSet& shape) {
        CHECK(shape == canonicalize(shape, CanonMode::dihedral_min));
        CHECK(free_seen.insert(shape).second);
    });
    CHECK(free_seen == testing::grown_shapes(6, CanonMode::dihedral_min));
}

TEST_CASE("enumeration order is deterministic") {
    std::vector<CellSet> first, second;
    enumerate_shapes(6, EnumMode::fixed, [&](const CellSet& s) { first.push_back(s); });
    enumerate_shapes(6, EnumMode::fixed, [&](const CellSet& s) { second.push_back(s); });
    CHECK(first == second);
}

TEST_CASE("boundary incidences") {
    CHECK(boundary_incidences(CellSet({{0, 0}})) == 4);
    CHECK(boundary_incidences(rect_cells({2, 2})) == 8);
    CHECK(boundary_incidences(rect_cells({1, 3})) == 8);  // 4*3 = 2*2 + 8
}

TEST_CASE("lattice identity on random connected shapes") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 10000; ++trial) {
        CellSet shape = random_connected_shape(rng, 1 + trial % 24);
        GridGraph g = induced_graph(shape);
        CHECK(4L * shape.size() == 2 * g.edges + boundary_incidences(shape));
    }
}

TEST_CASE("bounds report on squares and paths") {
    BoundsReport square = bounds_report(rect_cells({3, 3}));
    CHECK(square.area == 9);
    CHECK(square.n == 3);
    CHECK(square.edges == 12);  // 2 n (n-1)
    CHECK(square.is_square_shape);
    CHECK(square.identity_holds);
    CHECK(square.edge_bound_holds);
    CHECK(square.chain_holds);
    CHECK(square.rank_bound_holds);
    CHECK(square.equality_is_square);
    CHECK(square.cycle_rank == 4);  // (n-1)^2

    BoundsReport path = bounds_report(rect_cells({1, 9}));
    CHECK(path.n == 3);
    CHECK(path.edges == 8);
    CHECK(path.cycle_rank == 0);
    CHECK(path.edge_bound_holds);
    CHECK(path.chain_holds);
    CHECK_FALSE(path.is_square_shape);
    CHECK(path.equality_is_square);  // no equality, vacuously fine

    BoundsReport block = bounds_report(rect_cells({2, 2}));
    CHECK(4 * block.area == 2 * block.edges + block.boundary);
    CHECK(block.boundary == 8);

    CHECK_THROWS_AS(bounds_report(CellSet({{0, 0}, {2, 0}})), std::invalid_argument);
}

TEST_CASE("area four shapes: edge bound with equality only at the square") {
    int equality_count = 0;
    enumerate_shapes(4, EnumMode::fixed, [&](const CellSet& shape) {
        BoundsReport report = bounds_report(shape);
        CHECK(report.identity_holds);
        CHECK(report.edge_bound_holds);
        CHECK(report.chain_holds);
        CHECK(report.rank_bound_holds);
        CHECK(report.equality_is_square);
        if (report.edges == 2 * report.n * (report.n - 1)) {
            ++equality_count;
            CHECK(report.is_square_shape);
        }
    });
    CHECK(equality_count == 1);
}

TEST_CASE("explore n = 1") {
    ExplorationReport report = explore_conjecture(1);
    CHECK(report.exhaustive);
    CHECK(report.shapes_examined == 1);
    CHECK(report.max_tau == 1);
    CHECK(report.conjecture_holds);
}

TEST_CASE("explore n = 2 finds the square maximum") {
    ExplorationReport report = explore_conjecture(2);
    CHECK(report.exhaustive);
    CHECK(report.shapes_examined == 19);
    CHECK(report.max_tau == 4);
    CHECK(report.square_tau == 4);
    CHECK(report.conjecture_holds);
    REQUIRE(report.argmax_shapes.size() == 1);
    CHECK(report.argmax_shapes[0] == rect_cells({2, 2}));

    ExploreOptions free_options;
    free_options.mode = EnumMode::free;
    ExplorationReport free_report = explore_conjecture(2, free_options);
    CHECK(free_report.shapes_examined == 5);
    CHECK(free_report.max_tau == 4);
    REQUIRE(free_report.argmax_shapes.size() == 1);
}

TEST_CASE("explore n = 3 finds the square maximum") {
    ExplorationReport report = explore_conjecture(3);
    CHECK(report.exhaustive);
    CHECK(report.shapes_examined == 9910);
    CHECK(report.max_tau == 192);
    CHECK(report.conjecture_holds);
    REQUIRE(report.argmax_shapes.size() == 1);
    CHECK(report.argmax_shapes[0] == rect_cells({3, 3}));

    ExploreOptions free_options;
    free_options.mode = EnumMode::free;
    ExplorationReport free_report = explore_conjecture(3, free_options);
    CHECK(free_report.shapes_examined == 1285);
    CHECK(free_report.max_tau == 192);
    REQUIRE(free_report.argmax_shapes.size() == 1);
    CHECK(free_report.argmax_shapes[0] == rect_cells({3, 3}));
}

TEST_CASE("explore result does not depend on the worker count") {
    ExploreOptions base;
    base.workers = 1;
    ExplorationReport one = explore_conjecture(3, base);
    base.workers = 3;
    ExplorationReport three = explore_conjecture(3, base);
    CHECK(one.shapes_examined == three.shapes_examined);
    CHECK(one.max_tau == three.max_tau);
    CHECK(one.argmax_shapes == three.argmax_shapes);
    CHECK(one.counterexamples == three.counterexamples);
}

TEST_CASE("explore respects the enumeration budget") {
    ExplorationReport blocked = explore_conjecture(4);  // area 16 > default budget 12
    CHECK_FALSE(blocked.exhaustive);
    CHECK(blocked.shapes_examined == 0);

    ExploreOptions small_budget;
    small_budget.area_budget = 4;
    ExplorationReport fits = explore_conjecture(2, small_budget);
    CHECK(fits.exhaustive);
}

TEST_CASE("spectral crosscheck backend agrees on rectangles") {
    ExploreOptions options;
    options.backend = TauBackend::spectral_crosscheck;
    ExplorationReport report = explore_conjecture(3, options);
    // 9-cell rectangles: 1x9 and 3x3 in two orientations
    CHECK(report.spectral_crosschecks == 3);
    CHECK(report.spectral_crosscheck_failures == 0);
}

TEST_CASE("tau of enumerated shapes is dihedral invariant") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        CellSet shape = random_connected_shape(rng, 10);
        TreeCount tau = tree_count_exact(shape);
        long boundary = boundary_incidences(shape);
        GridGraph g = induced_graph(shape);
        for (const CellSet& image : dihedral_images(shape)) {
            CHECK(tree_count_exact(image) == tau);
            CHECK(boundary_incidences(image) == boundary);
            CHECK(induced_graph(image).edges == g.edges);
        }
    }
}
