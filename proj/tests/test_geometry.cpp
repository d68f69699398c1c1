#include <doctest.h>

#include <cmath>
#include <vector>

#include "freight/geometry.hpp"
#include "support/oracles.hpp"

using namespace freight;

namespace {

Polygon unit_square() {
    return Polygon({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
}

// Star-shaped (hence simple) polygon around a center point.  Angles are
// jittered from an even spacing so no angular gap reaches pi, which a
// chord could otherwise cut across.
Ring random_star_ring(oracles::PortableRng& rng, double cx, double cy, double r_min, double r_max,
                      int n_vertices) {
    Ring ring;
    for (int i = 0; i < n_vertices; ++i) {
        const double a = 2.0 * M_PI * (i + 0.8 * rng.uniform()) / n_vertices;
        const double r = r_min + (r_max - r_min) * rng.uniform();
        ring.push_back(Point{cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return ring;
}

}  // namespace

TEST_CASE("polygon area: unit square, triangle, degenerate ring") {
    CHECK(polygon_area(unit_square()) == doctest::Approx(1.0));
    CHECK(polygon_area(Polygon({{{0, 0}, {1, 0}, {0, 1}}})) == doctest::Approx(0.5));
    CHECK(polygon_area(Polygon({{{0, 0}, {1, 1}, {2, 2}}})) == doctest::Approx(0.0));
}

TEST_CASE("polygon validation rejects short or non-finite rings") {
    CHECK_THROWS_AS(Polygon({{{0, 0}, {1, 1}}}), GeometryError);
    // explicit closure collapses to two distinct vertices
    CHECK_THROWS_AS(Polygon({{{0, 0}, {1, 1}, {0, 0}}}), GeometryError);
    CHECK_THROWS_AS(Polygon({{{0, 0}, {std::nan(""), 1}, {1, 1}}}), GeometryError);
}

TEST_CASE("polygon with hole subtracts hole area") {
    // 4x4 square with a 1x1 hole
    Polygon poly({{{0, 0}, {4, 0}, {4, 4}, {0, 4}},
                  {{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
    CHECK(polygon_area(poly) == doctest::Approx(15.0));
}

TEST_CASE("explicitly closed rings are accepted") {
    Polygon poly({{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}});
    CHECK(polygon_area(poly) == doctest::Approx(1.0));
    CHECK(poly.exterior().size() == 4);
}

TEST_CASE("orientation is normalized on construction") {
    // clockwise input still yields positive area and CCW storage
    Polygon poly({{{0, 0}, {0, 1}, {1, 1}, {1, 0}}});
    CHECK(polygon_area(poly) == doctest::Approx(1.0));
    CHECK(ring_signed_area(poly.exterior()) > 0.0);
}

TEST_CASE("clip_to_cell: containment, half overlap, disjoint") {
    const Polygon square = unit_square();
    CHECK(polygon_area(clip_to_cell(square, CellRect{0, 0, 2, 2})) == doctest::Approx(1.0));
    CHECK(polygon_area(clip_to_cell(square, CellRect{0.5, 0, 2, 2})) == doctest::Approx(0.5));

    const Polygon disjoint = clip_to_cell(square, CellRect{5, 5, 6, 6});
    CHECK(disjoint.empty());
    CHECK(polygon_area(disjoint) == 0.0);
}

TEST_CASE("clip area never exceeds the smaller of polygon and cell") {
    oracles::PortableRng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const Ring ring = random_star_ring(rng, 5.0 + rng.uniform(), 5.0 + rng.uniform(), 0.5, 3.0,
                                           5 + static_cast<int>(rng.uniform() * 8));
        const Polygon poly({ring});
        const double x0 = 4.0 + 3.0 * rng.uniform();
        const double y0 = 4.0 + 3.0 * rng.uniform();
        const CellRect cell{x0, y0, x0 + 0.5 + 2.0 * rng.uniform(), y0 + 0.5 + 2.0 * rng.uniform()};
        const double clipped = polygon_area(clip_to_cell(poly, cell));
        CHECK(clipped <= polygon_area(poly) + 1e-12);
        CHECK(clipped <= cell.area() + 1e-12);
    }
}

TEST_CASE("point_in_polygon: interior, exterior, boundary convention") {
    const Polygon square = unit_square();
    CHECK(point_in_polygon(Point{0.5, 0.5}, square));
    CHECK_FALSE(point_in_polygon(Point{2, 2}, square));
    CHECK(point_in_polygon(Point{1.0, 0.5}, square));  // edge counts as inside
    CHECK(point_in_polygon(Point{0, 0}, square));      // vertex counts as inside
}

TEST_CASE("point_in_polygon honors holes") {
    Polygon poly({{{0, 0}, {4, 0}, {4, 4}, {0, 4}},
                  {{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
    CHECK(point_in_polygon(Point{3, 3}, poly));
    CHECK_FALSE(point_in_polygon(Point{1.5, 1.5}, poly));  // inside the hole
    CHECK(point_in_polygon(Point{1.0, 1.5}, poly));        // hole boundary is inside
}

TEST_CASE("ring_is_simple crossing test") {
    CHECK(ring_is_simple(unit_square().exterior()));
    const Ring bowtie = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_FALSE(ring_is_simple(bowtie));

    oracles::PortableRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Ring ring = random_star_ring(rng, 0.0, 0.0, 0.5, 4.0,
                                           5 + static_cast<int>(rng.uniform() * 10));
        CHECK(ring_is_simple(ring));
    }
}

TEST_CASE("point_in_polygon agrees with the winding-number oracle") {
    oracles::PortableRng rng(20240817);
    for (int poly_idx = 0; poly_idx < 20; ++poly_idx) {
        const Ring ring = random_star_ring(rng, 0.0, 0.0, 1.0, 4.0,
                                           6 + static_cast<int>(rng.uniform() * 10));
        const Polygon poly({ring});
        std::vector<oracles::Pt> oracle_ring;
        for (const auto& p : ring) oracle_ring.push_back({p.x, p.y});

        for (int i = 0; i < 50; ++i) {
            const Point p{-5.0 + 10.0 * rng.uniform(), -5.0 + 10.0 * rng.uniform()};
            CHECK(point_in_polygon(p, poly) == oracles::winding_contains({p.x, p.y}, oracle_ring));
        }
    }
}

TEST_CASE("overlay weights: zone equal to one grid cell") {
    GridSpec grid{{0, 0}, 1.0, 4, 4};
    const Polygon zone({{{2, 1}, {3, 1}, {3, 2}, {2, 2}}});
    const auto weights = overlay_weights(zone, grid);
    REQUIRE(weights.size() == 1);
    CHECK(weights.at(grid.cell_index(2, 1)) == doctest::Approx(1.0));
}

TEST_CASE("overlay weights: square zone split across two cells") {
    GridSpec grid{{0, 0}, 1.0, 4, 4};
    const Polygon zone({{{0.5, 0.25}, {1.5, 0.25}, {1.5, 0.75}, {0.5, 0.75}}});
    const auto weights = overlay_weights(zone, grid);
    REQUIRE(weights.size() == 2);
    CHECK(weights.at(grid.cell_index(0, 0)) == doctest::Approx(0.5));
    CHECK(weights.at(grid.cell_index(1, 0)) == doctest::Approx(0.5));
}

TEST_CASE("overlay weights: L-shaped zone matches the raster oracle") {
    GridSpec grid{{0, 0}, 1.0, 4, 4};
    const Ring l_shape = {{0.2, 0.2}, {1.8, 0.2}, {1.8, 0.9}, {0.9, 0.9}, {0.9, 1.7}, {0.2, 1.7}};
    const auto weights = overlay_weights(Polygon({l_shape}), grid);

    std::vector<oracles::Pt> oracle_ring;
    for (const auto& p : l_shape) oracle_ring.push_back({p.x, p.y});
    const auto expected = oracles::raster_overlay_weights(oracle_ring, 0, 0, 1.0, 4, 4, 1e-3);

    REQUIRE(weights.size() == 3);
    REQUIRE(expected.size() == 3);
    for (const auto& [cell, w] : expected) {
        REQUIRE(weights.count(cell) == 1);
        CHECK(std::abs(weights.at(cell) - w) < 1e-3);
    }
}

TEST_CASE("overlay weights sum to one for zones inside the grid") {
    GridSpec grid{{-10, -10}, 2.5, 8, 8};
    oracles::PortableRng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const Ring ring = random_star_ring(rng, -2.0 + 4.0 * rng.uniform(),
                                           -2.0 + 4.0 * rng.uniform(), 0.5, 4.0,
                                           5 + static_cast<int>(rng.uniform() * 10));
        const auto weights = overlay_weights(Polygon({ring}), grid);
        double sum = 0.0;
        for (const auto& [_, w] : weights) sum += w;
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("overlay weights: zone outside the grid extent fails") {
    GridSpec grid{{0, 0}, 1.0, 4, 4};
    const Polygon far_away({{{100, 100}, {101, 100}, {101, 101}, {100, 101}}});
    CHECK_THROWS_AS(overlay_weights(far_away, grid), GeometryError);

    const Polygon degenerate = Polygon({{{0.5, 0.5}, {1.5, 1.5}, {2.5, 2.5}}});
    CHECK_THROWS_AS(overlay_weights(degenerate, grid), GeometryError);
}

TEST_CASE("translating zone and grid together leaves weights bitwise unchanged") {
    // Dyadic coordinates and an integer translation keep every
    // intermediate value exactly representable.
    const Ring base = {{0.25, 0.25}, {1.75, 0.25}, {1.75, 0.75}, {0.75, 0.75},
                       {0.75, 1.5},  {0.25, 1.5}};
    const GridSpec grid{{0, 0}, 1.0, 4, 4};

    const double tx = 1000.0, ty = -500.0;
    Ring shifted;
    for (const auto& p : base) shifted.push_back(Point{p.x + tx, p.y + ty});
    const GridSpec grid_shifted{{tx, ty}, 1.0, 4, 4};

    const auto w0 = overlay_weights(Polygon({base}), grid);
    const auto w1 = overlay_weights(Polygon({shifted}), grid_shifted);

    REQUIRE(w0.size() == w1.size());
    auto it0 = w0.begin();
    auto it1 = w1.begin();
    for (; it0 != w0.end(); ++it0, ++it1) {
        CHECK(it0->first == it1->first);
        CHECK(it0->second == it1->second);  // bitwise
    }
}

TEST_CASE("multi-part zones combine part areas") {
    GridSpec grid{{0, 0}, 1.0, 4, 4};
    // two disjoint squares of equal area in different cells
    const std::vector<Polygon> parts = {
        Polygon({{{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}}}),
        Polygon({{{2.25, 2.25}, {2.75, 2.25}, {2.75, 2.75}, {2.25, 2.75}}}),
    };
    const auto weights = overlay_weights(parts, grid);
    REQUIRE(weights.size() == 2);
    CHECK(weights.at(grid.cell_index(0, 0)) == doctest::Approx(0.5));
    CHECK(weights.at(grid.cell_index(2, 2)) == doctest::Approx(0.5));
}
