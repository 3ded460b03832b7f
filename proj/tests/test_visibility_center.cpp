#include <gtest/gtest.h>

#include <random>

#include <viscenter/oracle.hpp>
#include <viscenter/visibility_center.hpp>

#include "fixtures.hpp"

using namespace viscenter;

namespace {

// Smallest geodesic length from x to a sampled point that sees u.
double sampled_dv(const Polygon& P, const Triangulation& T, Point2 x, Point2 u, std::mt19937_64& rng, int samples) {
    if (visible(P, x, u)) return 0;
    double best = INFINITY;
    for (int i = 0; i < samples; ++i) {
        Point2 y = random_interior_point(P, rng);
        if (visible(P, y, u)) best = std::min(best, geodesic(P, T, x, y).length);
    }
    return best;
}

}  // namespace

TEST(DistanceToVisibility, VisibleAndCoincidentPairsAreZero) {
    auto P = fixtures::lshape();
    auto T = triangulate(P);
    EXPECT_EQ(distance_to_visibility(P, T, {0.5, 0.5}, {1.8, 0.5}).distance, 0);
    EXPECT_EQ(distance_to_visibility(P, T, {0.5, 1.5}, {0.5, 1.5}).distance, 0);
    EXPECT_FALSE(distance_to_visibility(P, T, {0.5, 1.5}, {0.5, 1.5}).window.has_value());
}

TEST(DistanceToVisibility, LShapeAroundTheCorner) {
    auto P = fixtures::lshape();
    auto T = triangulate(P);
    // the window at (1,1) for u runs along x + y = 2 up to the corner (0,2)
    auto d = distance_to_visibility(P, T, {0.5, 1.9}, {1.8, 0.2});
    ASSERT_TRUE(d.window.has_value());
    EXPECT_EQ(d.window->fulcrum, fixtures::vertex_index(P, {1, 1}));
    EXPECT_NEAR(d.window->tip.p.x, 0, 1e-12);
    EXPECT_NEAR(d.window->tip.p.y, 2, 1e-12);
    EXPECT_NEAR(d.distance, 0.4 / std::sqrt(2.0), 1e-12);
    std::mt19937_64 rng(1);
    EXPECT_NEAR(sampled_dv(P, T, {0.5, 1.9}, {1.8, 0.2}, rng, 10000), d.distance, 0.02);
}

TEST(DistanceToVisibility, SightLineThroughTheReflexVertex) {
    auto P = fixtures::lshape();
    auto T = triangulate(P);
    // the segment grazes (1,1), which counts as seeing
    EXPECT_EQ(distance_to_visibility(P, T, {0.2, 1.8}, {1.8, 0.2}).distance, 0);
}

TEST(DistanceToVisibility, ZeroExactlyWhenVisible) {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto P = random_instance(seed, 30, 0).polygon;
        auto T = triangulate(P);
        for (int i = 0; i < 30; ++i) {
            Point2 x = random_interior_point(P, rng), u = random_interior_point(P, rng);
            double d = distance_to_visibility(P, T, x, u).distance;
            if (visible(P, x, u)) EXPECT_EQ(d, 0);
            else EXPECT_GT(d, 0);
        }
    }
}

TEST(DistanceToVisibility, MatchesSampledMinimum) {
    std::mt19937_64 rng(12);
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 12; ++seed) {
        auto P = random_instance(seed, 20, 0).polygon;
        auto T = triangulate(P);
        Point2 x = random_interior_point(P, rng), u = random_interior_point(P, rng);
        if (visible(P, x, u)) continue;
        double d = distance_to_visibility(P, T, x, u).distance;
        double s = sampled_dv(P, T, x, u, rng, 4000);
        // samples only approach the minimum from above
        EXPECT_GE(s, d - 1e-9 * P.bbox_diag());
        EXPECT_LE(s, d + 0.05 * P.bbox_diag());
        ++checked;
    }
}

TEST(DistanceToVisibility, OutsidePointThrows) {
    auto P = fixtures::lshape();
    auto T = triangulate(P);
    try {
        distance_to_visibility(P, T, {1.5, 1.5}, {0.5, 0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PointOutsidePolygon);
    }
}

TEST(SiteWindow, SiteOnTheLineOfAnEdge) {
    auto P = fixtures::lshape();
    int r = fixtures::vertex_index(P, {1, 1});
    // the vertex (2,1) sees (1,1) along the edge; the ray continues to (0,1)
    auto w = detail::site_window(P, {2, 1}, r);
    ASSERT_TRUE(w.has_value());
    EXPECT_NEAR(w->tip.p.x, 0, 1e-12);
    EXPECT_NEAR(w->tip.p.y, 1, 1e-12);
    // the window is the side that sees u
    EXPECT_TRUE(contains_point(P, w->half, {0.5, 0.5}));
    EXPECT_FALSE(contains_point(P, w->half, {0.5, 1.5}));
    // a site that is not beyond r gives no window
    EXPECT_FALSE(detail::site_window(P, {0.5, 0.5}, r).has_value());
}

TEST(ComputeHReflex, ConvexPolygonHasNone) {
    auto P = fixtures::square();
    EXPECT_TRUE(compute_H_reflex(P, {{0.2, 0.2}, {0.8, 0.9}}).empty());
    auto a = visibility_center(P, {{0.2, 0.2}, {0.8, 0.9}});
    EXPECT_EQ(a.center.radius, 0);
    EXPECT_NE(point_in_polygon(P, a.center.center), Location::Outside);
}

TEST(ComputeHReflex, LShapeTwoSites) {
    auto P = fixtures::lshape();
    int r = fixtures::vertex_index(P, {1, 1});
    std::vector<Point2> U{{1.8, 0.5}, {0.5, 1.8}};
    auto ws = compute_H_reflex(P, U);
    ASSERT_EQ(ws.size(), 2u);
    for (const auto& w : ws) EXPECT_EQ(w.fulcrum, r);
    EXPECT_TRUE((ws[0].source == U[0] && ws[1].source == U[1]) || (ws[0].source == U[1] && ws[1].source == U[0]));
}

TEST(ComputeHReflex, EqualsBruteForceEnumeration) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = random_instance(seed, 30, 8);
        const auto& P = inst.polygon;
        std::vector<HalfPolygon> all;
        for (int r = 0; r < P.size(); ++r)
            for (Point2 u : inst.sites)
                if (auto w = detail::site_window(P, u, r)) all.push_back(w->half);
        auto brute = sort_and_filter(P, all);
        auto ws = compute_H_reflex(P, inst.sites);
        ASSERT_EQ(brute.size(), ws.size()) << "seed " << seed;
        std::vector<HalfPolygon> hs;
        for (size_t i = 0; i < ws.size(); ++i) {
            EXPECT_TRUE(same_chord(P, brute[i], ws[i].half)) << "seed " << seed;
            hs.push_back(ws[i].half);
        }
        // already minimal
        auto again = sort_and_filter(P, hs);
        ASSERT_EQ(again.size(), hs.size());
        for (size_t i = 0; i < hs.size(); ++i) EXPECT_EQ(again[i].id, hs[i].id);
    }
}

TEST(VisibilityCenter, LShapeAllVertices) {
    auto a = visibility_center_of_polygon(fixtures::lshape());
    EXPECT_EQ(a.center.radius, 0);
    ASSERT_EQ(a.per_site.size(), 6u);
    for (const auto& s : a.per_site) EXPECT_EQ(s.distance, 0);
}

TEST(VisibilityCenter, ConvexPolygonOfVertices) {
    auto a = visibility_center_of_polygon(fixtures::square());
    EXPECT_EQ(a.center.radius, 0);
    EXPECT_TRUE(a.windows.empty());
}

TEST(VisibilityCenter, ZigzagMatchesGrid) {
    auto P = fixtures::zigzag();
    std::vector<Point2> U{{1, 3.5}, {5, 3.5}};
    auto a = visibility_center(P, U);
    // both sites see (3, 0.5) past the prong corners
    EXPECT_EQ(a.center.radius, 0);
    auto o = oracle_visibility_radius(P, U, GridSpec(P, 300));
    EXPECT_NEAR(a.center.radius, o.value, 2 * P.bbox_diag() / 300);
}

TEST(VisibilityCenter, NarrowChannelMatchesGrid) {
    // with a thin bottom bar the prongs no longer share a view
    auto P = validate_polygon(std::vector<Point2>{{0, 0}, {6, 0}, {6, 4}, {4, 4}, {4, 0.3}, {2, 0.3}, {2, 4}, {0, 4}});
    std::vector<Point2> U{{1, 3.5}, {5, 3.5}};
    auto a = visibility_center(P, U);
    GridSpec g(P, 300);
    auto o = oracle_visibility_radius(P, U, g);
    double cell = std::max(g.cell_size().x, g.cell_size().y);
    EXPECT_GT(a.center.radius, 0);
    EXPECT_NEAR(a.center.radius, o.value, 2 * P.bbox_diag() / 300);
    double near = INFINITY;
    for (Point2 c : o.argmin_cells) near = std::min(near, dist(c, a.center.center));
    EXPECT_LE(near, 3 * cell);
}

TEST(VisibilityCenter, ZigzagPolygonVertices) {
    auto P = fixtures::zigzag();
    auto a = visibility_center_of_polygon(P);
    auto o = oracle_visibility_radius(P, P.vertices(), GridSpec(P, 200));
    EXPECT_NEAR(a.center.radius, o.value, 2 * P.bbox_diag() / 200);
}

TEST(VisibilityCenter, PerSiteMaximumIsTheRadius) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = random_instance(seed, 30, 8);
        auto a = visibility_center(inst.polygon, inst.sites);
        double worst = 0;
        for (const auto& s : a.per_site) worst = std::max(worst, s.distance);
        EXPECT_NEAR(worst, a.center.radius, inst.polygon.tie_eps()) << "seed " << seed;
    }
}

TEST(VisibilityCenter, MatchesGridOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = random_instance(seed, 30, 8);
        const auto& P = inst.polygon;
        auto a = visibility_center(P, inst.sites);
        auto o = oracle_visibility_radius(P, inst.sites, GridSpec(P, 150));
        EXPECT_NEAR(a.center.radius, o.value, 2 * P.bbox_diag() / 150) << "seed " << seed;
    }
}

TEST(VisibilityCenter, Errors) {
    auto P = fixtures::lshape();
    try {
        visibility_center(P, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptySiteSet);
    }
    try {
        visibility_center(P, {{0.5, 0.5}, {1.5, 1.5}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PointOutsidePolygon);
        EXPECT_EQ(e.index(), 1);
    }
}
