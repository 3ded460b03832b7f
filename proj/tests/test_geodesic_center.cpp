#include <gtest/gtest.h>

#include <random>

#include <viscenter/geodesic_center.hpp>
#include <viscenter/oracle.hpp>

#include "fixtures.hpp"

using namespace viscenter;

namespace {

Polygon unit_square() { return validate_polygon(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

HalfPolygon half(const Polygon& P, Point2 p, Point2 q, int id) {
    return {*locate_on_boundary(P, p), *locate_on_boundary(P, q), id};
}

struct Instance {
    Polygon P;
    std::vector<HalfPolygon> hs;
};

// Same generator the acceptance run uses: n <= 40, up to eight windows.
std::vector<Instance> instances(int count, bool positive_only = false) {
    std::vector<Instance> out;
    for (std::uint64_t seed = 0; static_cast<int>(out.size()) < count; ++seed) {
        Instance I;
        I.P = random_instance(seed, 40, 0).polygon;
        std::mt19937_64 rng(seed * 7 + 1);
        int k = 1 + static_cast<int>(rng() % 8);
        I.hs = random_windows(I.P, rng, k);
        if (I.hs.empty()) continue;
        if (positive_only && geodesic_center(I.P, I.hs).radius <= I.P.tie_eps()) continue;
        out.push_back(std::move(I));
    }
    return out;
}

}  // namespace

TEST(GeodesicCenter, ParallelChordsGiveASegment) {
    auto P = unit_square();
    // x <= 0.2 and x >= 0.8
    std::vector<HalfPolygon> hs{half(P, {0.2, 0}, {0.2, 1}, 0), half(P, {0.8, 1}, {0.8, 0}, 1)};
    ASSERT_TRUE(contains_point(P, hs[0], {0.1, 0.5}));
    ASSERT_TRUE(contains_point(P, hs[1], {0.9, 0.5}));
    auto c = geodesic_center(P, hs);
    EXPECT_NEAR(c.radius, 0.3, 1e-12);
    ASSERT_TRUE(c.degenerate_segment.has_value());
    auto [a, b] = *c.degenerate_segment;
    EXPECT_NEAR(a.x, 0.5, 1e-9);
    EXPECT_NEAR(b.x, 0.5, 1e-9);
    EXPECT_NEAR(std::abs(a.y - b.y), 1, 1e-6);
    EXPECT_NEAR(c.center.x, 0.5, 1e-9);
    EXPECT_NEAR(c.center.y, 0.5, 1e-6);
    EXPECT_EQ(c.determining, (std::vector<int>{0, 1}));
}

TEST(GeodesicCenter, CrossingChordsShareAPoint) {
    auto P = unit_square();
    std::vector<HalfPolygon> hs{half(P, {0.6, 0}, {0.6, 1}, 0), half(P, {0, 0.4}, {1, 0.4}, 1),
                                half(P, {0.4, 1}, {0.4, 0}, 2)};
    auto c = geodesic_center(P, hs);
    EXPECT_EQ(c.radius, 0);
    EXPECT_TRUE(c.determining.empty());
    auto T = triangulate(P);
    EXPECT_LE(radius_at(P, T, hs, c.center), P.eps());
}

TEST(GeodesicCenter, SingleHalfPolygon) {
    auto P = fixtures::lshape();
    int r = fixtures::vertex_index(P, {1, 1});
    auto w = build_window(P, {1.8, 0.5}, r);
    auto c = geodesic_center(P, {w.half});
    EXPECT_EQ(c.radius, 0);
    EXPECT_TRUE(contains_point(P, w.half, c.center));
}

TEST(GeodesicCenter, LShapeTwoWindows) {
    auto P = fixtures::lshape();
    auto T = triangulate(P);
    int r = fixtures::vertex_index(P, {1, 1});
    std::vector<HalfPolygon> hs{build_window(P, {1.8, 0.5}, r, 0).half, build_window(P, {0.5, 1.8}, r, 1).half};
    auto c = geodesic_center(P, hs);
    // the two windows meet at the reflex vertex
    EXPECT_NEAR(c.radius, 0, 1e-12);
    EXPECT_LE(radius_at(P, T, hs, c.center), P.eps());
}

TEST(GeodesicCenter, EmptyInputThrows) {
    try {
        geodesic_center(unit_square(), {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyConstraintSet);
    }
}

TEST(GeodesicCenter, MatchesGridOracle) {
    for (const auto& I : instances(15)) {
        double diag = I.P.bbox_diag();
        auto c = geodesic_center(I.P, I.hs);
        auto o = oracle_halfpolygon_radius(I.P, I.hs, GridSpec(I.P, 150));
        EXPECT_NEAR(c.radius, o.value, 2 * diag / 150);
        EXPECT_NEAR(radius_at(I.P, triangulate(I.P), I.hs, c.center), c.radius, 1e-7 * diag);
        EXPECT_NE(point_in_polygon(I.P, c.center), Location::Outside);
    }
}

TEST(GeodesicCenter, NoRandomPointDoesBetter) {
    std::mt19937_64 rng(3);
    for (const auto& I : instances(8, true)) {
        double diag = I.P.bbox_diag();
        auto T = triangulate(I.P);
        auto c = geodesic_center(I.P, I.hs);
        for (int i = 0; i < 1000; ++i) {
            Point2 x = random_interior_point(I.P, rng);
            ASSERT_GE(radius_at(I.P, T, I.hs, x), c.radius - 1e-6 * diag);
        }
    }
}

TEST(GeodesicCenter, DeterminingSetReproducesTheCenter) {
    int checked = 0;
    for (const auto& I : instances(20, true)) {
        double diag = I.P.bbox_diag();
        auto c = geodesic_center(I.P, I.hs);
        if (c.degenerate || c.degenerate_segment) continue;
        ASSERT_GE(c.determining.size(), 2u);
        ASSERT_LE(c.determining.size(), 3u);
        std::vector<HalfPolygon> sub;
        for (const auto& H : I.hs)
            if (std::find(c.determining.begin(), c.determining.end(), H.id) != c.determining.end()) sub.push_back(H);
        auto again = geodesic_center(I.P, sub);
        EXPECT_LE(dist(again.center, c.center), 1e-7 * diag);
        EXPECT_NEAR(again.radius, c.radius, 1e-7 * diag);
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(GeodesicCenter, TightDistancesEqualTheRadius) {
    for (const auto& I : instances(20, true)) {
        auto T = triangulate(I.P);
        auto c = geodesic_center(I.P, I.hs);
        for (const auto& H : I.hs) {
            double d = distance_to_half_polygon(I.P, T, c.center, H).distance;
            bool det = std::find(c.determining.begin(), c.determining.end(), H.id) != c.determining.end();
            if (det) EXPECT_NEAR(d, c.radius, I.P.tie_eps());
            else EXPECT_LE(d, c.radius + I.P.tie_eps());
        }
    }
}

TEST(GeodesicCenter, SeedOnlyChangesTheOrderOfWork) {
    for (const auto& I : instances(10)) {
        auto a = geodesic_center(I.P, I.hs, {1}), b = geodesic_center(I.P, I.hs, {42});
        EXPECT_NEAR(a.radius, b.radius, 1e-9 * I.P.bbox_diag());
        auto again = geodesic_center(I.P, I.hs, {1});
        EXPECT_EQ(a.center, again.center);
        EXPECT_EQ(a.radius, again.radius);
    }
}

TEST(GeodesicCenter, RemovingAHalfPolygonNeverIncreasesTheRadius) {
    std::mt19937_64 rng(9);
    for (const auto& I : instances(15)) {
        if (I.hs.size() < 2) continue;
        auto c = geodesic_center(I.P, I.hs);
        auto fewer = I.hs;
        fewer.erase(fewer.begin() + static_cast<long>(rng() % fewer.size()));
        EXPECT_LE(geodesic_center(I.P, fewer).radius, c.radius + I.P.tie_eps());
    }
}

TEST(ClassifyConstraints, AgreeWithDistancesInsideTheRegion) {
    std::mt19937_64 rng(4);
    int checked = 0;
    for (const auto& I : instances(15, true)) {
        double diag = I.P.bbox_diag();
        auto T = triangulate(I.P);
        auto hs = sort_and_filter(I.P, I.hs);
        auto loc = locate_triangle(I.P, T, hs);
        if (loc.on_chord) continue;
        auto R = refine_to_homogeneous(I.P, T, loc.triangle, hs);
        if (R.on_chord) continue;
        auto cs = classify_constraints(I.P, T, R.witness, hs);
        std::uniform_real_distribution<double> U(0, 0.99);
        for (int i = 0; i < 20; ++i) {
            Point2 v = R.boundary[rng() % R.boundary.size()];
            Point2 x = R.witness + (v - R.witness) * U(rng);
            for (const auto& H : hs) {
                double d = distance_to_half_polygon(I.P, T, x, H).distance;
                auto it = std::find_if(cs.begin(), cs.end(), [&](const Constraint& c) { return c.id == H.id; });
                if (it == cs.end()) EXPECT_LE(d, 1e-6 * diag);
                else EXPECT_NEAR(it->value(x), d, 1e-6 * diag);
            }
        }
        ++checked;
    }
    EXPECT_GE(checked, 3);
}

TEST(ClassifyConstraints, ConvexPolygonHasNoReflexWaypoints) {
    auto P = unit_square();
    auto T = triangulate(P);
    std::vector<HalfPolygon> hs{half(P, {0.2, 0}, {0, 0.2}, 0), half(P, {1, 0.3}, {0.7, 0}, 1),
                                half(P, {0.5, 1}, {1, 0.5}, 2)};
    auto cs = classify_constraints(P, T, {0.5, 0.45}, hs);
    ASSERT_EQ(cs.size(), 3u);
    for (const auto& c : cs) {
        if (c.kind == Constraint::Kind::HalfPlane) continue;
        EXPECT_EQ(c.kappa, 0);
        const auto& H = hs[static_cast<size_t>(c.id)];
        EXPECT_TRUE(c.u == H.p.p || c.u == H.q.p);
    }
}
