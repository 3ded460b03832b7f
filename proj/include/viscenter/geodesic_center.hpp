#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "chord_oracle.hpp"
#include "feasible_disk.hpp"

namespace viscenter {

struct Segment {
    Point2 a, b;
};

struct CenterResult {
    Point2 center;
    double radius = 0;
    std::vector<int> determining;               // half-polygon ids
    std::optional<Segment> degenerate_segment;  // every point on it is a center
    bool degenerate = false;                    // more than three constraints tight
    int oracle_calls = 0;
};

struct LocateResult {
    int triangle = -1;
    std::optional<ChordOracleResult> on_chord;
    int oracle_calls = 0;
};

namespace detail {

inline PolyChord diagonal_chord(const Polygon& P, const Triangulation& T, int d) {
    auto [i, j] = T.diagonals[static_cast<size_t>(d)];
    return {vertex_point(P, i), vertex_point(P, j)};
}

// Does the triangle on diagonal d's `first` side lie left of K?
inline bool first_side_left(const Polygon& P, const Triangulation& T, int d, const PolyChord& K) {
    auto [i, j] = T.diagonals[static_cast<size_t>(d)];
    for (int v : T.triangles[static_cast<size_t>(T.diagonal_tris[static_cast<size_t>(d)].first)])
        if (v != i && v != j) return cross(K.b.p - K.a.p, P[v] - K.a.p) > 0;
    return false;
}

}  // namespace detail

// Narrows the triangulation down to one triangle holding a center, one chord
// oracle call per balanced diagonal.
inline LocateResult locate_triangle(const Polygon& P, const Triangulation& T, const std::vector<HalfPolygon>& hs) {
    LocateResult out;
    std::vector<int> active(T.triangles.size());
    for (size_t i = 0; i < active.size(); ++i) active[i] = static_cast<int>(i);
    while (active.size() > 1) {
        auto split = balanced_diagonal(T, active);
        PolyChord K = detail::diagonal_chord(P, T, split.diagonal);
        auto res = chord_oracle(P, T, hs, K);
        ++out.oracle_calls;
        if (res.side == ChordSide::OnChord) {
            out.on_chord = res;
            out.triangle = active.front();
            return out;
        }
        bool first_left = detail::first_side_left(P, T, split.diagonal, K);
        bool keep_first = (res.side == ChordSide::Left) == first_left;
        active = keep_first ? split.side_first : split.side_second;
    }
    out.triangle = active.front();
    return out;
}

struct HomogeneousRegion {
    std::vector<Point2> boundary;  // convex, counter-clockwise
    Point2 witness;
    std::optional<ChordOracleResult> on_chord;
    int oracle_calls = 0;
};

namespace detail {

// Keeps the part of a convex polygon where line.eval(x) >= 0.
inline std::vector<Point2> clip(const std::vector<Point2>& poly, const Line& line) {
    std::vector<Point2> out;
    size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        Point2 p = poly[i], q = poly[(i + 1) % m];
        double fp = line.eval(p), fq = line.eval(q);
        if (fp >= 0) out.push_back(p);
        if ((fp >= 0) != (fq >= 0)) out.push_back(p + (q - p) * (fp / (fp - fq)));
    }
    return out;
}

inline Point2 centroid(const std::vector<Point2>& poly) {
    double A = 0;
    Point2 c{};
    for (size_t i = 0; i < poly.size(); ++i) {
        Point2 p = poly[i], q = poly[(i + 1) % poly.size()];
        double w = cross(p, q);
        A += w;
        c = c + (p + q) * w;
    }
    if (std::abs(A) <= 1e-300) {
        Point2 s{};
        for (Point2 p : poly) s = s + p;
        return s / static_cast<double>(poly.size());
    }
    return c / (3 * A);
}

inline void add_line(std::vector<Line>& lines, Point2 p, Point2 dir, double eps) {
    if (norm(dir) <= eps) return;
    Line l = Line::through(p, dir);
    for (const auto& m : lines)
        if ((std::abs(m.c - l.c) <= eps && norm(m.n - l.n) <= 1e-12) ||
            (std::abs(m.c + l.c) <= eps && norm(m.n + l.n) <= 1e-12))
            return;
    lines.push_back(l);
}

// First-step signature of the path from x to H: inside, perpendicular, or via a point.
struct PathShape {
    HitKind kind;
    bool single;
    Point2 first;

    bool operator==(const PathShape& o) const {
        return kind == o.kind && single == o.single && (kind == HitKind::AlreadyInside || dist(first, o.first) <= 1e-9 * (1 + norm(first)));
    }
};

inline PathShape path_shape(const Polygon& P, const Triangulation& T, Point2 x, const HalfPolygon& H) {
    auto hit = distance_to_half_polygon(P, T, x, H);
    const auto& w = hit.path.waypoints;
    PathShape s{hit.kind, w.size() <= 2, w.size() >= 2 ? w[1] : x};
    if (hit.kind == HitKind::InteriorPerpendicular && s.single) s.first = {};
    return s;
}

}  // namespace detail

// Cuts the triangle down by every line where some path to some half-polygon
// changes shape. Each cut asks the chord oracle which side keeps the center.
inline HomogeneousRegion refine_to_homogeneous(const Polygon& P, const Triangulation& T, int triangle,
                                               const std::vector<HalfPolygon>& hs) {
    HomogeneousRegion R;
    const double eps = P.eps();
    auto [i0, i1, i2] = T.triangles[static_cast<size_t>(triangle)];
    R.boundary = {P[i0], P[i2], P[i1]};  // clockwise triple, reversed

    std::vector<Line> lines;
    for (int c : {i0, i1, i2}) {
        auto t = spt_from_boundary(P, T, vertex_point(P, c));
        for (const auto& nd : t.nodes)
            if (nd.parent >= 0) detail::add_line(lines, nd.p, nd.p - t.nodes[static_cast<size_t>(nd.parent)].p, eps);
    }
    for (const auto& H : hs) {
        Point2 d = H.q.p - H.p.p;
        detail::add_line(lines, H.p.p, d, eps);
        detail::add_line(lines, H.p.p, perp(d), eps);
        detail::add_line(lines, H.q.p, perp(d), eps);
    }

    auto cut = [&](const Line& line) {
        double lo = INFINITY, hi = -INFINITY;
        for (Point2 v : R.boundary) {
            lo = std::min(lo, line.eval(v));
            hi = std::max(hi, line.eval(v));
        }
        if (lo >= -eps || hi <= eps) return true;  // misses the interior
        auto a_side = detail::clip(R.boundary, line);
        Line neg{-line.n, -line.c};
        auto b_side = detail::clip(R.boundary, neg);
        // a point of the region on the line, and the chord of P through it
        std::vector<Point2> on;
        for (Point2 v : a_side)
            if (std::abs(line.eval(v)) <= 1e-12 * (1 + norm(v))) on.push_back(v);
        if (on.size() < 2) return true;
        Point2 dir = perp(line.n);
        auto [lo_on, hi_on] = std::minmax_element(on.begin(), on.end(),
                                                  [&](Point2 p, Point2 q) { return dot(p, dir) < dot(q, dir); });
        if (dot(*hi_on - *lo_on, dir) <= eps) return true;  // touches R at a corner
        Point2 m = (*lo_on + *hi_on) / 2.0;
        BoundaryPoint a = ray_shoot(P, m, -dir), b = ray_shoot(P, m, dir);
        // SPT lines run through vertices; stop at the nearest contact each way
        // so the pieces stay simple
        double sa = -dot(a.p - m, dir), sb = dot(b.p - m, dir);
        for (int v = 0; v < P.size(); ++v) {
            double s = dot(P[v] - m, dir);
            if (std::abs(cross(dir, P[v] - m)) > eps) continue;
            if (s > eps && s < sb - eps) {
                sb = s;
                b = vertex_point(P, v);
            } else if (s < -eps && -s < sa - eps) {
                sa = -s;
                a = vertex_point(P, v);
            }
        }
        PolyChord K{a, b};
        auto res = chord_oracle(P, T, hs, K);
        ++R.oracle_calls;
        if (res.side == ChordSide::OnChord) {
            R.on_chord = res;
            return false;
        }
        bool a_is_left = cross(dir, detail::centroid(a_side) - m) > 0;
        R.boundary = (res.side == ChordSide::Left) == a_is_left ? a_side : b_side;
        return true;
    };
    for (const auto& line : lines)
        if (!cut(line)) return R;

    // Shape check at the centroid and at points near each corner; any
    // disagreement adds the lines of the differing paths and cuts again.
    for (int round = 0; round < 6; ++round) {
        Point2 c = detail::centroid(R.boundary);
        std::vector<Point2> samples{c};
        for (Point2 v : R.boundary) samples.push_back(v + (c - v) * 0.01);
        std::vector<Line> extra;
        for (const auto& H : hs) {
            auto ref = detail::path_shape(P, T, c, H);
            for (Point2 s : samples) {
                if (detail::path_shape(P, T, s, H) == ref) continue;
                for (Point2 x : {c, s}) {
                    auto hit = distance_to_half_polygon(P, T, x, H);
                    const auto& w = hit.path.waypoints;
                    for (size_t k = 1; k + 1 < w.size(); ++k) detail::add_line(extra, w[k], w[k + 1] - w[k], eps);
                }
                detail::add_line(extra, H.p.p, perp(H.q.p - H.p.p), eps);
                detail::add_line(extra, H.q.p, perp(H.q.p - H.p.p), eps);
            }
        }
        if (extra.empty()) break;
        size_t before = R.boundary.size();
        auto snapshot = R.boundary;
        for (const auto& line : extra)
            if (!cut(line)) return R;
        if (R.boundary.size() == before && std::equal(snapshot.begin(), snapshot.end(), R.boundary.begin(),
                                                      [](Point2 p, Point2 q) { return p == q; }))
            break;
    }
    R.witness = detail::centroid(R.boundary);
    return R;
}

// One constraint per half-polygon at positive distance from the witness.
inline std::vector<Constraint> classify_constraints(const Polygon& P, const Triangulation& T, Point2 witness,
                                                    const std::vector<HalfPolygon>& hs) {
    std::vector<Constraint> out;
    for (const auto& H : hs) {
        auto hit = distance_to_half_polygon(P, T, witness, H);
        if (hit.kind == HitKind::AlreadyInside) continue;
        const auto& w = hit.path.waypoints;
        if (hit.kind == HitKind::InteriorPerpendicular && w.size() == 2) {
            Point2 a = -H.inward_normal();
            out.push_back(Constraint::half_plane(a, dot(a, H.p.p), H.id));
        } else {
            Point2 u = w[1];
            out.push_back(Constraint::disk(u, std::max(0.0, hit.distance - dist(witness, u)), H.id));
        }
    }
    return out;
}

inline double radius_at(const Polygon& P, const Triangulation& T, const std::vector<HalfPolygon>& hs, Point2 x) {
    double r = 0;
    for (const auto& H : hs) r = std::max(r, distance_to_half_polygon(P, T, x, H).distance);
    return r;
}

namespace detail {

// The stretch of centers through x along dir, found by bisection on the radius.
inline Segment center_segment(const Polygon& P, const Triangulation& T, const std::vector<HalfPolygon>& hs, Point2 x,
                              Point2 dir, double radius) {
    const double tol = P.eps();
    auto reach = [&](Point2 d) {
        double hi = dist(x, ray_shoot(P, x, d).p), lo = 0;
        if (radius_at(P, T, hs, x + d * hi) <= radius + tol) return hi;
        for (int it = 0; it < 100 && hi - lo > 1e-3 * tol; ++it) {
            double mid = 0.5 * (lo + hi);
            if (radius_at(P, T, hs, x + d * mid) <= radius + tol) lo = mid;
            else hi = mid;
        }
        return lo;
    };
    Point2 d = normalized(dir);
    return {x - d * reach(-d), x + d * reach(d)};
}

inline CenterResult from_chord(const Polygon& P, const Triangulation& T, const std::vector<HalfPolygon>& hs,
                               const ChordOracleResult& res) {
    CenterResult out;
    out.center = res.rc.x;
    out.radius = res.rc.info.radius;
    out.determining = res.rc.info.farthest_ids;
    if (out.radius > 0 && res.wedge.decision == SideDecision::IsCenterSegment) {
        Point2 v = res.rc.info.first_vectors[static_cast<size_t>(res.wedge.bounding[0])];
        out.degenerate_segment = center_segment(P, T, hs, out.center, perp(v), out.radius);
        out.center = (out.degenerate_segment->a + out.degenerate_segment->b) / 2.0;
    }
    if (out.radius <= 0) out.determining.clear();
    out.degenerate = out.determining.size() > 3;
    return out;
}

}  // namespace detail

struct SolverOptions {
    std::uint64_t seed = 0;
};

// Center of a set of half-polygons: the point minimizing the largest geodesic distance to them.
inline CenterResult geodesic_center(const Polygon& P, const std::vector<HalfPolygon>& input,
                                    const SolverOptions& opt = {}) {
    if (input.empty()) throw Error(ErrorKind::EmptyConstraintSet);
    auto hs = sort_and_filter(P, input);
    Triangulation T = triangulate(P);

    auto loc = locate_triangle(P, T, hs);
    if (loc.on_chord) {
        auto out = detail::from_chord(P, T, hs, *loc.on_chord);
        out.oracle_calls = loc.oracle_calls;
        return out;
    }
    auto R = refine_to_homogeneous(P, T, loc.triangle, hs);
    int calls = loc.oracle_calls + R.oracle_calls;
    if (R.on_chord) {
        auto out = detail::from_chord(P, T, hs, *R.on_chord);
        out.oracle_calls = calls;
        return out;
    }
    auto cs = classify_constraints(P, T, R.witness, hs);
    CenterResult out;
    out.oracle_calls = calls;
    if (cs.empty()) {
        out.center = R.witness;
        return out;
    }
    auto sol = min_feasible_disk(cs, opt.seed, R.witness);
    out.center = sol.x;
    out.radius = sol.rho;
    if (out.radius <= 0) return out;
    for (int b : sol.basis) out.determining.push_back(cs[static_cast<size_t>(b)].id);
    std::sort(out.determining.begin(), out.determining.end());
    int tight = 0;
    for (const auto& c : cs)
        if (std::abs(c.value(sol.x) - sol.rho) <= P.tie_eps()) ++tight;
    out.degenerate = tight > 3;
    // Two antiparallel half-planes alone fix only the radius: the centers form a segment.
    if (sol.basis.size() == 2 && cs[static_cast<size_t>(sol.basis[0])].kind == Constraint::Kind::HalfPlane &&
        cs[static_cast<size_t>(sol.basis[1])].kind == Constraint::Kind::HalfPlane) {
        Point2 n = cs[static_cast<size_t>(sol.basis[0])].a;
        out.degenerate_segment = detail::center_segment(P, T, hs, sol.x, perp(n), out.radius);
        out.center = (out.degenerate_segment->a + out.degenerate_segment->b) / 2.0;
    }
    return out;
}

}  // namespace viscenter
