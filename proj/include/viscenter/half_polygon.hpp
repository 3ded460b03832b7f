#pragma once

#include <algorithm>
#include <vector>

#include "polygon.hpp"

namespace viscenter {

// The side of chord pq that contains the clockwise boundary from p to q.
// That side lies to the left of the directed chord p->q.
struct HalfPolygon {
    BoundaryPoint p;
    BoundaryPoint q;
    int id = 0;

    Point2 inward_normal() const { return normalized(perp(q.p - p.p)); }
    // Signed distance to the chord line, positive on the H side.
    double side(Point2 x) const { return dot(inward_normal(), x - p.p); }
};

struct Window {
    HalfPolygon half;
    Point2 source;
    int fulcrum = -1;
    BoundaryPoint tip;
};

// Clockwise offset of boundary point b from H.p, with chord endpoints snapped exactly.
inline double arc_offset(const Polygon& P, const HalfPolygon& H, const BoundaryPoint& b) {
    if (dist(b.p, H.p.p) <= P.eps()) return 0.0;
    if (dist(b.p, H.q.p) <= P.eps()) return cyclic_offset(P, H.p.position(), H.q.position());
    return cyclic_offset(P, H.p.position(), b.position());
}

// The explicit boundary of H: p, the polygon vertices strictly inside the arc, q.
inline std::vector<Point2> half_polygon_boundary(const Polygon& P, const HalfPolygon& H) {
    std::vector<Point2> out{H.p.p};
    double len = cyclic_offset(P, H.p.position(), H.q.position());
    int n = P.size();
    for (int k = 1; k <= n; ++k) {
        int v = (H.p.edge + k) % n;
        double off = cyclic_offset(P, H.p.position(), static_cast<double>(v));
        if (off <= 0 || off >= len) break;
        if (dist(P[v], H.p.p) <= P.eps() || dist(P[v], H.q.p) <= P.eps()) continue;
        out.push_back(P[v]);
    }
    out.push_back(H.q.p);
    return out;
}

// On-chord counts as inside.
inline bool contains_point(const Polygon& P, const HalfPolygon& H, Point2 x) {
    auto sub = half_polygon_boundary(P, H);
    if (sub.size() < 3) return segment_distance(x, H.p.p, H.q.p) <= P.eps();
    return point_in_polygon(Polygon::from_clockwise(std::move(sub), P.eps()), x) != Location::Outside;
}

// inner is a subset of outer: inner's boundary arc lies within outer's.
inline bool half_contains(const Polygon& P, const HalfPolygon& outer, const HalfPolygon& inner) {
    double len = cyclic_offset(P, outer.p.position(), outer.q.position());
    double o1 = arc_offset(P, outer, inner.p);
    double o2 = arc_offset(P, outer, inner.q);
    const double tiny = 1e-12 * P.size();
    return o1 <= o2 + tiny && o2 <= len + tiny;
}

inline bool same_chord(const Polygon& P, const HalfPolygon& a, const HalfPolygon& b) {
    return dist(a.p.p, b.p.p) <= P.eps() && dist(a.q.p, b.q.p) <= P.eps();
}

// Cyclic sort by first endpoint; drop every half-polygon that contains another; collapse duplicates.
inline std::vector<HalfPolygon> sort_and_filter(const Polygon& P, std::vector<HalfPolygon> hs) {
    size_t k = hs.size();
    std::vector<char> drop(k, 0);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (same_chord(P, hs[i], hs[j])) {
                if (j < i) drop[i] = 1;
            } else if (half_contains(P, hs[i], hs[j])) {
                drop[i] = 1;
            }
        }
    std::vector<HalfPolygon> out;
    for (size_t i = 0; i < k; ++i)
        if (!drop[i]) out.push_back(hs[i]);
    std::stable_sort(out.begin(), out.end(), [&](const HalfPolygon& a, const HalfPolygon& b) {
        if (a.p.position() != b.p.position()) return a.p.position() < b.p.position();
        return cyclic_offset(P, a.p.position(), a.q.position()) < cyclic_offset(P, b.p.position(), b.q.position());
    });
    return out;
}

// H(u,r): shoot the ray from u through reflex vertex r onward; keep the side holding u.
inline Window build_window(const Polygon& P, Point2 u, int r, int id = 0) {
    if (r < 0 || r >= P.size() || !is_reflex(P, r)) throw Error(ErrorKind::NotReflex, r);
    Point2 pr = P[r];
    if (dist(u, pr) <= P.eps()) throw Error(ErrorKind::NoWindow, r);
    if (!visible(P, u, pr)) throw Error(ErrorKind::NotVisible, r);
    Point2 prev = P[P.prev(r)], next = P[P.next(r)];
    if (std::abs(orientation(P, pr, prev, u)) == 0 || std::abs(orientation(P, pr, next, u)) == 0)
        throw Error(ErrorKind::NoWindow, r);  // grazing contact
    Point2 d = normalized(pr - u);
    double cone = angle_ccw(prev - pr, next - pr);
    double a = angle_ccw(prev - pr, d);
    if (!(a > 0 && a < cone)) throw Error(ErrorKind::NoWindow, r);  // ray leaves P at r
    BoundaryPoint tip = ray_shoot(P, pr, d);
    HalfPolygon H{vertex_point(P, r), tip, id};
    if (!contains_point(P, H, u)) H = HalfPolygon{tip, vertex_point(P, r), id};
    return Window{H, u, r, tip};
}

}  // namespace viscenter
