#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "point.hpp"

namespace viscenter {

// Simple polygon, stored clockwise. Immutable after construction.
class Polygon {
public:
    Polygon() = default;

    // Trusts the caller: vertices must already be a clockwise simple polygon.
    // eps_override lets sub-polygons share their parent's tolerance.
    static Polygon from_clockwise(std::vector<Point2> v, double eps_override = -1) {
        Polygon P;
        P.v_ = std::move(v);
        double minx = INFINITY, miny = INFINITY, maxx = -INFINITY, maxy = -INFINITY;
        for (auto p : P.v_) {
            minx = std::min(minx, p.x);
            miny = std::min(miny, p.y);
            maxx = std::max(maxx, p.x);
            maxy = std::max(maxy, p.y);
        }
        P.lo_ = {minx, miny};
        P.hi_ = {maxx, maxy};
        P.diag_ = std::hypot(maxx - minx, maxy - miny);
        P.eps_ = eps_override > 0 ? eps_override : 1e-9 * P.diag_;
        return P;
    }

    int size() const { return static_cast<int>(v_.size()); }
    const Point2& operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    const std::vector<Point2>& vertices() const { return v_; }
    int next(int i) const { return i + 1 == size() ? 0 : i + 1; }
    int prev(int i) const { return i == 0 ? size() - 1 : i - 1; }
    double bbox_diag() const { return diag_; }
    double eps() const { return eps_; }
    double tie_eps() const { return 1e-7 * diag_; }
    Point2 bbox_lo() const { return lo_; }
    Point2 bbox_hi() const { return hi_; }

    // Positive for clockwise storage.
    double area() const {
        double s = 0;
        for (int i = 0; i < size(); ++i) s += cross((*this)[i], (*this)[next(i)]);
        return -0.5 * s;
    }

private:
    std::vector<Point2> v_;
    Point2 lo_, hi_;
    double diag_ = 0, eps_ = 0;
};

// +1 left of a->b, -1 right, 0 when c is within tol of the line.
inline int orientation(Point2 a, Point2 b, Point2 c, double tol) {
    double l = dist(a, b);
    if (l == 0) return 0;
    double d = cross(a, b, c) / l;
    if (d > tol) return 1;
    if (d < -tol) return -1;
    return 0;
}

inline int orientation(const Polygon& P, Point2 a, Point2 b, Point2 c) {
    return orientation(a, b, c, P.eps());
}

inline Polygon validate_polygon(std::span<const Point2> raw) {
    int n = static_cast<int>(raw.size());
    for (int i = 0; i < n; ++i)
        if (!finite(raw[static_cast<size_t>(i)])) throw Error(ErrorKind::NonFiniteCoordinate, i);
    if (n < 3) throw Error(ErrorKind::TooFewVertices, n);

    std::vector<Point2> v(raw.begin(), raw.end());
    Polygon probe = Polygon::from_clockwise(v);
    double eps = probe.eps();
    for (int i = 0; i < n; ++i)
        if (dist(v[i], v[(i + 1) % n]) <= eps) throw Error(ErrorKind::DuplicateConsecutiveVertex, (i + 1) % n);

    for (int i = 0; i < n; ++i) {
        Point2 a = v[i], b = v[(i + 1) % n];
        for (int j = i + 1; j < n; ++j) {
            Point2 c = v[j], d = v[(j + 1) % n];
            bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (!adjacent) {
                if (segment_segment_distance(a, b, c, d) <= eps) throw Error(ErrorKind::SelfIntersecting, i);
                continue;
            }
            // Adjacent edges share one endpoint; they must not fold back onto each other.
            Point2 shared = (j == i + 1) ? b : a;
            Point2 far1 = (j == i + 1) ? a : b;
            Point2 far2 = (j == i + 1) ? d : c;
            if (segment_distance(far1, c, d) <= eps && dist(far1, shared) > eps)
                throw Error(ErrorKind::SelfIntersecting, i);
            if (segment_distance(far2, a, b) <= eps && dist(far2, shared) > eps)
                throw Error(ErrorKind::SelfIntersecting, j);
        }
    }

    double s = 0;
    for (int i = 0; i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
    if (std::abs(0.5 * s) <= eps * probe.bbox_diag()) throw Error(ErrorKind::SelfIntersecting, 0);
    if (s > 0) std::reverse(v.begin() + 1, v.end());  // ccw input; keep v[0] first
    return Polygon::from_clockwise(std::move(v));
}

// A point on the boundary; position() = edge + t gives the exact cyclic order.
struct BoundaryPoint {
    int edge = 0;
    double t = 0;
    Point2 p;

    double position() const { return edge + t; }
    bool at_vertex() const { return t == 0; }
};

// Builds a canonical boundary point: t in [0,1), snapped to a vertex within eps.
inline BoundaryPoint make_boundary_point(const Polygon& P, int edge, double t) {
    int n = P.size();
    edge = ((edge % n) + n) % n;
    t = std::clamp(t, 0.0, 1.0);
    Point2 a = P[edge], b = P[P.next(edge)];
    Point2 x = lerp(a, b, t);
    if (dist(x, b) <= P.eps()) return {P.next(edge), 0.0, b};
    if (dist(x, a) <= P.eps()) return {edge, 0.0, a};
    return {edge, t, x};
}

inline BoundaryPoint vertex_point(const Polygon& P, int i) { return {i, 0.0, P[i]}; }

// Nearest boundary location of x if it is within eps of the boundary.
inline std::optional<BoundaryPoint> locate_on_boundary(const Polygon& P, Point2 x) {
    int best = -1;
    double bd = INFINITY, bt = 0;
    for (int i = 0; i < P.size(); ++i) {
        double t;
        double d = segment_distance(x, P[i], P[P.next(i)], &t);
        if (d < bd) {
            bd = d;
            best = i;
            bt = t;
        }
    }
    if (best < 0 || bd > P.eps()) return std::nullopt;
    return make_boundary_point(P, best, bt);
}

// Cyclic offset of position pos measured clockwise from position from, in [0, n).
inline double cyclic_offset(const Polygon& P, double from, double pos) {
    double d = pos - from;
    if (d < 0) d += P.size();
    return d;
}

enum class Location { Inside, OnBoundary, Outside };

inline Location point_in_polygon(const Polygon& P, Point2 x) {
    int n = P.size();
    bool in = false;
    for (int i = 0, j = n - 1; i < n; j = i++) {
        Point2 a = P[j], b = P[i];
        if (segment_distance(x, a, b) <= P.eps()) return Location::OnBoundary;
        if ((a.y > x.y) != (b.y > x.y)) {
            double xi = a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x.x < xi) in = !in;
        }
    }
    return in ? Location::Inside : Location::Outside;
}

inline void require_in_polygon(const Polygon& P, Point2 x) {
    if (point_in_polygon(P, x) == Location::Outside) throw Error(ErrorKind::PointOutsidePolygon);
}

// True iff the closed segment xy stays in P; touching the boundary is allowed.
inline bool visible(const Polygon& P, Point2 x, Point2 y) {
    require_in_polygon(P, x);
    require_in_polygon(P, y);
    double len = dist(x, y);
    double eps = P.eps();
    if (len <= eps) return true;
    Point2 d = (y - x) / len;
    int n = P.size();
    std::vector<double> cuts{0.0, 1.0};
    auto side = [&](double s) { return s > eps ? 1 : (s < -eps ? -1 : 0); };
    for (int i = 0; i < n; ++i) {
        Point2 p = P[i], q = P[P.next(i)];
        double dp = cross(d, p - x), dq = cross(d, q - x);
        int sp = side(dp), sq = side(dq);
        double el = dist(p, q);
        int sx = side(cross(q - p, x - p) / el), sy = side(cross(q - p, y - p) / el);
        if (sp * sq < 0 && sx * sy < 0) return false;
        if (sp == 0) {
            double t = dot(p - x, d) / len;
            if (t > 0 && t < 1) cuts.push_back(t);
        }
        if (sp * sq < 0 && sx * sy <= 0) {
            // the segment ends on this edge's interior, or the edge ends on the segment
            double t = dp / (dp - dq);
            Point2 hit = lerp(p, q, t);
            double s = dot(hit - x, d) / len;
            if (s > 0 && s < 1) cuts.push_back(s);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        if ((cuts[k + 1] - cuts[k]) * len <= eps) continue;
        Point2 m = lerp(x, y, 0.5 * (cuts[k] + cuts[k + 1]));
        if (point_in_polygon(P, m) == Location::Outside) return false;
    }
    return true;
}

// Interior angle at vertex i exceeds pi (a left turn on the clockwise boundary).
inline bool is_reflex(const Polygon& P, int i) {
    return orientation(P, P[P.prev(i)], P[i], P[P.next(i)]) > 0;
}

// Where the ray from origin leaves P. The ray passes through boundary contacts
// that do not exit P, such as a reflex vertex it grazes.
inline BoundaryPoint ray_shoot(const Polygon& P, Point2 origin, Point2 direction) {
    double dn = norm(direction);
    if (!(dn > 0) || !std::isfinite(dn)) throw Error(ErrorKind::DegenerateDirection);
    Point2 d = direction / dn;
    double eps = P.eps();
    struct Hit {
        double s;
        int edge;
        double t;
    };
    std::vector<Hit> hits;
    int n = P.size();
    for (int i = 0; i < n; ++i) {
        Point2 p = P[i], q = P[P.next(i)];
        Point2 e = q - p;
        double den = cross(d, e);
        double el = norm(e);
        if (std::abs(den) <= 1e-14 * el) {
            if (std::abs(cross(d, p - origin)) <= eps) {
                double sp = dot(p - origin, d), sq = dot(q - origin, d);
                if (sp > eps) hits.push_back({sp, i, 0.0});
                if (sq > eps) hits.push_back({sq, i, 1.0});
            }
            continue;
        }
        double s = cross(p - origin, e) / den;
        double u = cross(p - origin, d) / den;
        double tol = eps / el;
        if (s > eps && u >= -tol && u <= 1 + tol) hits.push_back({s, i, std::clamp(u, 0.0, 1.0)});
    }
    if (hits.empty()) throw Error(ErrorKind::DegenerateDirection);
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.edge < b.edge;
    });
    for (size_t k = 0; k < hits.size(); ++k) {
        double step = 1e-6 * P.bbox_diag();
        for (size_t j = k + 1; j < hits.size(); ++j)
            if (hits[j].s - hits[k].s > eps) {
                step = std::min(step, 0.5 * (hits[j].s - hits[k].s));
                break;
            }
        if (k + 1 < hits.size() && point_in_polygon(P, origin + d * (hits[k].s + step)) != Location::Outside)
            continue;
        BoundaryPoint b = make_boundary_point(P, hits[k].edge, hits[k].t);
        return b;
    }
    return make_boundary_point(P, hits.back().edge, hits.back().t);
}

}  // namespace viscenter
