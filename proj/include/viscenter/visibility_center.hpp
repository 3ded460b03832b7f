#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "geodesic_center.hpp"

namespace viscenter {

struct SiteReport {
    int site = 0;
    double distance = 0;
    GeodesicPath path;  // empty when the center sees the site
    std::optional<Window> window;
};

struct VisibilityAnswer {
    CenterResult center;
    std::vector<Window> windows;  // the reduced set; half ids index into it
    std::vector<SiteReport> per_site;
};

namespace detail {

// H(u,r) where the ray u->r continues into P beyond r. Unlike build_window this
// accepts u on the line of an edge at r: vertex sites next to r need it.
// Returns nullopt when u does not see r or the ray leaves P at r.
inline std::optional<Window> site_window(const Polygon& P, Point2 u, int r, int id = 0) {
    if (!is_reflex(P, r)) return std::nullopt;
    Point2 pr = P[r];
    if (dist(u, pr) <= P.eps() || !visible(P, u, pr)) return std::nullopt;
    Point2 e_in = P[P.prev(r)] - pr, e_out = P[P.next(r)] - pr;
    const double pi = std::numbers::pi, tol = 1e-12;
    double cone = angle_ccw(e_in, e_out);
    double b = angle_ccw(e_in, u - pr);
    if (b > 2 * pi - tol) b = 0;
    bool prev_side;  // which side of the chord holds u
    if (b < cone - pi - tol) prev_side = true;
    else if (b > pi + tol && b <= cone + tol) prev_side = false;
    else return std::nullopt;
    Point2 d = normalized(pr - u);
    BoundaryPoint tip = ray_shoot(P, pr, d);
    HalfPolygon H = prev_side ? HalfPolygon{tip, vertex_point(P, r), id} : HalfPolygon{vertex_point(P, r), tip, id};
    return Window{H, u, r, tip};
}

}  // namespace detail

struct VisibilityDistance {
    double distance = 0;
    GeodesicPath path;
    std::optional<Window> window;
};

// d_V(x,u): geodesic distance from x to the nearest point that sees u.
inline VisibilityDistance distance_to_visibility(const Polygon& P, const Triangulation& T, Point2 x, Point2 u) {
    require_in_polygon(P, x);
    require_in_polygon(P, u);
    VisibilityDistance out;
    if (visible(P, x, u)) return out;
    auto g = geodesic(P, T, x, u);
    // last bend before u
    int r = -1;
    for (size_t i = g.vertex_ids.size() - 1; i-- > 1;)
        if (g.vertex_ids[i] >= 0) {
            r = g.vertex_ids[i];
            break;
        }
    if (r < 0) return out;
    out.window = detail::site_window(P, u, r);
    if (!out.window) return out;
    auto hit = distance_to_half_polygon(P, T, x, out.window->half);
    out.distance = hit.distance;
    out.path = hit.path;
    return out;
}

// The minimal windows: at each reflex vertex, the extreme ray on either side.
inline std::vector<Window> compute_H_reflex(const Polygon& P, const std::vector<Point2>& U) {
    std::vector<Window> all;
    const double pi = std::numbers::pi;
    for (int r = 0; r < P.size(); ++r) {
        if (!is_reflex(P, r)) continue;
        Point2 e_in = P[P.prev(r)] - P[r];
        // a = angle of the ray beyond r, from e_in; larger a means a smaller half on the next side
        std::optional<Window> best_next, best_prev;
        double a_next = -1, a_prev = 10;
        for (const auto& u : U) {
            auto w = detail::site_window(P, u, r);
            if (!w) continue;
            double a = angle_ccw(e_in, P[r] - u);
            if (a > 2 * pi - 1e-12) a = 0;
            bool prev_side = w->half.q.at_vertex() && w->half.q.edge == r;
            if (prev_side) {
                if (a < a_prev) a_prev = a, best_prev = w;
            } else if (a > a_next) {
                a_next = a, best_next = w;
            }
        }
        if (best_next) all.push_back(*best_next);
        if (best_prev) all.push_back(*best_prev);
    }
    std::vector<HalfPolygon> hs;
    for (size_t i = 0; i < all.size(); ++i) {
        all[i].half.id = static_cast<int>(i);
        hs.push_back(all[i].half);
    }
    std::vector<Window> out;
    for (const auto& H : sort_and_filter(P, hs)) {
        out.push_back(all[static_cast<size_t>(H.id)]);
        out.back().half.id = static_cast<int>(out.size()) - 1;
    }
    return out;
}

inline VisibilityAnswer visibility_center(const Polygon& P, const std::vector<Point2>& U,
                                          const SolverOptions& opt = {}) {
    if (U.empty()) throw Error(ErrorKind::EmptySiteSet);
    for (size_t i = 0; i < U.size(); ++i)
        if (point_in_polygon(P, U[i]) == Location::Outside) throw Error(ErrorKind::PointOutsidePolygon, static_cast<long>(i));
    Triangulation T = triangulate(P);
    VisibilityAnswer ans;
    ans.windows = compute_H_reflex(P, U);
    if (ans.windows.empty()) {
        // every site sees all of P
        const auto& t = T.triangles.front();
        ans.center.center = (P[t[0]] + P[t[1]] + P[t[2]]) / 3.0;
    } else {
        std::vector<HalfPolygon> hs;
        for (const auto& w : ans.windows) hs.push_back(w.half);
        ans.center = geodesic_center(P, hs, opt);
    }
    double worst = 0;
    for (size_t i = 0; i < U.size(); ++i) {
        auto d = distance_to_visibility(P, T, ans.center.center, U[i]);
        ans.per_site.push_back({static_cast<int>(i), d.distance, d.path, d.window});
        worst = std::max(worst, d.distance);
    }
    if (ans.windows.empty()) ans.center.radius = worst;
    return ans;
}

inline VisibilityAnswer visibility_center_of_polygon(const Polygon& P, const SolverOptions& opt = {}) {
    std::vector<Point2> U(P.vertices().begin(), P.vertices().end());
    return visibility_center(P, U, opt);
}

}  // namespace viscenter
