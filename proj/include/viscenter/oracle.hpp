#pragma once

// Brute-force references. Nothing here reads solver internals: distances come
// from visibility-graph shortest paths and sampled chords, membership from an
// explicit point-in-polygon test on the materialized half-polygon.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "half_polygon.hpp"
#include "polygon.hpp"

namespace viscenter {

struct Instance {
    Polygon polygon;
    std::vector<Point2> sites;
};

namespace detail {

inline bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
    double o1 = cross(a, b, c), o2 = cross(a, b, d), o3 = cross(c, d, a), o4 = cross(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

// Untangle a closed tour by 2-opt moves until no two edges cross.
inline void two_opt(std::vector<Point2>& v) {
    size_t n = v.size();
    for (int guard = 0; guard < 10000; ++guard) {
        bool changed = false;
        for (size_t i = 0; i < n && !changed; ++i)
            for (size_t j = i + 2; j < n && !changed; ++j) {
                if (i == 0 && j == n - 1) continue;
                if (segments_cross(v[i], v[i + 1], v[j], v[(j + 1) % n])) {
                    std::reverse(v.begin() + static_cast<long>(i) + 1, v.begin() + static_cast<long>(j) + 1);
                    changed = true;
                }
            }
        if (!changed) return;
    }
}

// Rejects slivers: every vertex must keep a margin from non-incident edges,
// and no corner may be nearly straight or nearly a spike.
inline bool well_shaped(const Polygon& P, double margin) {
    int n = P.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i || P.next(j) == i) continue;
            if (segment_distance(P[i], P[j], P[P.next(j)]) < margin) return false;
        }
        Point2 u = normalized(P[P.prev(i)] - P[i]), w = normalized(P[P.next(i)] - P[i]);
        double s = std::abs(cross(u, w));
        if (s < 0.05) return false;
    }
    return true;
}

}  // namespace detail

inline double boundary_distance(const Polygon& P, Point2 x) {
    double d = INFINITY;
    for (int i = 0; i < P.size(); ++i) d = std::min(d, segment_distance(x, P[i], P[P.next(i)]));
    return d;
}

// Uniform interior point at least margin_frac * bbox_diag away from the boundary.
template <class Rng>
Point2 random_interior_point(const Polygon& P, Rng& rng, double margin_frac = 0.005) {
    std::uniform_real_distribution<double> ux(P.bbox_lo().x, P.bbox_hi().x), uy(P.bbox_lo().y, P.bbox_hi().y);
    for (;;) {
        Point2 x{ux(rng), uy(rng)};
        if (point_in_polygon(P, x) == Location::Inside && boundary_distance(P, x) >= margin_frac * P.bbox_diag())
            return x;
    }
}

// Deterministic random simple polygon with 6..n_max vertices (at least 4) and
// 1..m_max interior sites (none when m_max is 0).
inline Instance random_instance(std::uint64_t seed, int n_max, int m_max) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 12345);
    int n_lo = std::min(6, std::max(4, n_max));
    std::uniform_int_distribution<int> nd(n_lo, std::max(n_lo, n_max));
    std::uniform_real_distribution<double> U(0, 10);
    Instance inst;
    for (;;) {
        int n = nd(rng);
        std::vector<Point2> v(static_cast<size_t>(n));
        for (auto& p : v) p = {U(rng), U(rng)};
        detail::two_opt(v);
        try {
            Polygon P = validate_polygon(v);
            if (!detail::well_shaped(P, 0.01 * P.bbox_diag())) continue;
            inst.polygon = P;
            break;
        } catch (const Error&) {
            continue;
        }
    }
    if (m_max > 0) {
        std::uniform_int_distribution<int> md(1, m_max);
        int m = md(rng);
        for (int i = 0; i < m; ++i) inst.sites.push_back(random_interior_point(inst.polygon, rng, 0.01));
    }
    return inst;
}

// Dijkstra over the visibility graph on polygon vertices plus {x, y}.
inline double oracle_geodesic(const Polygon& P, Point2 x, Point2 y) {
    require_in_polygon(P, x);
    require_in_polygon(P, y);
    std::vector<Point2> nodes(P.vertices());
    nodes.push_back(x);
    nodes.push_back(y);
    size_t N = nodes.size(), src = N - 2, dst = N - 1;
    std::vector<double> d(N, INFINITY);
    std::vector<char> done(N, 0);
    d[src] = 0;
    for (size_t it = 0; it < N; ++it) {
        size_t u = N;
        for (size_t i = 0; i < N; ++i)
            if (!done[i] && (u == N || d[i] < d[u])) u = i;
        if (u == N || d[u] == INFINITY) break;
        if (u == dst) return d[u];
        done[u] = 1;
        for (size_t w = 0; w < N; ++w)
            if (!done[w] && visible(P, nodes[u], nodes[w])) d[w] = std::min(d[w], d[u] + dist(nodes[u], nodes[w]));
    }
    return d[dst];
}

// All-pairs vertex geodesics (Floyd-Warshall on the visibility graph), for repeated queries.
class GeodesicOracle {
public:
    explicit GeodesicOracle(const Polygon& P) : P_(P) {
        size_t n = static_cast<size_t>(P.size());
        D_.assign(n, std::vector<double>(n, INFINITY));
        for (size_t i = 0; i < n; ++i) {
            D_[i][i] = 0;
            for (size_t j = i + 1; j < n; ++j)
                if (visible(P, P[static_cast<int>(i)], P[static_cast<int>(j)]))
                    D_[i][j] = D_[j][i] = dist(P[static_cast<int>(i)], P[static_cast<int>(j)]);
        }
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) D_[i][j] = std::min(D_[i][j], D_[i][k] + D_[k][j]);
    }

    const Polygon& polygon() const { return P_; }
    double vertex_distance(int i, int j) const { return D_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    std::vector<int> visible_vertices(Point2 x) const {
        std::vector<int> out;
        for (int i = 0; i < P_.size(); ++i)
            if (visible(P_, x, P_[i])) out.push_back(i);
        return out;
    }

    double distance(Point2 x, Point2 y) const {
        if (visible(P_, x, y)) return dist(x, y);
        return distance(x, visible_vertices(x), y, visible_vertices(y));
    }

    // With precomputed visible-vertex sets; assumes x does not see y.
    double distance(Point2 x, const std::vector<int>& vx, Point2 y, const std::vector<int>& vy) const {
        double best = INFINITY;
        for (int v : vx)
            for (int w : vy)
                best = std::min(best, dist(x, P_[v]) + D_[static_cast<size_t>(v)][static_cast<size_t>(w)] + dist(P_[w], y));
        return best;
    }

private:
    Polygon P_;
    std::vector<std::vector<double>> D_;
};

// Membership by crossing-number on the explicit sub-polygon p, arc, q.
inline bool oracle_in_half(const Polygon& P, const HalfPolygon& H, Point2 x) {
    std::vector<Point2> sub{H.p.p};
    int n = P.size();
    double start = H.p.position(), len = H.q.position() - start;
    if (len <= 0) len += n;
    for (int k = 1; k <= n; ++k) {
        int v = (H.p.edge + k) % n;
        double off = v - start;
        if (off <= 0) off += n;
        if (off >= len) break;
        sub.push_back(P[v]);
    }
    sub.push_back(H.q.p);
    double eps = P.eps();
    if (segment_distance(x, H.p.p, H.q.p) <= eps) return true;
    bool in = false;
    for (size_t i = 0, j = sub.size() - 1; i < sub.size(); j = i++) {
        Point2 a = sub[j], b = sub[i];
        if (segment_distance(x, a, b) <= eps) return true;
        if ((a.y > x.y) != (b.y > x.y) && x.x < a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y)) in = !in;
    }
    return in;
}

// A chord through a random interior point in a random direction.
template <class Rng>
HalfPolygon random_chord_half(const Polygon& P, Rng& rng, int id = 0) {
    std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
    for (;;) {
        Point2 o = random_interior_point(P, rng);
        double t = ang(rng);
        Point2 d{std::cos(t), std::sin(t)};
        BoundaryPoint a = ray_shoot(P, o, d), b = ray_shoot(P, o, -d);
        if (dist(a.p, b.p) > 0.01 * P.bbox_diag()) return HalfPolygon{a, b, id};
    }
}

// Up to k windows H(u,r) from random interior sources and random reflex vertices.
// Falls back to random chords on polygons without reflex vertices.
template <class Rng>
std::vector<HalfPolygon> random_windows(const Polygon& P, Rng& rng, int k) {
    std::vector<int> reflex;
    for (int i = 0; i < P.size(); ++i)
        if (is_reflex(P, i)) reflex.push_back(i);
    std::vector<HalfPolygon> out;
    if (reflex.empty()) {
        for (int i = 0; i < k; ++i) out.push_back(random_chord_half(P, rng, i));
        return out;
    }
    std::uniform_int_distribution<size_t> pick(0, reflex.size() - 1);
    for (int attempt = 0; attempt < 200 * k && static_cast<int>(out.size()) < k; ++attempt) {
        Point2 u = random_interior_point(P, rng);
        int r = reflex[pick(rng)];
        try {
            auto w = build_window(P, u, r, static_cast<int>(out.size()));
            out.push_back(w.half);
        } catch (const Error&) {
        }
    }
    return out;
}

namespace detail {

// Parameter ranges t in (0,1) where the segment from x to A + t(B-A) properly
// crosses some polygon edge. Each edge contributes one open interval.
inline std::vector<std::pair<double, double>> shadows(const Polygon& P, Point2 x, Point2 A, Point2 B) {
    std::vector<std::pair<double, double>> out;
    Point2 D = B - A;
    for (int i = 0; i < P.size(); ++i) {
        Point2 p = P[i], q = P[P.next(i)];
        double sx = cross(p, q, x);
        if (sx == 0) continue;
        double wedge = cross(p - x, q - x);
        if (wedge == 0) continue;
        double lo = -INFINITY, hi = INFINITY;
        // g(t) = g0 + g1*t must be > 0
        auto keep = [&](double g0, double g1) {
            if (g1 == 0) {
                if (g0 <= 0) lo = INFINITY;
                return;
            }
            double r = -g0 / g1;
            if (g1 > 0) lo = std::max(lo, r);
            else hi = std::min(hi, r);
        };
        // beyond the line pq, seen from x
        keep(-sx * cross(p, q, A), -sx * cross(q - p, D));
        // inside the wedge at x spanned by p and q
        double sg = wedge > 0 ? 1 : -1;
        keep(sg * cross(p - x, A - x), sg * cross(p - x, D));
        keep(sg * cross(A - x, q - x), sg * cross(D, q - x));
        // unclamped, so a shadow running past an end still covers t = 0 or 1
        if (lo < hi && lo < 1 && hi > 0) out.emplace_back(lo, hi);
    }
    return out;
}

inline bool shadowed(const std::vector<std::pair<double, double>>& sh, double t) {
    for (auto [lo, hi] : sh)
        if (t > lo && t < hi) return true;
    return false;
}

// Euclidean distance from x to the nearest point of segment AB that x sees.
inline double nearest_visible_on_segment(const Polygon& P, Point2 x, Point2 A, Point2 B) {
    auto sh = shadows(P, x, A, B);
    Point2 D = B - A;
    double L2 = norm2(D);
    double tf = L2 > 0 ? std::clamp(dot(x - A, D) / L2, 0.0, 1.0) : 0.0;
    std::vector<double> cand{tf, 0.0, 1.0};
    for (auto [lo, hi] : sh) {
        if (lo > 0) cand.push_back(lo);
        if (hi < 1) cand.push_back(hi);
    }
    double best = INFINITY;
    for (double t : cand)
        if (!shadowed(sh, t)) best = std::min(best, dist(x, A + D * t));
    return best;
}

// A point just inside P next to vertex i, for visibility tests that start at a vertex.
inline Point2 nudge_inside(const Polygon& P, int i) {
    Point2 e_in = normalized(P[P.prev(i)] - P[i]), e_out = normalized(P[P.next(i)] - P[i]);
    double half = angle_ccw(e_in, e_out) / 2;
    Point2 dir{std::cos(half) * e_in.x - std::sin(half) * e_in.y, std::sin(half) * e_in.x + std::cos(half) * e_in.y};
    return P[i] + dir * (1e-8 * P.bbox_diag());
}

// A boundary point moved just inside, so sight lines cannot leave through its own edge.
inline Point2 off_boundary(const Polygon& P, const BoundaryPoint& b) {
    if (b.at_vertex()) return nudge_inside(P, b.edge);
    Point2 n = normalized(perp(P[P.next(b.edge)] - P[b.edge])) * (1e-8 * P.bbox_diag());
    return point_in_polygon(P, b.p + n) == Location::Inside ? b.p + n : b.p - n;
}

}  // namespace detail

struct GridSpec {
    int resolution = 300;
    Point2 lo, hi;

    GridSpec() = default;
    GridSpec(const Polygon& P, int res) : resolution(res), lo(P.bbox_lo()), hi(P.bbox_hi()) {
        if (res < 16) throw std::invalid_argument("grid resolution must be at least 16");
    }
    Point2 cell_center(int i, int j) const {
        return {lo.x + (i + 0.5) * (hi.x - lo.x) / resolution, lo.y + (j + 0.5) * (hi.y - lo.y) / resolution};
    }
    Point2 cell_size() const { return {(hi.x - lo.x) / resolution, (hi.y - lo.y) / resolution}; }
};

struct GridResult {
    double value = INFINITY;
    Point2 argmin;
    std::vector<Point2> argmin_cells;  // every cell center attaining the minimum (up to rounding)
};

namespace detail {

// Minimizes a per-cell objective over cell centers strictly inside P.
template <class F>
GridResult grid_minimize(const Polygon& P, const GridSpec& g, F&& objective) {
    std::vector<std::pair<Point2, double>> vals;
    GridResult res;
    for (int j = 0; j < g.resolution; ++j)
        for (int i = 0; i < g.resolution; ++i) {
            Point2 x = g.cell_center(i, j);
            if (point_in_polygon(P, x) != Location::Inside) continue;
            double v = objective(x, res.value);
            vals.emplace_back(x, v);
            if (v < res.value) {
                res.value = v;
                res.argmin = x;
            }
        }
    double tie = 1e-9 * P.bbox_diag();
    for (auto& [x, v] : vals)
        if (v <= res.value + tie) res.argmin_cells.push_back(x);
    return res;
}

}  // namespace detail

// Exact d(x,H) on the visibility graph: straight to the nearest chord point x
// sees, or through vertices and then straight on.
class HalfDistanceOracle {
public:
    HalfDistanceOracle(const GeodesicOracle& G, const HalfPolygon& H) : G_(G), H_(H) {
        const Polygon& P = G.polygon();
        int n = P.size();
        std::vector<double> direct(static_cast<size_t>(n));
        for (int w = 0; w < n; ++w)
            direct[static_cast<size_t>(w)] = detail::nearest_visible_on_segment(P, detail::nudge_inside(P, w), H.p.p, H.q.p);
        via_.assign(static_cast<size_t>(n), INFINITY);
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                via_[static_cast<size_t>(v)] = std::min(via_[static_cast<size_t>(v)], G.vertex_distance(v, w) + direct[static_cast<size_t>(w)]);
    }

    double operator()(Point2 x) const {
        const Polygon& P = G_.polygon();
        if (oracle_in_half(P, H_, x)) return 0;
        if (auto b = locate_on_boundary(P, x)) x = detail::off_boundary(P, *b);
        double best = detail::nearest_visible_on_segment(P, x, H_.p.p, H_.q.p);
        for (int v : G_.visible_vertices(x)) best = std::min(best, dist(x, P[v]) + via_[static_cast<size_t>(v)]);
        return best;
    }

private:
    const GeodesicOracle& G_;
    HalfPolygon H_;
    std::vector<double> via_;
};

// min over cells of max over H of d(x,H), where d(x,H) is 0 inside H and
// otherwise the least geodesic distance to `samples` evenly spaced chord points.
inline GridResult oracle_halfpolygon_radius(const Polygon& P, const std::vector<HalfPolygon>& hs, const GridSpec& g,
                                            int samples = 256) {
    GeodesicOracle G(P);
    int n = P.size();
    struct Prepared {
        Point2 A, B;
        std::vector<double> via;  // per vertex: least geodesic distance to a sample
    };
    std::vector<Prepared> prep;
    for (const auto& H : hs) {
        Prepared pr{H.p.p, H.q.p, std::vector<double>(static_cast<size_t>(n), INFINITY)};
        for (int j = 0; j < samples; ++j) {
            Point2 y = lerp(pr.A, pr.B, static_cast<double>(j) / (samples - 1));
            std::vector<int> vy;
            for (int w = 0; w < n; ++w)
                if (visible(P, y, P[w])) vy.push_back(w);
            for (int v = 0; v < n; ++v)
                for (int w : vy)
                    pr.via[static_cast<size_t>(v)] =
                        std::min(pr.via[static_cast<size_t>(v)], G.vertex_distance(v, w) + dist(P[w], y));
        }
        prep.push_back(std::move(pr));
    }
    return detail::grid_minimize(P, g, [&](Point2 x, double) {
        auto vx = G.visible_vertices(x);
        double worst = 0;
        for (size_t h = 0; h < hs.size(); ++h) {
            if (oracle_in_half(P, hs[h], x)) continue;
            const auto& pr = prep[h];
            double best = INFINITY;
            for (int v : vx) best = std::min(best, dist(x, P[v]) + pr.via[static_cast<size_t>(v)]);
            auto sh = detail::shadows(P, x, pr.A, pr.B);
            for (int j = 0; j < samples; ++j) {
                double t = static_cast<double>(j) / (samples - 1);
                if (!detail::shadowed(sh, t)) best = std::min(best, dist(x, lerp(pr.A, pr.B, t)));
            }
            worst = std::max(worst, best);
        }
        return worst;
    });
}

// Window segments bounding the visibility region of u, found by casting rays
// from u through every reflex vertex it sees.
inline std::vector<std::pair<Point2, Point2>> oracle_windows(const Polygon& P, Point2 u) {
    std::vector<std::pair<Point2, Point2>> out;
    double diag = P.bbox_diag();
    for (int r = 0; r < P.size(); ++r) {
        if (!is_reflex(P, r) || !visible(P, u, P[r])) continue;
        if (dist(u, P[r]) <= 1e-12 * diag) continue;
        Point2 d = normalized(P[r] - u);
        if (point_in_polygon(P, P[r] + d * (1e-7 * diag)) != Location::Inside) continue;
        std::vector<double> hits;
        for (int i = 0; i < P.size(); ++i) {
            Point2 a = P[i], b = P[P.next(i)];
            double den = cross(d, b - a);
            if (den == 0) continue;
            double s = cross(a - P[r], b - a) / den;
            double t = cross(a - P[r], d) / den;
            if (s > 1e-9 * diag && t >= -1e-12 && t <= 1 + 1e-12) hits.push_back(s);
        }
        std::sort(hits.begin(), hits.end());
        for (double s : hits)
            if (point_in_polygon(P, P[r] + d * (s + 1e-7 * diag)) == Location::Outside) {
                out.emplace_back(P[r], P[r] + d * s);
                break;
            }
    }
    return out;
}

// min over cells of max over sites u of the geodesic distance from the cell
// to the region that sees u.
inline GridResult oracle_visibility_radius(const Polygon& P, const std::vector<Point2>& U, const GridSpec& g) {
    GeodesicOracle G(P);
    int n = P.size();
    struct Prepared {
        Point2 u;
        std::vector<std::pair<Point2, Point2>> windows;
        std::vector<double> via;  // per vertex: geodesic distance to the region
    };
    std::vector<Prepared> prep;
    std::vector<Point2> nudged;
    for (int v = 0; v < n; ++v) nudged.push_back(detail::nudge_inside(P, v));
    for (Point2 u : U) {
        Prepared pr{u, oracle_windows(P, u), std::vector<double>(static_cast<size_t>(n), INFINITY)};
        std::vector<double> direct(static_cast<size_t>(n), INFINITY);
        for (int w = 0; w < n; ++w) {
            if (visible(P, u, P[w])) {
                direct[static_cast<size_t>(w)] = 0;
                continue;
            }
            for (auto [A, B] : pr.windows)
                direct[static_cast<size_t>(w)] = std::min(direct[static_cast<size_t>(w)],
                                                          detail::nearest_visible_on_segment(P, nudged[static_cast<size_t>(w)], A, B));
        }
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                pr.via[static_cast<size_t>(v)] =
                    std::min(pr.via[static_cast<size_t>(v)], G.vertex_distance(v, w) + direct[static_cast<size_t>(w)]);
        prep.push_back(std::move(pr));
    }
    return detail::grid_minimize(P, g, [&](Point2 x, double) {
        std::vector<int> vx;
        bool have_vx = false;
        double worst = 0;
        for (const auto& pr : prep) {
            if (visible(P, x, pr.u)) continue;
            if (!have_vx) {
                vx = G.visible_vertices(x);
                have_vx = true;
            }
            double best = INFINITY;
            for (int v : vx) best = std::min(best, dist(x, P[v]) + pr.via[static_cast<size_t>(v)]);
            for (auto [A, B] : pr.windows) best = std::min(best, detail::nearest_visible_on_segment(P, x, A, B));
            worst = std::max(worst, best);
        }
        return worst;
    });
}

}  // namespace viscenter
