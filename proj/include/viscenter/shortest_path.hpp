#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

#include "half_polygon.hpp"
#include "triangulation.hpp"

namespace viscenter {

struct GeodesicPath {
    std::vector<Point2> waypoints;
    std::vector<int> vertex_ids;  // polygon vertex per waypoint, -1 where it is not a vertex
    double length = 0;
};

namespace detail {

inline int vertex_at(const Polygon& P, Point2 x) {
    for (int i = 0; i < P.size(); ++i)
        if (dist(P[i], x) <= P.eps()) return i;
    return -1;
}

inline GeodesicPath make_path(std::vector<Point2> pts, std::vector<int> ids) {
    // drop zero-length steps and collinear pass-throughs
    GeodesicPath g;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (!g.waypoints.empty() && dist(g.waypoints.back(), pts[i]) <= 1e-15 * (1 + norm(pts[i]))) {
            if (ids[i] >= 0) g.vertex_ids.back() = ids[i];
            continue;
        }
        while (g.waypoints.size() >= 2) {
            Point2 a = g.waypoints[g.waypoints.size() - 2], b = g.waypoints.back();
            Point2 u = b - a, v = pts[i] - b;
            if (std::abs(cross(u, v)) <= 1e-12 * norm(u) * norm(v) && dot(u, v) > 0) {
                g.waypoints.pop_back();
                g.vertex_ids.pop_back();
            } else {
                break;
            }
        }
        g.waypoints.push_back(pts[i]);
        g.vertex_ids.push_back(ids[i]);
    }
    for (size_t i = 1; i < g.waypoints.size(); ++i) g.length += dist(g.waypoints[i - 1], g.waypoints[i]);
    return g;
}

// Shortest sequence of triangles from any source to any target in the dual tree.
inline std::vector<int> sleeve(const Triangulation& T, const std::vector<int>& src, const std::vector<int>& dst) {
    std::vector<int> from(T.triangles.size(), -2);
    std::deque<int> q;
    for (int s : src) {
        from[s] = -1;
        q.push_back(s);
    }
    std::vector<char> is_dst(T.triangles.size(), 0);
    for (int d : dst) is_dst[d] = 1;
    while (!q.empty()) {
        int t = q.front();
        q.pop_front();
        if (is_dst[t]) {
            std::vector<int> path;
            for (int c = t; c != -1; c = from[c]) path.push_back(c);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (auto e : T.dual[t])
            if (from[e.tri] == -2) {
                from[e.tri] = t;
                q.push_back(e.tri);
            }
    }
    return {};
}

}  // namespace detail

// Funnel algorithm over the sleeve of triangles between x and y.
inline GeodesicPath geodesic(const Polygon& P, const Triangulation& T, Point2 x, Point2 y) {
    require_in_polygon(P, x);
    require_in_polygon(P, y);
    int ix = detail::vertex_at(P, x), iy = detail::vertex_at(P, y);
    if (ix >= 0) x = P[ix];
    if (iy >= 0) y = P[iy];
    if (visible(P, x, y)) return detail::make_path({x, y}, {ix, iy});

    auto tris = detail::sleeve(T, triangles_containing(P, T, x), triangles_containing(P, T, y));
    struct Portal {
        Point2 l, r;
        int li, ri;
    };
    std::vector<Portal> portals{{x, x, ix, ix}};
    for (size_t k = 0; k + 1 < tris.size(); ++k) {
        const auto& tri = T.triangles[tris[k]];
        const auto& nxt = T.triangles[tris[k + 1]];
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            if (std::find(nxt.begin(), nxt.end(), a) != nxt.end() && std::find(nxt.begin(), nxt.end(), b) != nxt.end()) {
                // clockwise triangle: leaving across a->b, a is on the left
                portals.push_back({P[a], P[b], a, b});
                break;
            }
        }
    }
    portals.push_back({y, y, iy, iy});

    // ids distinguish x and y from vertices when they are not vertices themselves
    auto pid = [&](int id, int fallback) { return id >= 0 ? id : fallback; };
    for (size_t k = 0; k < portals.size(); ++k) {
        if (k == 0) portals[k].li = portals[k].ri = pid(ix, -2);
        if (k + 1 == portals.size()) portals[k].li = portals[k].ri = pid(iy, -3);
    }

    std::vector<Point2> pts{x};
    std::vector<int> ids{ix};
    Point2 apex = portals[0].l, pl = portals[0].l, pr = portals[0].r;
    int apex_id = portals[0].li, pl_id = apex_id, pr_id = apex_id;
    size_t apex_k = 0, left_k = 0, right_k = 0;
    for (size_t k = 1; k < portals.size(); ++k) {
        const Portal& po = portals[k];
        if (cross(apex, pr, po.r) >= 0) {
            if (apex_id == pr_id || cross(apex, pl, po.r) < 0) {
                pr = po.r;
                pr_id = po.ri;
                right_k = k;
            } else {
                pts.push_back(pl);
                ids.push_back(pl_id);
                apex = pl;
                apex_id = pl_id;
                apex_k = left_k;
                pr = pl = apex;
                pr_id = pl_id = apex_id;
                left_k = right_k = apex_k;
                k = apex_k;
                continue;
            }
        }
        if (cross(apex, pl, po.l) <= 0) {
            if (apex_id == pl_id || cross(apex, pr, po.l) > 0) {
                pl = po.l;
                pl_id = po.li;
                left_k = k;
            } else {
                pts.push_back(pr);
                ids.push_back(pr_id);
                apex = pr;
                apex_id = pr_id;
                apex_k = right_k;
                pr = pl = apex;
                pr_id = pl_id = apex_id;
                left_k = right_k = apex_k;
                k = apex_k;
                continue;
            }
        }
    }
    pts.push_back(y);
    ids.push_back(iy);
    for (auto& i : ids)
        if (i < 0) i = -1;
    return detail::make_path(std::move(pts), std::move(ids));
}

enum class HitKind { AtEndpoint, InteriorPerpendicular, AlreadyInside };

struct HalfPolygonHit {
    double distance = 0;
    Point2 terminal;
    HitKind kind = HitKind::AlreadyInside;
    int endpoint = -1;  // 0 for p, 1 for q when kind is AtEndpoint
    GeodesicPath path;
};

// d(x,H): geodesic distance from x to the closest point of H.
inline HalfPolygonHit distance_to_half_polygon(const Polygon& P, const Triangulation& T, Point2 x,
                                               const HalfPolygon& H) {
    HalfPolygonHit best;
    if (contains_point(P, H, x)) {
        best.terminal = x;
        best.path = detail::make_path({x}, {detail::vertex_at(P, x)});
        return best;
    }
    Point2 a = H.p.p, b = H.q.p;
    Point2 ab = b - a;
    double L2 = norm2(ab);
    double tol = P.eps();
    best.distance = INFINITY;
    GeodesicPath to_end[2] = {geodesic(P, T, x, a), geodesic(P, T, x, b)};
    for (int e = 0; e < 2; ++e)
        if (to_end[e].length < best.distance - tol * 1e-3) {
            best.distance = to_end[e].length;
            best.terminal = e == 0 ? a : b;
            best.kind = HitKind::AtEndpoint;
            best.endpoint = e;
            best.path = to_end[e];
        }
    for (int e = 0; e < 2; ++e) {
        const auto& g = to_end[e];
        double prefix = 0;
        for (size_t i = 0; i + 1 < g.waypoints.size(); ++i) {
            if (i > 0) prefix += dist(g.waypoints[i - 1], g.waypoints[i]);
            Point2 w = g.waypoints[i];
            double t = dot(w - a, ab) / L2;
            Point2 f = a + ab * t;
            if (t * std::sqrt(L2) <= tol || (1 - t) * std::sqrt(L2) <= tol) continue;
            double len = prefix + dist(w, f);
            if (len >= best.distance - tol * 1e-3) continue;
            if (!visible(P, w, f)) continue;
            best.distance = len;
            best.terminal = f;
            best.kind = HitKind::InteriorPerpendicular;
            best.endpoint = -1;
            std::vector<Point2> pts(g.waypoints.begin(), g.waypoints.begin() + static_cast<long>(i) + 1);
            std::vector<int> ids(g.vertex_ids.begin(), g.vertex_ids.begin() + static_cast<long>(i) + 1);
            pts.push_back(f);
            ids.push_back(-1);
            best.path = detail::make_path(std::move(pts), std::move(ids));
        }
    }
    return best;
}

enum class NodeKind { Vertex, Root, ChordEndpoint, Terminal };

struct SptNode {
    Point2 p;
    int parent = -1;
    double dist = 0;
    NodeKind kind = NodeKind::Vertex;
    int vertex = -1;  // polygon vertex, for Vertex nodes
    int half = -1;    // half-polygon id, for ChordEndpoint and Terminal nodes
    int end = -1;     // 0 = p, 1 = q for chord endpoint nodes and endpoint terminals
    HitKind hit = HitKind::AtEndpoint;
    Point2 away{};    // for 0-length terminal edges: unit direction pointing away from H
};

struct AugmentedShortestPathTree {
    BoundaryPoint root;
    int root_node = -1;
    std::vector<SptNode> nodes;
    std::map<int, int> terminal;  // half-polygon id -> node
    std::vector<int> leaf_order;  // terminal nodes in depth-first, boundary-consistent order

    bool zero_length(int v) const {
        const auto& nd = nodes[static_cast<size_t>(v)];
        return nd.parent >= 0 && dist(nd.p, nodes[static_cast<size_t>(nd.parent)].p) == 0;
    }
};

namespace detail {

inline void accumulate_dist(AugmentedShortestPathTree& t) {
    std::vector<char> done(t.nodes.size(), 0);
    done[static_cast<size_t>(t.root_node)] = 1;
    t.nodes[static_cast<size_t>(t.root_node)].dist = 0;
    for (size_t v = 0; v < t.nodes.size(); ++v) {
        std::vector<int> chain;
        int c = static_cast<int>(v);
        while (c >= 0 && !done[static_cast<size_t>(c)]) {
            chain.push_back(c);
            c = t.nodes[static_cast<size_t>(c)].parent;
            if (chain.size() > t.nodes.size()) throw std::logic_error("shortest path tree has a cycle");
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            auto& nd = t.nodes[static_cast<size_t>(*it)];
            if (nd.parent < 0) continue;  // detached vertex (no path), left at dist 0
            const auto& par = t.nodes[static_cast<size_t>(nd.parent)];
            nd.dist = par.dist + dist(par.p, nd.p);
            done[static_cast<size_t>(*it)] = 1;
        }
    }
}

// Children ordered clockwise, starting from the boundary direction at the root
// and from the direction back to the parent elsewhere.
inline void compute_leaf_order(const Polygon& P, AugmentedShortestPathTree& t) {
    std::vector<std::vector<int>> children(t.nodes.size());
    for (size_t v = 0; v < t.nodes.size(); ++v)
        if (t.nodes[v].parent >= 0) children[static_cast<size_t>(t.nodes[v].parent)].push_back(static_cast<int>(v));
    auto out_dir = [&](int v) {
        const auto& nd = t.nodes[static_cast<size_t>(v)];
        Point2 d = nd.p - t.nodes[static_cast<size_t>(nd.parent)].p;
        return norm(d) > 0 ? d : -nd.away;
    };
    Point2 root_ref = P[P.next(t.root.edge)] - t.root.p;
    t.leaf_order.clear();
    std::vector<std::pair<int, Point2>> stack{{t.root_node, root_ref}};
    while (!stack.empty()) {
        auto [v, ref] = stack.back();
        stack.pop_back();
        if (t.nodes[static_cast<size_t>(v)].kind == NodeKind::Terminal) t.leaf_order.push_back(v);
        auto ch = children[static_cast<size_t>(v)];
        std::vector<std::pair<double, int>> keyed;
        for (int c : ch) {
            double a = angle_cw(ref, out_dir(c));
            if (a > 2 * std::numbers::pi - 1e-9) a = 0;  // along the reference direction itself
            keyed.push_back({a, c});
        }
        std::sort(keyed.begin(), keyed.end(), [&](auto& x, auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return t.nodes[static_cast<size_t>(x.second)].dist < t.nodes[static_cast<size_t>(y.second)].dist;
        });
        for (auto it = keyed.rbegin(); it != keyed.rend(); ++it) stack.push_back({it->second, -out_dir(it->second)});
    }
}

}  // namespace detail

namespace detail {

// The vertex nearest to `to` lying on segment from->to (excluding `to` itself), or -1.
// Paths that graze a vertex hang off that vertex in the tree.
inline int grazed_vertex(const Polygon& P, Point2 from, Point2 to, int to_vertex) {
    int best = -1;
    double bd = INFINITY;
    for (int i = 0; i < P.size(); ++i) {
        if (i == to_vertex || dist(P[i], to) <= P.eps() || dist(P[i], from) <= P.eps()) continue;
        double t;
        if (segment_distance(P[i], from, to, &t) > P.eps() || t <= 0 || t >= 1) continue;
        double d = dist(P[i], to);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

}  // namespace detail

// Shortest path tree from a boundary point to every polygon vertex.
inline AugmentedShortestPathTree spt_from_boundary(const Polygon& P, const Triangulation& T, const BoundaryPoint& a) {
    AugmentedShortestPathTree t;
    t.root = a;
    int n = P.size();
    for (int i = 0; i < n; ++i) t.nodes.push_back({.p = P[i], .kind = NodeKind::Vertex, .vertex = i});
    if (a.at_vertex()) {
        t.root_node = a.edge;
    } else {
        t.root_node = n;
        t.nodes.push_back({.p = a.p, .kind = NodeKind::Root});
    }
    for (int v = 0; v < n; ++v) {
        if (v == t.root_node) continue;
        auto g = geodesic(P, T, a.p, P[v]);
        size_t k = g.waypoints.size();
        int par = k <= 2 ? t.root_node : g.vertex_ids[k - 2];
        int graze = detail::grazed_vertex(P, g.waypoints[k - 2], P[v], v);
        t.nodes[static_cast<size_t>(v)].parent = graze >= 0 ? graze : par;
    }
    detail::accumulate_dist(t);
    detail::compute_leaf_order(P, t);
    return t;
}

// Adds one terminal per half-polygon. A path ending at a chord endpoint gets a
// 0-length terminal edge whose extension is perpendicular to the chord.
inline AugmentedShortestPathTree augment_to_half_polygons(const Polygon& P, const Triangulation& T,
                                                          AugmentedShortestPathTree t,
                                                          const std::vector<HalfPolygon>& H_sorted) {
    double last = -1;
    for (const auto& H : H_sorted) {
        double off = cyclic_offset(P, t.root.position(), H.p.position());
        if (off < last - 1e-12) throw Error(ErrorKind::UnsortedInput, H.id);
        last = off;
    }
    for (const auto& H : H_sorted) {
        if (contains_point(P, H, t.root.p)) continue;
        auto hit = distance_to_half_polygon(P, T, t.root.p, H);
        const auto& w = hit.path.waypoints;
        size_t k = w.size();
        int last_node = k >= 3 ? hit.path.vertex_ids[k - 2] : t.root_node;
        if (k >= 2) {
            int graze = detail::grazed_vertex(P, w[k - 2], w[k - 1], hit.path.vertex_ids.back());
            if (graze >= 0) last_node = graze;
        }
        SptNode term{.p = hit.terminal, .parent = last_node, .kind = NodeKind::Terminal, .half = H.id, .end = hit.endpoint, .hit = hit.kind};
        term.away = -H.inward_normal();
        if (hit.kind == HitKind::AtEndpoint) {
            int ev = hit.path.vertex_ids.back();
            if (ev < 0) {
                t.nodes.push_back({.p = hit.terminal, .parent = last_node, .kind = NodeKind::ChordEndpoint, .half = H.id, .end = hit.endpoint});
                ev = static_cast<int>(t.nodes.size()) - 1;
            }
            term.parent = ev;
        }
        t.nodes.push_back(term);
        t.terminal[H.id] = static_cast<int>(t.nodes.size()) - 1;
    }
    detail::accumulate_dist(t);
    detail::compute_leaf_order(P, t);
    return t;
}

}  // namespace viscenter
