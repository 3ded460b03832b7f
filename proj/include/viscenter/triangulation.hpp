#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polygon.hpp"

namespace viscenter {

struct DualEdge {
    int tri;       // neighbouring triangle
    int diagonal;  // index into Triangulation::diagonals
};

struct Triangulation {
    std::vector<std::array<int, 3>> triangles;  // clockwise vertex triples
    std::vector<std::pair<int, int>> diagonals;
    std::vector<std::pair<int, int>> diagonal_tris;  // the two triangles sharing each diagonal
    std::vector<std::vector<DualEdge>> dual;
};

namespace detail {

// Closed point-in-triangle for a clockwise triangle, with tolerance.
inline bool in_closed_triangle(Point2 p, Point2 a, Point2 b, Point2 c, double eps) {
    return orientation(a, b, p, eps) <= 0 && orientation(b, c, p, eps) <= 0 && orientation(c, a, p, eps) <= 0;
}

}  // namespace detail

// Ear clipping. Deterministic: always clips the first valid ear after the last one clipped.
inline Triangulation triangulate(const Polygon& P) {
    int n = P.size();
    Triangulation T;
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[i] = i;
    double eps = P.eps();

    auto is_ear = [&](size_t k, bool strict) {
        size_t m = idx.size();
        int a = idx[(k + m - 1) % m], b = idx[k], c = idx[(k + 1) % m];
        double cr = cross(P[a], P[b], P[c]) / std::max(dist(P[a], P[c]), 1e-300);
        if (strict ? cr >= -eps : cr >= 0) return false;
        for (size_t j = 0; j < m; ++j) {
            int v = idx[j];
            if (v == a || v == b || v == c) continue;
            Point2 pv = P[v];
            if (dist(pv, P[a]) <= eps || dist(pv, P[c]) <= eps) continue;
            if (detail::in_closed_triangle(pv, P[a], P[b], P[c], strict ? eps : 0.0)) return false;
        }
        return true;
    };

    size_t start = 0;
    while (idx.size() > 3) {
        size_t m = idx.size();
        size_t found = m;
        for (int pass = 0; pass < 2 && found == m; ++pass)
            for (size_t s = 0; s < m; ++s) {
                size_t k = (start + s) % m;
                if (is_ear(k, pass == 0)) {
                    found = k;
                    break;
                }
            }
        if (found == m) throw std::logic_error("triangulate: no ear found");
        int a = idx[(found + m - 1) % m], b = idx[found], c = idx[(found + 1) % m];
        T.triangles.push_back({a, b, c});
        idx.erase(idx.begin() + static_cast<long>(found));
        start = found % idx.size();
    }
    T.triangles.push_back({idx[0], idx[1], idx[2]});

    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int t = 0; t < static_cast<int>(T.triangles.size()); ++t)
        for (int e = 0; e < 3; ++e) {
            int u = T.triangles[t][e], v = T.triangles[t][(e + 1) % 3];
            by_edge[{std::min(u, v), std::max(u, v)}].push_back(t);
        }
    T.dual.assign(T.triangles.size(), {});
    for (auto& [key, tris] : by_edge) {
        if (tris.size() != 2) continue;
        int d = static_cast<int>(T.diagonals.size());
        T.diagonals.push_back(key);
        T.diagonal_tris.push_back({tris[0], tris[1]});
        T.dual[tris[0]].push_back({tris[1], d});
        T.dual[tris[1]].push_back({tris[0], d});
    }
    return T;
}

struct BalancedSplit {
    int diagonal = -1;
    std::vector<int> side_first;   // active triangles on the side of diagonal_tris[diagonal].first
    std::vector<int> side_second;  // ... and of .second
};

namespace detail {

inline std::vector<int> component(const Triangulation& T, const std::vector<char>& active, int start, int cut) {
    std::vector<int> out, stack{start};
    std::vector<char> seen(T.triangles.size(), 0);
    seen[start] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        out.push_back(t);
        for (auto e : T.dual[t])
            if (e.diagonal != cut && active[e.tri] && !seen[e.tri]) {
                seen[e.tri] = 1;
                stack.push_back(e.tri);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Diagonal of the active subtree minimizing the larger side.
inline BalancedSplit balanced_diagonal(const Triangulation& T, const std::vector<int>& active_tris) {
    if (active_tris.size() < 2) throw Error(ErrorKind::SingleTriangle);
    std::vector<char> active(T.triangles.size(), 0);
    for (int t : active_tris) active[t] = 1;
    BalancedSplit best;
    size_t best_max = SIZE_MAX;
    for (int d = 0; d < static_cast<int>(T.diagonals.size()); ++d) {
        auto [t1, t2] = T.diagonal_tris[d];
        if (!active[t1] || !active[t2]) continue;
        auto s1 = detail::component(T, active, t1, d);
        size_t larger = std::max(s1.size(), active_tris.size() - s1.size());
        if (larger < best_max) {
            best_max = larger;
            best.diagonal = d;
            best.side_first = std::move(s1);
        }
    }
    if (best.diagonal < 0) throw Error(ErrorKind::SingleTriangle);
    best.side_second = detail::component(T, active, T.diagonal_tris[best.diagonal].second, best.diagonal);
    return best;
}

// All triangles whose closed region contains x.
inline std::vector<int> triangles_containing(const Polygon& P, const Triangulation& T, Point2 x) {
    std::vector<int> out;
    for (int t = 0; t < static_cast<int>(T.triangles.size()); ++t) {
        auto [a, b, c] = T.triangles[t];
        if (detail::in_closed_triangle(x, P[a], P[b], P[c], P.eps())) out.push_back(t);
    }
    if (out.empty()) {
        // numerical slack: take the nearest triangle
        double bd = INFINITY;
        int bt = -1;
        for (int t = 0; t < static_cast<int>(T.triangles.size()); ++t) {
            auto [a, b, c] = T.triangles[t];
            double d = std::min({segment_distance(x, P[a], P[b]), segment_distance(x, P[b], P[c]),
                                 segment_distance(x, P[c], P[a])});
            if (d < bd) {
                bd = d;
                bt = t;
            }
        }
        if (bt >= 0 && bd <= 1e3 * P.eps()) out.push_back(bt);
    }
    return out;
}

}  // namespace viscenter
