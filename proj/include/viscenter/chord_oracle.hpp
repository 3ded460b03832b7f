#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "shortest_path.hpp"

namespace viscenter {

struct PolyChord {
    BoundaryPoint a;
    BoundaryPoint b;
};

// Points of K as a + s*d, s in [0, length].
struct ChordFrame {
    Point2 a, b, d;
    double length = 0;

    explicit ChordFrame(const PolyChord& K) : a(K.a.p), b(K.b.p) {
        length = dist(a, b);
        if (!(length > 0)) throw Error(ErrorKind::InvalidChord);
        d = (b - a) / length;
    }
    Point2 at(double s) const { return s >= length ? b : a + d * s; }
    double param(Point2 x) const { return dot(x - a, d); }
};

enum class FuncKind { Zero, VertexDist, LineDist };
enum class CaseTag { Case0, ASide, BSide, Central, Trapezoid };

// f(x) = 0, |x - apex| + kappa, or the distance from x to a line.
struct CoverFunction {
    FuncKind kind = FuncKind::Zero;
    Point2 apex;
    double kappa = 0;
    Point2 exit_dir;  // where the path continues when x sits on the apex
    Line line;

    double value(Point2 x) const {
        switch (kind) {
        case FuncKind::Zero: return 0;
        case FuncKind::VertexDist: return dist(x, apex) + kappa;
        case FuncKind::LineDist: return std::abs(line.eval(x));
        }
        return 0;
    }

    // Unit direction of the first path segment from x.
    Point2 first_vector(Point2 x) const {
        switch (kind) {
        case FuncKind::Zero: return {};
        case FuncKind::VertexDist: {
            Point2 v = apex - x;
            return norm(v) > 1e-14 * (1 + norm(apex)) ? normalized(v) : exit_dir;
        }
        case FuncKind::LineDist: return line.eval(x) > 0 ? -line.n : line.n;
        }
        return {};
    }
};

struct CoarseCoverElement {
    double lo = 0, hi = 0;
    CoverFunction func;
    int half_id = -1;
    CaseTag tag = CaseTag::Case0;
};

struct CoarseCover {
    PolyChord K;
    std::vector<CoarseCoverElement> elements;
    int tree_edges_a = 0;
    int tree_edges_b = 0;
    int halves = 0;
};

struct FarthestInfo {
    double radius = 0;
    std::vector<int> farthest_ids;
    std::vector<Point2> first_vectors;
    std::vector<int> element_index;
};

inline FarthestInfo radius_on_chord(const CoarseCover& cover, const ChordFrame& F, double s, double tie) {
    FarthestInfo info;
    Point2 x = F.at(s);
    const double slack = 1e-12 * (1 + F.length);
    std::vector<double> vals(cover.elements.size(), -1);
    for (size_t i = 0; i < cover.elements.size(); ++i) {
        const auto& e = cover.elements[i];
        if (s < e.lo - slack || s > e.hi + slack) continue;
        vals[i] = e.func.value(x);
        info.radius = std::max(info.radius, vals[i]);
    }
    if (info.radius <= 0) return info;
    std::map<int, size_t> best;  // half id -> element with the largest value
    for (size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] < info.radius - tie || cover.elements[i].func.kind == FuncKind::Zero) continue;
        int id = cover.elements[i].half_id;
        auto it = best.find(id);
        if (it == best.end() || vals[i] > vals[it->second]) best[id] = i;
    }
    for (auto [id, i] : best) {
        info.farthest_ids.push_back(id);
        info.first_vectors.push_back(cover.elements[i].func.first_vector(x));
        info.element_index.push_back(static_cast<int>(i));
    }
    return info;
}

namespace detail {

// One side of P cut along K, as its own clockwise polygon.
struct Piece {
    Polygon Q;
    int ia = -1, ib = -1;  // indices of K's endpoints in Q
    bool left = false;     // true for the part left of a->b (the clockwise arc a..b)
};

inline std::vector<Point2> arc_points(const Polygon& P, const BoundaryPoint& from, const BoundaryPoint& to) {
    std::vector<Point2> out{from.p};
    double len = cyclic_offset(P, from.position(), to.position());
    for (int k = 1; k <= P.size(); ++k) {
        int v = (from.edge + k) % P.size();
        double off = cyclic_offset(P, from.position(), static_cast<double>(v));
        if (off <= 0 || off >= len) break;
        if (dist(P[v], from.p) <= P.eps() || dist(P[v], to.p) <= P.eps()) continue;
        out.push_back(P[v]);
    }
    out.push_back(to.p);
    return out;
}

inline std::array<Piece, 2> split_along(const Polygon& P, const PolyChord& K) {
    std::array<Piece, 2> pieces;
    auto l = arc_points(P, K.a, K.b);
    pieces[0].Q = Polygon::from_clockwise(l, P.eps());
    pieces[0].ia = 0;
    pieces[0].ib = static_cast<int>(l.size()) - 1;
    pieces[0].left = true;
    auto r = arc_points(P, K.b, K.a);
    pieces[1].Q = Polygon::from_clockwise(r, P.eps());
    pieces[1].ib = 0;
    pieces[1].ia = static_cast<int>(r.size()) - 1;
    pieces[1].left = false;
    return pieces;
}

// Is boundary point x on the clockwise arc from `from` to `to` (inclusive)?
inline bool on_arc(const Polygon& P, const BoundaryPoint& from, const BoundaryPoint& to, const BoundaryPoint& x) {
    if (dist(x.p, from.p) <= P.eps() || dist(x.p, to.p) <= P.eps()) return true;
    return cyclic_offset(P, from.position(), x.position()) < cyclic_offset(P, from.position(), to.position());
}

}  // namespace detail

namespace detail {

using NodeKey = std::tuple<int, int, int>;

inline NodeKey node_key(const SptNode& nd) {
    switch (nd.kind) {
    case NodeKind::ChordEndpoint: return {1, nd.half, nd.end};
    case NodeKind::Terminal: return {2, nd.half, 0};
    default: return {0, nd.vertex, 0};
    }
}

// A tree from one end of K with child lists and, per node, the path length
// down to each terminal below it.
struct TreeView {
    const AugmentedShortestPathTree* t = nullptr;
    std::vector<std::vector<int>> children;
    std::vector<std::map<int, double>> below;
    std::map<NodeKey, int> index;

    explicit TreeView(const AugmentedShortestPathTree& tree) : t(&tree) {
        size_t N = tree.nodes.size();
        children.resize(N);
        below.resize(N);
        for (size_t v = 0; v < N; ++v) {
            index[node_key(tree.nodes[v])] = static_cast<int>(v);
            if (tree.nodes[v].parent >= 0) children[static_cast<size_t>(tree.nodes[v].parent)].push_back(static_cast<int>(v));
        }
        std::vector<int> order{tree.root_node};
        for (size_t i = 0; i < order.size(); ++i)
            for (int c : children[static_cast<size_t>(order[i])]) order.push_back(c);
        for (size_t i = order.size(); i-- > 0;) {
            int v = order[i];
            const auto& nd = tree.nodes[static_cast<size_t>(v)];
            if (nd.kind == NodeKind::Terminal) below[static_cast<size_t>(v)][nd.half] = 0;
            for (int c : children[static_cast<size_t>(v)]) {
                double e = dist(nd.p, tree.nodes[static_cast<size_t>(c)].p);
                for (auto [h, l] : below[static_cast<size_t>(c)]) {
                    auto& slot = below[static_cast<size_t>(v)][h];
                    slot = std::max(slot, l + e);
                }
            }
        }
    }

    const SptNode& node(int v) const { return t->nodes[static_cast<size_t>(v)]; }
    int root() const { return t->root_node; }

    int find(const SptNode& nd, double eps) const {
        auto it = index.find(node_key(nd));
        if (it == index.end()) return -1;
        return dist(node(it->second).p, nd.p) <= eps ? it->second : -1;
    }
};

// A node sees K directly when the two trees disagree on its parent. Roots and
// nodes present in only one tree count as visible.
inline bool sees_chord(const TreeView& A, const TreeView& B, int u, double eps) {
    if (u == A.root()) return true;
    int w = B.find(A.node(u), eps);
    if (w < 0 || w == B.root()) return true;
    return node_key(A.node(A.node(u).parent)) != node_key(B.node(B.node(w).parent));
}

// Where the edge from u through its parent, extended, meets K.
inline double extension_param(const TreeView& A, int u, const ChordFrame& F, double eps) {
    const SptNode& nd = A.node(u);
    if (u == A.root() || nd.parent < 0) return std::clamp(F.param(nd.p), 0.0, F.length);
    const SptNode& par = A.node(nd.parent);
    if (std::abs(cross(F.d, nd.p - F.a)) <= eps) return std::clamp(F.param(par.p), 0.0, F.length);
    Point2 dir = par.p - nd.p;
    if (norm(dir) <= eps) dir = nd.away;
    double s;
    if (!line_intersection(F.a, F.d, nd.p, dir, s)) s = F.param(nd.p);
    return std::clamp(s, 0.0, F.length);
}

inline std::pair<int, double> farthest_below(const std::map<int, double>& m) {
    std::pair<int, double> best{-1, -INFINITY};
    for (auto [h, l] : m)
        if (l > best.second) best = {h, l};
    return best;
}

inline CoverFunction vertex_function(const SptNode& u, const SptNode& v, double kappa) {
    CoverFunction f;
    f.kind = FuncKind::VertexDist;
    f.apex = u.p;
    f.kappa = kappa;
    Point2 step = v.p - u.p;
    f.exit_dir = norm(step) > 0 ? normalized(step) : -v.away;
    return f;
}

// Side triangles of one tree, plus the central triangles when `central` is set.
inline void side_elements(const TreeView& A, const TreeView& B, const ChordFrame& F, double eps, CaseTag tag,
                          bool central, std::vector<CoarseCoverElement>& out) {
    for (int v = 0; v < static_cast<int>(A.t->nodes.size()); ++v) {
        const SptNode& nv = A.node(v);
        if (v == A.root() || nv.parent < 0 || A.below[static_cast<size_t>(v)].empty()) continue;
        int u = nv.parent;
        const SptNode& nu = A.node(u);
        if (!sees_chord(A, B, u, eps)) continue;
        if (sees_chord(A, B, v, eps)) {
            if (u == A.root()) continue;
            auto [h, l] = farthest_below(A.below[static_cast<size_t>(v)]);
            double s0 = extension_param(A, u, F, eps), s1 = extension_param(A, v, F, eps);
            out.push_back({std::min(s0, s1), std::max(s0, s1), vertex_function(nu, nv, dist(nu.p, nv.p) + l), h, tag});
        } else if (central) {
            int ub = B.find(nu, eps), vb = B.find(nv, eps);
            if (ub < 0 || vb < 0) continue;
            std::map<int, double> common;
            for (auto [h, l] : A.below[static_cast<size_t>(v)]) {
                auto it = B.below[static_cast<size_t>(vb)].find(h);
                if (it != B.below[static_cast<size_t>(vb)].end()) common[h] = std::max(l, it->second);
            }
            if (common.empty()) continue;
            auto [h, l] = farthest_below(common);
            double s0 = extension_param(A, u, F, eps), s1 = extension_param(B, ub, F, eps);
            out.push_back({std::min(s0, s1), std::max(s0, s1), vertex_function(nu, nv, dist(nu.p, nv.p) + l), h,
                           CaseTag::Central});
        }
    }
}

// A half-polygon as seen from one piece. `virtual_end` is set when K crosses
// the chord; that crossing stands in for the terminal of the end inside H.
struct PieceHalf {
    HalfPolygon H;
    HalfPolygon original;
    std::optional<Point2> virtual_end;
    bool a_inside = false;
};

inline void piece_elements(const Piece& pc, const std::vector<PieceHalf>& halves, const ChordFrame& F,
                           CoarseCover& cover) {
    const Polygon& Q = pc.Q;
    double eps = Q.eps();
    Triangulation T = triangulate(Q);
    BoundaryPoint ra = vertex_point(Q, pc.ia), rb = vertex_point(Q, pc.ib);
    auto sorted_from = [&](const BoundaryPoint& r) {
        std::vector<HalfPolygon> hs;
        for (const auto& h : halves) hs.push_back(h.H);
        std::stable_sort(hs.begin(), hs.end(), [&](const HalfPolygon& x, const HalfPolygon& y) {
            return cyclic_offset(Q, r.position(), x.p.position()) < cyclic_offset(Q, r.position(), y.p.position());
        });
        return hs;
    };
    auto ta = augment_to_half_polygons(Q, T, spt_from_boundary(Q, T, ra), sorted_from(ra));
    auto tb = augment_to_half_polygons(Q, T, spt_from_boundary(Q, T, rb), sorted_from(rb));
    TreeView A(ta), B(tb);
    cover.tree_edges_a += static_cast<int>(ta.nodes.size()) - 1;
    cover.tree_edges_b += static_cast<int>(tb.nodes.size()) - 1;
    side_elements(A, B, F, eps, CaseTag::ASide, true, cover.elements);
    side_elements(B, A, F, eps, CaseTag::BSide, false, cover.elements);

    for (const auto& h : halves) {
        auto terminal_of = [&](const AugmentedShortestPathTree& t, bool inside) -> std::optional<Point2> {
            if (inside && h.virtual_end) return h.virtual_end;
            auto it = t.terminal.find(h.H.id);
            if (it == t.terminal.end()) return std::nullopt;
            return t.nodes[static_cast<size_t>(it->second)].p;
        };
        auto pa = terminal_of(ta, h.a_inside), pb = terminal_of(tb, !h.a_inside);
        if (!pa || !pb || dist(*pa, *pb) <= eps) continue;
        Line line = Line::through(h.H.p.p, h.H.q.p - h.H.p.p);
        auto foot_param = [&](Point2 t) {
            double s;
            if (!line_intersection(F.a, F.d, t, line.n, s)) s = F.param(t);
            return std::clamp(s, 0.0, F.length);
        };
        double s0 = foot_param(*pa), s1 = foot_param(*pb);
        CoverFunction f;
        f.kind = FuncKind::LineDist;
        f.line = line;
        cover.elements.push_back({std::min(s0, s1), std::max(s0, s1), f, h.H.id, CaseTag::Trapezoid});
    }
}

}  // namespace detail

// Functions on K whose upper envelope is max_H d(x,H) for x on K.
inline CoarseCover build_coarse_cover(const Polygon& P, const Triangulation& T, const PolyChord& K,
                                      const std::vector<HalfPolygon>& hs) {
    ChordFrame F(K);
    CoarseCover cover;
    cover.K = K;
    cover.halves = static_cast<int>(hs.size());
    cover.elements.push_back({0, F.length, {}, -1, CaseTag::Case0});
    auto pieces = detail::split_along(P, K);
    std::array<std::vector<detail::PieceHalf>, 2> per_piece;
    auto to_piece = [&](const detail::Piece& pc, Point2 x) {
        auto b = locate_on_boundary(pc.Q, x);
        if (!b) throw Error(ErrorKind::InvalidChord);
        return *b;
    };
    for (const auto& H : hs) {
        bool ia = contains_point(P, H, F.a), ib = contains_point(P, H, F.b);
        if (ia && ib) {
            cover.elements.push_back({0, F.length, {}, H.id, CaseTag::Case0});
            continue;
        }
        if (!ia && !ib) {
            int side = detail::on_arc(P, K.a, K.b, H.p) && detail::on_arc(P, K.a, K.b, H.q) ? 0 : 1;
            const auto& pc = pieces[static_cast<size_t>(side)];
            per_piece[static_cast<size_t>(side)].push_back(
                {HalfPolygon{to_piece(pc, H.p.p), to_piece(pc, H.q.p), H.id}, H, std::nullopt, false});
            continue;
        }
        double t;
        Point2 pk = F.a;
        if (line_intersection(F.a, F.d, H.p.p, H.q.p - H.p.p, t)) pk = F.at(std::clamp(t, 0.0, F.length));
        double sk = F.param(pk);
        cover.elements.push_back({ia ? 0.0 : sk, ia ? sk : F.length, {}, H.id, CaseTag::Case0});
        Point2 outside = ia ? F.b : F.a;
        auto hit = distance_to_half_polygon(P, T, outside, H);
        // A terminal on K itself goes with the piece holding the rest of the chord.
        double tside = cross(F.d, hit.terminal - F.a);
        const BoundaryPoint& far = dist(H.p.p, pk) > dist(H.q.p, pk) ? H.p : H.q;
        int side = std::abs(tside) > P.eps() ? (tside > 0 ? 0 : 1) : (detail::on_arc(P, K.a, K.b, far) ? 0 : 1);
        const auto& pc = pieces[static_cast<size_t>(side)];
        const BoundaryPoint& from = side == 0 ? K.a : K.b;
        const BoundaryPoint& to = side == 0 ? K.b : K.a;
        HalfPolygon hq{};
        hq.id = H.id;
        if (dist(H.p.p, pk) > P.eps() && detail::on_arc(P, from, to, H.p)) {
            hq.p = to_piece(pc, H.p.p);
            hq.q = to_piece(pc, pk);
        } else {
            hq.p = to_piece(pc, pk);
            hq.q = to_piece(pc, H.q.p);
        }
        per_piece[static_cast<size_t>(side)].push_back({hq, H, pk, ia});
    }
    for (size_t i = 0; i < 2; ++i)
        if (!per_piece[i].empty()) detail::piece_elements(pieces[i], per_piece[i], F, cover);
    return cover;
}

namespace detail {

// A cover function restricted to K, in the chord parameter s.
struct ChordFunction {
    FuncKind kind = FuncKind::Zero;
    double s0 = 0, h = 0, kappa = 0;  // sqrt((s-s0)^2 + h^2) + kappa
    double alpha = 0, beta = 0;       // |alpha*s + beta|

    ChordFunction(const CoverFunction& f, const ChordFrame& F) : kind(f.kind) {
        if (kind == FuncKind::VertexDist) {
            s0 = F.param(f.apex);
            h = std::abs(cross(F.d, f.apex - F.a));
            kappa = f.kappa;
        } else if (kind == FuncKind::LineDist) {
            alpha = dot(f.line.n, F.d);
            beta = f.line.eval(F.a);
        }
    }

    double minimizer() const {
        if (kind == FuncKind::VertexDist) return s0;
        if (kind == FuncKind::LineDist && alpha != 0) return -beta / alpha;
        return NAN;
    }

    // One-sided derivatives at s.
    std::pair<double, double> slopes(double s, double tiny) const {
        if (kind == FuncKind::VertexDist) {
            double ds = s - s0, R = std::hypot(ds, h);
            if (R <= tiny) return {-1, 1};
            return {ds / R, ds / R};
        }
        if (kind == FuncKind::LineDist) {
            double v = alpha * s + beta;
            if (std::abs(v) <= tiny) return {-std::abs(alpha), std::abs(alpha)};
            double g = v > 0 ? alpha : -alpha;
            return {g, g};
        }
        return {0, 0};
    }
};

inline void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0) return;
    if (std::abs(a) <= 1e-14 * scale) {
        if (b != 0) out.push_back(-c / b);
        return;
    }
    double disc = b * b - 4 * a * c;
    if (disc < 0) {
        if (disc < -1e-12 * b * b) return;
        disc = 0;
    }
    double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q != 0) out.push_back(c / q);
    out.push_back(q / a);
}

// Parameters where f and g may cross. Extra roots are harmless.
inline void crossings(const ChordFunction& f, const ChordFunction& g, std::vector<double>& out) {
    using K = FuncKind;
    if (f.kind == K::Zero || g.kind == K::Zero) return;
    if (f.kind == K::LineDist && g.kind == K::LineDist) {
        for (double sg : {1.0, -1.0}) {
            double da = f.alpha - sg * g.alpha;
            if (da != 0) out.push_back((sg * g.beta - f.beta) / da);
        }
        return;
    }
    if (f.kind == K::LineDist) return crossings(g, f, out);
    if (g.kind == K::LineDist) {
        for (double sg : {1.0, -1.0}) {
            double c0 = sg * g.beta - f.kappa;  // sg*(alpha s + beta) - kappa = sg*alpha*s + c0
            quadratic_roots(g.alpha * g.alpha - 1, 2 * (sg * g.alpha * c0 + f.s0),
                            c0 * c0 - f.s0 * f.s0 - f.h * f.h, out);
        }
        return;
    }
    double k = g.kappa - f.kappa;
    double p = 2 * (g.s0 - f.s0);
    double q = f.s0 * f.s0 - g.s0 * g.s0 + f.h * f.h - g.h * g.h - k * k;
    if (k == 0) {
        if (p != 0) out.push_back(-q / p);
        return;
    }
    quadratic_roots(p * p - 4 * k * k, 2 * p * q + 8 * k * k * g.s0,
                    q * q - 4 * k * k * (g.s0 * g.s0 + g.h * g.h), out);
}

enum class Direction { TowardA, TowardB, Here };

}  // namespace detail

struct RelativeCenter {
    double s = 0;
    Point2 x;
    FarthestInfo info;
};

// The point of K minimizing the cover envelope.
inline RelativeCenter relative_center(const CoarseCover& cover, const ChordFrame& F, double diag) {
    if (cover.elements.empty()) throw Error(ErrorKind::EmptyCover);
    const double L = F.length;
    const double slack = 1e-12 * (1 + L);
    std::vector<detail::ChordFunction> fs;
    for (const auto& e : cover.elements) fs.emplace_back(e.func, F);

    std::vector<double> cand{0, L};
    for (size_t i = 0; i < fs.size(); ++i) {
        const auto& ei = cover.elements[i];
        cand.push_back(ei.lo);
        cand.push_back(ei.hi);
        double m = fs[i].minimizer();
        if (std::isfinite(m) && m > ei.lo && m < ei.hi) cand.push_back(m);
        for (size_t j = i + 1; j < fs.size(); ++j) {
            const auto& ej = cover.elements[j];
            double lo = std::max(ei.lo, ej.lo), hi = std::min(ei.hi, ej.hi);
            if (lo > hi + slack) continue;
            std::vector<double> roots;
            detail::crossings(fs[i], fs[j], roots);
            for (double r : roots)
                if (std::isfinite(r) && r >= lo - slack && r <= hi + slack) cand.push_back(r);
        }
    }
    for (double& c : cand) c = std::clamp(c, 0.0, L);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end(), [&](double a, double b) { return b - a <= 1e-15 * (1 + L); }),
               cand.end());

    auto envelope = [&](double s) {
        double r = 0;
        for (size_t i = 0; i < fs.size(); ++i) {
            const auto& e = cover.elements[i];
            if (s >= e.lo - slack && s <= e.hi + slack) r = std::max(r, e.func.value(F.at(s)));
        }
        return r;
    };
    auto direction = [&](double s) {
        double r = envelope(s);
        if (r <= 0) return detail::Direction::Here;
        double tol_v = 1e-12 * (1 + diag), tiny = 1e-13 * (1 + diag);
        double dplus = -INFINITY, dminus = INFINITY, dplus_any = -INFINITY, dminus_any = INFINITY;
        Point2 x = F.at(s);
        for (size_t i = 0; i < fs.size(); ++i) {
            const auto& e = cover.elements[i];
            if (s < e.lo - slack || s > e.hi + slack) continue;
            if (e.func.value(x) < r - tol_v) continue;
            auto [dl, dr] = fs[i].slopes(s, tiny);
            dplus_any = std::max(dplus_any, dr);
            dminus_any = std::min(dminus_any, dl);
            if (e.hi > s + slack) dplus = std::max(dplus, dr);
            if (e.lo < s - slack) dminus = std::min(dminus, dl);
        }
        if (dplus == -INFINITY) dplus = dplus_any;
        if (dminus == INFINITY) dminus = dminus_any;
        const double tol_d = 1e-9;
        if (s < L && dplus < -tol_d) return detail::Direction::TowardB;
        if (s > 0 && dminus > tol_d) return detail::Direction::TowardA;
        return detail::Direction::Here;
    };

    // The envelope is convex, so directions run TowardB.., Here?, TowardA..
    size_t lo = 0, hi = cand.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (direction(cand[mid]) == detail::Direction::TowardB) lo = mid + 1;
        else hi = mid;
    }
    double best;
    if (lo < cand.size() && direction(cand[lo]) == detail::Direction::Here) {
        best = cand[lo];
    } else {
        // Rounding hid the kink; settle the bracket by golden section.
        double a = lo > 0 ? cand[lo - 1] : 0, b = lo < cand.size() ? cand[lo] : L;
        const double g = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 200 && b - a > 1e-15 * (1 + L); ++it) {
            double c = b - g * (b - a), d = a + g * (b - a);
            if (envelope(c) <= envelope(d)) b = d;
            else a = c;
        }
        best = 0.5 * (a + b);
        for (double c : {a, b})
            if (envelope(c) < envelope(best)) best = c;
    }
    RelativeCenter rc;
    rc.s = best;
    rc.x = F.at(best);
    rc.info = radius_on_chord(cover, F, best, 1e-7 * diag);
    return rc;
}

enum class SideDecision { CenterLeft, CenterRight, IsGeodesicCenter, IsCenterSegment };

struct WedgeResult {
    SideDecision decision = SideDecision::IsGeodesicCenter;
    double alpha = 0;
    Point2 bisector;
    std::array<int, 2> bounding{-1, -1};  // indices into the farthest set
};

inline Point2 rotate(Point2 v, double ang) {
    double c = std::cos(ang), s = std::sin(ang);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Decides, at the relative center x of K, whether the center lies left or
// right of K, at x, or along a degenerate segment through x.
inline WedgeResult wedge_test(const Polygon& P, const CoarseCover& cover, const ChordFrame& F,
                              const RelativeCenter& rc) {
    const auto& info = rc.info;
    if (info.radius <= 0 || info.first_vectors.empty()) throw Error(ErrorKind::ZeroRadius);
    const double two_pi = 2 * std::numbers::pi;
    size_t m = info.first_vectors.size();
    std::vector<size_t> ord(m);
    std::vector<double> ang(m);
    for (size_t i = 0; i < m; ++i) {
        ord[i] = i;
        Point2 v = info.first_vectors[i];
        ang[i] = std::atan2(v.y, v.x);
        if (ang[i] < 0) ang[i] += two_pi;
    }
    std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return ang[a] < ang[b]; });
    auto gap_after = [&](size_t k) {
        if (m == 1) return two_pi;
        double g = ang[ord[(k + 1) % m]] - ang[ord[k]];
        return g < 0 || (g == 0 && k + 1 == m) ? g + two_pi : g;
    };

    size_t pick = 0;
    const double eps = P.eps();
    std::optional<BoundaryPoint> on_boundary;
    Point2 e_in, e_out;
    if (rc.s <= eps) on_boundary = cover.K.a;
    else if (rc.s >= F.length - eps) on_boundary = cover.K.b;
    if (on_boundary) {
        // The gap that holds the exterior of P at x.
        const BoundaryPoint& bp = *on_boundary;
        if (bp.at_vertex()) {
            e_in = P[P.prev(bp.edge)] - bp.p;
            e_out = P[P.next(bp.edge)] - bp.p;
        } else {
            e_in = P[bp.edge] - bp.p;
            e_out = P[P.next(bp.edge)] - bp.p;
        }
        Point2 outward = rotate(normalized(e_out), angle_ccw(e_out, e_in) / 2);
        double ao = std::atan2(outward.y, outward.x);
        if (ao < 0) ao += two_pi;
        for (size_t k = 0; k < m; ++k) {
            double off = ao - ang[ord[k]];
            if (off < 0) off += two_pi;
            if (off < gap_after(k)) {
                pick = k;
                break;
            }
        }
    } else {
        for (size_t k = 1; k < m; ++k)
            if (gap_after(k) > gap_after(pick)) pick = k;
    }

    WedgeResult w;
    size_t lo_v = ord[pick], hi_v = ord[(pick + 1) % m];
    w.bounding = {static_cast<int>(lo_v), static_cast<int>(hi_v)};
    w.alpha = two_pi - gap_after(pick);
    w.bisector = rotate(info.first_vectors[hi_v], w.alpha / 2);
    const double ang_tol = 1e-8;
    if (w.alpha < std::numbers::pi - ang_tol) {
        bool left = cross(F.d, w.bisector) >= 0;
        if (on_boundary) {
            // the cone at a chord end can exceed pi; K splits it, e_in's part is right at a, left at b
            bool at_a = rc.s <= eps;
            Point2 into = at_a ? F.d : -F.d;
            double cone = angle_ccw(e_in, e_out), ab = angle_ccw(e_in, w.bisector);
            if (ab > cone) ab = ab > (cone + two_pi) / 2 ? 0 : cone;  // along an edge, rounded outside
            bool in_first = ab < angle_ccw(e_in, into);
            left = at_a ? !in_first : in_first;
        }
        w.decision = left ? SideDecision::CenterLeft : SideDecision::CenterRight;
    } else if (w.alpha > std::numbers::pi + ang_tol) {
        w.decision = SideDecision::IsGeodesicCenter;
    } else {
        const auto& f1 = cover.elements[static_cast<size_t>(info.element_index[lo_v])].func;
        const auto& f2 = cover.elements[static_cast<size_t>(info.element_index[hi_v])].func;
        bool lines = f1.kind == FuncKind::LineDist && f2.kind == FuncKind::LineDist &&
                     dot(info.first_vectors[lo_v], info.first_vectors[hi_v]) < -1 + 1e-12;
        w.decision = lines ? SideDecision::IsCenterSegment : SideDecision::IsGeodesicCenter;
    }
    return w;
}

enum class ChordSide { Left, Right, OnChord };

struct ChordOracleResult {
    ChordSide side = ChordSide::OnChord;
    RelativeCenter rc;
    WedgeResult wedge;
};

// Which side of K holds the center of the half-polygon set hs.
inline ChordOracleResult chord_oracle(const Polygon& P, const Triangulation& T, const std::vector<HalfPolygon>& hs,
                                      const PolyChord& K) {
    ChordFrame F(K);
    auto cover = build_coarse_cover(P, T, K, hs);
    ChordOracleResult out;
    out.rc = relative_center(cover, F, P.bbox_diag());
    if (out.rc.info.radius <= 0) return out;
    out.wedge = wedge_test(P, cover, F, out.rc);
    switch (out.wedge.decision) {
    case SideDecision::CenterLeft: out.side = ChordSide::Left; break;
    case SideDecision::CenterRight: out.side = ChordSide::Right; break;
    default: out.side = ChordSide::OnChord;
    }
    return out;
}

}  // namespace viscenter
