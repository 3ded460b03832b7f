#pragma once

// Smallest rho such that some x satisfies a.x - b <= rho for every half-plane
// constraint and |x - u| + kappa <= rho for every disk constraint. Solved as an
// LP-type problem; ties between optimal points go to the one nearest `anchor`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "point.hpp"

namespace viscenter {

struct Constraint {
    enum class Kind { HalfPlane, Disk };
    Kind kind = Kind::HalfPlane;
    Point2 a;        // unit normal, pointing away from the half-plane
    double b = 0;
    Point2 u;
    double kappa = 0;
    int id = -1;     // caller's tag, carried through

    static Constraint half_plane(Point2 a, double b, int id = -1) {
        Constraint c;
        c.kind = Kind::HalfPlane;
        c.a = a;
        c.b = b;
        c.id = id;
        return c;
    }
    static Constraint disk(Point2 u, double kappa, int id = -1) {
        Constraint c;
        c.kind = Kind::Disk;
        c.u = u;
        c.kappa = kappa;
        c.id = id;
        return c;
    }
    double value(Point2 x) const { return kind == Kind::HalfPlane ? dot(a, x) - b : dist(x, u) + kappa; }
};

struct DiskSolution {
    Point2 x;
    double rho = 0;
    std::vector<int> basis;  // indices into the input constraint list
    bool fallback = false;
};

namespace detail {

struct Candidate {
    Point2 x;
    double rho = 0;
    std::vector<int> tight;
    bool numeric = false;
};

inline void roots2(double a, double b, double c, std::vector<double>& out) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0) return;
    if (std::abs(a) <= 1e-13 * scale) {
        if (std::abs(b) > 1e-13 * scale) out.push_back(-c / b);
        return;
    }
    double disc = b * b - 4 * a * c;
    if (disc < 0) {
        if (disc < -1e-10 * std::max(b * b, std::abs(4 * a * c))) return;
        disc = 0;
    }
    double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    out.push_back(q / a);
    if (q != 0) out.push_back(c / q);
}

// Solves [p q; r s] [x y]^T = [e f]^T.
inline bool solve2(double p, double q, double r, double s, double e, double f, Point2& out) {
    double det = p * s - q * r;
    double scale = std::max({std::abs(p * s), std::abs(q * r), 1e-300});
    if (std::abs(det) <= 1e-13 * scale) return false;
    out = {(e * s - q * f) / det, (p * f - e * r) / det};
    return true;
}

class SmallSolver {
public:
    SmallSolver(const std::vector<Constraint>& cs, Point2 anchor) : cs_(cs), anchor_(anchor) {}

    // Optimum over the constraints in idx (at most four), with its defining subset.
    Candidate solve(const std::vector<int>& idx) const {
        std::vector<Candidate> cand;
        floor_candidates(idx, cand);
        size_t m = idx.size();
        for (size_t i = 0; i < m; ++i) {
            tight({idx[i]}, cand);
            for (size_t j = i + 1; j < m; ++j) {
                tight({idx[i], idx[j]}, cand);
                for (size_t k = j + 1; k < m; ++k) tight({idx[i], idx[j], idx[k]}, cand);
            }
        }
        const Candidate* best = nullptr;
        for (const auto& c : cand) {
            if (!feasible(c, idx)) continue;
            if (!best || better(c, *best)) best = &c;
        }
        if (!best) return bisect(idx);
        return *best;
    }

    bool violates(int h, const Candidate& c) const { return cs_[static_cast<size_t>(h)].value(c.x) > c.rho + kViolation; }

    static constexpr double kViolation = 1e-12;

private:
    const std::vector<Constraint>& cs_;
    Point2 anchor_;

    const Constraint& at(int i) const { return cs_[static_cast<size_t>(i)]; }

    bool feasible(const Candidate& c, const std::vector<int>& idx) const {
        if (!std::isfinite(c.rho) || !finite(c.x) || c.rho < -kViolation) return false;
        for (int i : idx)
            if (at(i).value(c.x) > c.rho + kViolation) return false;
        return true;
    }

    bool better(const Candidate& c, const Candidate& d) const {
        double tol = 1e-12 * (1 + std::abs(d.rho));
        if (c.rho < d.rho - tol) return true;
        if (c.rho > d.rho + tol) return false;
        double dc = dist(c.x, anchor_), dd = dist(d.x, anchor_);
        if (dc < dd - 1e-12 * (1 + dd)) return true;
        if (dc > dd + 1e-12 * (1 + dd)) return false;
        return c.tight.size() < d.tight.size();
    }

    // rho = 0: the point nearest the anchor where every constraint is <= 0.
    void floor_candidates(const std::vector<int>& idx, std::vector<Candidate>& out) const {
        out.push_back({anchor_, 0, {}});
        for (size_t i = 0; i < idx.size(); ++i) {
            const Constraint& c = at(idx[i]);
            if (c.kind == Constraint::Kind::Disk) {
                if (c.kappa == 0) out.push_back({c.u, 0, {idx[i]}});
                continue;
            }
            out.push_back({anchor_ - c.a * (dot(c.a, anchor_) - c.b), 0, {idx[i]}});
            for (size_t j = i + 1; j < idx.size(); ++j) {
                const Constraint& e = at(idx[j]);
                Point2 x;
                if (e.kind == Constraint::Kind::HalfPlane && solve2(c.a.x, c.a.y, e.a.x, e.a.y, c.b, e.b, x))
                    out.push_back({x, 0, {idx[i], idx[j]}});
            }
        }
    }

    void tight(std::vector<int> t, std::vector<Candidate>& out) const {
        // Canonical order by content, so a basis solved on its own repeats the arithmetic.
        std::sort(t.begin(), t.end(), [&](int x, int y) {
            const Constraint &c = at(x), &e = at(y);
            auto key = [](const Constraint& k) {
                return k.kind == Constraint::Kind::HalfPlane ? std::make_tuple(0, k.a.x, k.a.y, k.b)
                                                            : std::make_tuple(1, k.u.x, k.u.y, k.kappa);
            };
            return key(c) < key(e);
        });
        int np = 0;
        for (int i : t) np += at(i).kind == Constraint::Kind::HalfPlane;
        auto push = [&](Point2 x, double rho) { out.push_back({x, rho, t}); };
        if (t.size() == 1) {
            if (np == 0) push(at(t[0]).u, at(t[0]).kappa);
            return;
        }
        if (t.size() == 2) {
            if (np == 2) pp(at(t[0]), at(t[1]), push);
            else if (np == 1) pd(at(t[0]), at(t[1]), push);
            else dd(at(t[0]), at(t[1]), push);
            return;
        }
        if (np == 3) ppp(at(t[0]), at(t[1]), at(t[2]), push);
        else if (np == 2) ppd(at(t[0]), at(t[1]), at(t[2]), push);
        else if (np == 1) pdd(at(t[0]), at(t[1]), at(t[2]), push);
        else ddd(at(t[0]), at(t[1]), at(t[2]), push);
    }

    // Antiparallel half-planes: rho is fixed, x slides along the mid-line.
    template <class Push>
    void pp(const Constraint& p, const Constraint& q, Push&& push) const {
        if (dot(p.a, q.a) > -1 + 1e-12) return;
        double rho = -(p.b + q.b) / 2;
        push(anchor_ - p.a * (dot(p.a, anchor_) - p.b - rho), rho);
    }

    template <class Push>
    void pd(const Constraint& p, const Constraint& d, Push&& push) const {
        double t = (dot(p.a, d.u) - p.b - d.kappa) / 2;
        if (t > 0) push(d.u - p.a * t, t + d.kappa);
    }

    template <class Push>
    void dd(const Constraint& d1, const Constraint& d2, Push&& push) const {
        double L = dist(d1.u, d2.u);
        if (L == 0) return;
        double t = (L + d2.kappa - d1.kappa) / 2;
        if (t > 0 && t < L) push(d1.u + (d2.u - d1.u) * (t / L), t + d1.kappa);
    }

    template <class Push>
    void ppp(const Constraint& p, const Constraint& q, const Constraint& r, Push&& push) const {
        // a.x - rho = b for all three; eliminate rho against p
        Point2 x;
        if (!solve2(p.a.x - q.a.x, p.a.y - q.a.y, p.a.x - r.a.x, p.a.y - r.a.y, p.b - q.b, p.b - r.b, x)) return;
        push(x, dot(p.a, x) - p.b);
    }

    // x on the line where p and q are equal; rho linear along it.
    template <class Push>
    void ppd(const Constraint& p, const Constraint& q, const Constraint& d, Push&& push) const {
        Point2 g = p.a - q.a;
        double g2 = norm2(g);
        if (g2 <= 1e-24) return;
        Point2 x0 = g * ((p.b - q.b) / g2), w = perp(g) / std::sqrt(g2);
        double r0 = dot(p.a, x0) - p.b - d.kappa, r1 = dot(p.a, w);
        Point2 e = x0 - d.u;
        // |e + s w|^2 = (r0 + r1 s)^2 with r0 + r1 s >= 0
        std::vector<double> ss;
        roots2(1 - r1 * r1, 2 * (dot(e, w) - r0 * r1), norm2(e) - r0 * r0, ss);
        for (double s : ss)
            if (r0 + r1 * s >= 0) push(x0 + w * s, r0 + r1 * s + d.kappa);
    }

    // Squared differences of the two disk equations leave a line.
    template <class Push>
    void pdd(const Constraint& p, const Constraint& d1, const Constraint& d2, Push&& push) const {
        double c1 = p.b + d1.kappa, c2 = p.b + d2.kappa;
        // -2(u1-u2).x + |u1|^2 - |u2|^2 = (c2 - c1)(2 a.x - c1 - c2)
        Point2 g = (d1.u - d2.u) * -2.0 - p.a * (2 * (c2 - c1));
        double h = -(norm2(d1.u) - norm2(d2.u)) - (c2 - c1) * (c1 + c2);
        double g2 = norm2(g);
        if (g2 <= 1e-24) return;
        Point2 x0 = g * (h / g2), w = perp(g) / std::sqrt(g2);
        double r0 = dot(p.a, x0) - c1, r1 = dot(p.a, w);
        Point2 e = x0 - d1.u;
        std::vector<double> ss;
        roots2(1 - r1 * r1, 2 * (dot(e, w) - r0 * r1), norm2(e) - r0 * r0, ss);
        for (double s : ss) {
            Point2 x = x0 + w * s;
            double rho = dot(p.a, x) - p.b;
            if (rho - d1.kappa >= 0 && rho - d2.kappa >= 0) push(x, rho);
        }
    }

    // Pairwise differences give x as an affine function of rho.
    template <class Push>
    void ddd(const Constraint& d1, const Constraint& d2, const Constraint& d3, Push&& push) const {
        // 2(u_j - u_1).x = |u_j|^2 - |u_1|^2 - (k_j^2 - k_1^2) + 2(k_j - k_1) rho   for j = 2,3
        auto row = [&](const Constraint& dj, Point2& g, double& gr, double& h) {
            g = (dj.u - d1.u) * 2.0;
            gr = 2 * (dj.kappa - d1.kappa);
            h = norm2(dj.u) - norm2(d1.u) - (dj.kappa * dj.kappa - d1.kappa * d1.kappa);
        };
        Point2 g2v, g3v;
        double gr2, gr3, h2, h3;
        row(d2, g2v, gr2, h2);
        row(d3, g3v, gr3, h3);
        // g.x = h + gr*rho  ->  x = X0 + X1 rho
        Point2 X0, X1;
        if (!solve2(g2v.x, g2v.y, g3v.x, g3v.y, h2, h3, X0)) return;
        solve2(g2v.x, g2v.y, g3v.x, g3v.y, gr2, gr3, X1);
        Point2 e = X0 - d1.u;
        // |e + X1 rho|^2 = (rho - k1)^2
        std::vector<double> rs;
        roots2(norm2(X1) - 1, 2 * (dot(e, X1) + d1.kappa), norm2(e) - d1.kappa * d1.kappa, rs);
        for (double rho : rs)
            if (rho >= d1.kappa && rho >= d2.kappa && rho >= d3.kappa) push(X0 + X1 * rho, rho);
    }

    // Fallback: bisection on rho; a rho is feasible when some candidate point
    // (disk centers, pairwise boundary crossings, anchor projections) satisfies all.
    Candidate bisect(const std::vector<int>& idx) const {
        auto witness = [&](double rho, Point2& found) {
            std::vector<Point2> pts{anchor_};
            for (size_t i = 0; i < idx.size(); ++i) {
                const Constraint& c = at(idx[i]);
                if (c.kind == Constraint::Kind::Disk) {
                    pts.push_back(c.u);
                    double r = rho - c.kappa;
                    if (r > 0) pts.push_back(c.u + normalized(anchor_ - c.u) * r);
                } else {
                    pts.push_back(anchor_ - c.a * (dot(c.a, anchor_) - c.b - rho));
                }
                for (size_t j = i + 1; j < idx.size(); ++j) boundary_crossings(c, at(idx[j]), rho, pts);
            }
            double best = INFINITY;
            bool ok = false;
            for (Point2 x : pts) {
                bool in = true;
                for (int k : idx)
                    if (at(k).value(x) > rho + 1e-12) in = false;
                if (in && dist(x, anchor_) < best) {
                    best = dist(x, anchor_);
                    found = x;
                    ok = true;
                }
            }
            return ok;
        };
        double hi = 0;
        for (int i : idx) hi = std::max(hi, at(i).value(anchor_));
        Point2 x = anchor_;
        double lo = 0;
        if (witness(0, x)) return {x, 0, idx};
        for (int it = 0; it < 200 && hi - lo > 1e-12 * (1 + hi); ++it) {
            double mid = 0.5 * (lo + hi);
            Point2 y;
            if (witness(mid, y)) hi = mid;
            else lo = mid;
        }
        witness(hi, x);
        return {x, hi, idx, true};
    }

    static void boundary_crossings(const Constraint& c, const Constraint& e, double rho, std::vector<Point2>& out) {
        using K = Constraint::Kind;
        if (c.kind == K::HalfPlane && e.kind == K::HalfPlane) {
            Point2 x;
            if (solve2(c.a.x, c.a.y, e.a.x, e.a.y, c.b + rho, e.b + rho, x)) out.push_back(x);
            return;
        }
        if (c.kind == K::Disk && e.kind == K::HalfPlane) return boundary_crossings(e, c, rho, out);
        if (c.kind == K::HalfPlane) {
            double r = rho - e.kappa;
            if (r < 0) return;
            double off = dot(c.a, e.u) - c.b - rho;
            Point2 foot = e.u - c.a * off;
            double h2 = r * r - off * off;
            if (h2 < 0) return;
            Point2 w = perp(c.a) * std::sqrt(h2);
            out.push_back(foot + w);
            out.push_back(foot - w);
            return;
        }
        double r1 = rho - c.kappa, r2 = rho - e.kappa, L = dist(c.u, e.u);
        if (r1 < 0 || r2 < 0 || L == 0) return;
        double t = (L * L + r1 * r1 - r2 * r2) / (2 * L);
        double h2 = r1 * r1 - t * t;
        if (h2 < 0) return;
        Point2 dir = (e.u - c.u) / L;
        Point2 m = c.u + dir * t, w = perp(dir) * std::sqrt(h2);
        out.push_back(m + w);
        out.push_back(m - w);
    }
};

}  // namespace detail

// Randomized LP-type solver (Matousek-Sharir-Welzl). Deterministic for a given seed.
inline DiskSolution min_feasible_disk(const std::vector<Constraint>& input, std::uint64_t seed = 0,
                                      std::optional<Point2> anchor = std::nullopt) {
    if (input.empty()) throw Error(ErrorKind::EmptyConstraintSet);
    Point2 origin = anchor ? *anchor : (input[0].kind == Constraint::Kind::Disk ? input[0].u : Point2{});
    // Work relative to the anchor, scaled by a power of two so rescaling is exact.
    double extent = 0;
    for (const auto& c : input)
        extent = std::max(extent, c.kind == Constraint::Kind::Disk ? dist(c.u, origin) + c.kappa
                                                                   : std::abs(dot(c.a, origin) - c.b));
    double scale = extent > 0 ? std::exp2(std::ceil(std::log2(extent))) : 1.0;
    std::vector<Constraint> cs;
    for (const auto& c : input) {
        Constraint n = c;
        if (c.kind == Constraint::Kind::Disk) {
            n.u = (c.u - origin) / scale;
            n.kappa = c.kappa / scale;
        } else {
            n.b = (c.b - dot(c.a, origin)) / scale;
        }
        cs.push_back(n);
    }
    detail::SmallSolver small(cs, {0, 0});

    std::vector<int> order(cs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    bool used_fallback = false;
    auto basis_of = [&](std::vector<int> idx) {
        auto c = small.solve(idx);
        if (c.numeric) used_fallback = true;
        return c;
    };
    // msw(first k of order, B)
    auto msw = [&](auto&& self, size_t k, detail::Candidate B) -> detail::Candidate {
        for (size_t i = 0; i < k; ++i) {
            int h = order[i];
            if (std::find(B.tight.begin(), B.tight.end(), h) != B.tight.end()) continue;
            if (!small.violates(h, B)) continue;
            std::vector<int> idx = B.tight;
            idx.push_back(h);
            B = self(self, i, basis_of(idx));
        }
        return B;
    };
    detail::Candidate best = msw(msw, order.size(), basis_of({}));
    // A final sweep catches anything the recursion left marginally violated.
    for (int pass = 0; pass < 3; ++pass) {
        bool clean = true;
        for (int h : order)
            if (small.violates(h, best)) {
                clean = false;
                std::vector<int> idx = best.tight;
                idx.push_back(h);
                best = msw(msw, order.size(), basis_of(idx));
            }
        if (clean) break;
    }
    DiskSolution out;
    out.x = origin + best.x * scale;
    out.rho = best.rho * scale;
    out.basis = best.tight;
    std::sort(out.basis.begin(), out.basis.end());
    out.fallback = used_fallback;
    return out;
}

}  // namespace viscenter
