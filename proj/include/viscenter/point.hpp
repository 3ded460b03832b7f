#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace viscenter {

struct Point2 {
    double x = 0;
    double y = 0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
inline Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double cross(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Point2 a) { return dot(a, a); }
inline double dist(Point2 a, Point2 b) { return norm(b - a); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }  // ccw quarter turn
inline Point2 lerp(Point2 a, Point2 b, double t) { return a + (b - a) * t; }

inline Point2 normalized(Point2 a) {
    double n = norm(a);
    return n > 0 ? a / n : Point2{};
}

inline bool finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Counterclockwise angle from a to b, in [0, 2pi).
inline double angle_ccw(Point2 a, Point2 b) {
    double t = std::atan2(cross(a, b), dot(a, b));
    if (t < 0) t += 2 * std::numbers::pi;
    return t;
}

// Clockwise angle from a to b, in [0, 2pi).
inline double angle_cw(Point2 a, Point2 b) { return angle_ccw(b, a); }

// Distance from p to segment ab, with the clamped parameter of the foot.
inline double segment_distance(Point2 p, Point2 a, Point2 b, double* t_out = nullptr) {
    Point2 d = b - a;
    double l2 = norm2(d);
    double t = l2 > 0 ? dot(p - a, d) / l2 : 0.0;
    t = t < 0 ? 0 : (t > 1 ? 1 : t);
    if (t_out) *t_out = t;
    return dist(p, a + d * t);
}

// Closest distance between two closed segments.
inline double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d) {
    double o1 = cross(a, b, c), o2 = cross(a, b, d);
    double o3 = cross(c, d, a), o4 = cross(c, d, b);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
        ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
        return 0.0;
    double r = segment_distance(a, c, d);
    r = std::min(r, segment_distance(b, c, d));
    r = std::min(r, segment_distance(c, a, b));
    r = std::min(r, segment_distance(d, a, b));
    return r;
}

// Intersection parameter s of line a + s*da with line b + t*db; false if parallel.
inline bool line_intersection(Point2 a, Point2 da, Point2 b, Point2 db, double& s) {
    double den = cross(da, db);
    if (std::abs(den) <= 1e-300) return false;
    s = cross(b - a, db) / den;
    return true;
}

// Oriented line n.x = c with unit normal n.
struct Line {
    Point2 n;
    double c = 0;

    double eval(Point2 x) const { return dot(n, x) - c; }
    static Line through(Point2 p, Point2 dir) {
        Point2 n = normalized(perp(dir));
        return {n, dot(n, p)};
    }
};

}  // namespace viscenter
