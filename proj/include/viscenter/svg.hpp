#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "io.hpp"

namespace viscenter::svg {

// All styling lives here so output bytes only change when this table does.
struct Style {
    const char* background = "#ffffff";
    const char* polygon_fill = "#f2f2ee";
    const char* polygon_stroke = "#333333";
    const char* shade = "#d6604d";
    double shade_opacity = 0.15;
    const char* chord = "#b2182b";
    const char* path = "#2166ac";
    const char* site = "#1a1a1a";
    const char* center = "#e08214";
    const char* segment = "#e08214";
    double stroke = 0.004;  // fraction of the bbox diagonal
    double marker = 0.008;
    int width_px = 800;
};

inline constexpr Style kStyle{};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// SVG y grows downward; flip about the bbox middle.
struct Frame {
    double flip = 0;
    std::string pt(Point2 p) const { return num(p.x) + "," + num(flip - p.y); }
    double x(Point2 p) const { return p.x; }
    double y(Point2 p) const { return flip - p.y; }
};

inline std::string points_attr(const Frame& f, const std::vector<Point2>& pts) {
    std::string s;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += f.pt(pts[i]);
    }
    return s;
}

}  // namespace detail

inline std::string render(const Polygon& P, const std::vector<Point2>& sites, const io::ResultFile& r,
                          const Style& st = kStyle) {
    Point2 lo = P.bbox_lo(), hi = P.bbox_hi();
    double w = hi.x - lo.x, h = hi.y - lo.y;
    double mx = 0.05 * w, my = 0.05 * h;
    detail::Frame f{lo.y + hi.y};
    double vx = lo.x - mx, vy = lo.y - my, vw = w + 2 * mx, vh = h + 2 * my;
    double diag = P.bbox_diag();
    std::string sw = detail::num(st.stroke * diag), rad = detail::num(st.marker * diag);
    int height_px = static_cast<int>(std::lround(st.width_px * vh / vw));
    using detail::num;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(st.width_px) + "\" height=\"" +
         std::to_string(height_px) + "\" viewBox=\"" + num(vx) + " " + num(vy) + " " + num(vw) + " " + num(vh) + "\">\n";
    s += "<rect x=\"" + num(vx) + "\" y=\"" + num(vy) + "\" width=\"" + num(vw) + "\" height=\"" + num(vh) +
         "\" fill=\"" + st.background + "\"/>\n";
    s += "<polygon id=\"polygon\" points=\"" + detail::points_attr(f, P.vertices()) + "\" fill=\"" + st.polygon_fill +
         "\" stroke=\"" + st.polygon_stroke + "\" stroke-width=\"" + sw + "\" stroke-linejoin=\"round\"/>\n";

    for (size_t i = 0; i < r.chords.size(); ++i) {
        const auto& c = r.chords[i];
        auto bp = locate_on_boundary(P, c.p), bq = locate_on_boundary(P, c.q);
        if (bp && bq) {
            auto region = half_polygon_boundary(P, HalfPolygon{*bp, *bq, 0});
            s += "<polygon class=\"half\" points=\"" + detail::points_attr(f, region) + "\" fill=\"" + st.shade +
                 "\" fill-opacity=\"" + num(st.shade_opacity) + "\" stroke=\"none\"/>\n";
        }
        s += "<line class=\"chord\" x1=\"" + num(f.x(c.p)) + "\" y1=\"" + num(f.y(c.p)) + "\" x2=\"" + num(f.x(c.q)) +
             "\" y2=\"" + num(f.y(c.q)) + "\" stroke=\"" + st.chord + "\" stroke-width=\"" + sw + "\"/>\n";
    }

    if (r.per_site)
        for (const auto& e : *r.per_site) {
            if (e.path.size() < 2) continue;
            std::string d = "M" + f.pt(e.path[0]);
            for (size_t i = 1; i < e.path.size(); ++i) d += " L" + f.pt(e.path[i]);
            s += "<path class=\"witness\" d=\"" + d + "\" fill=\"none\" stroke=\"" + st.path + "\" stroke-width=\"" + sw +
                 "\"/>\n";
        }

    for (Point2 u : sites)
        s += "<circle class=\"site\" cx=\"" + num(f.x(u)) + "\" cy=\"" + num(f.y(u)) + "\" r=\"" + rad + "\" fill=\"" +
             st.site + "\"/>\n";

    if (r.degenerate_segment) {
        const auto& g = *r.degenerate_segment;
        s += "<line class=\"center-segment\" x1=\"" + num(f.x(g.a)) + "\" y1=\"" + num(f.y(g.a)) + "\" x2=\"" +
             num(f.x(g.b)) + "\" y2=\"" + num(f.y(g.b)) + "\" stroke=\"" + st.segment + "\" stroke-width=\"" +
             num(2 * st.stroke * diag) + "\"/>\n";
    }
    s += "<circle class=\"center\" cx=\"" + num(f.x(r.center)) + "\" cy=\"" + num(f.y(r.center)) + "\" r=\"" +
         num(1.5 * st.marker * diag) + "\" fill=\"" + st.center + "\" stroke=\"" + st.polygon_stroke +
         "\" stroke-width=\"" + num(0.5 * st.stroke * diag) + "\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace viscenter::svg
