#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "visibility_center.hpp"

namespace viscenter::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Malformed file contents that are not geometric errors: bad JSON, wrong types, missing keys.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct InstanceFile {
    int version = kFormatVersion;
    Polygon polygon;
    std::optional<std::vector<Point2>> sites;
    std::optional<std::vector<HalfPolygon>> half_polygons;
};

struct SiteEntry {
    int site = 0;
    double distance = 0;
    std::vector<Point2> path;
};

// A chord to draw: a window (site and reflex vertex known) or an input half-polygon.
struct ChordEntry {
    Point2 p, q;
    int site = -1;
    int reflex = -1;
};

struct ResultFile {
    int version = kFormatVersion;
    std::string method = "solver";
    std::string mode;
    Point2 center;
    double radius = 0;
    std::vector<int> determining;  // indices into `chords`
    std::optional<Segment> degenerate_segment;
    bool degenerate = false;
    std::optional<std::vector<SiteEntry>> per_site;
    std::vector<ChordEntry> chords;
    std::uint64_t solver_seed = 0;
    double eps = 0, tie_eps = 0;
    int grid = 0;  // oracle results only
    std::map<std::string, double> timings;
};

// ---- JSON text ----

namespace detail {

inline void emit(std::string& out, const json& j, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad_in + json(it.key()).dump() + ": ";
            emit(out, it.value(), indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // short numeric arrays (points) stay on one line
        bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_number(); });
        if (flat) {
            out += "[";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                emit(out, j[i], 0);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad_in;
            emit(out, j[i], indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        std::string s = buf;
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        out += s;
        return;
    }
    default: out += j.dump();
    }
}

inline json point_json(Point2 p) { return json::array({p.x, p.y}); }

inline Point2 point_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(std::string(what) + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<Point2> points_from(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected a list of points");
    std::vector<Point2> out;
    for (const auto& e : j) out.push_back(point_from(e, what));
    return out;
}

inline const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

inline void check_version(const json& j) {
    const auto& v = field(j, "version");
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
        throw SchemaError("unsupported version (expected " + std::to_string(kFormatVersion) + ")");
}

}  // namespace detail

inline std::string dump(const json& j) {
    std::string out;
    detail::emit(out, j, 0);
    out += "\n";
    return out;
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("cannot write " + path);
}

// ---- instances ----

// Chord endpoints must lie on the boundary and the chord must stay inside P.
inline HalfPolygon half_from_points(const Polygon& P, Point2 p, Point2 q, int id) {
    auto bp = locate_on_boundary(P, p), bq = locate_on_boundary(P, q);
    if (!bp || !bq || dist(p, q) <= P.eps() || !visible(P, p, q)) throw Error(ErrorKind::InvalidChord, id);
    return {*bp, *bq, id};
}

inline InstanceFile parse_instance(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw SchemaError("instance must be a JSON object");
    detail::check_version(j);
    InstanceFile f;
    f.polygon = validate_polygon(detail::points_from(detail::field(j, "polygon"), "polygon"));
    if (j.contains("sites")) {
        f.sites = detail::points_from(j["sites"], "sites");
        for (size_t i = 0; i < f.sites->size(); ++i)
            if (point_in_polygon(f.polygon, (*f.sites)[i]) == Location::Outside)
                throw Error(ErrorKind::PointOutsidePolygon, static_cast<long>(i));
    }
    if (j.contains("half_polygons")) {
        const auto& arr = j["half_polygons"];
        if (!arr.is_array()) throw SchemaError("half_polygons: expected a list");
        std::vector<HalfPolygon> hs;
        for (const auto& e : arr) {
            if (!e.is_object()) throw SchemaError("half_polygons: expected {p, q} objects");
            hs.push_back(half_from_points(f.polygon, detail::point_from(detail::field(e, "p"), "p"),
                                          detail::point_from(detail::field(e, "q"), "q"), static_cast<int>(hs.size())));
        }
        f.half_polygons = std::move(hs);
    }
    return f;
}

inline json instance_json(const InstanceFile& f) {
    json j;
    j["version"] = f.version;
    json poly = json::array();
    for (const auto& p : f.polygon.vertices()) poly.push_back(detail::point_json(p));
    j["polygon"] = poly;
    if (f.sites) {
        json s = json::array();
        for (const auto& p : *f.sites) s.push_back(detail::point_json(p));
        j["sites"] = s;
    }
    if (f.half_polygons) {
        json hs = json::array();
        for (const auto& H : *f.half_polygons)
            hs.push_back(json{{"p", detail::point_json(H.p.p)}, {"q", detail::point_json(H.q.p)}});
        j["half_polygons"] = hs;
    }
    return j;
}

// ---- results ----

inline json result_json(const ResultFile& r) {
    json j;
    j["version"] = r.version;
    j["method"] = r.method;
    j["mode"] = r.mode;
    j["center"] = detail::point_json(r.center);
    j["radius"] = r.radius;
    json det = json::array();
    for (int d : r.determining) det.push_back(d);
    j["determining"] = det;
    if (r.degenerate_segment)
        j["degenerate_segment"] = json::array({detail::point_json(r.degenerate_segment->a), detail::point_json(r.degenerate_segment->b)});
    j["degenerate"] = r.degenerate;
    json chords = json::array();
    for (const auto& c : r.chords) {
        json e{{"p", detail::point_json(c.p)}, {"q", detail::point_json(c.q)}};
        if (c.site >= 0) e["site"] = c.site;
        if (c.reflex >= 0) e["reflex"] = c.reflex;
        chords.push_back(e);
    }
    j["chords"] = chords;
    if (r.per_site) {
        json ps = json::array();
        for (const auto& s : *r.per_site) {
            json path = json::array();
            for (auto p : s.path) path.push_back(detail::point_json(p));
            ps.push_back(json{{"site", s.site}, {"distance", s.distance}, {"path", path}});
        }
        j["per_site"] = ps;
    }
    j["solver_seed"] = r.solver_seed;
    j["tolerances"] = json{{"eps", r.eps}, {"tie_eps", r.tie_eps}};
    if (r.grid > 0) j["grid"] = r.grid;
    json t = json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    j["timings"] = t;
    return j;
}

inline ResultFile parse_result(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw SchemaError("result must be a JSON object");
    detail::check_version(j);
    ResultFile r;
    try {
        r.method = detail::field(j, "method").get<std::string>();
        r.mode = detail::field(j, "mode").get<std::string>();
        r.center = detail::point_from(detail::field(j, "center"), "center");
        r.radius = detail::field(j, "radius").get<double>();
        for (const auto& d : detail::field(j, "determining")) r.determining.push_back(d.get<int>());
        if (j.contains("degenerate_segment")) {
            const auto& s = j["degenerate_segment"];
            if (!s.is_array() || s.size() != 2) throw SchemaError("degenerate_segment: expected two points");
            r.degenerate_segment = Segment{detail::point_from(s[0], "degenerate_segment"), detail::point_from(s[1], "degenerate_segment")};
        }
        r.degenerate = j.value("degenerate", false);
        for (const auto& c : detail::field(j, "chords")) {
            ChordEntry e{detail::point_from(detail::field(c, "p"), "p"), detail::point_from(detail::field(c, "q"), "q")};
            e.site = c.value("site", -1);
            e.reflex = c.value("reflex", -1);
            r.chords.push_back(e);
        }
        if (j.contains("per_site")) {
            std::vector<SiteEntry> ps;
            for (const auto& s : j["per_site"])
                ps.push_back({detail::field(s, "site").get<int>(), detail::field(s, "distance").get<double>(),
                              detail::points_from(detail::field(s, "path"), "path")});
            r.per_site = std::move(ps);
        }
        r.solver_seed = detail::field(j, "solver_seed").get<std::uint64_t>();
        const auto& tol = detail::field(j, "tolerances");
        r.eps = detail::field(tol, "eps").get<double>();
        r.tie_eps = detail::field(tol, "tie_eps").get<double>();
        r.grid = j.value("grid", 0);
        for (auto it = detail::field(j, "timings").begin(); it != j["timings"].end(); ++it) r.timings[it.key()] = it.value().get<double>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("result: ") + e.what());
    }
    for (int d : r.determining)
        if (d < 0 || d >= static_cast<int>(r.chords.size())) throw SchemaError("determining index out of range");
    return r;
}

// ---- solver results to files ----

inline void fill_common(ResultFile& r, const Polygon& P, std::uint64_t seed) {
    r.solver_seed = seed;
    r.eps = P.eps();
    r.tie_eps = P.tie_eps();
}

inline ResultFile from_center(const Polygon& P, const std::vector<HalfPolygon>& hs, const CenterResult& c,
                              std::uint64_t seed) {
    ResultFile r;
    r.mode = "halfpolygon";
    fill_common(r, P, seed);
    r.center = c.center;
    r.radius = c.radius;
    for (const auto& H : hs) r.chords.push_back({H.p.p, H.q.p});
    r.determining = c.determining;
    std::sort(r.determining.begin(), r.determining.end());
    r.degenerate_segment = c.degenerate_segment;
    r.degenerate = c.degenerate;
    return r;
}

inline ResultFile from_visibility(const Polygon& P, const std::vector<Point2>& U, const VisibilityAnswer& a,
                                  std::uint64_t seed, const std::string& mode) {
    ResultFile r;
    r.mode = mode;
    fill_common(r, P, seed);
    r.center = a.center.center;
    r.radius = a.center.radius;
    for (const auto& w : a.windows) {
        ChordEntry c{w.half.p.p, w.half.q.p, -1, w.fulcrum};
        for (size_t i = 0; i < U.size() && c.site < 0; ++i)
            if (U[i] == w.source) c.site = static_cast<int>(i);
        r.chords.push_back(c);
    }
    r.determining = a.center.determining;
    std::sort(r.determining.begin(), r.determining.end());
    r.degenerate_segment = a.center.degenerate_segment;
    r.degenerate = a.center.degenerate;
    std::vector<SiteEntry> ps;
    for (const auto& s : a.per_site) ps.push_back({s.site, s.distance, s.path.waypoints});
    r.per_site = std::move(ps);
    return r;
}

}  // namespace viscenter::io
