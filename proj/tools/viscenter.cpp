// viscenter: command-line front end.
//
//   viscenter validate FILE
//   viscenter center FILE [--mode M] [--seed S] [--tol T] [--out F] [--strict] [--timings]
//   viscenter oracle FILE [--mode M] [--grid N] [--out F]
//   viscenter svg INSTANCE RESULT [--out F]
//   viscenter gen [--mode M] [--seed S] [--n N] [--m M] [--k K] [--out F]
//
// Exit codes: 0 ok, 2 invalid input, 3 I/O error, 4 degenerate solution under --strict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <viscenter/io.hpp>
#include <viscenter/oracle.hpp>
#include <viscenter/svg.hpp>

namespace {

using namespace viscenter;
using io::json;

constexpr int kOk = 0, kInvalid = 2, kIo = 3, kDegenerate = 4;

struct Options {
    std::string input, result, out, mode;
    std::uint64_t seed = 0;
    double tol = 0;
    int grid = 200;
    int n = 20, m = 4, k = 4;
    bool strict = false, timings = false;
};

void report_error(const std::string& kind, long index, const std::string& message) {
    json e;
    e["error"] = kind;
    if (index >= 0) e["index"] = index;
    e["message"] = message;
    std::cerr << e.dump() << "\n";
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) std::cout << text;
    else io::write_file(o.out, text);
}

// Twelve significant digits, fixed notation.
std::string radius_text(double r) {
    int e = r == 0 ? 0 : static_cast<int>(std::floor(std::log10(std::abs(r))));
    int decimals = r == 0 ? 12 : std::max(0, 11 - e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
    return buf;
}

io::InstanceFile load_instance(const Options& o) {
    auto f = io::parse_instance(io::read_file(o.input));
    if (o.tol > 0) {
        // rebuild with the requested tolerance; chords are re-snapped against it
        Polygon P = Polygon::from_clockwise(f.polygon.vertices(), o.tol * f.polygon.bbox_diag());
        if (f.half_polygons)
            for (auto& H : *f.half_polygons) H = io::half_from_points(P, H.p.p, H.q.p, H.id);
        f.polygon = P;
    }
    return f;
}

std::string pick_mode(const Options& o, const io::InstanceFile& f) {
    std::string mode = o.mode;
    if (mode.empty()) {
        if (f.sites && f.half_polygons) throw io::SchemaError("both sites and half_polygons present; pass --mode");
        mode = f.half_polygons ? "halfpolygon" : f.sites ? "visibility" : "polygon";
    }
    if (mode == "visibility" && !f.sites) throw io::SchemaError("mode visibility needs \"sites\"");
    if (mode == "halfpolygon" && !f.half_polygons) throw io::SchemaError("mode halfpolygon needs \"half_polygons\"");
    return mode;
}

int cmd_validate(const Options& o) {
    auto f = load_instance(o);
    spdlog::info("valid: {} vertices, {} sites, {} half-polygons", f.polygon.size(), f.sites ? f.sites->size() : 0,
                 f.half_polygons ? f.half_polygons->size() : 0);
    return kOk;
}

int cmd_center(const Options& o) {
    auto f = load_instance(o);
    std::string mode = pick_mode(o, f);
    const Polygon& P = f.polygon;
    SolverOptions opt{o.seed};
    auto t0 = std::chrono::steady_clock::now();
    io::ResultFile r;
    if (mode == "halfpolygon") {
        auto c = geodesic_center(P, *f.half_polygons, opt);
        r = io::from_center(P, *f.half_polygons, c, o.seed);
    } else {
        std::vector<Point2> U = mode == "polygon" ? P.vertices() : *f.sites;
        auto a = visibility_center(P, U, opt);
        r = io::from_visibility(P, U, a, o.seed, mode);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    spdlog::info("{} center in {:.3f}s, radius {}", mode, secs, r.radius);
    if (o.timings) r.timings["solve_seconds"] = secs;
    if (!o.out.empty()) io::write_file(o.out, io::dump(io::result_json(r)));
    std::cout << radius_text(r.radius) << "\n";
    if (r.degenerate) {
        spdlog::warn("more than three constraints are tight at the center");
        if (o.strict) {
            report_error("Degenerate", -1, "more than three constraints tight at the center");
            return kDegenerate;
        }
    }
    return kOk;
}

int cmd_oracle(const Options& o) {
    auto f = load_instance(o);
    std::string mode = pick_mode(o, f);
    const Polygon& P = f.polygon;
    GridSpec g(P, o.grid);
    auto t0 = std::chrono::steady_clock::now();
    GridResult res;
    io::ResultFile r;
    r.method = "grid";
    r.mode = mode;
    r.grid = o.grid;
    io::fill_common(r, P, o.seed);
    if (mode == "halfpolygon") {
        res = oracle_halfpolygon_radius(P, *f.half_polygons, g);
        for (const auto& H : *f.half_polygons) r.chords.push_back({H.p.p, H.q.p});
    } else {
        std::vector<Point2> U = mode == "polygon" ? P.vertices() : *f.sites;
        res = oracle_visibility_radius(P, U, g);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    spdlog::info("grid oracle {}x{} in {:.3f}s", o.grid, o.grid, secs);
    if (!std::isfinite(res.value)) throw io::SchemaError("no grid cell lies inside the polygon; raise --grid");
    r.center = res.argmin;
    r.radius = res.value;
    if (o.timings) r.timings["solve_seconds"] = secs;
    if (!o.out.empty()) io::write_file(o.out, io::dump(io::result_json(r)));
    std::cout << radius_text(r.radius) << "\n";
    return kOk;
}

int cmd_svg(const Options& o) {
    auto f = io::parse_instance(io::read_file(o.input));
    auto r = io::parse_result(io::read_file(o.result));
    std::vector<Point2> U;
    if (r.mode == "polygon") U = f.polygon.vertices();
    else if (f.sites) U = *f.sites;
    emit(o, svg::render(f.polygon, U, r));
    return kOk;
}

int cmd_gen(const Options& o) {
    std::string mode = o.mode.empty() ? "visibility" : o.mode;
    io::InstanceFile f;
    auto inst = random_instance(o.seed, o.n, mode == "visibility" ? o.m : 0);
    f.polygon = inst.polygon;
    if (mode == "visibility") f.sites = inst.sites;
    if (mode == "halfpolygon") {
        std::mt19937_64 rng(o.seed * 7 + 1);
        auto hs = random_windows(f.polygon, rng, o.k);
        if (hs.empty()) throw io::SchemaError("generated polygon has no reflex vertex to build windows on; try another seed");
        f.half_polygons = hs;
    }
    emit(o, io::dump(io::instance_json(f)));
    return kOk;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("viscenter");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("VISCENTER_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    Options o;
    CLI::App app{"Visibility and geodesic centers in simple polygons"};
    app.require_subcommand(1);
    const std::vector<std::string> modes{"visibility", "halfpolygon", "polygon"};

    auto* validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("file", o.input, "instance JSON")->required();

    auto* center = app.add_subcommand("center", "Compute the center");
    center->add_option("file", o.input, "instance JSON")->required();
    center->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    center->add_option("--seed", o.seed, "solver seed");
    center->add_option("--tol", o.tol, "geometric tolerance relative to the bbox diagonal")->check(CLI::Range(1e-15, 1e-3));
    center->add_option("--out", o.out, "write the result file here");
    center->add_flag("--strict", o.strict, "exit 4 when the solution is degenerate");
    center->add_flag("--timings", o.timings, "record wall-clock timings in the result");

    auto* oracle = app.add_subcommand("oracle", "Brute-force grid answer");
    oracle->add_option("file", o.input, "instance JSON")->required();
    oracle->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    oracle->add_option("--grid", o.grid, "cells per side")->check(CLI::Range(16, 4000));
    oracle->add_option("--seed", o.seed);
    oracle->add_option("--tol", o.tol)->check(CLI::Range(1e-15, 1e-3));
    oracle->add_option("--out", o.out, "write the result file here");
    oracle->add_flag("--timings", o.timings);

    auto* svgc = app.add_subcommand("svg", "Draw an instance and its result");
    svgc->add_option("instance", o.input)->required();
    svgc->add_option("result", o.result)->required();
    svgc->add_option("--out", o.out);

    auto* gen = app.add_subcommand("gen", "Write a random instance");
    gen->add_option("--mode", o.mode)->check(CLI::IsMember(modes));
    gen->add_option("--seed", o.seed);
    gen->add_option("--n", o.n, "max polygon vertices")->check(CLI::Range(4, 500));
    gen->add_option("--m", o.m, "max sites")->check(CLI::Range(1, 500));
    gen->add_option("--k", o.k, "windows")->check(CLI::Range(1, 100));
    gen->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*center) return cmd_center(o);
        if (*oracle) return cmd_oracle(o);
        if (*svgc) return cmd_svg(o);
        if (*gen) return cmd_gen(o);
    } catch (const io::IoError& e) {
        report_error("IoError", -1, e.what());
        return kIo;
    } catch (const io::SchemaError& e) {
        report_error("SchemaError", -1, e.what());
        return kInvalid;
    } catch (const Error& e) {
        report_error(to_string(e.kind()), e.index(), e.what());
        return kInvalid;
    }
    return kOk;
}
