#pragma once

#include <hurwitzkit/contraction.hpp>
#include <hurwitzkit/covering_maps.hpp>
#include <hurwitzkit/density_engine.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>
#include <hurwitzkit/extremal_bounds.hpp>
#include <hurwitzkit/geodesic_solver.hpp>
#include <hurwitzkit/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hurwitzkit::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// Bad flag value; reported with the flag name and exit code 2.
struct UsageError : std::runtime_error {
    UsageError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

namespace detail {

inline Json point_json(CPoint w) { return Json{{"re", w.real()}, {"im", w.imag()}}; }

inline Json density_json(const DensityValue& v)
{
    if (v.is_point())
        return Json{{"value", v.lower}, {"provenance", std::string(provenance_name(v.provenance))}};
    return Json{{"lower", v.lower}, {"upper", v.upper}, {"provenance", std::string(provenance_name(v.provenance))}};
}

template <class T, class Parse>
T parse_flag(const std::string& flag, const std::string& text, Parse&& parse)
{
    try {
        return parse(text);
    } catch (const Error& e) {
        throw UsageError(flag, e.what());
    }
}

inline DomainSpec domain_flag(const std::string& flag, const std::string& text)
{
    if (text.empty())
        throw UsageError(flag, "required");
    return parse_flag<DomainSpec>(flag, text, [](const std::string& s) { return parse_domain(s); });
}

inline CPoint point_flag(const std::string& flag, const std::string& text)
{
    if (text.empty())
        throw UsageError(flag, "required");
    return parse_flag<CPoint>(flag, text, [](const std::string& s) { return parse_point(s); });
}

/// "a:b:c" with each piece "re,im".
inline std::vector<CPoint> points_flag(const std::string& flag, const std::string& text)
{
    if (text.empty())
        throw UsageError(flag, "required");
    std::vector<CPoint> out;
    std::stringstream ss(text);
    for (std::string piece; std::getline(ss, piece, ':');)
        out.push_back(point_flag(flag, piece));
    return out;
}

inline Metric metric_flag(const std::string& text)
{
    if (text == "hyperbolic")
        return Metric::Hyperbolic;
    if (text == "hurwitz")
        return Metric::Hurwitz;
    if (text == "quasihyperbolic")
        return Metric::Quasihyperbolic;
    throw UsageError("--metric", "expected hyperbolic, hurwitz or quasihyperbolic, got '" + text + "'");
}

inline RunConfig load_config(const std::string& path)
{
    RunConfig cfg;
    if (path.empty())
        return cfg;
    std::ifstream in(path);
    if (!in)
        throw UsageError("--config", "cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("--config", e.what());
    }
    if (!j.is_object())
        throw UsageError("--config", "expected a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "tolerance")
                cfg.tolerance = v.get<double>();
            else if (key == "budget")
                cfg.budget = v.get<int>();
            else if (key == "stencil")
                cfg.stencil = v.get<int>();
            else if (key == "max_levels")
                cfg.max_levels = v.get<int>();
            else if (key == "paper_normalization")
                cfg.paper_normalization = v.get<bool>();
            else if (key == "format")
                cfg.format = v.get<std::string>();
            else if (key == "seed")
                cfg.seed = v.get<std::uint64_t>();
            else if (key == "distance_tolerance")
                cfg.distance_tolerance = v.get<double>();
            else if (key == "density_samples")
                cfg.density_samples = v.get<int>();
            else if (key == "certificate_calls")
                cfg.certificate_calls = v.get<int>();
            else if (key == "distance_points")
                cfg.distance_points = v.get<int>();
            else if (key == "contraction_levels")
                cfg.contraction_levels = v.get<int>();
            else
                throw UsageError("--config", "unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("--config", e.what());
    }
    return cfg;
}

inline Json config_json(const RunConfig& c)
{
    return Json{{"tolerance", c.tolerance},
                {"budget", c.budget},
                {"stencil", c.stencil},
                {"max_levels", c.max_levels},
                {"paper_normalization", c.paper_normalization},
                {"format", c.format},
                {"seed", c.seed},
                {"distance_tolerance", c.distance_tolerance},
                {"density_samples", c.density_samples},
                {"certificate_calls", c.certificate_calls},
                {"distance_points", c.distance_points},
                {"contraction_levels", c.contraction_levels}};
}

inline Json geodesic_json(const GeodesicResult& r)
{
    Json trace = Json::array();
    for (const auto& s : r.refinement_trace)
        trace.push_back(Json{{"h", s.h}, {"distance", s.distance}});
    return Json{{"distance", r.distance},
                {"converged", r.converged},
                {"refinement_trace", trace},
                {"vertices", r.path ? r.path->size() : 0},
                {"grid",
                 {{"coordinates", r.grid.coordinates == CoordinateSystem::Cartesian ? "cartesian" : "log-polar"},
                  {"h", r.grid.h},
                  {"stencil", r.grid.stencil}}}};
}

inline Json outcome_json(const VerificationOutcome& o)
{
    Json observed = Json::object();
    for (const auto& [k, v] : o.observed)
        observed[k] = v;
    Json j{{"id", o.id}, {"status", status_name(o.status)}, {"tolerance", o.tolerance}, {"observed", observed}};
    if (!o.note.empty())
        j["note"] = o.note;
    return j;
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace detail

struct Options {
    std::string domain;
    std::string basepoint_domain;
    std::string outer;
    std::string point;
    std::string points;
    std::string metric = "hurwitz";
    std::string config;
    std::string format;
    std::string suite = "all";
    std::string path_csv;
    bool paper_normalization = false;
    int samples = 12;
    int pairs = 8;
};

inline int run_density(const Options& o, const RunConfig& cfg, std::ostream& out)
{
    const DomainSpec d = detail::domain_flag("--domain", o.domain);
    const CPoint w = detail::point_flag("--point", o.point);
    const Metric m = detail::metric_flag(o.metric);
    DensityValue v;
    switch (m) {
    case Metric::Hyperbolic: v = hyperbolic_density(d, w); break;
    case Metric::Hurwitz: v = hurwitz_density(d, w); break;
    case Metric::Quasihyperbolic: v = quasihyperbolic_density(d, w); break;
    }
    Json j = detail::density_json(v);
    if (cfg.paper_normalization && m == Metric::Hurwitz && d.kind() == DomainKind::PuncturedDisk)
        j["paper_printed_upper"] = hahn_density_punctured_disk(w, HahnNormalization::PaperPrinted).value();
    if (cfg.format == "csv") {
        out << "lower,upper,provenance\n" << v.lower << ',' << v.upper << ',' << provenance_name(v.provenance) << '\n';
        return kOk;
    }
    out << j.dump() << '\n';
    return kOk;
}

inline int run_distance(const Options& o, const RunConfig& cfg, std::ostream& out)
{
    const DomainSpec d = detail::domain_flag("--domain", o.domain);
    const auto pts = detail::points_flag("--points", o.points);
    if (pts.size() != 2)
        throw UsageError("--points", "expected exactly two points a:b");
    const Metric m = detail::metric_flag(o.metric);
    SolverOptions opts = cfg.solver();
    const DistanceReport r = o.basepoint_domain.empty()
                                 ? distance(d, m, pts[0], pts[1], opts)
                                 : generalized_hurwitz_distance(detail::domain_flag("--basepoint-domain", o.basepoint_domain), d,
                                                                pts[0], pts[1], opts, cfg.budget);
    const GeodesicResult& witness = r.upper_or_point();
    if (!o.path_csv.empty()) {
        std::ofstream f(o.path_csv);
        if (!f)
            throw UsageError("--path-csv", "cannot write " + o.path_csv);
        if (witness.path)
            write_path_csv(f, *witness.path);
        else
            write_path_csv(f, Polyline({pts[0], pts[0]}));
    }
    if (cfg.format == "csv") {
        write_path_csv(out, witness.path ? *witness.path : Polyline({pts[0], pts[0]}));
        return kOk;
    }
    Json j{{"domain", to_string(d)}, {"metric", metric_name(m)}, {"from", detail::point_json(pts[0])}, {"to", detail::point_json(pts[1])}};
    if (r.is_interval()) {
        j["lower"] = r.lower.distance;
        j["upper"] = r.upper->distance;
        j["lower_solve"] = detail::geodesic_json(r.lower);
        j["upper_solve"] = detail::geodesic_json(*r.upper);
    } else {
        j["distance"] = r.lower.distance;
        j["solve"] = detail::geodesic_json(r.lower);
    }
    out << j.dump() << '\n';
    return kOk;
}

inline int run_bounds(const Options& o, const RunConfig& cfg, std::ostream& out)
{
    const DomainSpec y = detail::domain_flag("--basepoint-domain", o.basepoint_domain);
    const DomainSpec omega = detail::domain_flag("--domain", o.domain);
    const CPoint w = detail::point_flag("--point", o.point);
    const BoundCertificate c = generalized_hurwitz_bounds(y, omega, w, cfg.tolerance, cfg.budget);
    Json witness = nullptr;
    if (c.upper_witness)
        witness = Json{{"s_re", c.upper_witness->s.real()},
                       {"s_im", c.upper_witness->s.imag()},
                       {"family", family_name(c.upper_witness->family)},
                       {"scale", c.upper_witness->scale}};
    const Json j{{"lower", c.lower},
                 {"upper", c.upper}, // null when no candidate is available
                 {"converged", c.converged},
                 {"lower_witness", c.lower_witness == LowerWitness::Zero ? "zero" : "hurwitz-density-floor"},
                 {"witness", witness},
                 {"candidates", c.candidates}};
    if (cfg.format == "csv") {
        out << "lower,upper,converged\n" << c.lower << ',' << c.upper << ',' << (c.converged ? 1 : 0) << '\n';
        return kOk;
    }
    out << j.dump() << '\n';
    return kOk;
}

inline int run_contraction(const Options& o, const RunConfig& cfg, std::ostream& out)
{
    const DomainSpec inner = detail::domain_flag("--domain", o.domain);
    const DomainSpec outer = detail::domain_flag("--outer", o.outer);
    if (o.samples < 1)
        throw UsageError("--samples", "must be positive");
    if (o.pairs < 1)
        throw UsageError("--pairs", "must be positive");
    const ContractionReport r = contraction_report(inner, outer, o.samples, o.pairs, cfg.solver());
    const Json j{{"inner", to_string(inner)},
                 {"outer", to_string(outer)},
                 {"l_interval", {{"lower", r.l_interval.lower}, {"upper", r.l_interval.upper}}},
                 {"gl_lower", r.gl_lower},
                 {"sample_spec",
                  {{"levels", r.sample_spec.levels},
                   {"arguments", r.sample_spec.arguments},
                   {"points", r.sample_spec.points},
                   {"pairs", r.sample_spec.pairs}}},
                 {"classification", lipschitz_name(r.classification)},
                 {"argmax", detail::point_json(r.argmax)}};
    if (cfg.format == "csv") {
        out << "l_lower,l_upper,gl_lower,classification\n"
            << r.l_interval.lower << ',' << r.l_interval.upper << ',' << r.gl_lower << ',' << lipschitz_name(r.classification) << '\n';
        return kOk;
    }
    out << j.dump() << '\n';
    return kOk;
}

inline int run_covering(const Options& o, const RunConfig& cfg, std::ostream& out)
{
    const DomainSpec d = detail::domain_flag("--domain", o.domain);
    const CPoint b = detail::point_flag("--point", o.point);
    const DiskMap g = hurwitz_covering_for(d, b, std::min(cfg.tolerance, 1e-12));
    const CPoint g0 = g.derivative(0.0);
    Json evals = Json::array();
    if (!o.points.empty())
        for (CPoint z : detail::points_flag("--points", o.points))
            evals.push_back(Json{{"z", detail::point_json(z)}, {"value", detail::point_json(g(z))}, {"derivative", detail::point_json(g.derivative(z))}});
    const Json j{{"domain", to_string(d)},
                 {"family", g.family()},
                 {"basepoint", detail::point_json(b)},
                 {"derivative_at_0", detail::point_json(g0)},
                 {"density_from_derivative", 2.0 / std::abs(g0)},
                 {"evaluations", evals}};
    if (cfg.format == "csv") {
        out << "z_re,z_im,value_re,value_im,derivative_re,derivative_im\n";
        for (const auto& e : evals)
            out << e["z"]["re"] << ',' << e["z"]["im"] << ',' << e["value"]["re"] << ',' << e["value"]["im"] << ','
                << e["derivative"]["re"] << ',' << e["derivative"]["im"] << '\n';
        return kOk;
    }
    out << j.dump() << '\n';
    return kOk;
}

inline int run_verify(const Options& o, const RunConfig& cfg, std::ostream& out)
{
    const std::string prefix = o.suite == "all" ? std::string() : o.suite;
    const auto outcomes = verify_suite(cfg, prefix);
    if (outcomes.empty())
        throw UsageError("--suite", "no check id starts with '" + o.suite + "'");
    std::size_t failed = 0;
    for (const auto& v : outcomes)
        failed += v.status == CheckStatus::Fail ? 1 : 0;
    if (cfg.format == "csv") {
        out << "id,status,tolerance,observed,note\n";
        for (const auto& v : outcomes) {
            std::string obs;
            for (const auto& [k, x] : v.observed)
                obs += (obs.empty() ? "" : ";") + k + "=" + Json(x).dump();
            out << v.id << ',' << status_name(v.status) << ',' << Json(v.tolerance).dump() << ',' << detail::csv_escape(obs) << ','
                << detail::csv_escape(v.note) << '\n';
        }
    } else {
        Json checks = Json::array();
        for (const auto& v : outcomes)
            checks.push_back(detail::outcome_json(v));
        const Json j{{"config", detail::config_json(cfg)},
                     {"checks", checks},
                     {"passed", outcomes.size() - failed},
                     {"failed", failed}};
        out << j.dump(2) << '\n';
    }
    return failed == 0 ? kOk : kFailed;
}

/// Parses argv and dispatches; results go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Hurwitz metric toolkit", "hurwitzkit"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON run configuration");
        sub->add_option("--format", o.format, "json or csv (overrides the config)");
        sub->add_flag("--paper-normalization", o.paper_normalization, "also report the printed Hahn normalization");
    };
    auto* density = app.add_subcommand("density", "pointwise density of a metric");
    density->add_option("--domain", o.domain, "domain, e.g. disk:0,0,1 or cstar");
    density->add_option("--point", o.point, "re,im");
    density->add_option("--metric", o.metric, "hyperbolic | hurwitz | quasihyperbolic");
    common(density);

    auto* dist = app.add_subcommand("distance", "geodesic distance between two points");
    dist->add_option("--domain", o.domain, "domain");
    dist->add_option("--points", o.points, "re,im:re,im");
    dist->add_option("--metric", o.metric, "hyperbolic | hurwitz | quasihyperbolic");
    dist->add_option("--basepoint-domain", o.basepoint_domain, "simply connected basepoint domain (generalized distance)");
    dist->add_option("--path-csv", o.path_csv, "write the witness path to this file");
    common(dist);

    auto* bounds = app.add_subcommand("bounds", "certificate for the generalized Hurwitz density");
    bounds->add_option("--domain", o.domain, "target domain");
    bounds->add_option("--basepoint-domain", o.basepoint_domain, "basepoint domain Y");
    bounds->add_option("--point", o.point, "re,im");
    common(bounds);

    auto* contraction = app.add_subcommand("contraction", "contraction constants of an inclusion");
    contraction->add_option("--domain", o.domain, "inner domain");
    contraction->add_option("--outer", o.outer, "outer domain");
    contraction->add_option("--samples", o.samples, "boundary levels 1 - 2^-k");
    contraction->add_option("--pairs", o.pairs, "boundary point pairs for the global constant");
    common(contraction);

    auto* covering = app.add_subcommand("covering", "Hurwitz covering of a domain at a basepoint");
    covering->add_option("--domain", o.domain, "domain");
    covering->add_option("--point", o.point, "basepoint re,im");
    covering->add_option("--points", o.points, "disk points to evaluate, z1:z2:...");
    common(covering);

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--suite", o.suite, "all, or a check id prefix");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        RunConfig cfg = detail::load_config(o.config);
        if (!o.format.empty())
            cfg.format = o.format;
        cfg.paper_normalization = cfg.paper_normalization || o.paper_normalization;
        try {
            cfg.validate();
        } catch (const Error& e) {
            throw UsageError(o.config.empty() ? "--format" : "--config", e.what());
        }

        if (density->parsed())
            return run_density(o, cfg, out);
        if (dist->parsed())
            return run_distance(o, cfg, out);
        if (bounds->parsed())
            return run_bounds(o, cfg, out);
        if (contraction->parsed())
            return run_contraction(o, cfg, out);
        if (covering->parsed())
            return run_covering(o, cfg, out);
        return run_verify(o, cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
}

} // namespace hurwitzkit::cli
