#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/contraction.hpp>
#include <hurwitzkit/covering_maps.hpp>
#include <hurwitzkit/density_engine.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>
#include <hurwitzkit/extremal_bounds.hpp>
#include <hurwitzkit/geodesic_solver.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace hurwitzkit {

struct RunConfig {
    double tolerance = 1e-6;
    int budget = 64;
    int stencil = 16;
    int max_levels = 6;
    bool paper_normalization = false;
    std::string format = "json"; // json | csv
    std::uint64_t seed = 20240601;
    double distance_tolerance = 1e-3;
    int density_samples = 10000;    // per domain, pointwise checks
    int certificate_calls = 10000;  // randomized bound certificates
    int distance_points = 15;       // per domain; all pairs and triples are checked
    int contraction_levels = 12;    // boundary levels 1 - 2^-k

    void validate() const
    {
        if (!(tolerance > 0.0) || !(distance_tolerance > 0.0))
            fail(ErrorKind::InvalidArgument, "tolerances must be positive");
        if (budget < 1 || max_levels < 1 || density_samples < 1 || certificate_calls < 1 || distance_points < 3 ||
            contraction_levels < 1)
            fail(ErrorKind::InvalidArgument, "sample sizes must be positive (at least 3 distance points)");
        if (stencil != 8 && stencil != 16)
            fail(ErrorKind::InvalidArgument, "stencil must be 8 or 16");
        if (format != "json" && format != "csv")
            fail(ErrorKind::InvalidArgument, "format must be json or csv");
    }

    SolverOptions solver() const
    {
        SolverOptions o;
        o.tol = distance_tolerance;
        o.stencil = stencil;
        o.max_levels = max_levels;
        return o;
    }
};

enum class CheckStatus { Pass, Fail, Skipped };

constexpr std::string_view status_name(CheckStatus s) noexcept
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

struct VerificationOutcome {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    std::vector<std::pair<std::string, double>> observed;
    double tolerance = 0.0;
    std::string note;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

/// Random point of a hyperbolic catalog domain; `interior` keeps it away from the boundary.
inline CPoint random_point(const DomainSpec& d, Rng& rng, bool interior)
{
    const double margin = interior ? 0.1 : 1e-6;
    switch (d.kind()) {
    case DomainKind::Disk: {
        const auto* k = d.get_if<Disk>();
        const double r = k->radius * (1.0 - margin) * std::sqrt(uniform(rng, 0.0, 1.0));
        return k->center + std::polar(r, uniform(rng, -kPi, kPi));
    }
    case DomainKind::HalfPlane:
        return interior ? CPoint(uniform(rng, 0.2, 3.0), uniform(rng, -2.0, 2.0))
                        : CPoint(std::exp(uniform(rng, -8.0, 4.0)), uniform(rng, -20.0, 20.0));
    case DomainKind::Strip:
        return interior ? CPoint(uniform(rng, -2.0, 2.0), uniform(rng, 0.3, kPi - 0.3))
                        : CPoint(uniform(rng, -6.0, 6.0), uniform(rng, margin, kPi - margin));
    case DomainKind::PuncturedDisk: {
        const double r = interior ? uniform(rng, 0.1, 0.9) : std::sqrt(uniform(rng, margin * margin, 1.0 - margin));
        return std::polar(r, uniform(rng, -kPi, kPi));
    }
    case DomainKind::PlaneMinusPoint: {
        const auto* p = d.get_if<PlaneMinusPoint>();
        return p->point + std::polar(std::exp(uniform(rng, -6.0, 6.0)), uniform(rng, -kPi, kPi));
    }
    case DomainKind::WholePlane: return {uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
    }
    return 0.0;
}

inline std::vector<DomainSpec> hyperbolic_catalog()
{
    return {DomainSpec::unit_disk(), DomainSpec::disk({0.5, -1.0}, 2.0), DomainSpec::half_plane(), DomainSpec::strip(),
            DomainSpec::punctured_disk()};
}

inline std::vector<DomainSpec> distance_catalog()
{
    return {DomainSpec::unit_disk(), DomainSpec::half_plane(), DomainSpec::strip(), DomainSpec::punctured_disk()};
}

/// Hurwitz and hyperbolic distances between all pairs of a point set, plus the reversed Hurwitz solves.
struct DistanceTable {
    DomainSpec domain;
    std::vector<CPoint> points;
    std::vector<std::vector<DistanceComparison>> forward; // forward[i][j], i < j
    std::vector<std::vector<double>> reversed;            // Hurwitz lower distance from j to i
    std::vector<std::vector<double>> hyperbolic;          // symmetric lookup

    double hurwitz(std::size_t i, std::size_t j) const
    {
        if (i == j)
            return 0.0;
        return i < j ? forward[i][j].hurwitz.lower.distance : forward[j][i].hurwitz.lower.distance;
    }
};

inline DistanceTable build_distance_table(const DomainSpec& d, const RunConfig& cfg)
{
    DistanceTable t{d, {}, {}, {}, {}};
    Rng rng(cfg.seed ^ fnv1a(to_string(d)));
    const auto n = static_cast<std::size_t>(cfg.distance_points);
    for (std::size_t i = 0; i < n; ++i)
        t.points.push_back(random_point(d, rng, true));
    t.forward.assign(n, std::vector<DistanceComparison>(n));
    t.reversed.assign(n, std::vector<double>(n, 0.0));
    t.hyperbolic.assign(n, std::vector<double>(n, 0.0));
    const SolverOptions opts = cfg.solver();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            t.forward[i][j] = distance_comparison(d, t.points[i], t.points[j], opts);
            t.reversed[i][j] = distance(d, Metric::Hurwitz, t.points[j], t.points[i], opts).lower.distance;
            t.hyperbolic[i][j] = t.hyperbolic[j][i] = t.forward[i][j].hyperbolic.distance;
        }
    return t;
}

struct SuiteContext {
    RunConfig cfg;
    std::vector<DistanceTable> tables;
};

struct Outcome {
    VerificationOutcome v;
    explicit Outcome(std::string id, double tol) { v.id = std::move(id), v.tolerance = tol; }
    void observe(std::string key, double value) { v.observed.emplace_back(std::move(key), value); }
    void require(bool ok, const std::string& why)
    {
        if (!ok && v.status != CheckStatus::Fail) {
            v.status = CheckStatus::Fail;
            v.note = why;
        }
    }
};

using CheckFn = std::function<VerificationOutcome(const SuiteContext&, Rng&)>;

// ---- complex_geometry ------------------------------------------------------

inline VerificationOutcome check_mobius_self_map(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("mobius-self-map", 0.0);
    double worst = 0.0;
    for (int i = 0; i < ctx.cfg.density_samples; ++i) {
        const MobiusMap t(std::polar(std::sqrt(uniform(rng, 0.0, 0.998)), uniform(rng, -kPi, kPi)));
        const CPoint z = std::polar(std::sqrt(uniform(rng, 0.0, 0.998)), uniform(rng, -kPi, kPi));
        worst = std::max(worst, std::abs(mobius_eval(t, z)));
    }
    o.observe("max_abs_image", worst);
    o.require(worst < 1.0, "a Mobius image left the disk");
    return o.v;
}

inline VerificationOutcome check_mobius_derivative(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("mobius-derivative", 4.0 * std::numeric_limits<double>::epsilon());
    double worst = 0.0;
    for (int i = 0; i < ctx.cfg.density_samples; ++i) {
        const CPoint s = std::polar(std::sqrt(uniform(rng, 0.0, 0.998)), uniform(rng, -kPi, kPi));
        const CPoint d = mobius_derivative(MobiusMap(s), s);
        const double expect = 1.0 / (1.0 - std::norm(s));
        o.require(d.imag() == 0.0 && d.real() > 0.0, "derivative at the centre is not real positive");
        worst = std::max(worst, std::abs(d.real() - expect) / expect);
    }
    o.observe("max_rel_error", worst);
    o.require(worst <= o.v.tolerance, "derivative differs from 1/(1-|s|^2)");
    return o.v;
}

inline VerificationOutcome check_mobius_chain_rule(const SuiteContext&, Rng& rng)
{
    Outcome o("mobius-chain-rule", 1e-6);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MobiusMap t1(std::polar(uniform(rng, 0.0, 0.9), uniform(rng, -kPi, kPi)));
        const MobiusMap t2(std::polar(uniform(rng, 0.0, 0.9), uniform(rng, -kPi, kPi)));
        const CPoint z = std::polar(uniform(rng, 0.0, 0.9), uniform(rng, -kPi, kPi));
        const double step = 1e-6;
        const CPoint fd = (t2(t1(z + step)) - t2(t1(z - step))) / (2.0 * step);
        const CPoint chain = mobius_derivative(t2, t1(z)) * mobius_derivative(t1, z);
        worst = std::max(worst, std::abs(fd - chain) / std::abs(chain));
    }
    o.observe("max_rel_error", worst);
    o.require(worst <= o.v.tolerance, "finite-difference derivative of the composition disagrees");
    return o.v;
}

inline VerificationOutcome check_quadrature_order(const SuiteContext&, Rng&)
{
    Outcome o("quadrature-order", 2.0);
    // straight path 0 -> 0.8 in D: exact length 2 atanh(0.8)
    const DomainSpec d = DomainSpec::unit_disk();
    const double exact = 2.0 * std::atanh(0.8);
    auto rho = [&](CPoint w) { return hyperbolic_density(d, w).value(); };
    double prev = 0.0;
    double min_order = std::numeric_limits<double>::infinity();
    for (int n = 4; n <= 64; n *= 2) {
        const double err = std::abs(composite_simpson_length(Polyline({0.0, 0.8}), rho, n) - exact);
        if (n > 4)
            min_order = std::min(min_order, std::log2(prev / err));
        prev = err;
    }
    const double adaptive = std::abs(polyline_length_under_density(Polyline({0.0, 0.8}), rho) - exact);
    o.observe("min_observed_order", min_order);
    o.observe("adaptive_abs_error", adaptive);
    o.require(min_order >= o.v.tolerance, "composite quadrature converges slower than second order");
    o.require(adaptive <= 1e-9 * exact, "adaptive quadrature misses the closed form");
    return o.v;
}

// ---- domain_catalog --------------------------------------------------------

inline VerificationOutcome check_catalog_boundary(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("catalog-boundary-distance", 0.0);
    double smallest = std::numeric_limits<double>::infinity();
    std::vector<DomainSpec> all = hyperbolic_catalog();
    all.push_back(DomainSpec::cstar());
    all.push_back(DomainSpec::plane_minus_point({1.0, 1.0}));
    for (const auto& d : all)
        for (int i = 0; i < ctx.cfg.density_samples; ++i) {
            const CPoint w = random_point(d, rng, false);
            if (contains(d, w))
                smallest = std::min(smallest, boundary_distance(d, w));
        }
    o.observe("min_boundary_distance", smallest);
    o.require(smallest > 0.0, "boundary distance vanished inside a domain");
    return o.v;
}

inline VerificationOutcome check_catalog_hull(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("catalog-hull", 0.0);
    std::vector<DomainSpec> all = hyperbolic_catalog();
    all.push_back(DomainSpec::cstar());
    all.push_back(DomainSpec::whole_plane());
    std::size_t tested = 0;
    for (const auto& d : all) {
        const DomainSpec hull = simply_connected_hull(d);
        o.require(classify(hull).is_simply_connected, "hull of " + to_string(d) + " is not simply connected");
        for (int i = 0; i < ctx.cfg.density_samples / 10; ++i, ++tested) {
            const CPoint w = random_point(d, rng, false);
            o.require(!contains(d, w) || contains(hull, w), "hull misses a point of " + to_string(d));
        }
    }
    o.observe("points", static_cast<double>(tested));
    return o.v;
}

// ---- covering_maps ---------------------------------------------------------

inline VerificationOutcome check_cover_omits(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("cover-omits-1", 0.0);
    double min_log_gap = std::numeric_limits<double>::infinity();
    int finite = 0;
    for (int i = 0; i < ctx.cfg.density_samples; ++i) {
        const CPoint w = std::polar(0.99 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -kPi, kPi));
        const CoveringEval g = hurwitz_covering_c_minus_1(w);
        // log(1 - g) from the complementary product stays finite exactly when g != 1
        if (is_finite(g.log_one_minus_value))
            ++finite;
        min_log_gap = std::min(min_log_gap, g.log_one_minus_value.real());
    }
    o.observe("samples", ctx.cfg.density_samples);
    o.observe("finite_log_one_minus_g", finite);
    o.observe("min_log_abs_one_minus_g", min_log_gap);
    o.require(finite == ctx.cfg.density_samples, "log(1 - g) was not finite: the covering took the value 1");
    return o.v;
}

inline VerificationOutcome check_cover_truncation(const SuiteContext& ctx, Rng& rng)
{
    const double tol = std::max(ctx.cfg.tolerance, 1e-12);
    Outcome o("cover-truncation", tol);
    double worst = 0.0;
    const int n = std::min(ctx.cfg.density_samples, 1000);
    for (int i = 0; i < n; ++i) {
        const CPoint w = std::polar(0.99 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -kPi, kPi));
        const CoveringEval a = hurwitz_covering_c_minus_1(w, tol);
        const CoveringEval b = hurwitz_covering_c_minus_1(w, tol * 1e-6);
        // compared in log form, where rounding does not saturate near g = 1
        worst = std::max(worst, std::abs(a.log_value - b.log_value));
        o.require(b.truncation.n_terms >= a.truncation.n_terms, "tighter tolerance used fewer terms");
    }
    o.observe("max_log_change", worst);
    o.require(worst < tol, "refining the product moved the value by more than the certified tail");
    return o.v;
}

inline VerificationOutcome check_thmA_equality(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("thmA-equality", 1e-9);
    double worst = 0.0;
    std::vector<DomainSpec> doms{DomainSpec::unit_disk(), DomainSpec::disk({0.5, -1.0}, 2.0), DomainSpec::half_plane(),
                                 DomainSpec::strip(), DomainSpec::cstar(), DomainSpec::plane_minus_point({1.0, 1.0})};
    for (const auto& d : doms)
        for (int i = 0; i < ctx.cfg.density_samples / 100; ++i) {
            const CPoint b = random_point(d, rng, true);
            const DiskMap g = hurwitz_covering_for(d, b);
            o.require(g(0.0) == b, "covering does not send 0 to the basepoint");
            const double eta = hurwitz_density(d, b).value();
            worst = std::max(worst, std::abs(std::abs(g.derivative(0.0)) * eta / 2.0 - 1.0));
        }
    o.observe("max_rel_error", worst);
    o.require(worst <= o.v.tolerance, "|G'(0)| differs from 2 / eta");
    return o.v;
}

// ---- density_engine --------------------------------------------------------

inline VerificationOutcome check_remark_cstar(const SuiteContext&, Rng&)
{
    Outcome o("remark-cstar", 0.0);
    const DomainSpec d = DomainSpec::cstar();
    const CPoint pts[] = {1.0, 2.0, CPoint(0.0, 1.0)};
    const double want[] = {0.125, 0.0625, 0.125};
    for (int i = 0; i < 3; ++i) {
        const double v = hurwitz_density(d, pts[i]).value();
        o.observe("eta_at_" + format_point(pts[i]), v);
        o.require(v == want[i], "closed form 1/(8|w|) not reproduced exactly");
    }
    return o.v;
}

inline VerificationOutcome check_eq22_pointwise(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("eq-2.2", 0.0);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& d : hyperbolic_catalog())
        for (int i = 0; i < ctx.cfg.density_samples; ++i) {
            const CPoint w = random_point(d, rng, false);
            const double eta = hurwitz_density(d, w).lower;
            const double lambda = hyperbolic_density(d, w).value();
            min_ratio = std::min(min_ratio, eta / lambda);
            o.require(eta >= lambda, "eta < lambda at " + format_point(w) + " in " + to_string(d));
        }
    o.observe("min_eta_over_lambda", min_ratio);
    return o.v;
}

inline VerificationOutcome check_simply_connected_coincidence(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("prop-simply-connected", 0.0);
    std::size_t n = 0;
    for (const auto& d : hyperbolic_catalog()) {
        if (!classify(d).is_simply_connected)
            continue;
        for (int i = 0; i < ctx.cfg.density_samples / 10; ++i, ++n) {
            const CPoint w = random_point(d, rng, false);
            o.require(hurwitz_density(d, w).value() == hyperbolic_density(d, w).value(), "eta != lambda on " + to_string(d));
        }
    }
    o.observe("points", static_cast<double>(n));
    return o.v;
}

inline VerificationOutcome check_thmA_inclusion(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("thmA-inclusion", 0.0);
    const DomainSpec inner = DomainSpec::punctured_disk();
    const DomainSpec outer = DomainSpec::unit_disk();
    double worst = 0.0;
    for (int i = 0; i < ctx.cfg.density_samples; ++i) {
        const CPoint w = random_point(inner, rng, false);
        const double ratio = hurwitz_density(outer, w).value() / hurwitz_density(inner, w).lower;
        worst = std::max(worst, ratio);
    }
    o.observe("max_outer_over_inner", worst);
    o.require(worst <= 1.0, "eta_D exceeded the lower end of eta_D* somewhere");
    return o.v;
}

inline VerificationOutcome check_cstar_scaling(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("remark-cstar-scaling", 1e-14);
    const DomainSpec d = DomainSpec::cstar();
    double worst = 0.0;
    for (int i = 0; i < ctx.cfg.density_samples; ++i) {
        const CPoint w = random_point(d, rng, false);
        const CPoint b = std::polar(std::exp(uniform(rng, -5.0, 5.0)), uniform(rng, -kPi, kPi));
        const double lhs = hurwitz_density(d, b * w).value() * std::abs(b);
        const double rhs = hurwitz_density(d, w).value();
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
    }
    o.observe("max_rel_error", worst);
    o.require(worst <= o.v.tolerance, "eta(bw)|b| != eta(w) on C*");
    return o.v;
}

inline VerificationOutcome check_hahn_sandwich(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("hahn-sandwich", 0.0);
    const DomainSpec d = DomainSpec::punctured_disk();
    double min_gap = std::numeric_limits<double>::infinity();
    const HahnNormalization norm = ctx.cfg.paper_normalization ? HahnNormalization::PaperPrinted : HahnNormalization::CurvatureMinusOne;
    for (int i = 0; i < ctx.cfg.density_samples; ++i) {
        const CPoint w = random_point(d, rng, false);
        const double gap = hahn_density_punctured_disk(w, norm).value() / hyperbolic_density(d, w).value();
        min_gap = std::min(min_gap, gap);
    }
    o.observe("min_hahn_over_lambda", min_gap);
    o.observe("paper_normalization", ctx.cfg.paper_normalization ? 1.0 : 0.0);
    o.require(min_gap >= 1.0, "Hahn density fell below lambda_D*");
    return o.v;
}

// ---- extremal_bounds -------------------------------------------------------

inline std::vector<DomainSpec> bound_targets()
{
    return {DomainSpec::unit_disk(), DomainSpec::disk({0.5, -1.0}, 2.0), DomainSpec::half_plane(), DomainSpec::strip(),
            DomainSpec::cstar(), DomainSpec::plane_minus_point({1.0, 1.0})};
}

inline std::vector<DomainSpec> simply_connected_bases()
{
    return {DomainSpec::unit_disk(), DomainSpec::disk({0.5, -1.0}, 2.0), DomainSpec::half_plane(), DomainSpec::strip()};
}

inline VerificationOutcome check_prop2_floor(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("prop2-floor", 0.0);
    std::vector<DomainSpec> bases = simply_connected_bases();
    bases.push_back(DomainSpec::punctured_disk());
    bases.push_back(DomainSpec::cstar());
    const auto targets = bound_targets();
    int calls = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.cfg.certificate_calls; ++i, ++calls) {
        const DomainSpec& y = bases[static_cast<std::size_t>(i) % bases.size()];
        const DomainSpec& omega = targets[static_cast<std::size_t>(i / 7) % targets.size()];
        const CPoint w = random_point(omega, rng, false);
        const BoundCertificate c = generalized_hurwitz_bounds(y, omega, w, ctx.cfg.tolerance, ctx.cfg.budget);
        o.require(c.lower == hurwitz_density(omega, w).value(), "lower bound is not eta_Omega(w)");
        o.require(c.lower <= c.upper, "certificate with upper < lower");
        min_gap = std::min(min_gap, c.upper - c.lower);
    }
    o.observe("calls", calls);
    o.observe("min_upper_minus_lower", min_gap);
    return o.v;
}

inline VerificationOutcome check_prop3_coincidence(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("prop3-coincidence", 1e-9);
    double worst = 0.0;
    int n = 0;
    for (const auto& y : simply_connected_bases())
        for (const auto& omega : bound_targets())
            for (int i = 0; i < 25; ++i, ++n) {
                const CPoint w = random_point(omega, rng, false);
                const BoundCertificate c = generalized_hurwitz_bounds(y, omega, w, o.v.tolerance, ctx.cfg.budget);
                worst = std::max(worst, (c.upper - c.lower) / c.lower);
                o.require(c.converged, "certificate did not converge for " + to_string(y) + " on " + to_string(omega));
            }
    o.observe("certificates", n);
    o.observe("max_rel_gap", worst);
    return o.v;
}

inline VerificationOutcome check_budget_monotone(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("budget-monotone", 0.0);
    const std::vector<DomainSpec> bases{DomainSpec::unit_disk(), DomainSpec::punctured_disk(), DomainSpec::strip()};
    int n = 0;
    for (const auto& y : bases)
        for (const auto& omega : bound_targets())
            for (int i = 0; i < 4; ++i) {
                const CPoint w = random_point(omega, rng, false);
                double prev = std::numeric_limits<double>::infinity();
                for (int budget = 1; budget <= std::min(ctx.cfg.budget, kMaxGridLevel); budget *= 2, ++n) {
                    const double up = generalized_hurwitz_bounds(y, omega, w, ctx.cfg.tolerance, budget).upper;
                    o.require(up <= prev, "upper bound grew with the budget");
                    prev = up;
                }
            }
    o.observe("certificates", n);
    return o.v;
}

inline VerificationOutcome check_thm2(const SuiteContext&, Rng&)
{
    Outcome o("thm2", 1e-15);
    double prev = std::numeric_limits<double>::infinity();
    long long n = 1;
    for (int k = 1; k <= 4; ++k) {
        n *= 10;
        const double v = theorem2_sequence_bound(n, 0.0);
        o.observe("bound_n_1e" + std::to_string(k), v);
        o.require(v < prev, "sequence bound not strictly decreasing");
        prev = v;
    }
    o.require(std::abs(prev - 2e-4) <= o.v.tolerance, "final bound differs from 2e-4");
    const BoundCertificate c = generalized_hurwitz_bounds(DomainSpec::unit_disk(), DomainSpec::whole_plane(), 0.3, 1e-3, 10000);
    o.observe("certificate_upper_budget_1e4", c.upper);
    o.require(c.upper <= 2e-4 && c.lower == 0.0, "certificate on the plane does not reach 2/n");
    return o.v;
}

inline VerificationOutcome check_thm2_scaling(const SuiteContext&, Rng& rng)
{
    Outcome o("thm2-scaling", 1e-14);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CPoint t = std::polar(std::sqrt(uniform(rng, 0.0, 0.99)), uniform(rng, -kPi, kPi));
        const double base = theorem2_sequence_bound(1, t);
        for (long long n = 2; n <= 1'000'000; n *= 7)
            worst = std::max(worst, std::abs(theorem2_sequence_bound(n, t) * static_cast<double>(n) / base - 1.0));
    }
    o.observe("max_rel_deviation", worst);
    o.require(worst <= o.v.tolerance, "n times the sequence bound is not constant");
    return o.v;
}

inline VerificationOutcome check_ex318(const SuiteContext&, Rng&)
{
    Outcome o("ex-3.18", 1e-9);
    const HurwitzCandidates cands(DomainSpec::punctured_disk(), DomainSpec::cstar(), 1.0);
    const double lower = hurwitz_density(DomainSpec::cstar(), 1.0).value();
    double prev = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    double last = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double s = 1.0 - std::ldexp(1.0, -k);
        const double ratio = example318_upper_ratio(s);
        worst = std::max(worst, std::abs(cands(s) / lower - ratio));
        o.require(ratio < prev, "gap factor not decreasing");
        prev = last = ratio;
    }
    o.observe("max_abs_mismatch", worst);
    o.observe("ratio_k10", last);
    o.require(worst <= o.v.tolerance, "candidate gap does not match (1+s)^2/(4s)");
    o.require(last - 1.0 < 1e-4, "gap factor at k = 10 is not within 1e-4 of 1");
    const BoundCertificate c = generalized_hurwitz_bounds(DomainSpec::punctured_disk(), DomainSpec::cstar(), 1.0, 1e-3, 64);
    o.observe("certificate_upper", c.upper);
    o.require(c.converged, "coincidence on C* not declared at tol 1e-3");
    return o.v;
}

inline VerificationOutcome check_thm3(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("thm3", 1e-12);
    const DomainSpec cstar = DomainSpec::cstar();
    const DomainSpec minus1 = DomainSpec::plane_minus_point(1.0);
    const std::vector<DomainSpec> bases{DomainSpec::unit_disk(), DomainSpec::punctured_disk()};
    double worst = std::numeric_limits<double>::infinity();
    int n = 0;
    for (const auto& y : bases)
        for (int i = 0; i < 50; ++i, ++n) {
            // h(w) = b w on C*, a covering with a single preimage of h(a)
            const CPoint a = random_point(cstar, rng, false);
            const CPoint b = std::polar(std::exp(uniform(rng, -3.0, 3.0)), uniform(rng, -kPi, kPi));
            const auto target = generalized_hurwitz_bounds(y, cstar, b * a, ctx.cfg.tolerance, ctx.cfg.budget);
            const auto source = generalized_hurwitz_bounds(y, cstar, a, ctx.cfg.tolerance, ctx.cfg.budget);
            worst = std::min(worst, source.upper - target.lower * std::abs(b));
            o.require(target.lower * std::abs(b) <= source.upper * (1.0 + o.v.tolerance), "b w transport violated");
            // h(w) = 1 - w from C \ {1} to C*
            const CPoint p = random_point(minus1, rng, false);
            const auto t2 = generalized_hurwitz_bounds(y, cstar, 1.0 - p, ctx.cfg.tolerance, ctx.cfg.budget);
            const auto s2 = generalized_hurwitz_bounds(y, minus1, p, ctx.cfg.tolerance, ctx.cfg.budget);
            worst = std::min(worst, s2.upper - t2.lower);
            o.require(t2.lower <= s2.upper * (1.0 + o.v.tolerance), "1 - w transport violated");
        }
    o.observe("pairs", n);
    o.observe("min_slack", worst);
    return o.v;
}

inline VerificationOutcome check_cor416(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("cor-4.16", ctx.cfg.tolerance);
    int n = 0;
    for (const auto& y1 : simply_connected_bases())
        for (const auto& omega : bound_targets())
            for (int i = 0; i < 5; ++i, ++n) {
                const CPoint w = random_point(omega, rng, false);
                const auto cmp = basepoint_comparison(y1, DomainSpec::punctured_disk(), omega, w, o.v.tolerance, ctx.cfg.budget);
                o.require(cmp.ordering_checked && cmp.ordering_holds, "simply connected basepoint gave a larger bound");
            }
    o.observe("comparisons", n);
    return o.v;
}

inline VerificationOutcome check_cor417(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("cor-4.17", 1e-9);
    // conformally equivalent basepoint pairs
    const std::vector<std::pair<DomainSpec, DomainSpec>> pairs{
        {DomainSpec::unit_disk(), DomainSpec::half_plane()},
        {DomainSpec::strip(), DomainSpec::disk({0.5, -1.0}, 2.0)},
        {DomainSpec::half_plane(), DomainSpec::strip()},
    };
    double worst = 0.0;
    int n = 0;
    for (const auto& [y1, y2] : pairs)
        for (const auto& omega : bound_targets())
            for (int i = 0; i < 10; ++i, ++n) {
                const CPoint w = random_point(omega, rng, false);
                const auto a = generalized_hurwitz_bounds(y1, omega, w, o.v.tolerance, ctx.cfg.budget);
                const auto b = generalized_hurwitz_bounds(y2, omega, w, o.v.tolerance, ctx.cfg.budget);
                worst = std::max(worst, std::abs(a.upper - b.upper) / a.lower);
            }
    o.observe("comparisons", n);
    o.observe("max_rel_difference", worst);
    o.require(worst <= o.v.tolerance, "conformally equivalent basepoints disagree");
    return o.v;
}

inline VerificationOutcome check_kobayashi(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("cor-kobayashi", 1e-9);
    const std::vector<DomainSpec> targets{DomainSpec::unit_disk(), DomainSpec::half_plane(), DomainSpec::strip(),
                                          DomainSpec::punctured_disk()};
    double worst = 0.0;
    int n = 0;
    for (const auto& y : simply_connected_bases())
        for (const auto& omega : targets)
            for (int i = 0; i < 10; ++i, ++n) {
                const CPoint w = random_point(omega, rng, true);
                // eta^Y >= eta_Omega (lower end) >= kappa^Y
                const double eta_floor = hurwitz_density(omega, w).lower;
                const double kappa_up = kobayashi_upper_bound(y, omega, w, ctx.cfg.budget);
                worst = std::max(worst, kappa_up / eta_floor - 1.0);
            }
    o.observe("comparisons", n);
    o.observe("max_kappa_over_eta_minus_1", worst);
    o.require(worst <= o.v.tolerance, "Kobayashi upper bound exceeded the Hurwitz floor");
    return o.v;
}

inline VerificationOutcome check_thm7(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("thm7-dstar", 1e-6);
    const Lipschitz cls = classify_lipschitz(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), kDefaultMargin,
                                             ctx.cfg.contraction_levels);
    o.require(cls == Lipschitz::NonLipschitz, "D* is not classified as non-Lipschitz in D");
    double worst = 0.0;
    int n = 0;
    for (const auto& omega : bound_targets())
        for (int i = 0; i < 10; ++i, ++n) {
            const CPoint w = random_point(omega, rng, false);
            const auto c = generalized_hurwitz_bounds(DomainSpec::punctured_disk(), omega, w, o.v.tolerance, ctx.cfg.budget);
            worst = std::max(worst, (c.upper - c.lower) / c.lower);
            o.require(c.converged, "eta^{D*} did not converge onto eta_Omega at " + format_point(w));
        }
    o.observe("certificates", n);
    o.observe("max_rel_gap", worst);
    return o.v;
}

// ---- geodesic_solver -------------------------------------------------------

inline VerificationOutcome check_geodesic_oracles(const SuiteContext& ctx, Rng&)
{
    Outcome o("geodesic-oracles", 0.01);
    const SolverOptions opts = ctx.cfg.solver();
    struct Case {
        const char* key;
        DomainSpec d;
        Metric m;
        CPoint a, b;
        double exact;
    };
    const Case cases[] = {
        {"disk_0_to_half", DomainSpec::unit_disk(), Metric::Hyperbolic, 0.0, 0.5, std::log(3.0)},
        {"cstar_1_to_e", DomainSpec::cstar(), Metric::Hurwitz, 1.0, std::exp(1.0), 0.125},
        {"cstar_1_to_minus1", DomainSpec::cstar(), Metric::Hurwitz, 1.0, -1.0, kPi / 8.0},
    };
    for (const auto& c : cases) {
        const GeodesicResult r = distance(c.d, c.m, c.a, c.b, opts).lower;
        o.observe(c.key, r.distance);
        o.require(std::abs(r.distance / c.exact - 1.0) <= o.v.tolerance, std::string("oracle mismatch for ") + c.key);
    }
    return o.v;
}

inline VerificationOutcome check_eq22_distance(const SuiteContext& ctx, Rng&)
{
    Outcome o("eq-2.2-distance", ctx.cfg.distance_tolerance);
    double worst = std::numeric_limits<double>::infinity();
    int n = 0;
    for (const auto& t : ctx.tables)
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j, ++n) {
                const auto& c = t.forward[i][j];
                worst = std::min(worst, c.hurwitz.lower.distance - c.hyperbolic.distance);
                o.require(c.holds, "Hurwitz distance below hyperbolic distance in " + to_string(t.domain));
            }
    o.observe("pairs", n);
    o.observe("min_hurwitz_minus_hyperbolic", worst);
    return o.v;
}

inline VerificationOutcome check_distance_positive(const SuiteContext& ctx, Rng&)
{
    Outcome o("distance-positive", 0.0);
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& t : ctx.tables) {
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j)
                smallest = std::min({smallest, t.hurwitz(i, j), t.hyperbolic[i][j]});
        const DistanceReport zero = distance(t.domain, Metric::Hurwitz, t.points[0], t.points[0], ctx.cfg.solver());
        o.require(zero.lower.distance == 0.0 && zero.upper_or_point().distance == 0.0, "coincident endpoints gave nonzero distance");
    }
    o.observe("min_distinct_distance", smallest);
    o.require(smallest > 0.0, "distinct points at distance zero");
    return o.v;
}

inline VerificationOutcome check_distance_symmetry(const SuiteContext& ctx, Rng&)
{
    Outcome o("distance-symmetry", 0.0);
    double worst = 0.0;
    for (const auto& t : ctx.tables)
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j)
                worst = std::max(worst, std::abs(t.hurwitz(i, j) - t.reversed[i][j]));
    o.observe("max_abs_asymmetry", worst);
    o.require(worst == 0.0, "distance depends on endpoint order");
    return o.v;
}

inline VerificationOutcome check_distance_triangle(const SuiteContext& ctx, Rng&)
{
    const double tol = ctx.cfg.distance_tolerance;
    Outcome o("distance-triangle", 2.0 * tol);
    double worst = -std::numeric_limits<double>::infinity();
    int triples = 0;
    for (const auto& t : ctx.tables) {
        const std::size_t n = t.points.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k, ++triples) {
                    const std::size_t idx[3] = {i, j, k};
                    for (int side = 0; side < 3; ++side) {
                        const std::size_t a = idx[side], b = idx[(side + 1) % 3], c = idx[(side + 2) % 3];
                        // relative slack: the solver tolerance is relative to the distance
                        for (const bool hyp : {false, true}) {
                            const double ab = hyp ? t.hyperbolic[a][b] : t.hurwitz(a, b);
                            const double bc = hyp ? t.hyperbolic[b][c] : t.hurwitz(b, c);
                            const double ac = hyp ? t.hyperbolic[a][c] : t.hurwitz(a, c);
                            worst = std::max(worst, (ac - ab - bc) / ac);
                        }
                    }
                }
    }
    o.observe("triples", triples);
    o.observe("max_rel_excess", worst);
    o.require(worst <= o.v.tolerance, "triangle inequality violated beyond 2 tol");
    return o.v;
}

inline VerificationOutcome check_distance_refinement(const SuiteContext& ctx, Rng&)
{
    Outcome o("distance-refinement", 1e-12);
    int traces = 0;
    int converged = 0;
    for (const auto& t : ctx.tables)
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j) {
                const auto& c = t.forward[i][j];
                for (const GeodesicResult* r : {&c.hurwitz.lower, &c.hyperbolic}) {
                    ++traces;
                    converged += r->converged ? 1 : 0;
                    for (std::size_t s = 1; s < r->refinement_trace.size(); ++s) {
                        const auto& a = r->refinement_trace[s - 1];
                        const auto& b = r->refinement_trace[s];
                        o.require(b.h < a.h && b.distance <= a.distance * (1.0 + o.v.tolerance), "refinement trace increased");
                    }
                }
            }
    o.observe("traces", traces);
    o.observe("converged", converged);
    return o.v;
}

inline VerificationOutcome check_distance_witness(const SuiteContext& ctx, Rng&)
{
    Outcome o("distance-witness", ctx.cfg.distance_tolerance);
    double worst = 0.0;
    for (const auto& t : ctx.tables) {
        const DensityField rho = density_field(t.domain, Metric::Hurwitz);
        for (std::size_t i = 0; i < t.points.size(); ++i)
            for (std::size_t j = i + 1; j < t.points.size(); ++j) {
                const auto& r = t.forward[i][j].hurwitz.lower;
                const double again = polyline_length_under_density(*r.path, rho);
                worst = std::max(worst, std::abs(again - r.distance) / r.distance);
                o.require(r.path->front() == t.points[i] && r.path->back() == t.points[j], "witness endpoints differ");
            }
    }
    o.observe("max_rel_difference", worst);
    o.require(worst <= o.v.tolerance, "witness path does not reproduce the distance");
    return o.v;
}

inline VerificationOutcome check_distance_rotation(const SuiteContext& ctx, Rng& rng)
{
    const double tol = ctx.cfg.distance_tolerance;
    Outcome o("distance-rotation", tol);
    const SolverOptions opts = ctx.cfg.solver();
    const std::vector<std::pair<DomainSpec, Metric>> cases{{DomainSpec::unit_disk(), Metric::Hyperbolic},
                                                           {DomainSpec::punctured_disk(), Metric::Hurwitz},
                                                           {DomainSpec::cstar(), Metric::Hurwitz},
                                                           {DomainSpec::unit_disk(), Metric::Quasihyperbolic}};
    double worst = 0.0;
    for (const auto& [d, m] : cases)
        for (int i = 0; i < 5; ++i) {
            const CPoint a = random_point(d == DomainSpec::cstar() ? DomainSpec::punctured_disk() : d, rng, true);
            const CPoint b = random_point(d == DomainSpec::cstar() ? DomainSpec::punctured_disk() : d, rng, true);
            const CPoint rot = std::polar(1.0, uniform(rng, -kPi, kPi));
            const double d0 = distance(d, m, a, b, opts).upper_or_point().distance;
            const double d1 = distance(d, m, rot * a, rot * b, opts).upper_or_point().distance;
            worst = std::max(worst, std::abs(d1 - d0) / d0);
        }
    o.observe("max_rel_change", worst);
    o.require(worst < o.v.tolerance, "rotating the endpoints changed the distance");
    return o.v;
}

inline VerificationOutcome check_prop1_inclusion(const SuiteContext& ctx, Rng& rng)
{
    Outcome o("prop1-inclusion", ctx.cfg.distance_tolerance);
    const SolverOptions opts = ctx.cfg.solver();
    int n = 0;
    const std::vector<std::pair<DomainSpec, DomainSpec>> nests{{DomainSpec::punctured_disk(), DomainSpec::unit_disk()},
                                                               {DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk()},
                                                               {DomainSpec::unit_disk(), DomainSpec::disk(0.0, 2.0)}};
    for (const auto& [inner, outer] : nests) {
        std::vector<std::pair<CPoint, CPoint>> pairs;
        for (int i = 0; i < 5; ++i)
            pairs.emplace_back(random_point(inner, rng, true), random_point(inner, rng, true));
        const auto rep = contraction_distance_check(inner, outer, pairs, opts);
        n += static_cast<int>(rep.pairs.size());
        o.require(rep.all_hold, "inclusion increased a distance: " + to_string(inner) + " in " + to_string(outer));
    }
    o.observe("pairs", n);
    return o.v;
}

// ---- contraction -----------------------------------------------------------

inline VerificationOutcome check_thm6(const SuiteContext& ctx, Rng&)
{
    Outcome o("thm6", 1e-9);
    const auto rep = contraction_report(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), ctx.cfg.contraction_levels, 8,
                                        ctx.cfg.solver());
    o.observe("gl_lower", rep.gl_lower);
    o.observe("l_lower", rep.l_interval.lower);
    o.observe("l_upper", rep.l_interval.upper);
    o.require(rep.gl_lower <= rep.l_interval.upper + ctx.cfg.distance_tolerance, "gl_lower exceeds l_upper");
    o.require(rep.l_interval.upper <= 1.0 + o.v.tolerance, "l_upper exceeds 1");
    const auto nested = contraction_report(DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk(), ctx.cfg.contraction_levels, 8,
                                           ctx.cfg.solver());
    o.observe("gl_lower_half_disk", nested.gl_lower);
    o.observe("l_upper_half_disk", nested.l_interval.upper);
    o.require(nested.gl_lower <= nested.l_interval.upper + ctx.cfg.distance_tolerance, "gl_lower exceeds l_upper (half disk)");
    return o.v;
}

inline VerificationOutcome check_thmA_ratio(const SuiteContext& ctx, Rng&)
{
    Outcome o("thmA-ratio", 1e-9);
    const std::vector<std::pair<DomainSpec, DomainSpec>> nests{{DomainSpec::punctured_disk(), DomainSpec::unit_disk()},
                                                               {DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk()},
                                                               {DomainSpec::disk(0.0, 0.5), DomainSpec::disk(0.25, 1.0)},
                                                               {DomainSpec::disk({2.0, 0.0}, 1.0), DomainSpec::half_plane()},
                                                               {DomainSpec::disk({0.0, 1.5}, 1.0), DomainSpec::strip()},
                                                               {DomainSpec::half_plane(), DomainSpec::cstar()}};
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& [inner, outer] : nests)
        for (CPoint w : boundary_samples(inner, ctx.cfg.contraction_levels)) {
            worst = std::max(worst, detail::ratio_at(inner, outer, w).upper);
            ++n;
        }
    o.observe("samples", static_cast<double>(n));
    o.observe("max_ratio", worst);
    o.require(worst <= 1.0 + o.v.tolerance, "eta_outer exceeded eta_inner");
    return o.v;
}

inline VerificationOutcome check_sampling_monotone(const SuiteContext& ctx, Rng&)
{
    Outcome o("sampling-monotone", 0.0);
    const std::vector<std::pair<DomainSpec, DomainSpec>> nests{{DomainSpec::punctured_disk(), DomainSpec::unit_disk()},
                                                               {DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk()},
                                                               {DomainSpec::disk({2.0, 0.0}, 1.0), DomainSpec::half_plane()}};
    for (const auto& [inner, outer] : nests) {
        double prev = 0.0;
        for (int k = 1; k <= ctx.cfg.contraction_levels; ++k) {
            const double l = infinitesimal_constant(inner, outer, k).l_interval.lower;
            o.require(l >= prev, "more samples lowered l_lower for " + to_string(inner));
            prev = l;
        }
        o.observe("l_lower_" + to_string(inner), prev);
    }
    return o.v;
}

inline VerificationOutcome check_lipschitz_classes(const SuiteContext& ctx, Rng&)
{
    Outcome o("def-lipschitz", kDefaultMargin);
    const int k = ctx.cfg.contraction_levels;
    const auto a = infinitesimal_constant(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), k);
    const auto b = infinitesimal_constant(DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk(), k);
    const auto c = infinitesimal_constant(DomainSpec::unit_disk(), DomainSpec::unit_disk(), k);
    o.observe("l_lower_dstar_in_disk", a.l_interval.lower);
    o.observe("l_upper_half_disk_in_disk", b.l_interval.upper);
    o.require(a.classification == Lipschitz::NonLipschitz, "D* in D should be non-Lipschitz");
    o.require(b.classification == Lipschitz::Lipschitz, "D(0,1/2) in D should be Lipschitz");
    o.require(c.classification == Lipschitz::NonLipschitz && c.l_interval.lower == 1.0, "D in D should have l = 1");
    return o.v;
}

inline VerificationOutcome check_thm8(const SuiteContext& ctx, Rng&)
{
    Outcome o("thm8-transport", 1e-9);
    double worst = 0.0;
    for (const auto& y : {DomainSpec::punctured_disk(), DomainSpec::unit_disk(), DomainSpec::half_plane(), DomainSpec::strip()}) {
        const auto rep = theorem8_reduction(y, ctx.cfg.contraction_levels);
        worst = std::max(worst, rep.max_ratio_gap);
        o.require(rep.classification == Lipschitz::NonLipschitz, to_string(y) + " should be non-Lipschitz in its hull");
    }
    for (const auto& hull : {DomainSpec::half_plane(), DomainSpec::strip()}) {
        const auto rep = theorem8_transported(hull, ctx.cfg.contraction_levels);
        worst = std::max(worst, rep.max_ratio_gap);
    }
    bool refused = false;
    try {
        theorem8_reduction(DomainSpec::cstar());
    } catch (const Error& e) {
        refused = e.kind() == ErrorKind::NotQuasiBounded;
    }
    o.observe("max_ratio_gap", worst);
    o.require(worst <= o.v.tolerance, "transported density ratios disagree");
    o.require(refused, "C* was not refused as non-quasi-bounded");
    return o.v;
}

inline std::vector<std::pair<std::string, CheckFn>> all_checks()
{
    return {
        {"budget-monotone", check_budget_monotone},
        {"catalog-boundary-distance", check_catalog_boundary},
        {"catalog-hull", check_catalog_hull},
        {"cor-4.16", check_cor416},
        {"cor-4.17", check_cor417},
        {"cor-kobayashi", check_kobayashi},
        {"cover-omits-1", check_cover_omits},
        {"cover-truncation", check_cover_truncation},
        {"def-lipschitz", check_lipschitz_classes},
        {"distance-positive", check_distance_positive},
        {"distance-refinement", check_distance_refinement},
        {"distance-rotation", check_distance_rotation},
        {"distance-symmetry", check_distance_symmetry},
        {"distance-triangle", check_distance_triangle},
        {"distance-witness", check_distance_witness},
        {"eq-2.2", check_eq22_pointwise},
        {"eq-2.2-distance", check_eq22_distance},
        {"ex-3.18", check_ex318},
        {"geodesic-oracles", check_geodesic_oracles},
        {"hahn-sandwich", check_hahn_sandwich},
        {"mobius-chain-rule", check_mobius_chain_rule},
        {"mobius-derivative", check_mobius_derivative},
        {"mobius-self-map", check_mobius_self_map},
        {"prop-simply-connected", check_simply_connected_coincidence},
        {"prop1-inclusion", check_prop1_inclusion},
        {"prop2-floor", check_prop2_floor},
        {"prop3-coincidence", check_prop3_coincidence},
        {"quadrature-order", check_quadrature_order},
        {"remark-cstar", check_remark_cstar},
        {"remark-cstar-scaling", check_cstar_scaling},
        {"sampling-monotone", check_sampling_monotone},
        {"thm2", check_thm2},
        {"thm2-scaling", check_thm2_scaling},
        {"thm3", check_thm3},
        {"thm6", check_thm6},
        {"thm7-dstar", check_thm7},
        {"thm8-transport", check_thm8},
        {"thmA-equality", check_thmA_equality},
        {"thmA-inclusion", check_thmA_inclusion},
        {"thmA-ratio", check_thmA_ratio},
    };
}

inline unsigned thread_cap()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HURWITZKIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            n = static_cast<unsigned>(std::min(v, 64L));
    }
    return n;
}

template <class Task>
void parallel_for(std::size_t count, Task&& task)
{
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                task(i);
        });
}

} // namespace detail

/// Runs every check; outcomes are sorted by id and independent of thread count.
/// `only` restricts the run to ids with that prefix.
inline std::vector<VerificationOutcome> verify_suite(const RunConfig& cfg, std::string_view only = {})
{
    cfg.validate();
    auto checks = detail::all_checks();
    std::erase_if(checks, [&](const auto& c) { return !c.first.starts_with(only); });

    detail::SuiteContext ctx{cfg, {}};
    const bool needs_tables = std::any_of(checks.begin(), checks.end(), [](const auto& c) {
        return c.first.starts_with("distance-") || c.first == "eq-2.2-distance";
    });
    if (needs_tables) {
        const auto doms = detail::distance_catalog();
        ctx.tables.resize(doms.size(), detail::DistanceTable{doms.front(), {}, {}, {}, {}});
        detail::parallel_for(doms.size(), [&](std::size_t i) { ctx.tables[i] = detail::build_distance_table(doms[i], cfg); });
    }

    std::vector<VerificationOutcome> out(checks.size());
    detail::parallel_for(checks.size(), [&](std::size_t i) {
        const auto& [id, fn] = checks[i];
        detail::Rng rng(cfg.seed ^ detail::fnv1a(id));
        try {
            out[i] = fn(ctx, rng);
        } catch (const std::exception& e) {
            out[i].id = id;
            out[i].status = CheckStatus::Fail;
            out[i].note = e.what();
        }
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

} // namespace hurwitzkit
