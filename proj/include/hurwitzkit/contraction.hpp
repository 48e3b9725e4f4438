#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/covering_maps.hpp>
#include <hurwitzkit/density_engine.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>
#include <hurwitzkit/geodesic_solver.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitzkit {

enum class Lipschitz { Lipschitz, NonLipschitz, Undetermined };

constexpr std::string_view lipschitz_name(Lipschitz c) noexcept
{
    switch (c) {
    case Lipschitz::Lipschitz: return "Lipschitz";
    case Lipschitz::NonLipschitz: return "NonLipschitz";
    case Lipschitz::Undetermined: return "Undetermined";
    }
    return "Unknown";
}

struct Interval {
    double lower;
    double upper;
};

struct SampleSpec {
    int levels = 0;    // boundary levels 1 - 2^-k, k = 1..levels
    int arguments = 0; // arguments per level
    std::size_t points = 0;
    std::size_t pairs = 0;
};

struct ContractionReport {
    Interval l_interval{0.0, 0.0};
    double gl_lower = 0.0;
    SampleSpec sample_spec;
    Lipschitz classification = Lipschitz::Undetermined;
    CPoint argmax{}; // sample attaining l_interval.lower
};

inline constexpr int kSampleArguments = 16;
inline constexpr double kDefaultMargin = 1e-3;

/// Points of d concentrated geometrically toward its boundary: chart preimages of
/// (1 - 2^-k) e^{2 pi i j / 16} (and of 0 when the chart is onto). For D* both
/// rims are approached; for C \ {b} the radii 2^k and 2^-k are used.
inline std::vector<CPoint> boundary_samples(const DomainSpec& d, int levels)
{
    if (levels < 1)
        fail(ErrorKind::InvalidArgument, "sample levels must be positive");
    levels = std::min(levels, kMaxGridLevel);
    std::vector<CPoint> out;
    auto ring = [&](CPoint c, double rho) {
        for (int j = 0; j < kSampleArguments; ++j)
            out.push_back(c + std::polar(rho, 2.0 * kPi * j / kSampleArguments));
    };
    if (const auto* p = d.get_if<PlaneMinusPoint>()) {
        for (int k = 1; k <= levels; ++k) {
            ring(p->point, std::ldexp(1.0, k));
            ring(p->point, std::ldexp(1.0, -k));
        }
        return out;
    }
    if (d.kind() == DomainKind::PuncturedDisk) {
        for (int k = 1; k <= levels; ++k) {
            ring(0.0, 1.0 - std::ldexp(1.0, -k));
            if (k > 1)
                ring(0.0, std::ldexp(1.0, -k));
        }
        return out;
    }
    const auto chart = disk_chart(d);
    if (!chart || !chart->onto)
        fail(ErrorKind::UnsupportedDomain, "no boundary sampler for " + to_string(d));
    out.push_back(chart->from_disk(0.0));
    for (int k = 1; k <= levels; ++k)
        for (int j = 0; j < kSampleArguments; ++j)
            out.push_back(chart->from_disk(std::polar(1.0 - std::ldexp(1.0, -k), 2.0 * kPi * j / kSampleArguments)));
    return out;
}

namespace detail {

inline void require_contraction_pair(const DomainSpec& inner, const DomainSpec& outer)
{
    if (!classify(inner).is_proper || !classify(outer).is_proper)
        fail(ErrorKind::NotProper, "contraction constants need proper domains");
    if (!is_nested(inner, outer))
        fail(ErrorKind::NotNested, to_string(inner) + " is not known to lie in " + to_string(outer));
}

// [eta_outer / eta_inner] with interval ends matched so the enclosure is honest.
inline Interval ratio_at(const DomainSpec& inner, const DomainSpec& outer, CPoint w)
{
    const DensityValue in = hurwitz_density(inner, w);
    const DensityValue out = hurwitz_density(outer, w);
    return {out.lower / in.upper, out.upper / in.lower};
}

inline Lipschitz classify_interval(Interval l, double margin)
{
    if (l.lower >= 1.0 - margin)
        return Lipschitz::NonLipschitz;
    if (l.upper <= 1.0 - margin)
        return Lipschitz::Lipschitz;
    return Lipschitz::Undetermined;
}

} // namespace detail

/// Sampled enclosure of l_eta(inner, outer) = sup over inner of eta_outer / eta_inner.
inline ContractionReport infinitesimal_constant(const DomainSpec& inner, const DomainSpec& outer, int samples,
                                                double margin = kDefaultMargin)
{
    detail::require_contraction_pair(inner, outer);
    ContractionReport report;
    const auto points = boundary_samples(inner, samples);
    report.sample_spec = {std::min(samples, kMaxGridLevel), kSampleArguments, points.size(), 0};
    if (inner == outer) {
        // the ratio is identically one, whatever the density provenance
        report.l_interval = {1.0, 1.0};
        report.argmax = points.front();
    } else {
        bool first = true;
        for (CPoint w : points) {
            const Interval r = detail::ratio_at(inner, outer, w);
            if (first || r.lower > report.l_interval.lower) {
                report.l_interval.lower = r.lower;
                report.argmax = w;
            }
            report.l_interval.upper = first ? r.upper : std::max(report.l_interval.upper, r.upper);
            first = false;
        }
    }
    report.classification = detail::classify_interval(report.l_interval, margin);
    return report;
}

/// Short pairs near the boundary of d: both ends on the ring 1 - 2^-k of the
/// sampling chart, separated by an arc of 2^-k.
inline std::vector<std::pair<CPoint, CPoint>> boundary_pairs(const DomainSpec& d, int count, int levels)
{
    if (count < 1 || levels < 1)
        fail(ErrorKind::InvalidArgument, "pair count and levels must be positive");
    const auto chart = d.kind() == DomainKind::PuncturedDisk ? disk_chart(DomainSpec::unit_disk()) : disk_chart(d);
    if (!chart || d.kind() == DomainKind::PlaneMinusPoint)
        fail(ErrorKind::UnsupportedDomain, "no boundary pair sampler for " + to_string(d));
    std::vector<std::pair<CPoint, CPoint>> out;
    constexpr double golden = 0.6180339887498949;
    for (int j = 0; j < count; ++j) {
        const int k = 1 + (levels - 1 - j % levels);
        const double rho = 1.0 - std::ldexp(1.0, -k);
        const double theta = 2.0 * kPi * std::fmod(golden * (j + 1), 1.0);
        out.emplace_back(chart->from_disk(std::polar(rho, theta)), chart->from_disk(std::polar(rho, theta + std::ldexp(1.0, -k))));
    }
    return out;
}

/// Sampled lower bound for gl_eta(inner, outer): the largest certified ratio
/// d_outer(lower) / d_inner(upper) over the given pairs.
inline double global_constant_lower(const DomainSpec& inner, const DomainSpec& outer,
                                    std::span<const std::pair<CPoint, CPoint>> pairs, const SolverOptions& opts = {})
{
    detail::require_contraction_pair(inner, outer);
    if (inner == outer)
        return 1.0;
    double best = 0.0;
    for (const auto& [w1, w2] : pairs) {
        if (w1 == w2)
            continue;
        const DistanceReport in = distance(inner, Metric::Hurwitz, w1, w2, opts);
        const GeodesicResult& up = in.upper_or_point();
        std::vector<Polyline> seeds;
        if (up.path)
            seeds.push_back(*up.path);
        const DistanceReport out = distance(outer, Metric::Hurwitz, w1, w2, opts, seeds);
        best = std::max(best, out.lower.distance / up.distance);
    }
    return best;
}

inline double global_constant_lower(const DomainSpec& inner, const DomainSpec& outer, int pairs, int levels,
                                    const SolverOptions& opts = {})
{
    detail::require_contraction_pair(inner, outer);
    if (inner == outer)
        return 1.0;
    const auto sampled = boundary_pairs(inner, pairs, levels);
    return global_constant_lower(inner, outer, sampled, opts);
}

/// Both constants in one report.
inline ContractionReport contraction_report(const DomainSpec& inner, const DomainSpec& outer, int samples, int pairs,
                                            const SolverOptions& opts = {}, double margin = kDefaultMargin)
{
    ContractionReport report = infinitesimal_constant(inner, outer, samples, margin);
    report.gl_lower = global_constant_lower(inner, outer, pairs, std::min(samples, 8), opts);
    report.sample_spec.pairs = inner == outer ? 0 : static_cast<std::size_t>(pairs);
    return report;
}

inline Lipschitz classify_lipschitz(const DomainSpec& inner, const DomainSpec& outer, double margin = kDefaultMargin,
                                    int samples = 12)
{
    return infinitesimal_constant(inner, outer, samples, margin).classification;
}

struct Theorem8Report {
    DomainSpec hull;
    std::string map_name;
    Interval l_original;    // l_eta(Y, hull of Y)
    Interval l_transported; // l_eta(h(Y), D) at the images of the same samples
    double max_ratio_gap = 0.0;
    std::size_t samples = 0;
    Lipschitz classification = Lipschitz::Undetermined;
};

namespace detail {

struct RatioPair {
    Interval original;
    Interval transported;
};

inline void accumulate(Theorem8Report& rep, const RatioPair& r, bool first)
{
    auto widen = [&](Interval& acc, Interval x) {
        acc = first ? x : Interval{std::max(acc.lower, x.lower), std::max(acc.upper, x.upper)};
    };
    widen(rep.l_original, r.original);
    widen(rep.l_transported, r.transported);
    const double gap = std::max(std::abs(r.original.lower - r.transported.lower), std::abs(r.original.upper - r.transported.upper));
    rep.max_ratio_gap = std::max(rep.max_ratio_gap, gap);
}

} // namespace detail

/// Compares l_eta(Y, Y^) with l_eta(h(Y), D) for the catalog Riemann map h of the hull,
/// pointwise at matched samples w and h(w).
inline Theorem8Report theorem8_reduction(const DomainSpec& y, int samples = 12, double margin = kDefaultMargin)
{
    if (!is_quasi_bounded(y))
        fail(ErrorKind::NotQuasiBounded, to_string(y) + " has the whole plane as simply connected hull");
    const DomainSpec hull = simply_connected_hull(y);
    const DiskChart h = *disk_chart(hull);
    const DomainSpec disk = DomainSpec::unit_disk();
    Theorem8Report rep{hull, h.name, {1.0, 1.0}, {1.0, 1.0}, 0.0, 0, Lipschitz::Undetermined};

    if (y == hull) {
        // Y^ = Y maps onto D: both ratios are identically one
        rep.samples = boundary_samples(y, samples).size();
    } else {
        // the only non-simply-connected quasi-bounded catalog domain is D*, whose hull chart is the identity
        bool first = true;
        for (CPoint w : boundary_samples(y, samples)) {
            const CPoint u = h.to_disk(w);
            detail::accumulate(rep, {detail::ratio_at(y, hull, w), detail::ratio_at(DomainSpec::punctured_disk(), disk, u)}, first);
            first = false;
            ++rep.samples;
        }
    }
    rep.classification = detail::classify_interval(rep.l_original, margin);
    return rep;
}

/// Variant for Y = h^{-1}(D*) inside a simply connected catalog hull (half-plane
/// or strip): densities of Y are pulled back through the chart h, while the
/// hull density is the closed form of the hull itself.
inline Theorem8Report theorem8_transported(const DomainSpec& hull, int samples = 12, double margin = kDefaultMargin)
{
    const auto h = disk_chart(hull);
    if (!h || !h->onto || hull.kind() == DomainKind::Disk)
        fail(ErrorKind::UnsupportedDomain, "transport needs a half-plane or strip hull");
    const DomainSpec dstar = DomainSpec::punctured_disk();
    const DomainSpec disk = DomainSpec::unit_disk();
    Theorem8Report rep{hull, h->name, {1.0, 1.0}, {1.0, 1.0}, 0.0, 0, Lipschitz::Undetermined};
    bool first = true;
    for (CPoint u : boundary_samples(dstar, samples)) {
        const CPoint w = h->from_disk(u);
        double stretch = 0.0;
        DensityValue eta_hull = DensityValue::point(0.0);
        try {
            stretch = std::abs(h->to_disk_derivative(w));
            eta_hull = hurwitz_density(hull, w);
        } catch (const Error& e) {
            // samples whose preimage lands within the guard of the hull boundary are skipped
            if (e.kind() == ErrorKind::NearBoundary)
                continue;
            throw;
        }
        const DensityValue eta_y = hurwitz_density(dstar, h->to_disk(w));
        const Interval original{eta_hull.lower / (eta_y.upper * stretch), eta_hull.upper / (eta_y.lower * stretch)};
        detail::accumulate(rep, {original, detail::ratio_at(dstar, disk, u)}, first);
        first = false;
        ++rep.samples;
    }
    rep.classification = detail::classify_interval(rep.l_original, margin);
    return rep;
}

} // namespace hurwitzkit
