#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/density_engine.hpp>
#include <hurwitzkit/detail/grid_graph.hpp>
#include <hurwitzkit/detail/path_polish.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>
#include <hurwitzkit/extremal_bounds.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace hurwitzkit {

enum class Metric { Hyperbolic, Hurwitz, Quasihyperbolic };

constexpr std::string_view metric_name(Metric m) noexcept
{
    switch (m) {
    case Metric::Hyperbolic: return "hyperbolic";
    case Metric::Hurwitz: return "hurwitz";
    case Metric::Quasihyperbolic: return "quasihyperbolic";
    }
    return "unknown";
}

/// Which end of an interval-valued density to integrate.
enum class DensityBound { Lower, Upper };

enum class CoordinateSystem { Cartesian, LogPolar };

/// Lattice used for the initial shortest path. LogPolar coordinates are
/// (log|w - b|, unwrapped arg(w - b)).
struct GridSpec {
    CoordinateSystem coordinates = CoordinateSystem::Cartesian;
    CPoint region_min;
    CPoint region_max;
    double h = 0.0;
    int stencil = 16;
};

struct RefinementStep {
    double h;
    double distance;
};

struct GeodesicResult {
    double distance = 0.0;
    std::optional<Polyline> path; // empty when the endpoints coincide
    std::vector<RefinementStep> refinement_trace;
    bool converged = true;
    GridSpec grid;
};

/// Distance for a metric; `upper` is set when the density is only known as an interval.
struct DistanceReport {
    GeodesicResult lower;
    std::optional<GeodesicResult> upper;

    bool is_interval() const noexcept { return upper.has_value(); }
    const GeodesicResult& upper_or_point() const noexcept { return upper ? *upper : lower; }
};

struct SolverOptions {
    double tol = 1e-3;
    int stencil = 16;
    int max_levels = 6;
};

using DensityField = std::function<double(CPoint)>;

inline bool density_is_interval(const DomainSpec& d, Metric m)
{
    return m == Metric::Hurwitz && d.kind() == DomainKind::PuncturedDisk;
}

/// Pointwise density for a metric on d.
inline DensityField density_field(const DomainSpec& d, Metric m, DensityBound bound = DensityBound::Lower)
{
    const DomainClass c = classify(d);
    switch (m) {
    case Metric::Hyperbolic:
        if (!c.is_hyperbolic)
            fail(ErrorKind::UnsupportedMetric, "hyperbolic metric is undefined on " + to_string(d));
        return [d](CPoint w) { return hyperbolic_density(d, w).value(); };
    case Metric::Hurwitz:
        if (!c.is_proper)
            fail(ErrorKind::UnsupportedMetric, "Hurwitz metric vanishes on the plane");
        if (bound == DensityBound::Upper)
            return [d](CPoint w) { return hurwitz_density(d, w).upper; };
        return [d](CPoint w) { return hurwitz_density(d, w).lower; };
    case Metric::Quasihyperbolic:
        if (!c.is_proper)
            fail(ErrorKind::UnsupportedMetric, "quasihyperbolic metric needs a boundary");
        return [d](CPoint w) { return quasihyperbolic_density(d, w).value(); };
    }
    fail(ErrorKind::UnsupportedMetric, "unknown metric");
}

namespace detail {

struct Chart {
    CoordinateSystem system;
    CPoint centre; // excluded point for LogPolar

    CPoint to_plane(CPoint c) const { return system == CoordinateSystem::Cartesian ? c : centre + std::exp(c); }
    // |dw/dc|
    double stretch(CPoint c) const { return system == CoordinateSystem::Cartesian ? 1.0 : std::exp(c.real()); }
};

inline bool lex_less(CPoint a, CPoint b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

inline std::vector<CPoint> dedupe(std::vector<CPoint> v)
{
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Length of a seed polyline oriented from a to b, or nullopt when its endpoints differ.
template <class Density>
std::optional<std::pair<double, Polyline>> oriented_seed(const Polyline& seed, CPoint a, CPoint b, Density& rho)
{
    if (seed.front() == a && seed.back() == b)
        return std::pair{polyline_length_under_density(seed, rho), seed};
    if (seed.front() == b && seed.back() == a)
        return std::pair{polyline_length_under_density(seed, rho), seed.reversed()};
    return std::nullopt;
}

} // namespace detail

/// Density-weighted shortest path between w1 and w2 in d.
///
/// A 8/16-neighbour lattice Dijkstra gives the initial path; it is then
/// straightened in the plane and refined by halving the vertex spacing until
/// two consecutive levels agree within opts.tol. Seed paths with the same
/// endpoints compete with the result, so d(seed metric) orderings can be
/// imposed by passing the other solve's witness.
template <class Density>
GeodesicResult solve_geodesic(const DomainSpec& d, Density&& rho, CPoint w1, CPoint w2, const SolverOptions& opts,
                              std::span<const Polyline> seeds = {})
{
    if (!(opts.tol > 0.0) || (opts.stencil != 8 && opts.stencil != 16) || opts.max_levels < 1)
        fail(ErrorKind::InvalidArgument, "solver options need tol > 0, stencil 8 or 16 and at least one level");
    for (CPoint w : {w1, w2})
        if (!contains(d, w))
            fail(ErrorKind::OutsideDomain, "point " + format_point(w) + " is not in " + to_string(d));

    GeodesicResult result;
    if (w1 == w2)
        return result;

    // endpoints in a fixed order make the computation, and so the distance, symmetric
    const bool swapped = detail::lex_less(w2, w1);
    const CPoint a = swapped ? w2 : w1;
    const CPoint b = swapped ? w1 : w2;

    detail::Chart chart{CoordinateSystem::Cartesian, 0.0};
    CPoint ca = a;
    CPoint cb = b;
    if (const auto* p = d.get_if<PlaneMinusPoint>()) {
        chart = {CoordinateSystem::LogPolar, p->point};
        ca = std::log(a - p->point);
        cb = ca + std::log((b - p->point) / (a - p->point)); // |arg difference| <= pi
    }
    const double span = std::abs(cb - ca);
    double h0 = span / 8.0;
    if (chart.system == CoordinateSystem::Cartesian) {
        const double room = std::max(boundary_distance(d, a), boundary_distance(d, b));
        h0 = std::max(std::min(h0, 0.5 * room), 3.0 * span / 128.0);
    }

    auto node_ok = [&](CPoint c) {
        if (chart.system == CoordinateSystem::LogPolar)
            return true;
        return contains(d, c) && boundary_distance(d, c) >= 0.5 * h0;
    };
    auto edge_ok = [&](CPoint x, CPoint y) {
        return chart.system == CoordinateSystem::LogPolar || segment_clearance(d, x, y) > 0.0;
    };
    auto weight = [&](CPoint x, CPoint y) {
        auto f = [&](CPoint c) { return detail::density_at(rho, chart.to_plane(c)) * chart.stretch(c); };
        return std::abs(y - x) / 6.0 * (f(x) + 4.0 * f(0.5 * (x + y)) + f(y));
    };

    const CPoint mid = 0.5 * (ca + cb);
    auto make_lattice = [&](double half) {
        detail::Lattice lat{ca, h0, 0, 0, 0, 0};
        lat.imin = std::min(0, static_cast<int>(std::floor((mid.real() - half - ca.real()) / h0)));
        lat.imax = std::max(0, static_cast<int>(std::ceil((mid.real() + half - ca.real()) / h0)));
        lat.jmin = std::min(0, static_cast<int>(std::floor((mid.imag() - half - ca.imag()) / h0)));
        lat.jmax = std::max(0, static_cast<int>(std::ceil((mid.imag() + half - ca.imag()) / h0)));
        return lat;
    };
    // bounding box of the endpoints inflated threefold, expanded once on demand
    detail::Lattice lat = make_lattice(1.5 * span);
    auto found = detail::lattice_dijkstra(lat, opts.stencil, cb, node_ok, edge_ok, weight);
    if (!found || found->touches_rim) {
        const detail::Lattice wider = make_lattice(3.0 * span);
        if (auto again = detail::lattice_dijkstra(wider, opts.stencil, cb, node_ok, edge_ok, weight)) {
            found = std::move(again);
            lat = wider;
        }
    }
    if (!found)
        fail(ErrorKind::PointsTooCloseToBoundary,
             "no lattice path between " + format_point(a) + " and " + format_point(b) + " in " + to_string(d));
    result.grid = {chart.system, lat.point(lat.imin, lat.jmin), lat.point(lat.imax, lat.jmax), h0, opts.stencil};

    // chart path to plane vertices; log-polar edges are cut so each plane chord turns by at most pi/8
    std::vector<CPoint> plane{a};
    for (std::size_t i = 1; i < found->points.size(); ++i) {
        const CPoint x = found->points[i - 1];
        const CPoint y = found->points[i];
        int pieces = 1;
        if (chart.system == CoordinateSystem::LogPolar)
            pieces = std::max(1, static_cast<int>(std::ceil(std::abs(y.imag() - x.imag()) / (kPi / 8.0))));
        for (int k = 1; k <= pieces; ++k)
            plane.push_back(chart.to_plane(x + (y - x) * (static_cast<double>(k) / pieces)));
    }
    plane.back() = b;
    plane = detail::dedupe(std::move(plane));
    if (plane.size() < 2)
        plane = {a, b};

    // the Euclidean spacing of the initial path sets the first level
    const double h_plane = Polyline(plane).euclidean_length() / static_cast<double>(plane.size() - 1);
    detail::PathPolisher<std::remove_reference_t<Density>> polisher(d, rho, std::move(plane));
    const double gain = 1e-3 * opts.tol;
    double best = std::numeric_limits<double>::infinity();
    std::vector<CPoint> best_path;
    result.converged = false;
    for (int level = 0; level < opts.max_levels; ++level) {
        const double h = h_plane * std::ldexp(1.0, -level);
        polisher.subdivide(h);
        polisher.polish(gain, level == 0 ? 400 : 100);
        const double length = polyline_length_under_density(Polyline(polisher.vertices()), rho);
        const double previous = best;
        if (length <= best) {
            best = length;
            best_path = polisher.vertices();
        } else {
            polisher.assign(best_path); // keep the recorded sequence nonincreasing
        }
        result.refinement_trace.push_back({h, best});
        if (level > 0 && std::abs(previous - length) <= opts.tol * best) {
            result.converged = true;
            break;
        }
    }
    result.distance = best;
    Polyline path(best_path);

    for (const Polyline& seed : seeds) {
        auto oriented = detail::oriented_seed(seed, a, b, rho);
        if (!oriented)
            fail(ErrorKind::InvalidArgument, "seed path endpoints do not match the query");
        if (oriented->first < result.distance) {
            result.distance = oriented->first;
            path = std::move(oriented->second);
        }
    }
    result.path = swapped ? path.reversed() : path;
    return result;
}

/// Distance for a catalog metric; interval densities are solved at both ends.
inline DistanceReport distance(const DomainSpec& d, Metric m, CPoint w1, CPoint w2, const SolverOptions& opts = {},
                               std::span<const Polyline> seeds = {})
{
    DistanceReport report;
    report.lower = solve_geodesic(d, density_field(d, m, DensityBound::Lower), w1, w2, opts, seeds);
    if (density_is_interval(d, m)) {
        // the upper density dominates the lower, so the lower witness is a valid competitor
        std::vector<Polyline> upper_seeds(seeds.begin(), seeds.end());
        if (report.lower.path)
            upper_seeds.push_back(*report.lower.path);
        report.upper = solve_geodesic(d, density_field(d, m, DensityBound::Upper), w1, w2, opts, upper_seeds);
        // and the lower density integrates the upper witness to no more than its upper length
        if (report.upper->path) {
            // integrated in the canonical direction, like every other solve
            const Polyline& up = *report.upper->path;
            const bool flip = detail::lex_less(up.back(), up.front());
            const double alt = polyline_length_under_density(flip ? up.reversed() : up, density_field(d, m, DensityBound::Lower));
            if (alt < report.lower.distance) {
                report.lower.distance = alt;
                report.lower.path = up;
            }
        }
    }
    return report;
}

inline DistanceReport distance(const DomainSpec& d, Metric m, CPoint w1, CPoint w2, double tol)
{
    SolverOptions opts;
    opts.tol = tol;
    return distance(d, m, w1, w2, opts);
}

struct DistanceComparison {
    DistanceReport hurwitz;
    GeodesicResult hyperbolic;
    bool holds; // hurwitz lower >= hyperbolic - tol
};

/// Hurwitz and hyperbolic distances between the same endpoints. The hyperbolic
/// solve competes against the Hurwitz witness, which it integrates to no more
/// than the Hurwitz length since lambda <= eta pointwise.
inline DistanceComparison distance_comparison(const DomainSpec& d, CPoint w1, CPoint w2, const SolverOptions& opts = {})
{
    if (!classify(d).is_hyperbolic)
        fail(ErrorKind::NotHyperbolic, to_string(d) + " carries no hyperbolic metric");
    DistanceComparison out{distance(d, Metric::Hurwitz, w1, w2, opts), {}, true};
    std::vector<Polyline> seeds;
    if (out.hurwitz.lower.path)
        seeds.push_back(*out.hurwitz.lower.path);
    out.hyperbolic = solve_geodesic(d, density_field(d, Metric::Hyperbolic), w1, w2, opts, seeds);
    out.holds = out.hurwitz.lower.distance >= out.hyperbolic.distance - opts.tol;
    return out;
}

struct PairCheck {
    CPoint w1;
    CPoint w2;
    double outer;
    double inner_upper;
    bool holds; // outer <= inner_upper + tol
};

struct ContractionDistanceReport {
    std::vector<PairCheck> pairs;
    bool all_hold = true;
};

/// Distance decrease under the inclusion inner -> outer, pair by pair.
inline ContractionDistanceReport contraction_distance_check(const DomainSpec& inner, const DomainSpec& outer,
                                                            std::span<const std::pair<CPoint, CPoint>> pairs,
                                                            const SolverOptions& opts = {})
{
    if (!is_nested(inner, outer))
        fail(ErrorKind::NotNested, to_string(inner) + " is not known to lie in " + to_string(outer));
    ContractionDistanceReport report;
    for (const auto& [w1, w2] : pairs) {
        const DistanceReport in = distance(inner, Metric::Hurwitz, w1, w2, opts);
        const GeodesicResult& up = in.upper_or_point();
        std::vector<Polyline> seeds;
        if (up.path)
            seeds.push_back(*up.path);
        const DistanceReport out = distance(outer, Metric::Hurwitz, w1, w2, opts, seeds);
        const PairCheck check{w1, w2, out.upper_or_point().distance, up.distance,
                              out.upper_or_point().distance <= up.distance + opts.tol};
        report.all_hold = report.all_hold && check.holds;
        report.pairs.push_back(check);
    }
    return report;
}

/// Generalized Hurwitz distance. Only computed where the pointwise
/// certificates at both endpoints converge onto eta_Omega, i.e. for simply
/// connected basepoint domains; refused otherwise.
inline DistanceReport generalized_hurwitz_distance(const DomainSpec& y, const DomainSpec& omega, CPoint w1, CPoint w2,
                                                   const SolverOptions& opts = {}, int budget = 64)
{
    if (!classify(y).is_simply_connected || !classify(omega).is_proper)
        fail(ErrorKind::UnsupportedPair, "no converged density field for basepoint " + to_string(y) + " on " + to_string(omega));
    for (CPoint w : {w1, w2}) {
        const BoundCertificate cert = generalized_hurwitz_bounds(y, omega, w, 1e-9, budget);
        if (!cert.converged)
            fail(ErrorKind::UnsupportedPair, "certificate at " + format_point(w) + " did not converge");
    }
    return distance(omega, Metric::Hurwitz, w1, w2, opts);
}

/// Witness polyline as CSV with columns re,im.
inline void write_path_csv(std::ostream& os, const Polyline& path)
{
    const auto old = os.precision(17);
    os << "re,im\n";
    for (CPoint v : path.vertices())
        os << v.real() << ',' << v.imag() << '\n';
    os.precision(old);
}

} // namespace hurwitzkit
