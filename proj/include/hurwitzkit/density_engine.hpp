#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/covering_maps.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>

#include <cmath>
#include <string_view>

// All densities use the curvature -1 normalization, lambda_D(w) = 2 / (1 - |w|^2),
// and are expressed per unit Euclidean length.

namespace hurwitzkit {

enum class Provenance { ClosedForm, Series, Interval };

constexpr std::string_view provenance_name(Provenance p) noexcept
{
    switch (p) {
    case Provenance::ClosedForm: return "ClosedForm";
    case Provenance::Series: return "Series";
    case Provenance::Interval: return "Interval";
    }
    return "Unknown";
}

/// A density value, or a certified enclosure [lower, upper] of one.
struct DensityValue {
    double lower;
    double upper;
    Provenance provenance;

    static DensityValue point(double v, Provenance p = Provenance::ClosedForm) { return {v, v, p}; }
    static DensityValue interval(double lo, double hi)
    {
        if (!(lo >= 0.0) || !(lo <= hi))
            fail(ErrorKind::Inconsistent, "density interval is empty or negative");
        return {lo, hi, Provenance::Interval};
    }

    bool is_point() const noexcept { return provenance != Provenance::Interval; }
    double value() const
    {
        if (!is_point())
            fail(ErrorKind::UnsupportedDensity, "density is only known as an interval");
        return lower;
    }
};

/// Points closer than this to the complement are rejected by every density.
inline constexpr double kBoundaryGuard = 1e-9;

enum class HahnNormalization {
    CurvatureMinusOne, // (1 + |w|) / (2 |w| (1 - |w|)), consistent with lambda_D = 2/(1-|w|^2)
    PaperPrinted,      // (1 + |w|) / (4 |w| (1 - |w|)), half of the above
};

namespace detail {

inline void require_interior(const DomainSpec& d, CPoint w)
{
    const double bd = boundary_distance(d, w); // throws OutsideDomain
    if (bd < kBoundaryGuard)
        fail(ErrorKind::NearBoundary, "point " + format_point(w) + " is within 1e-9 of the boundary of " + to_string(d));
}

inline double punctured_disk_hyperbolic(CPoint w)
{
    const double r = std::abs(w);
    return 1.0 / (r * -std::log(r));
}

} // namespace detail

inline DensityValue hyperbolic_density(const DomainSpec& d, CPoint w)
{
    if (!classify(d).is_hyperbolic)
        fail(ErrorKind::NotHyperbolic, to_string(d) + " carries no hyperbolic metric");
    detail::require_interior(d, w);
    const double value = d.visit(detail::overloaded{
        [&](const Disk& k) { return 2.0 * k.radius / (k.radius * k.radius - std::norm(w - k.center)); },
        [&](const HalfPlane&) { return 1.0 / w.real(); },
        [&](const Strip&) { return 1.0 / std::sin(w.imag()); },
        [&](const PuncturedDisk&) { return detail::punctured_disk_hyperbolic(w); },
        [](const auto&) -> double { fail(ErrorKind::NotHyperbolic, "unreachable"); },
    });
    return DensityValue::point(value);
}

/// Hahn density of D*, an upper bound for its Hurwitz density.
inline DensityValue hahn_density_punctured_disk(CPoint w, HahnNormalization norm = HahnNormalization::CurvatureMinusOne)
{
    const double r = std::abs(w);
    if (!is_finite(w) || r == 0.0 || r >= 1.0)
        fail(ErrorKind::OutsideDomain, "Hahn density of D* needs 0 < |w| < 1, got " + format_point(w));
    if (std::min(r, 1.0 - r) < kBoundaryGuard)
        fail(ErrorKind::NearBoundary, "point " + format_point(w) + " is within 1e-9 of the boundary of D*");
    const double denom = (norm == HahnNormalization::CurvatureMinusOne ? 2.0 : 4.0) * r * (1.0 - r);
    return DensityValue::point((1.0 + r) / denom);
}

inline DensityValue hurwitz_density(const DomainSpec& d, CPoint w)
{
    if (!classify(d).is_proper)
        fail(ErrorKind::NotProper, "the Hurwitz density needs a proper subdomain of the plane");
    detail::require_interior(d, w);
    switch (d.kind()) {
    case DomainKind::PlaneMinusPoint: return DensityValue::point(1.0 / (8.0 * std::abs(w - d.get_if<PlaneMinusPoint>()->point)));
    case DomainKind::PuncturedDisk:
        return DensityValue::interval(detail::punctured_disk_hyperbolic(w), hahn_density_punctured_disk(w).upper);
    default: return hyperbolic_density(d, w);
    }
}

/// Extremal radius r(w) = 2 / eta(w); an interval when the density is sandwiched.
inline DensityValue hurwitz_radius(const DomainSpec& d, CPoint w)
{
    const DensityValue eta = hurwitz_density(d, w);
    if (eta.is_point())
        return DensityValue::point(2.0 / eta.lower, eta.provenance);
    return DensityValue::interval(2.0 / eta.upper, 2.0 / eta.lower);
}

/// Hurwitz density recomputed from the covering, 2 / |G_w'(0)|.
inline DensityValue hurwitz_density_via_covering(const DomainSpec& d, CPoint w)
{
    detail::require_interior(d, w);
    const DiskMap g = hurwitz_covering_for(d, w);
    const Provenance p = d.kind() == DomainKind::PlaneMinusPoint ? Provenance::Series : Provenance::ClosedForm;
    return DensityValue::point(2.0 / std::abs(g.derivative(0.0)), p);
}

inline DensityValue quasihyperbolic_density(const DomainSpec& d, CPoint w)
{
    if (!classify(d).is_proper)
        fail(ErrorKind::NotProper, "the quasihyperbolic density needs a proper subdomain of the plane");
    detail::require_interior(d, w);
    return DensityValue::point(1.0 / boundary_distance(d, w));
}

} // namespace hurwitzkit
