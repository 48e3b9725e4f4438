#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/covering_maps.hpp>
#include <hurwitzkit/density_engine.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace hurwitzkit {

enum class CandidateFamily {
    MobiusThroughCovering, // G_{Omega,w} o T_s o (Riemann map of Y)
    RestrictionFamily,     // G_{Omega,w} o T_s restricted to Y, for Y inside D but not onto it
    LinearMaps,            // affine maps s -> n (s - t) + w, or C \ {b} onto C \ {b'}
};

constexpr std::string_view family_name(CandidateFamily f) noexcept
{
    switch (f) {
    case CandidateFamily::MobiusThroughCovering: return "MobiusThroughCovering";
    case CandidateFamily::RestrictionFamily: return "RestrictionFamily";
    case CandidateFamily::LinearMaps: return "LinearMaps";
    }
    return "Unknown";
}

enum class LowerWitness { HurwitzDensityFloor, Zero };

struct UpperWitness {
    CPoint s;
    CandidateFamily family;
    long long scale = 0; // n for the linear sequence, 0 otherwise
};

/// Enclosure [lower, upper] of a generalized Hurwitz density value.
struct BoundCertificate {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    LowerWitness lower_witness = LowerWitness::Zero;
    std::optional<UpperWitness> upper_witness;
    bool converged = false;
    int candidates = 0;
};

/// Radial levels of the basepoint grid are capped so that |s| = 1 - 2^-k stays
/// clear of the 1e-9 boundary guard.
inline constexpr int kMaxGridLevel = 29;

/// Basepoints s in Y: chart preimages of 0 (when the chart is onto) and of
/// (1 - 2^-k) e^{2 pi i j / 8}, k = 1..levels. For C \ {b}: b + 2^(k-1) e^{2 pi i j / 8}.
inline std::vector<CPoint> basepoint_grid(const DomainSpec& y, int levels)
{
    levels = std::clamp(levels, 1, kMaxGridLevel);
    std::vector<CPoint> out;
    if (const auto* p = y.get_if<PlaneMinusPoint>()) {
        for (int k = 1; k <= levels; ++k)
            for (int j = 0; j < 8; ++j)
                out.push_back(p->point + std::ldexp(1.0, k - 1) * std::polar(1.0, 2.0 * kPi * j / 8.0));
        return out;
    }
    const auto chart = disk_chart(y);
    if (!chart)
        fail(ErrorKind::UnsupportedDomain, "no basepoint grid for " + to_string(y));
    if (chart->onto)
        out.push_back(chart->from_disk(0.0));
    for (int k = 1; k <= levels; ++k) {
        const double rho = 1.0 - std::ldexp(1.0, -k);
        for (int j = 0; j < 8; ++j)
            out.push_back(chart->from_disk(std::polar(rho, 2.0 * kPi * j / 8.0)));
    }
    return out;
}

namespace detail {

// Deterministic reduction: smaller value, then smaller |s|, then smaller argument.
inline bool better_candidate(double value, CPoint s, double best, CPoint best_s)
{
    if (value != best)
        return value < best;
    if (std::abs(s) != std::abs(best_s))
        return std::abs(s) < std::abs(best_s);
    return std::arg(s) < std::arg(best_s);
}

struct CandidateScan {
    double best = std::numeric_limits<double>::infinity();
    std::optional<UpperWitness> witness;
    int evaluated = 0;

    template <class Eval>
    void offer(CPoint s, CandidateFamily family, long long scale, Eval&& eval)
    {
        double value = 0.0;
        try {
            value = eval(s);
        } catch (const Error& e) {
            // grid points too close to the boundary of Y are dropped
            if (e.kind() == ErrorKind::NearBoundary || e.kind() == ErrorKind::OutsideDomain)
                return;
            throw;
        }
        ++evaluated;
        if (!std::isfinite(value))
            return;
        if (!witness || better_candidate(value, s, best, witness->s)) {
            best = value;
            witness = UpperWitness{s, family, scale};
        }
    }
};

} // namespace detail

/// Upper bound lambda_D(t) / n from the sequence h_n(s) = n (s - t) + w.
inline double theorem2_sequence_bound(long long n, CPoint t)
{
    if (n < 1)
        fail(ErrorKind::InvalidArgument, "sequence index must be positive");
    if (!is_finite(t) || std::abs(t) >= 1.0)
        fail(ErrorKind::OutsideDomain, "sequence centre must lie in the unit disk");
    return 2.0 / ((1.0 - std::norm(t)) * static_cast<double>(n));
}

/// Gap factor (1 + s)^2 / (4 s) between the D*-basepoint upper bound and the density itself.
inline double example318_upper_ratio(double s_abs)
{
    if (!(s_abs > 0.0 && s_abs < 1.0))
        fail(ErrorKind::InvalidArgument, "|s| must lie strictly between 0 and 1");
    return (1.0 + s_abs) * (1.0 + s_abs) / (4.0 * s_abs);
}

/// Evaluates eta_Y(s) / |h_s'(s)| for the candidate attached to each basepoint s in Y.
class HurwitzCandidates {
public:
    HurwitzCandidates(DomainSpec y, DomainSpec omega, CPoint w, long long linear_scale = 1)
        : y_(std::move(y)), omega_(std::move(omega)), w_(w), scale_(linear_scale)
    {
        if (!classify(y_).is_proper)
            fail(ErrorKind::NotProper, "basepoint domain must be a proper subdomain");
        if (!contains(omega_, w_))
            fail(ErrorKind::OutsideDomain, "point " + format_point(w_) + " is not in " + to_string(omega_));
        if (omega_.kind() == DomainKind::PuncturedDisk)
            fail(ErrorKind::UnsupportedPair, "no covering evaluator for the punctured disk as target");
        if (scale_ < 1)
            fail(ErrorKind::InvalidArgument, "sequence index must be positive");
        if (omega_.kind() == DomainKind::WholePlane) {
            family_ = CandidateFamily::LinearMaps;
        } else if (y_.kind() == DomainKind::PlaneMinusPoint) {
            // a holomorphic map from C \ {b} into a hyperbolic domain is constant
            available_ = omega_.kind() == DomainKind::PlaneMinusPoint;
            family_ = CandidateFamily::LinearMaps;
        } else {
            cover_.emplace(hurwitz_covering_for(omega_, w_));
            chart_ = disk_chart(y_);
            family_ = chart_->onto ? CandidateFamily::MobiusThroughCovering : CandidateFamily::RestrictionFamily;
        }
    }

    bool available() const noexcept { return available_; }
    CandidateFamily family() const noexcept { return family_; }
    long long scale() const noexcept { return omega_.kind() == DomainKind::WholePlane ? scale_ : 0; }

    /// Upper bound contributed by the candidate centred at s.
    double operator()(CPoint s) const
    {
        if (!available_)
            return std::numeric_limits<double>::infinity();
        const double source = hurwitz_density(y_, s).upper;
        if (omega_.kind() == DomainKind::WholePlane)
            return source / static_cast<double>(scale_); // h_n(z) = n (z - s) + w
        if (const auto* py = y_.get_if<PlaneMinusPoint>()) {
            // h(z) = b' + (w - b') (z - b) / (s - b) omits b' and hits w only at s
            const CPoint target = omega_.get_if<PlaneMinusPoint>()->point;
            return source / std::abs((w_ - target) / (s - py->point));
        }
        const CPoint u = chart_->to_disk(s);
        const MobiusMap t(u);
        const CPoint derivative = cover_->derivative(mobius_eval(t, u)) * mobius_derivative(t, u) * chart_->to_disk_derivative(s);
        return source / std::abs(derivative);
    }

    /// Relative rounding allowance of operator()(s): chart evaluations near the
    /// unit circle lose digits to the cancellation in 1 - |u|^2.
    double rounding_allowance(CPoint s) const
    {
        // the plane has floor 0, and 2/((1-|s|^2) n) is taken as computed
        if (family_ == CandidateFamily::LinearMaps)
            return 0.0;
        constexpr double unit = 64.0 * std::numeric_limits<double>::epsilon();
        const auto chart = chart_ ? chart_ : disk_chart(y_);
        if (!chart)
            return unit;
        return unit * (1.0 + 1.0 / (1.0 - std::abs(chart->to_disk(s))));
    }

    /// Candidate value inflated by its rounding allowance; this is what enters the certificate.
    double certified(CPoint s) const
    {
        const double v = (*this)(s);
        return v * (1.0 + rounding_allowance(s));
    }

    const DomainSpec& basepoint_domain() const noexcept { return y_; }
    const DomainSpec& target() const noexcept { return omega_; }

private:
    DomainSpec y_;
    DomainSpec omega_;
    CPoint w_;
    long long scale_;
    bool available_ = true;
    CandidateFamily family_ = CandidateFamily::LinearMaps;
    std::optional<DiskMap> cover_;
    std::optional<DiskChart> chart_;
};

/// Certified enclosure of the generalized Hurwitz density eta_Omega^Y(w).
/// `budget` is the number of refinement levels of the basepoint grid, and the
/// sequence index n for Omega = C.
inline BoundCertificate generalized_hurwitz_bounds(const DomainSpec& y, const DomainSpec& omega, CPoint w, double tol, int budget)
{
    if (!(tol > 0.0) || budget < 1)
        fail(ErrorKind::InvalidArgument, "tolerance and budget must be positive");
    const HurwitzCandidates candidates(y, omega, w, budget);

    BoundCertificate cert;
    if (omega.kind() == DomainKind::WholePlane) {
        cert.lower = 0.0;
        cert.lower_witness = LowerWitness::Zero;
    } else {
        cert.lower = hurwitz_density(omega, w).value();
        cert.lower_witness = LowerWitness::HurwitzDensityFloor;
    }

    detail::CandidateScan scan;
    if (candidates.available())
        for (const CPoint s : basepoint_grid(y, std::min(budget, kMaxGridLevel)))
            scan.offer(s, candidates.family(), candidates.scale(), [&](CPoint pt) { return candidates.certified(pt); });

    cert.candidates = scan.evaluated;
    cert.upper = scan.best;
    cert.upper_witness = scan.witness;
    if (cert.upper < cert.lower) {
        // the two sides agree analytically in the coincidence cases; allow rounding only
        if (cert.lower - cert.upper > 1e-12 * cert.lower)
            fail(ErrorKind::Inconsistent, "candidate upper bound fell below the Hurwitz density floor");
        cert.upper = cert.lower;
    }
    cert.converged = cert.lower > 0.0 ? (cert.upper - cert.lower) < tol * cert.lower : cert.upper < tol;
    return cert;
}

/// Upper bound for the generalized Kobayashi density kappa_Omega^Y(w): the same
/// family built on the universal covering of Omega, with lambda_Y in the numerator.
inline double kobayashi_upper_bound(const DomainSpec& y, const DomainSpec& omega, CPoint w, int budget)
{
    if (budget < 1)
        fail(ErrorKind::InvalidArgument, "budget must be positive");
    if (!classify(y).is_hyperbolic || !classify(omega).is_hyperbolic)
        fail(ErrorKind::NotHyperbolic, "the generalized Kobayashi density needs hyperbolic domains");
    const DiskMap cover = universal_covering_for(omega, w);
    const DiskChart chart = *disk_chart(y);
    const CandidateFamily family = chart.onto ? CandidateFamily::MobiusThroughCovering : CandidateFamily::RestrictionFamily;
    detail::CandidateScan scan;
    for (const CPoint s : basepoint_grid(y, std::min(budget, kMaxGridLevel)))
        scan.offer(s, family, 0, [&](CPoint pt) {
            const CPoint u = chart.to_disk(pt);
            const MobiusMap t(u);
            const CPoint derivative = cover.derivative(mobius_eval(t, u)) * mobius_derivative(t, u) * chart.to_disk_derivative(pt);
            return hyperbolic_density(y, pt).value() / std::abs(derivative);
        });
    return scan.best;
}

struct BasepointComparison {
    BoundCertificate first;
    BoundCertificate second;
    bool ordering_checked;
    bool ordering_holds;
};

/// Certificates for two basepoint domains; when the first is simply connected the
/// first upper bound must not exceed the second by more than tol.
inline BasepointComparison basepoint_comparison(const DomainSpec& y1, const DomainSpec& y2, const DomainSpec& omega, CPoint w,
                                                double tol, int budget)
{
    BasepointComparison out{generalized_hurwitz_bounds(y1, omega, w, tol, budget),
                            generalized_hurwitz_bounds(y2, omega, w, tol, budget), false, true};
    if (classify(y1).is_simply_connected) {
        out.ordering_checked = true;
        out.ordering_holds = out.first.upper <= out.second.upper + tol;
    }
    return out;
}

} // namespace hurwitzkit
