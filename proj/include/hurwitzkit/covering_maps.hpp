#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>

#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace hurwitzkit {

/// Truncation of the covering product after `n_terms` factors. `tail_bound`
/// bounds the modulus of the log of every omitted tail (value and complement).
struct ProductTruncation {
    int n_terms;
    double tail_bound;
};

/// Value and derivative of the covering g : D -> C \ {1}. The logs are finite
/// whenever the plain values over- or underflow (|w| close to 1), and
/// `log_one_minus_value` being finite certifies that the omitted value 1 is
/// not attained.
struct CoveringEval {
    CPoint value;
    CPoint derivative;
    ProductTruncation truncation;
    CPoint log_value;           // log g(w), -inf real part only at w = 0
    CPoint log_one_minus_value; // log(1 - g(w))
};

inline constexpr double kCoveringRadiusCap = 1.0 - 1e-6;

namespace detail {

// Bound on sum_{n>N} |log(1+w^(2n)) - log(1+w^(2n-1))| * 8, and on the
// complementary product, with r = |w| < 1.
inline double covering_value_tail(double r, int n)
{
    if (r == 0.0)
        return 0.0;
    // 8 sum_{n>N} (r^(2n-1) + r^(2n)) / (1 - r) = 8 r^(2N+1) / (1 - r)^2
    // complement: 16 sum_{n>N} r^(2n-1) / (1 - r) = 16 r^(2N+1) / ((1 - r)(1 - r^2))
    const double p = std::pow(r, 2.0 * n + 1.0);
    return std::max(8.0 * p / ((1.0 - r) * (1.0 - r)), 16.0 * p / ((1.0 - r) * (1.0 - r * r)));
}

// Bound on |w| * |sum_{n>N} d/dw of the log terms|.
inline double covering_derivative_tail(double r, int n)
{
    if (r == 0.0)
        return 0.0;
    const double m = 2.0 * n;
    const double rm = std::pow(r, m);
    return r * 8.0 / (1.0 - r) * rm * ((m + 1.0) / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
}

} // namespace detail

/// The covering product truncated after exactly n_terms factors; truncation.tail_bound
/// bounds the omitted part of log g and of w (log g)'.
inline CoveringEval hurwitz_covering_with_terms(CPoint w, int n_terms)
{
    if (n_terms < 1)
        fail(ErrorKind::InvalidArgument, "the covering product needs at least one factor");
    if (!is_finite(w) || std::abs(w) > kCoveringRadiusCap)
        fail(ErrorKind::OutsideDomain, "covering product evaluated at |w| > 1 - 1e-6: " + format_point(w));

    const double r = std::abs(w);
    CPoint log_sum = 0.0;   // sum of 8 [log(1 + w^(2n)) - log(1 + w^(2n-1))]
    CPoint dlog_sum = 0.0;  // its derivative
    CPoint log_comp = 0.0;  // sum of 8 [log(1 - w^(2n-1)) - log(1 + w^(2n-1))]
    CPoint odd_prev = 1.0;  // w^(2n-2)
    for (int n = 1; n <= n_terms; ++n) {
        const CPoint odd = odd_prev * w;  // w^(2n-1)
        const CPoint even = odd * w;      // w^(2n)
        log_sum += 8.0 * (std::log(1.0 + even) - std::log(1.0 + odd));
        dlog_sum += 8.0 * (2.0 * n * odd / (1.0 + even) - (2.0 * n - 1.0) * odd_prev / (1.0 + odd));
        log_comp += 8.0 * (std::log(1.0 - odd) - std::log(1.0 + odd));
        odd_prev = even;
    }

    const CPoint scale = 16.0 * std::exp(log_sum);
    CoveringEval out{};
    out.value = w * scale;
    out.derivative = scale * (1.0 + w * dlog_sum);
    out.truncation = {n_terms, std::max(detail::covering_value_tail(r, n_terms), detail::covering_derivative_tail(r, n_terms))};
    out.log_value = w == 0.0 ? CPoint(-std::numeric_limits<double>::infinity(), 0.0) : std::log(16.0) + std::log(w) + log_sum;
    out.log_one_minus_value = log_comp;
    if (!std::isfinite(out.log_one_minus_value.real()))
        fail(ErrorKind::Inconsistent, "covering product reached the omitted value 1");
    if (w != 0.0 && !std::isfinite(out.log_value.real()))
        fail(ErrorKind::Inconsistent, "covering product vanished away from the origin");
    return out;
}

/// Covering of C \ {1} by the unit disk,
///   g(w) = 16 w prod_{n>=1} ((1 + w^(2n)) / (1 + w^(2n-1)))^8,
/// summed in log space with the number of factors chosen so that the omitted
/// tail is below tol / 2.
inline CoveringEval hurwitz_covering_c_minus_1(CPoint w, double tol = 1e-14)
{
    if (!(tol > 0.0) || !std::isfinite(tol))
        fail(ErrorKind::InvalidArgument, "covering tolerance must be positive");
    if (!is_finite(w) || std::abs(w) > kCoveringRadiusCap)
        fail(ErrorKind::OutsideDomain, "covering product evaluated at |w| > 1 - 1e-6: " + format_point(w));

    const double r = std::abs(w);
    int n_terms = 1;
    while (detail::covering_value_tail(r, n_terms) >= 0.5 * tol || detail::covering_derivative_tail(r, n_terms) >= 0.5 * tol)
        ++n_terms;
    return hurwitz_covering_with_terms(w, n_terms);
}

/// Universal covering of the punctured disk by the upper half-plane, tau -> exp(i tau).
inline CPoint punctured_disk_covering(CPoint tau)
{
    if (!is_finite(tau) || !(tau.imag() > 0.0))
        fail(ErrorKind::OutsideDomain, "punctured-disk covering needs Im tau > 0, got " + format_point(tau));
    return std::exp(CPoint(0.0, 1.0) * tau);
}

/// Holomorphic map of the unit disk into a catalog domain together with its derivative.
class DiskMap {
public:
    using Fn = std::function<CPoint(CPoint)>;

    DiskMap(DomainSpec target, CPoint basepoint, Fn value, Fn derivative, double radius_cap, std::string family)
        : target_(std::move(target)), basepoint_(basepoint), value_(std::move(value)), derivative_(std::move(derivative)),
          radius_cap_(radius_cap), family_(std::move(family))
    {
    }

    CPoint operator()(CPoint z) const
    {
        check(z);
        return z == 0.0 ? basepoint_ : value_(z);
    }
    CPoint derivative(CPoint z) const
    {
        check(z);
        return derivative_(z);
    }
    CPoint basepoint() const noexcept { return basepoint_; }
    const DomainSpec& target() const noexcept { return target_; }
    double radius_cap() const noexcept { return radius_cap_; }
    const std::string& family() const noexcept { return family_; }

private:
    void check(CPoint z) const
    {
        if (!is_finite(z) || std::abs(z) >= 1.0 || std::abs(z) > radius_cap_)
            fail(ErrorKind::OutsideDomain, "disk map evaluated outside its disk at " + format_point(z));
    }

    DomainSpec target_;
    CPoint basepoint_;
    Fn value_;
    Fn derivative_;
    double radius_cap_;
    std::string family_;
};

namespace detail {

// Riemann maps of the simply connected catalog kinds, normalized to send 0 to b
// with positive derivative. Each is written as b + (term vanishing at 0).
inline std::optional<DiskMap> riemann_map_from_disk(const DomainSpec& d, CPoint b)
{
    const CPoint i(0.0, 1.0);
    switch (d.kind()) {
    case DomainKind::Disk: {
        const auto k = *d.get_if<Disk>();
        const CPoint c = (b - k.center) / k.radius;
        const double scale = k.radius * (1.0 - std::norm(c));
        return DiskMap(
            d, b, [=](CPoint z) { return b + scale * z / (1.0 + std::conj(c) * z); },
            [=](CPoint z) {
                const CPoint den = 1.0 + std::conj(c) * z;
                return scale / (den * den);
            },
            1.0, "RiemannMap");
    }
    case DomainKind::HalfPlane: {
        const double x = b.real();
        return DiskMap(
            d, b, [=](CPoint z) { return b + 2.0 * x * z / (1.0 - z); },
            [=](CPoint z) { return 2.0 * x / ((1.0 - z) * (1.0 - z)); }, 1.0, "RiemannMap");
    }
    case DomainKind::Strip: {
        // S0(u) = log((1+u)/(1-u)) covers |Im| < pi/2; c is the preimage of b
        const CPoint c = i * std::tan(0.5 * (b.imag() - 0.5 * kPi));
        const MobiusMap to_c(-c);  // u -> (u + c) / (1 + conj(c) u)
        auto log_ratio = [](CPoint u) { return std::log((1.0 + u) / (1.0 - u)); };
        const CPoint base = log_ratio(c);
        return DiskMap(
            d, b, [=](CPoint z) { return b + (log_ratio(to_c(z)) - base); },
            [=](CPoint z) {
                const CPoint u = to_c(z);
                return 2.0 / (1.0 - u * u) * to_c.derivative(z);
            },
            1.0, "RiemannMap");
    }
    default: return std::nullopt;
    }
}

} // namespace detail

/// Hurwitz covering G_b : D -> d with G_b(0) = b, G_b'(0) > 0 and G_b(t) != b for t != 0.
/// Simply connected kinds use the Riemann map; C \ {b0} uses
///   G(z) = b + (b0 - b) g(e^{i phi} z)
/// with g the product covering of C \ {1} and e^{i phi} rotating G'(0) onto the positive axis.
inline DiskMap hurwitz_covering_for(const DomainSpec& d, CPoint b, double tol = 1e-14)
{
    if (!classify(d).is_proper)
        fail(ErrorKind::UnsupportedDomain, "no Hurwitz covering of the whole plane");
    if (!contains(d, b))
        fail(ErrorKind::OutsideDomain, "basepoint " + format_point(b) + " is not in " + to_string(d));
    if (auto m = detail::riemann_map_from_disk(d, b))
        return *m;
    if (const auto* p = d.get_if<PlaneMinusPoint>()) {
        const CPoint gap = p->point - b;
        const CPoint rot = std::conj(gap) / std::abs(gap);
        return DiskMap(
            d, b, [=](CPoint z) { return b + gap * hurwitz_covering_c_minus_1(rot * z, tol).value; },
            [=](CPoint z) { return gap * rot * hurwitz_covering_c_minus_1(rot * z, tol).derivative; }, kCoveringRadiusCap,
            "ProductCovering");
    }
    fail(ErrorKind::UnsupportedDomain, "no closed-form Hurwitz covering for " + to_string(d));
}

/// Universal covering P : D -> d with P(0) = b and P'(0) > 0, for hyperbolic catalog kinds.
inline DiskMap universal_covering_for(const DomainSpec& d, CPoint b)
{
    if (!classify(d).is_hyperbolic)
        fail(ErrorKind::NotHyperbolic, to_string(d) + " has no universal covering by the disk");
    if (!contains(d, b))
        fail(ErrorKind::OutsideDomain, "basepoint " + format_point(b) + " is not in " + to_string(d));
    if (auto m = detail::riemann_map_from_disk(d, b))
        return *m;
    // punctured disk: z -> exp(i tau(z)), tau(z) = arg b + i c (1 + z)/(1 - z), c = log(1/|b|),
    // precomposed with a rotation that makes P'(0) positive
    const double c = -std::log(std::abs(b));
    const double alpha = std::arg(b);
    const CPoint rot = -std::conj(b) / std::abs(b);
    const CPoint i(0.0, 1.0);
    auto tau = [=](CPoint z) { return alpha + i * c * (1.0 + z) / (1.0 - z); };
    return DiskMap(
        d, b, [=](CPoint z) { return punctured_disk_covering(tau(rot * z)); },
        [=](CPoint z) {
            const CPoint u = rot * z;
            return -2.0 * c * punctured_disk_covering(tau(u)) / ((1.0 - u) * (1.0 - u)) * rot;
        },
        1.0, "UniversalCovering");
}

/// Injective holomorphic map of a catalog domain into the unit disk: the
/// Riemann map for simply connected proper kinds, the inclusion for D*.
struct DiskChart {
    std::function<CPoint(CPoint)> to_disk;
    std::function<CPoint(CPoint)> to_disk_derivative;
    std::function<CPoint(CPoint)> from_disk;
    bool onto;
    std::string name;
};

inline std::optional<DiskChart> disk_chart(const DomainSpec& d)
{
    const CPoint i(0.0, 1.0);
    switch (d.kind()) {
    case DomainKind::Disk: {
        const auto k = *d.get_if<Disk>();
        return DiskChart{[=](CPoint z) { return (z - k.center) / k.radius; }, [=](CPoint) { return CPoint(1.0 / k.radius); },
                         [=](CPoint u) { return k.center + k.radius * u; }, true, "affine"};
    }
    case DomainKind::HalfPlane:
        return DiskChart{[](CPoint z) { return (z - 1.0) / (z + 1.0); }, [](CPoint z) { return 2.0 / ((z + 1.0) * (z + 1.0)); },
                         [](CPoint u) { return (1.0 + u) / (1.0 - u); }, true, "cayley"};
    case DomainKind::Strip:
        return DiskChart{[=](CPoint z) { return std::tanh(0.5 * (z - 0.5 * kPi * i)); },
                         [=](CPoint z) {
                             const CPoint u = std::tanh(0.5 * (z - 0.5 * kPi * i));
                             return 0.5 * (1.0 - u * u);
                         },
                         [=](CPoint u) { return 0.5 * kPi * i + std::log((1.0 + u) / (1.0 - u)); }, true, "exponential-mobius"};
    case DomainKind::PuncturedDisk:
        return DiskChart{[](CPoint z) { return z; }, [](CPoint) { return CPoint(1.0); }, [](CPoint u) { return u; }, false,
                         "inclusion"};
    default: return std::nullopt;
    }
}

} // namespace hurwitzkit
