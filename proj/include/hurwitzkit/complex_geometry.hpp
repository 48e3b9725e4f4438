#pragma once

#include <hurwitzkit/error.hpp>

#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

namespace hurwitzkit {

using CPoint = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_finite(CPoint z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline std::string format_point(CPoint z)
{
    std::ostringstream os;
    os.precision(17);
    os << z.real() << ',' << z.imag();
    return os.str();
}

/// Disk automorphism z -> (z - s) / (1 - conj(s) z), normalized so that
/// T(s) = 0 and T'(s) > 0.
class MobiusMap {
public:
    explicit MobiusMap(CPoint s) : s_(s)
    {
        if (!is_finite(s) || std::abs(s) >= 1.0)
            fail(ErrorKind::InvalidArgument, "Mobius centre must lie in the open unit disk, got " + format_point(s));
    }

    CPoint center() const noexcept { return s_; }

    CPoint operator()(CPoint z) const
    {
        check(z);
        return (z - s_) / (1.0 - std::conj(s_) * z);
    }

    CPoint derivative(CPoint z) const
    {
        check(z);
        const CPoint den = 1.0 - std::conj(s_) * z;
        return (1.0 - std::norm(s_)) / (den * den);
    }

    /// Inverse map u -> (u + s) / (1 + conj(s) u).
    CPoint inverse(CPoint u) const
    {
        check(u);
        return (u + s_) / (1.0 + std::conj(s_) * u);
    }

private:
    static void check(CPoint z)
    {
        if (!is_finite(z) || std::abs(z) >= 1.0)
            fail(ErrorKind::OutsideDomain, "Mobius map evaluated outside the unit disk at " + format_point(z));
    }

    CPoint s_;
};

inline CPoint mobius_eval(const MobiusMap& t, CPoint z) { return t(z); }
inline CPoint mobius_derivative(const MobiusMap& t, CPoint z) { return t.derivative(z); }

/// Ordered vertex list with at least two entries and no repeated consecutive vertex.
class Polyline {
public:
    explicit Polyline(std::vector<CPoint> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.size() < 2)
            fail(ErrorKind::InvalidArgument, "a polyline needs at least two vertices");
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!is_finite(vertices_[i]))
                fail(ErrorKind::InvalidArgument, "polyline vertex is not finite");
            if (i > 0 && vertices_[i] == vertices_[i - 1])
                fail(ErrorKind::InvalidArgument, "consecutive polyline vertices coincide at " + format_point(vertices_[i]));
        }
    }

    std::span<const CPoint> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    std::size_t segment_count() const noexcept { return vertices_.size() - 1; }
    CPoint front() const noexcept { return vertices_.front(); }
    CPoint back() const noexcept { return vertices_.back(); }

    double euclidean_length() const noexcept
    {
        double total = 0.0;
        for (std::size_t i = 1; i < vertices_.size(); ++i)
            total += std::abs(vertices_[i] - vertices_[i - 1]);
        return total;
    }

    Polyline reversed() const { return Polyline(std::vector<CPoint>(vertices_.rbegin(), vertices_.rend())); }

private:
    std::vector<CPoint> vertices_;
};

namespace detail {

template <class Density>
double density_at(Density& rho, CPoint w)
{
    const double value = rho(w);
    if (!std::isfinite(value) || value < 0.0)
        fail(ErrorKind::NonFiniteDensity, "density is not finite and nonnegative at " + format_point(w));
    return value;
}

template <class Density>
double adaptive_simpson(Density& rho, CPoint a, CPoint dir, double t0, double t1, double f0, double fm, double f1,
                        double whole, double abs_tol, int depth)
{
    const double tm = 0.5 * (t0 + t1);
    const double fl = density_at(rho, a + dir * (0.5 * (t0 + tm)));
    const double fr = density_at(rho, a + dir * (0.5 * (tm + t1)));
    const double h = t1 - t0;
    const double left = h / 12.0 * (f0 + 4.0 * fl + fm);
    const double right = h / 12.0 * (fm + 4.0 * fr + f1);
    const double delta = left + right - whole;
    if (depth <= 0 || (depth < 47 && std::abs(delta) <= 15.0 * abs_tol))
        return left + right + delta / 15.0;
    return adaptive_simpson(rho, a, dir, t0, tm, f0, fl, fm, left, 0.5 * abs_tol, depth - 1) +
           adaptive_simpson(rho, a, dir, tm, t1, fm, fr, f1, right, 0.5 * abs_tol, depth - 1);
}

} // namespace detail

/// Integral of rho |dw| along the straight segment [a, b] by adaptive Simpson.
/// Refinement stops once successive estimates agree to `rel_tol` relative.
template <class Density>
double segment_length_under_density(CPoint a, CPoint b, Density&& rho, double rel_tol = 1e-10)
{
    const double len = std::abs(b - a);
    if (len == 0.0)
        return 0.0;
    const CPoint dir = b - a;
    // two initial panels so that symmetric profiles cannot fake convergence
    double total = 0.0;
    double estimate = 0.0;
    double f[5];
    for (int i = 0; i <= 4; ++i)
        f[i] = detail::density_at(rho, a + dir * (0.25 * i));
    for (int i = 0; i < 4; i += 2)
        estimate += 0.25 / 6.0 * 2.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    const double abs_tol = rel_tol * estimate + 1e-300;
    for (int i = 0; i < 4; i += 2) {
        const double t0 = 0.25 * i;
        const double t1 = t0 + 0.5;
        const double whole = (t1 - t0) / 6.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        total += detail::adaptive_simpson(rho, a, dir, t0, t1, f[i], f[i + 1], f[i + 2], whole, 0.5 * abs_tol, 48);
    }
    return total * len;
}

/// Density-weighted length of a polyline; additive over segments.
template <class Density>
double polyline_length_under_density(const Polyline& path, Density&& rho, double rel_tol = 1e-10)
{
    const auto v = path.vertices();
    double total = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i)
        total += segment_length_under_density(v[i - 1], v[i], rho, rel_tol);
    return total;
}

/// Non-adaptive composite Simpson with a fixed number of panels per segment.
template <class Density>
double composite_simpson_length(const Polyline& path, Density&& rho, int panels_per_segment)
{
    if (panels_per_segment < 1)
        fail(ErrorKind::InvalidArgument, "panels_per_segment must be positive");
    const auto v = path.vertices();
    double total = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const CPoint dir = v[i] - v[i - 1];
        const double h = 1.0 / panels_per_segment;
        double sum = 0.0;
        for (int k = 0; k < panels_per_segment; ++k) {
            const double t0 = k * h;
            sum += h / 6.0 *
                   (detail::density_at(rho, v[i - 1] + dir * t0) + 4.0 * detail::density_at(rho, v[i - 1] + dir * (t0 + 0.5 * h)) +
                    detail::density_at(rho, v[i - 1] + dir * (t0 + h)));
        }
        total += sum * std::abs(dir);
    }
    return total;
}

} // namespace hurwitzkit
