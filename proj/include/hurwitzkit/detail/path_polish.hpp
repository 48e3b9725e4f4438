#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/domain_catalog.hpp>
#include <hurwitzkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hurwitzkit::detail {

/// Shortens a polyline with fixed endpoints under a density by moving interior
/// vertices along the normal of their neighbour chord.
template <class Density>
class PathPolisher {
public:
    static constexpr std::size_t kMaxVertices = 1u << 14;

    PathPolisher(const DomainSpec& d, Density& rho, std::vector<CPoint> v) : d_(d), rho_(rho), v_(std::move(v)) {}

    const std::vector<CPoint>& vertices() const noexcept { return v_; }
    void assign(std::vector<CPoint> v) { v_ = std::move(v); }

    /// Split every segment longer than max_len or than its own clearance.
    void subdivide(double max_len)
    {
        std::vector<CPoint> out{v_.front()};
        out.reserve(v_.size() * 2);
        for (std::size_t i = 1; i < v_.size(); ++i)
            split(v_[i - 1], v_[i], max_len, out, 0);
        v_ = std::move(out);
    }

    /// Gauss-Seidel sweeps until one sweep gains less than rel_gain of the objective.
    void polish(double rel_gain, int max_sweeps)
    {
        double total = objective();
        for (int sweep = 0; sweep < max_sweeps && std::isfinite(total); ++sweep) {
            for (std::size_t i = 1; i + 1 < v_.size(); ++i)
                move_vertex(i);
            const double next = objective();
            const bool done = total - next <= rel_gain * next;
            total = next;
            if (done)
                break;
        }
    }

    double objective() const
    {
        double total = 0.0;
        for (std::size_t i = 1; i < v_.size(); ++i)
            total += segment(v_[i - 1], v_[i]);
        return total;
    }

private:
    void split(CPoint a, CPoint b, double max_len, std::vector<CPoint>& out, int depth)
    {
        const double len = std::abs(b - a);
        const bool too_long = len > max_len || len > segment_clearance(d_, a, b);
        if (too_long && depth < 40 && out.size() < kMaxVertices && len > 0.0) {
            const CPoint m = 0.5 * (a + b);
            if (m != a && m != b && contains(d_, m)) {
                split(a, m, max_len, out, depth + 1);
                split(m, b, max_len, out, depth + 1);
                return;
            }
        }
        out.push_back(b);
    }

    // two-panel Simpson; +inf when the density is unavailable
    double segment(CPoint a, CPoint b) const
    {
        const CPoint d = b - a;
        try {
            const double f = density_at(rho_, a) + 4.0 * density_at(rho_, a + 0.25 * d) + 2.0 * density_at(rho_, a + 0.5 * d) +
                             4.0 * density_at(rho_, a + 0.75 * d) + density_at(rho_, b);
            return std::abs(d) / 12.0 * f;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    }

    bool admissible(CPoint a, CPoint b) const
    {
        const double len = std::abs(b - a);
        return len > 0.0 && segment_clearance(d_, a, b) >= 0.5 * len;
    }

    double local(std::size_t i, CPoint p) const
    {
        if (!contains(d_, p) || !admissible(v_[i - 1], p) || !admissible(p, v_[i + 1]))
            return std::numeric_limits<double>::infinity();
        return segment(v_[i - 1], p) + segment(p, v_[i + 1]);
    }

    void move_vertex(std::size_t i)
    {
        const CPoint chord = v_[i + 1] - v_[i - 1];
        const double chord_len = std::abs(chord);
        if (chord_len == 0.0)
            return;
        const CPoint normal = CPoint(0.0, 1.0) * chord / chord_len;
        const double span = std::min(std::abs(v_[i] - v_[i - 1]), std::abs(v_[i + 1] - v_[i]));
        const double delta = 1e-3 * span;
        const CPoint p = v_[i];
        const double f0 = local(i, p);
        const double fp = local(i, p + delta * normal);
        const double fm = local(i, p - delta * normal);
        if (!std::isfinite(f0) || !std::isfinite(fp) || !std::isfinite(fm))
            return;
        const double grad = (fp - fm) / (2.0 * delta);
        const double curv = (fp - 2.0 * f0 + fm) / (delta * delta);
        const double cap = 0.25 * span;
        double step = curv > 0.0 ? -grad / curv : (grad > 0.0 ? -cap : cap);
        step = std::clamp(step, -cap, cap);
        for (int tries = 0; tries < 8; ++tries, step *= 0.5) {
            const CPoint q = p + step * normal;
            if (local(i, q) < f0) {
                v_[i] = q;
                return;
            }
        }
    }

    const DomainSpec& d_;
    Density& rho_;
    std::vector<CPoint> v_;
};

} // namespace hurwitzkit::detail
