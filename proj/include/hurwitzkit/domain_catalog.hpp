#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/error.hpp>

#include <algorithm>
#include <charconv>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hurwitzkit {

// Catalog kinds. HalfPlane is {Re w > 0}, Strip is {0 < Im w < pi}, PuncturedDisk is D \ {0}.
struct WholePlane {
    bool operator==(const WholePlane&) const = default;
};
struct PlaneMinusPoint {
    CPoint point;
    bool operator==(const PlaneMinusPoint&) const = default;
};
struct Disk {
    CPoint center;
    double radius;
    bool operator==(const Disk&) const = default;
};
struct HalfPlane {
    bool operator==(const HalfPlane&) const = default;
};
struct Strip {
    bool operator==(const Strip&) const = default;
};
struct PuncturedDisk {
    bool operator==(const PuncturedDisk&) const = default;
};

enum class DomainKind { WholePlane, PlaneMinusPoint, Disk, HalfPlane, Strip, PuncturedDisk };

class DomainSpec {
public:
    using Variant = std::variant<WholePlane, PlaneMinusPoint, Disk, HalfPlane, Strip, PuncturedDisk>;

    static DomainSpec whole_plane() { return DomainSpec(WholePlane{}); }
    static DomainSpec plane_minus_point(CPoint b)
    {
        if (!is_finite(b))
            fail(ErrorKind::InvalidArgument, "excluded point must be finite");
        return DomainSpec(PlaneMinusPoint{b});
    }
    static DomainSpec cstar() { return plane_minus_point(0.0); }
    static DomainSpec disk(CPoint center, double radius)
    {
        if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0))
            fail(ErrorKind::InvalidArgument, "disk needs a finite centre and a positive radius");
        return DomainSpec(Disk{center, radius});
    }
    static DomainSpec unit_disk() { return disk(0.0, 1.0); }
    static DomainSpec half_plane() { return DomainSpec(HalfPlane{}); }
    static DomainSpec strip() { return DomainSpec(Strip{}); }
    static DomainSpec punctured_disk() { return DomainSpec(PuncturedDisk{}); }

    DomainKind kind() const noexcept { return static_cast<DomainKind>(v_.index()); }
    const Variant& variant() const noexcept { return v_; }

    template <class Visitor>
    decltype(auto) visit(Visitor&& vis) const
    {
        return std::visit(std::forward<Visitor>(vis), v_);
    }

    template <class T>
    const T* get_if() const noexcept
    {
        return std::get_if<T>(&v_);
    }

    bool operator==(const DomainSpec&) const = default;

private:
    explicit DomainSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct DomainClass {
    bool is_proper;
    bool is_hyperbolic;
    bool is_simply_connected;
    bool operator==(const DomainClass&) const = default;
};

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double distance_to_segment(CPoint p, CPoint a, CPoint b) noexcept
{
    const CPoint d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}
} // namespace detail

inline bool contains(const DomainSpec& d, CPoint w)
{
    if (!is_finite(w))
        return false;
    return d.visit(detail::overloaded{
        [](const WholePlane&) { return true; },
        [&](const PlaneMinusPoint& p) { return w != p.point; },
        [&](const Disk& k) { return std::abs(w - k.center) < k.radius; },
        [&](const HalfPlane&) { return w.real() > 0.0; },
        [&](const Strip&) { return w.imag() > 0.0 && w.imag() < kPi; },
        [&](const PuncturedDisk&) { return w != 0.0 && std::abs(w) < 1.0; },
    });
}

/// Euclidean distance from w to the complement of d (+inf for the plane).
inline double boundary_distance(const DomainSpec& d, CPoint w)
{
    if (!contains(d, w))
        fail(ErrorKind::OutsideDomain, "point " + format_point(w) + " is not in the domain");
    return d.visit(detail::overloaded{
        [](const WholePlane&) { return std::numeric_limits<double>::infinity(); },
        [&](const PlaneMinusPoint& p) { return std::abs(w - p.point); },
        [&](const Disk& k) { return k.radius - std::abs(w - k.center); },
        [&](const HalfPlane&) { return w.real(); },
        [&](const Strip&) { return std::min(w.imag(), kPi - w.imag()); },
        [&](const PuncturedDisk&) { return std::min(std::abs(w), 1.0 - std::abs(w)); },
    });
}

/// Smallest distance from the closed segment [a, b] to the complement of d;
/// zero when the segment leaves the domain.
inline double segment_clearance(const DomainSpec& d, CPoint a, CPoint b)
{
    if (!contains(d, a) || !contains(d, b))
        return 0.0;
    // the convex part of every catalog domain has a concave boundary distance,
    // so its minimum along a segment sits at an endpoint
    return d.visit(detail::overloaded{
        [](const WholePlane&) { return std::numeric_limits<double>::infinity(); },
        [&](const PlaneMinusPoint& p) { return detail::distance_to_segment(p.point, a, b); },
        [&](const Disk&) { return std::min(boundary_distance(d, a), boundary_distance(d, b)); },
        [&](const HalfPlane&) { return std::min(a.real(), b.real()); },
        [&](const Strip&) { return std::min(boundary_distance(d, a), boundary_distance(d, b)); },
        [&](const PuncturedDisk&) {
            const double rim = std::min(1.0 - std::abs(a), 1.0 - std::abs(b));
            return std::min(rim, detail::distance_to_segment(0.0, a, b));
        },
    });
}

inline DomainClass classify(const DomainSpec& d)
{
    return d.visit(detail::overloaded{
        [](const WholePlane&) { return DomainClass{false, false, true}; },
        [](const PlaneMinusPoint&) { return DomainClass{true, false, false}; },
        [](const Disk&) { return DomainClass{true, true, true}; },
        [](const HalfPlane&) { return DomainClass{true, true, true}; },
        [](const Strip&) { return DomainClass{true, true, true}; },
        [](const PuncturedDisk&) { return DomainClass{true, true, false}; },
    });
}

inline DomainSpec simply_connected_hull(const DomainSpec& d)
{
    switch (d.kind()) {
    case DomainKind::PuncturedDisk: return DomainSpec::unit_disk();
    case DomainKind::PlaneMinusPoint: return DomainSpec::whole_plane();
    default: return d;
    }
}

inline bool is_quasi_bounded(const DomainSpec& d) { return simply_connected_hull(d).kind() != DomainKind::WholePlane; }

/// Catalog-checkable inclusion inner ⊆ outer.
inline bool is_nested(const DomainSpec& inner, const DomainSpec& outer)
{
    if (inner == outer || outer.kind() == DomainKind::WholePlane)
        return true;
    const auto* op = outer.get_if<PlaneMinusPoint>();
    const auto* od = outer.get_if<Disk>();
    return inner.visit(detail::overloaded{
        [](const WholePlane&) { return false; },
        [&](const PlaneMinusPoint&) { return false; },
        [&](const Disk& k) {
            const double a = std::abs(k.center);
            switch (outer.kind()) {
            case DomainKind::Disk: return std::abs(k.center - od->center) + k.radius <= od->radius;
            case DomainKind::HalfPlane: return k.center.real() - k.radius >= 0.0;
            case DomainKind::Strip: return k.center.imag() - k.radius >= 0.0 && k.center.imag() + k.radius <= kPi;
            case DomainKind::PuncturedDisk: return a >= k.radius && a + k.radius <= 1.0;
            case DomainKind::PlaneMinusPoint: return std::abs(k.center - op->point) >= k.radius;
            default: return false;
            }
        },
        [&](const HalfPlane&) { return op && op->point.real() <= 0.0; },
        [&](const Strip&) { return op && (op->point.imag() <= 0.0 || op->point.imag() >= kPi); },
        [&](const PuncturedDisk&) {
            if (od)
                return std::abs(od->center) + 1.0 <= od->radius;
            return op && op->point == 0.0;
        },
    });
}

namespace detail {

inline std::vector<double> parse_numbers(std::string_view text, std::string_view what)
{
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        double value = 0.0;
        const auto* first = item.data();
        const auto* last = item.data() + item.size();
        if (!item.empty() && *first == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value))
            fail(ErrorKind::InvalidArgument, "cannot parse number '" + std::string(item) + "' in " + std::string(what));
        out.push_back(value);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
        if (text.empty())
            fail(ErrorKind::InvalidArgument, "trailing comma in " + std::string(what));
    }
    return out;
}

} // namespace detail

/// Parse "re,im".
inline CPoint parse_point(std::string_view text)
{
    const auto v = detail::parse_numbers(text, "point '" + std::string(text) + "'");
    if (v.size() != 2)
        fail(ErrorKind::InvalidArgument, "a point is written re,im; got '" + std::string(text) + "'");
    return {v[0], v[1]};
}

/// Parse the domain mini-language:
/// disk:<cx>,<cy>,<r> | halfplane | strip | punctured-disk | cstar | plane-minus:<bx>,<by> | plane
inline DomainSpec parse_domain(std::string_view text)
{
    if (text == "plane")
        return DomainSpec::whole_plane();
    if (text == "halfplane")
        return DomainSpec::half_plane();
    if (text == "strip")
        return DomainSpec::strip();
    if (text == "punctured-disk")
        return DomainSpec::punctured_disk();
    if (text == "cstar")
        return DomainSpec::cstar();
    if (text.starts_with("disk:")) {
        const auto v = detail::parse_numbers(text.substr(5), "disk");
        if (v.size() != 3)
            fail(ErrorKind::InvalidArgument, "disk is written disk:<cx>,<cy>,<r>");
        return DomainSpec::disk({v[0], v[1]}, v[2]);
    }
    if (text.starts_with("plane-minus:"))
        return DomainSpec::plane_minus_point(parse_point(text.substr(12)));
    fail(ErrorKind::InvalidArgument, "unknown domain '" + std::string(text) + "'");
}

inline std::string to_string(const DomainSpec& d)
{
    auto num = [](double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    };
    return d.visit(detail::overloaded{
        [](const WholePlane&) { return std::string("plane"); },
        [&](const PlaneMinusPoint& p) {
            return p.point == 0.0 ? std::string("cstar") : "plane-minus:" + num(p.point.real()) + "," + num(p.point.imag());
        },
        [&](const Disk& k) { return "disk:" + num(k.center.real()) + "," + num(k.center.imag()) + "," + num(k.radius); },
        [](const HalfPlane&) { return std::string("halfplane"); },
        [](const Strip&) { return std::string("strip"); },
        [](const PuncturedDisk&) { return std::string("punctured-disk"); },
    });
}

} // namespace hurwitzkit
