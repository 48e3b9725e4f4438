#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurwitzkit {

enum class ErrorKind {
    InvalidArgument,
    OutsideDomain,
    NearBoundary,
    NotHyperbolic,
    NotProper,
    UnsupportedDomain,
    UnsupportedPair,
    UnsupportedMetric,
    UnsupportedDensity,
    NotNested,
    NotQuasiBounded,
    PointsTooCloseToBoundary,
    NonFiniteDensity,
    Inconsistent,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NearBoundary: return "NearBoundary";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorKind::UnsupportedPair: return "UnsupportedPair";
    case ErrorKind::UnsupportedMetric: return "UnsupportedMetric";
    case ErrorKind::UnsupportedDensity: return "UnsupportedDensity";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotQuasiBounded: return "NotQuasiBounded";
    case ErrorKind::PointsTooCloseToBoundary: return "PointsTooCloseToBoundary";
    case ErrorKind::NonFiniteDensity: return "NonFiniteDensity";
    case ErrorKind::Inconsistent: return "Inconsistent";
    }
    return "Unknown";
}

/// Every failure raised by the toolkit carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace hurwitzkit
