#include "test_support.hpp"

#include <hurwitzkit/complex_geometry.hpp>

#include <cmath>
#include <random>

using namespace hurwitzkit;

TEST(Mobius, SendsCentreToZeroAndCircleToCircle)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
        const CPoint s = std::polar(0.95 * std::abs(std::sin(u(rng))), u(rng));
        const MobiusMap t(s);
        EXPECT_EQ(t(s), CPoint(0.0));
        const CPoint z = std::polar(1.0 - 1e-9, u(rng));
        EXPECT_NEAR(std::abs(t(z)), std::abs(z - s) / std::abs(1.0 - std::conj(s) * z), 1e-12);
        EXPECT_LT(std::abs(t(z)), 1.0);
    }
}

TEST(Mobius, InverseRoundTrip)
{
    const MobiusMap t({0.3, -0.6});
    for (CPoint z : {CPoint(0.1, 0.2), CPoint(-0.7, 0.1), CPoint(0.0, 0.0)})
        EXPECT_NEAR(std::abs(t.inverse(t(z)) - z), 0.0, 1e-14);
}

TEST(Mobius, DerivativeMatchesFiniteDifference)
{
    const MobiusMap t({-0.4, 0.5});
    const CPoint z(0.2, -0.3);
    const double h = 1e-6;
    const CPoint fd = (t(z + h) - t(z - h)) / (2.0 * h);
    EXPECT_NEAR(std::abs(t.derivative(z) - fd), 0.0, 1e-8);
    // at the centre: 1 / (1 - |s|^2)
    EXPECT_DOUBLE_EQ(t.derivative(t.center()).real(), 1.0 / (1.0 - 0.41));
}

TEST(Mobius, PreservesHyperbolicDistance)
{
    // d(z1, z2) = 2 atanh |(z1 - z2) / (1 - conj(z1) z2)|
    auto dist = [](CPoint a, CPoint b) { return 2.0 * std::atanh(std::abs((a - b) / (1.0 - std::conj(a) * b))); };
    const MobiusMap t({0.5, 0.1});
    const CPoint a(0.2, 0.4), b(-0.6, -0.1);
    EXPECT_NEAR(dist(t(a), t(b)), dist(a, b), 1e-12);
}

TEST(Mobius, RejectsCentreOutsideDisk)
{
    EXPECT_HK_ERROR(MobiusMap(CPoint(1.0, 0.0)), InvalidArgument);
    EXPECT_HK_ERROR(MobiusMap(0.5)(CPoint(2.0, 0.0)), OutsideDomain);
    EXPECT_HK_ERROR(MobiusMap(CPoint(NAN, 0.0)), InvalidArgument);
}

TEST(Polyline, LengthAndReverse)
{
    const Polyline p({0.0, CPoint(3.0, 0.0), CPoint(3.0, 4.0)});
    EXPECT_DOUBLE_EQ(p.euclidean_length(), 7.0);
    EXPECT_EQ(p.segment_count(), 2u);
    EXPECT_EQ(p.reversed().front(), CPoint(3.0, 4.0));
    EXPECT_HK_ERROR(Polyline({CPoint(1.0)}), InvalidArgument);
}

TEST(Quadrature, HyperbolicRadiusClosedForm)
{
    auto rho = [](CPoint w) { return 2.0 / (1.0 - std::norm(w)); };
    EXPECT_NEAR(segment_length_under_density(0.0, 0.8, rho), 2.0 * std::atanh(0.8), 1e-9);
    EXPECT_NEAR(polyline_length_under_density(Polyline({0.0, 0.4, 0.8}), rho), 2.0 * std::atanh(0.8), 1e-9);
}

TEST(Quadrature, CompositeSimpsonIsFourthOrder)
{
    auto rho = [](CPoint w) { return std::exp(w.real()); };
    const double exact = std::exp(1.0) - 1.0;
    const double e1 = std::abs(composite_simpson_length(Polyline({0.0, 1.0}), rho, 8) - exact);
    const double e2 = std::abs(composite_simpson_length(Polyline({0.0, 1.0}), rho, 16) - exact);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.1);
}

TEST(Quadrature, NonFiniteDensityIsReported)
{
    auto rho = [](CPoint w) { return w.real() > 0.5 ? NAN : 1.0; };
    EXPECT_HK_ERROR(segment_length_under_density(0.0, 1.0, rho), NonFiniteDensity);
}
