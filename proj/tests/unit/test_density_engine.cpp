#include "test_support.hpp"

#include <hurwitzkit/density_engine.hpp>

#include <cmath>
#include <random>

using namespace hurwitzkit;

TEST(Density, CStarClosedForm)
{
    const auto d = DomainSpec::cstar();
    EXPECT_EQ(hurwitz_density(d, 1.0).value(), 0.125);
    EXPECT_EQ(hurwitz_density(d, 2.0).value(), 0.0625);
    EXPECT_EQ(hurwitz_density(d, CPoint(0.0, 1.0)).value(), 0.125);
    EXPECT_EQ(hurwitz_density(d, 1.0).provenance, Provenance::ClosedForm);
    EXPECT_DOUBLE_EQ(hurwitz_density(DomainSpec::plane_minus_point({1.0, 1.0}), {4.0, 5.0}).value(), 1.0 / 40.0);
}

TEST(Density, HyperbolicClosedForms)
{
    // curvature -1: lambda_D(0) = 2
    EXPECT_DOUBLE_EQ(hyperbolic_density(DomainSpec::unit_disk(), 0.0).value(), 2.0);
    EXPECT_DOUBLE_EQ(hyperbolic_density(DomainSpec::unit_disk(), 0.5).value(), 2.0 / 0.75);
    EXPECT_DOUBLE_EQ(hyperbolic_density(DomainSpec::disk({1.0, 0.0}, 2.0), {2.0, 0.0}).value(), 2.0 * 2.0 / (4.0 - 1.0));
    EXPECT_DOUBLE_EQ(hyperbolic_density(DomainSpec::half_plane(), {0.25, 9.0}).value(), 4.0);
    EXPECT_DOUBLE_EQ(hyperbolic_density(DomainSpec::strip(), {5.0, kPi / 2.0}).value(), 1.0);
    EXPECT_DOUBLE_EQ(hyperbolic_density(DomainSpec::punctured_disk(), 0.5).value(), 1.0 / (0.5 * std::log(2.0)));
}

TEST(Density, SimplyConnectedHurwitzEqualsHyperbolic)
{
    for (const auto& d : {DomainSpec::unit_disk(), DomainSpec::half_plane(), DomainSpec::strip()})
        for (CPoint w : {CPoint(0.3, 0.2), CPoint(0.9, 1.0)}) {
            if (contains(d, w)) {
                EXPECT_EQ(hurwitz_density(d, w).value(), hyperbolic_density(d, w).value());
            }
        }
}

TEST(Density, PuncturedDiskInterval)
{
    const double r = 0.5;
    const DensityValue v = hurwitz_density(DomainSpec::punctured_disk(), r);
    EXPECT_EQ(v.provenance, Provenance::Interval);
    EXPECT_DOUBLE_EQ(v.lower, 1.0 / (r * std::log(1.0 / r)));
    EXPECT_DOUBLE_EQ(v.upper, (1.0 + r) / (2.0 * r * (1.0 - r)));
    EXPECT_HK_ERROR(v.value(), UnsupportedDensity);
}

TEST(Density, HahnSandwichAndPrintedNormalization)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> rad(1e-6, 1.0 - 1e-6);
    for (int i = 0; i < 10000; ++i) {
        const double r = rad(rng);
        const double lambda = 1.0 / (r * std::log(1.0 / r));
        EXPECT_GE(hahn_density_punctured_disk(r).value(), lambda);
    }
    // the printed formula is half of the rescaled one and drops below lambda at |w| = 0.5
    const double printed = hahn_density_punctured_disk(0.5, HahnNormalization::PaperPrinted).value();
    EXPECT_DOUBLE_EQ(printed, 1.5);
    EXPECT_LT(printed, hyperbolic_density(DomainSpec::punctured_disk(), 0.5).value());
}

TEST(Density, EtaDominatesLambda)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const CPoint w = std::polar(0.999 * std::sqrt(u(rng)) + 1e-6, 2.0 * kPi * u(rng));
        EXPECT_GE(hurwitz_density(DomainSpec::punctured_disk(), w).lower, hyperbolic_density(DomainSpec::punctured_disk(), w).value());
        EXPECT_LE(hurwitz_density(DomainSpec::unit_disk(), w).value(), hurwitz_density(DomainSpec::punctured_disk(), w).lower);
    }
}

TEST(Density, RecomputedFromCovering)
{
    for (const auto& [d, w] : {std::pair{DomainSpec::cstar(), CPoint(0.3, -2.0)}, std::pair{DomainSpec::strip(), CPoint(1.0, 0.4)},
                               std::pair{DomainSpec::disk({0.0, 1.0}, 0.5), CPoint(0.1, 1.2)}}) {
        const double direct = hurwitz_density(d, w).value();
        EXPECT_NEAR(hurwitz_density_via_covering(d, w).value(), direct, 1e-12 * direct) << to_string(d);
    }
}

TEST(Density, RadiusIsTwoOverEta)
{
    EXPECT_DOUBLE_EQ(hurwitz_radius(DomainSpec::cstar(), 2.0).value(), 32.0);
    const DensityValue r = hurwitz_radius(DomainSpec::punctured_disk(), 0.5);
    EXPECT_LE(r.lower, r.upper);
}

TEST(Density, Quasihyperbolic)
{
    EXPECT_DOUBLE_EQ(quasihyperbolic_density(DomainSpec::half_plane(), {0.5, 2.0}).value(), 2.0);
    EXPECT_DOUBLE_EQ(quasihyperbolic_density(DomainSpec::cstar(), {3.0, 4.0}).value(), 0.2);
}

TEST(Density, Errors)
{
    EXPECT_HK_ERROR(hurwitz_density(DomainSpec::whole_plane(), 1.0), NotProper);
    EXPECT_HK_ERROR(hyperbolic_density(DomainSpec::cstar(), 1.0), NotHyperbolic);
    EXPECT_HK_ERROR(hurwitz_density(DomainSpec::unit_disk(), 2.0), OutsideDomain);
    EXPECT_HK_ERROR(hurwitz_density(DomainSpec::half_plane(), {1e-12, 0.0}), NearBoundary);
    EXPECT_HK_ERROR(hurwitz_density(DomainSpec::cstar(), 0.0), OutsideDomain);
    EXPECT_HK_ERROR(quasihyperbolic_density(DomainSpec::whole_plane(), 0.0), NotProper);
}
