#include "test_support.hpp"

#include <hurwitzkit/contraction.hpp>

#include <cmath>

using namespace hurwitzkit;

TEST(Contraction, SameDomainIsExactlyOne)
{
    const auto r = contraction_report(DomainSpec::strip(), DomainSpec::strip(), 6, 4);
    EXPECT_EQ(r.l_interval.lower, 1.0);
    EXPECT_EQ(r.l_interval.upper, 1.0);
    EXPECT_EQ(r.gl_lower, 1.0);
}

TEST(Contraction, ConcentricDisks)
{
    // lambda_D / lambda_{D(0,1/2)} = (1/4 - r^2) / (1/2 (1 - r^2)), largest at r = 0 where it is 1/2
    const auto r = infinitesimal_constant(DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk(), 12);
    EXPECT_DOUBLE_EQ(r.l_interval.lower, 0.5);
    EXPECT_DOUBLE_EQ(r.l_interval.upper, 0.5);
    EXPECT_EQ(r.argmax, CPoint(0.0));
    EXPECT_EQ(r.classification, Lipschitz::Lipschitz);
}

TEST(Contraction, PuncturedDiskInDisk)
{
    const auto r = contraction_report(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), 12, 8);
    EXPECT_GE(r.l_interval.lower, 0.999);
    EXPECT_LE(r.l_interval.upper, 1.0 + 1e-9);
    EXPECT_LE(r.gl_lower, r.l_interval.upper);
    EXPECT_GT(r.gl_lower, 0.0);
    EXPECT_EQ(r.classification, Lipschitz::NonLipschitz);
    EXPECT_EQ(classify_lipschitz(DomainSpec::punctured_disk(), DomainSpec::unit_disk()), Lipschitz::NonLipschitz);
    EXPECT_EQ(classify_lipschitz(DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk()), Lipschitz::Lipschitz);
}

TEST(Contraction, MoreLevelsNeverLowerTheEstimate)
{
    double prev = 0.0;
    for (int k = 1; k <= 12; ++k) {
        const double l = infinitesimal_constant(DomainSpec::disk({2.0, 0.0}, 1.0), DomainSpec::half_plane(), k).l_interval.lower;
        EXPECT_GE(l, prev);
        prev = l;
    }
}

TEST(Contraction, BoundarySamples)
{
    const auto pts = boundary_samples(DomainSpec::unit_disk(), 3);
    ASSERT_FALSE(pts.empty());
    for (CPoint w : pts) {
        const double r = std::abs(w);
        EXPECT_TRUE(r == 0.0 || std::abs(r - 0.5) < 1e-15 || std::abs(r - 0.75) < 1e-15 || std::abs(r - 0.875) < 1e-15);
    }
    for (CPoint w : boundary_samples(DomainSpec::punctured_disk(), 6))
        EXPECT_TRUE(contains(DomainSpec::punctured_disk(), w));
}

TEST(Contraction, Errors)
{
    EXPECT_HK_ERROR(infinitesimal_constant(DomainSpec::unit_disk(), DomainSpec::punctured_disk(), 4), NotNested);
    EXPECT_HK_ERROR(infinitesimal_constant(DomainSpec::unit_disk(), DomainSpec::whole_plane(), 4), NotProper);
    EXPECT_HK_ERROR(theorem8_reduction(DomainSpec::cstar()), NotQuasiBounded);
}

TEST(Theorem8, ReductionMatchesTransport)
{
    for (const auto& y : {DomainSpec::punctured_disk(), DomainSpec::half_plane(), DomainSpec::strip()}) {
        const auto rep = theorem8_reduction(y, 10);
        EXPECT_LT(rep.max_ratio_gap, 1e-9) << to_string(y);
        EXPECT_GT(rep.samples, 0u);
    }
    for (const auto& hull : {DomainSpec::half_plane(), DomainSpec::strip()}) {
        const auto rep = theorem8_transported(hull, 10);
        EXPECT_LT(rep.max_ratio_gap, 1e-9) << to_string(hull);
        EXPECT_EQ(rep.classification, Lipschitz::NonLipschitz);
    }
}
