#include "test_support.hpp"

#include <hurwitzkit/geodesic_solver.hpp>

#include <cmath>
#include <sstream>

using namespace hurwitzkit;

namespace {

double rel(double got, double want) { return std::abs(got / want - 1.0); }

// closed-form hyperbolic distances, curvature -1
double disk_distance(CPoint a, CPoint b) { return 2.0 * std::atanh(std::abs((a - b) / (1.0 - std::conj(a) * b))); }
double upper_half_plane_distance(CPoint a, CPoint b) { return std::acosh(1.0 + std::norm(a - b) / (2.0 * a.imag() * b.imag())); }
// Re > 0 is the upper half plane turned by -pi/2; the strip maps onto the upper half plane by exp
double half_plane_distance(CPoint a, CPoint b) { return upper_half_plane_distance(CPoint(0, 1) * a, CPoint(0, 1) * b); }
double strip_distance(CPoint a, CPoint b) { return upper_half_plane_distance(std::exp(a), std::exp(b)); }

} // namespace

TEST(Solver, DiskRadialOracle)
{
    const DistanceReport r = distance(DomainSpec::unit_disk(), Metric::Hyperbolic, 0.0, 0.5, 1e-3);
    EXPECT_LT(rel(r.lower.distance, std::log(3.0)), 0.01);
    EXPECT_LE(r.lower.refinement_trace.size(), 6u);
    EXPECT_FALSE(r.is_interval());
}

TEST(Solver, CStarLogPolarOracles)
{
    const auto d = DomainSpec::cstar();
    const double radial = distance(d, Metric::Hurwitz, 1.0, std::exp(1.0), 1e-3).lower.distance;
    EXPECT_LT(rel(radial, 0.125), 0.01);
    const GeodesicResult half_turn = distance(d, Metric::Hurwitz, 1.0, -1.0, 1e-3).lower;
    EXPECT_LT(rel(half_turn.distance, kPi / 8.0), 0.01);
    EXPECT_EQ(half_turn.grid.coordinates, CoordinateSystem::LogPolar);
}

TEST(Solver, OffAxisOracles)
{
    const SolverOptions opts{1e-4, 16, 6};
    const CPoint a(0.3, 0.4), b(-0.5, 0.1);
    EXPECT_LT(rel(distance(DomainSpec::unit_disk(), Metric::Hyperbolic, a, b, opts).lower.distance, disk_distance(a, b)), 1e-3);
    const CPoint p(0.5, -1.0), q(2.0, 1.5);
    EXPECT_LT(rel(distance(DomainSpec::half_plane(), Metric::Hyperbolic, p, q, opts).lower.distance, half_plane_distance(p, q)), 1e-3);
    const CPoint s(-1.0, 0.5), t(1.5, 2.5);
    EXPECT_LT(rel(distance(DomainSpec::strip(), Metric::Hurwitz, s, t, opts).lower.distance, strip_distance(s, t)), 1e-3);
}

TEST(Solver, QuasihyperbolicHalfPlane)
{
    // along a horizontal ray the density is 1/x, so the distance from 1 to e is 1
    EXPECT_LT(rel(distance(DomainSpec::half_plane(), Metric::Quasihyperbolic, 1.0, std::exp(1.0), 1e-3).lower.distance, 1.0), 1e-3);
}

TEST(Solver, PuncturedDiskInterval)
{
    // lower density is lambda_{D*}: lift by w = exp(i z) to the upper half plane, 0.5 -> i ln 2, -0.5 -> pi + i ln 2
    const double oracle = upper_half_plane_distance({0.0, std::log(2.0)}, {kPi, std::log(2.0)});
    const DistanceReport r = distance(DomainSpec::punctured_disk(), Metric::Hurwitz, 0.5, -0.5, 1e-3);
    ASSERT_TRUE(r.is_interval());
    EXPECT_LT(rel(r.lower.distance, oracle), 2e-3);
    EXPECT_GE(r.upper->distance, r.lower.distance);
}

TEST(Solver, SymmetricAndWitnessed)
{
    const auto d = DomainSpec::punctured_disk();
    const CPoint a(0.3, 0.6), b(-0.2, -0.7);
    const DistanceReport ab = distance(d, Metric::Hurwitz, a, b);
    const DistanceReport ba = distance(d, Metric::Hurwitz, b, a);
    EXPECT_EQ(ab.lower.distance, ba.lower.distance);
    EXPECT_EQ(ab.upper->distance, ba.upper->distance);
    ASSERT_TRUE(ab.lower.path.has_value());
    EXPECT_EQ(ab.lower.path->front(), a);
    EXPECT_EQ(ab.lower.path->back(), b);
    const double again = polyline_length_under_density(*ab.lower.path, density_field(d, Metric::Hurwitz));
    EXPECT_LT(rel(again, ab.lower.distance), 1e-3);
}

TEST(Solver, RefinementTraceMonotone)
{
    const GeodesicResult r = distance(DomainSpec::strip(), Metric::Hyperbolic, {-2.0, 0.3}, {2.0, 2.8}).lower;
    for (std::size_t i = 1; i < r.refinement_trace.size(); ++i) {
        EXPECT_LT(r.refinement_trace[i].h, r.refinement_trace[i - 1].h);
        EXPECT_LE(r.refinement_trace[i].distance, r.refinement_trace[i - 1].distance);
    }
    EXPECT_TRUE(r.converged);
}

TEST(Solver, CoincidentEndpoints)
{
    const DistanceReport r = distance(DomainSpec::unit_disk(), Metric::Hyperbolic, 0.2, 0.2);
    EXPECT_EQ(r.lower.distance, 0.0);
    EXPECT_FALSE(r.lower.path.has_value());
}

TEST(Solver, HurwitzDominatesHyperbolic)
{
    const DistanceComparison c = distance_comparison(DomainSpec::punctured_disk(), {0.1, 0.1}, {0.7, -0.2});
    EXPECT_TRUE(c.holds);
    EXPECT_GE(c.hurwitz.lower.distance, c.hyperbolic.distance);
    EXPECT_HK_ERROR(distance_comparison(DomainSpec::cstar(), 1.0, 2.0), NotHyperbolic);
}

TEST(Solver, InclusionDecreasesDistance)
{
    const std::vector<std::pair<CPoint, CPoint>> pairs{{{0.3, 0.6}, {-0.4, 0.1}}, {{0.05, 0.0}, {0.9, 0.0}}};
    const auto rep = contraction_distance_check(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), pairs);
    EXPECT_TRUE(rep.all_hold);
    EXPECT_EQ(rep.pairs.size(), 2u);
    EXPECT_HK_ERROR(contraction_distance_check(DomainSpec::unit_disk(), DomainSpec::punctured_disk(), pairs), NotNested);
}

TEST(Solver, GeneralizedDistance)
{
    const DistanceReport g = generalized_hurwitz_distance(DomainSpec::half_plane(), DomainSpec::cstar(), 1.0, std::exp(1.0));
    EXPECT_LT(rel(g.lower.distance, 0.125), 0.01);
    EXPECT_HK_ERROR(generalized_hurwitz_distance(DomainSpec::punctured_disk(), DomainSpec::cstar(), 1.0, 2.0), UnsupportedPair);
}

TEST(Solver, Errors)
{
    EXPECT_HK_ERROR(distance(DomainSpec::unit_disk(), Metric::Hyperbolic, 0.0, 1.5), OutsideDomain);
    EXPECT_HK_ERROR(distance(DomainSpec::whole_plane(), Metric::Hurwitz, 0.0, 1.0), UnsupportedMetric);
    EXPECT_HK_ERROR(distance(DomainSpec::cstar(), Metric::Hyperbolic, 1.0, 2.0), UnsupportedMetric);
    EXPECT_HK_ERROR(distance(DomainSpec::unit_disk(), Metric::Hyperbolic, 0.0, 0.5, SolverOptions{0.0, 16, 6}), InvalidArgument);
    EXPECT_HK_ERROR(distance(DomainSpec::unit_disk(), Metric::Hyperbolic, 0.0, 0.5, SolverOptions{1e-3, 12, 6}), InvalidArgument);
}

TEST(Solver, PathCsv)
{
    std::ostringstream os;
    write_path_csv(os, Polyline({0.0, CPoint(0.5, -0.25)}));
    EXPECT_EQ(os.str(), "re,im\n0,0\n0.5,-0.25\n");
}
