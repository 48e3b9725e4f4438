// Acceptance criteria AC1-AC8: one PASS/FAIL line each, exit status 1 if any fails.

#include <hurwitzkit/cli.hpp>
#include <hurwitzkit/hurwitzkit.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hurwitzkit;
using Clock = std::chrono::steady_clock;
using Json = cli::Json;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& why)
    {
        if (!ok) {
            pass = false;
            detail << " [" << why << "]";
        }
    }
};

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

std::string num(double x)
{
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

Verdict ac1()
{
    Verdict v;
    const char* points[] = {"1,0", "2,0", "0,1"};
    const double want[] = {0.125, 0.0625, 0.125};
    double worst_ms = 0.0;
    for (int i = 0; i < 3; ++i) {
        const char* argv[] = {"hurwitzkit", "density", "--domain", "cstar", "--point", points[i]};
        std::ostringstream out, err;
        const auto t0 = Clock::now();
        const int code = cli::run(6, argv, out, err);
        worst_ms = std::max(worst_ms, ms_since(t0));
        v.require(code == 0, std::string("exit code at ") + points[i]);
        const Json j = Json::parse(out.str());
        const double value = j["value"].get<double>();
        v.require(value == want[i] && j["provenance"] == "ClosedForm", std::string("value at ") + points[i]);
        v.detail << " eta(" << points[i] << ")=" << num(value);
    }
    v.detail << " | slowest call " << num(worst_ms) << " ms";
    v.require(worst_ms < 1.0, "runtime >= 1 ms");
    return v;
}

Verdict ac2()
{
    Verdict v;
    const auto t0 = Clock::now();
    v.require(hurwitz_covering_c_minus_1(0.0).value == CPoint(0.0), "g(0) != 0");
    const double h = 1e-6;
    const CPoint fd = (hurwitz_covering_c_minus_1(h).value - hurwitz_covering_c_minus_1(-h).value) / (2.0 * h);
    v.require(std::abs(fd - 16.0) <= 1e-8, "numerical g'(0) off by more than 1e-8");

    const double tol = 1e-12;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const CPoint w = std::polar(0.99 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
        const CoveringEval a = hurwitz_covering_c_minus_1(w, tol);
        const CoveringEval b = hurwitz_covering_with_terms(w, 2 * a.truncation.n_terms);
        // the tail bound covers log g and w g'/g; g' alone cancels to ~1e-11 where g ~ 1 on the real axis
        const CPoint da = w * a.derivative / a.value;
        const CPoint db = w * b.derivative / b.value;
        worst = std::max({worst, std::abs(a.log_value - b.log_value), std::abs(da - db)});
    }
    const double elapsed = ms_since(t0);
    v.detail << " g'(0)~" << num(fd.real()) << " | max change on doubling " << num(worst) << " (tol " << num(tol) << ") | "
             << num(elapsed) << " ms";
    v.require(worst < tol, "doubling terms moved a value by more than tol");
    v.require(elapsed < 1000.0, "runtime >= 1 s");
    return v;
}

Verdict ac3()
{
    Verdict v;
    const auto t0 = Clock::now();
    const SolverOptions opts{1e-3, 16, 6};
    const GeodesicResult disk = distance(DomainSpec::unit_disk(), Metric::Hyperbolic, 0.0, 0.5, opts).lower;
    const GeodesicResult radial = distance(DomainSpec::cstar(), Metric::Hurwitz, 1.0, std::exp(1.0), opts).lower;
    const GeodesicResult spiral = distance(DomainSpec::cstar(), Metric::Hurwitz, 1.0, -1.0, opts).lower;
    const double elapsed = ms_since(t0);
    const int refinements = static_cast<int>(disk.refinement_trace.size()) - 1;
    v.require(std::abs(disk.distance / std::log(3.0) - 1.0) <= 0.01, "ln 3 oracle");
    v.require(refinements <= 5, "more than 5 refinements");
    v.require(std::abs(radial.distance / 0.125 - 1.0) <= 0.01, "1 -> e oracle");
    v.require(std::abs(spiral.distance / (kPi / 8.0) - 1.0) <= 0.01, "1 -> -1 oracle");
    v.require(elapsed < 30000.0, "runtime >= 30 s");
    v.detail << " d_D(0,0.5)=" << num(disk.distance) << " (" << refinements << " refinements) d_C*(1,e)=" << num(radial.distance)
             << " d_C*(1,-1)=" << num(spiral.distance) << " | " << num(elapsed) << " ms";
    return v;
}

Verdict ac4()
{
    Verdict v;
    double prev = INFINITY;
    double n_times_upper = 0.0;
    for (int n = 10; n <= 10000; n *= 10) {
        const BoundCertificate c = generalized_hurwitz_bounds(DomainSpec::unit_disk(), DomainSpec::whole_plane(), {0.25, -0.5}, 1e-3, n);
        v.require(c.upper <= 2.0 / n, "upper above 2/budget at n=" + std::to_string(n));
        v.require(c.upper < prev, "not decreasing");
        if (n_times_upper == 0.0)
            n_times_upper = c.upper * n;
        v.require(std::abs(c.upper * n / n_times_upper - 1.0) < 1e-12, "not 1/n");
        prev = c.upper;
        v.detail << " n=" << n << ":" << num(c.upper);
    }
    v.require(prev <= 2e-4, "budget 1e4 bound above 2e-4");
    return v;
}

Verdict ac5()
{
    Verdict v;
    const HurwitzCandidates cands(DomainSpec::punctured_disk(), DomainSpec::cstar(), 1.0);
    const double lower = hurwitz_density(DomainSpec::cstar(), 1.0).value();
    double worst = 0.0, last = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double s = 1.0 - std::ldexp(1.0, -k);
        const double gap = cands(s) / lower;
        worst = std::max(worst, std::abs(gap - (1.0 + s) * (1.0 + s) / (4.0 * s)));
        last = gap;
    }
    const BoundCertificate c = generalized_hurwitz_bounds(DomainSpec::punctured_disk(), DomainSpec::cstar(), 1.0, 1e-3, 64);
    v.require(worst <= 1e-9, "gap factor differs from (1+s)^2/(4s)");
    v.require(last < 1.0 + 1e-4, "gap factor at k=10 not below 1+1e-4");
    v.require(c.converged, "coincidence not declared at tol 1e-3");
    v.detail << " max mismatch " << num(worst) << " | gap(k=10)=" << num(last) << " | converged=" << c.converged;
    return v;
}

Verdict ac6()
{
    Verdict v;
    const std::vector<DomainSpec> bases{DomainSpec::unit_disk(), DomainSpec::disk({0.5, -1.0}, 2.0), DomainSpec::half_plane(),
                                        DomainSpec::strip()};
    const std::vector<DomainSpec> targets{DomainSpec::unit_disk(), DomainSpec::disk({0.5, -1.0}, 2.0), DomainSpec::half_plane(),
                                          DomainSpec::strip(), DomainSpec::cstar(), DomainSpec::plane_minus_point({1.0, 1.0})};
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto sample = [&](const DomainSpec& d) -> CPoint {
        switch (d.kind()) {
        case DomainKind::Disk: {
            const auto* k = d.get_if<Disk>();
            return k->center + std::polar(k->radius * 0.999 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
        }
        case DomainKind::HalfPlane: return {std::exp(-6.0 + 9.0 * u(rng)), -20.0 + 40.0 * u(rng)};
        case DomainKind::Strip: return {-6.0 + 12.0 * u(rng), 1e-3 + (kPi - 2e-3) * u(rng)};
        default: return d.get_if<PlaneMinusPoint>()->point + std::polar(std::exp(-6.0 + 12.0 * u(rng)), 2.0 * kPi * u(rng));
        }
    };
    double worst_gap = 0.0;
    int calls = 0;
    for (int i = 0; i < 10000; ++i, ++calls) {
        const DomainSpec& y = bases[static_cast<std::size_t>(i) % bases.size()];
        const DomainSpec& omega = targets[static_cast<std::size_t>(i / 4) % targets.size()];
        const CPoint w = sample(omega);
        const BoundCertificate c = generalized_hurwitz_bounds(y, omega, w, 1e-9, 64);
        v.require(c.lower == hurwitz_density(omega, w).value(), "lower != eta_Omega(w)");
        v.require(c.upper >= c.lower, "upper < lower");
        v.require(c.converged, "not converged");
        worst_gap = std::max(worst_gap, (c.upper - c.lower) / c.lower);
    }
    v.require(worst_gap < 1e-9, "relative gap >= 1e-9");
    v.detail << " " << calls << " calls | max relative gap " << num(worst_gap);
    return v;
}

Verdict ac7()
{
    Verdict v;
    const ContractionReport r = contraction_report(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), 12, 8);
    bool has_level_12 = false;
    for (CPoint w : boundary_samples(DomainSpec::punctured_disk(), 12))
        has_level_12 = has_level_12 || std::abs(std::abs(w) - (1.0 - std::ldexp(1.0, -12))) < 1e-15;
    const Lipschitz a = classify_lipschitz(DomainSpec::punctured_disk(), DomainSpec::unit_disk(), 1e-3);
    const Lipschitz b = classify_lipschitz(DomainSpec::disk(0.0, 0.5), DomainSpec::unit_disk(), 1e-3);
    v.require(has_level_12, "no samples at |w| = 1 - 2^-12");
    v.require(r.gl_lower <= r.l_interval.upper, "gl_lower > l_upper");
    v.require(r.l_interval.upper <= 1.0 + 1e-9, "l_upper > 1 + 1e-9");
    v.require(r.l_interval.lower >= 0.999, "l_lower < 0.999");
    v.require(a == Lipschitz::NonLipschitz, "(D*, D) not NonLipschitz");
    v.require(b == Lipschitz::Lipschitz, "(D(0,1/2), D) not Lipschitz");
    v.detail << " gl_lower=" << num(r.gl_lower) << " l=[" << num(r.l_interval.lower) << ", " << num(r.l_interval.upper) << "] | "
             << lipschitz_name(a) << ", " << lipschitz_name(b);
    return v;
}

Verdict ac8()
{
    Verdict v;
    const std::string out_path = "acceptance_verify.json";
    const std::string cmd = std::string(HURWITZKIT_TOOL) + " verify --suite all > " + out_path;
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    const double seconds = ms_since(t0) / 1000.0;
    v.require(status == 0, "verify --suite all did not exit 0");
    v.require(seconds < 300.0, "verify took 5 min or more");

    std::ifstream in(out_path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        v.require(false, std::string("unreadable verify output: ") + e.what());
        return v;
    }
    std::remove(out_path.c_str());
    auto find = [&](const std::string& id) -> const Json* {
        for (const auto& c : j["checks"])
            if (c["id"] == id)
                return &c;
        return nullptr;
    };
    const int density_samples = j["config"]["density_samples"].get<int>();
    const int points = j["config"]["distance_points"].get<int>();
    v.require(density_samples >= 10000, "fewer than 1e4 density samples per domain");
    v.require(points * (points - 1) / 2 >= 100, "fewer than 1e2 pairs per domain");
    for (const char* id : {"eq-2.2", "eq-2.2-distance", "distance-symmetry", "distance-triangle"}) {
        const Json* c = find(id);
        v.require(c && (*c)["status"] == "pass", std::string(id) + " did not pass");
    }
    if (const Json* t = find("distance-triangle")) {
        const double triples = (*t)["observed"]["triples"].get<double>();
        v.require(triples >= 1000.0, "fewer than 1e3 triples");
        v.detail << " triples=" << triples;
    }
    if (const Json* s = find("distance-symmetry"))
        v.detail << " asymmetry=" << num((*s)["observed"]["max_abs_asymmetry"].get<double>());
    v.detail << " checks=" << j["checks"].size() << " failed=" << j["failed"] << " | " << num(seconds) << " s";
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"AC1 C* closed form via CLI", ac1},
        {"AC2 covering product and truncation", ac2},
        {"AC3 geodesic oracles", ac3},
        {"AC4 plane bound 2/n", ac4},
        {"AC5 punctured-disk basepoint on C*", ac5},
        {"AC6 simply connected basepoints converge", ac6},
        {"AC7 contraction constants and classes", ac7},
        {"AC8 inequality suites via verify", ac8},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        failed += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << ":" << v.detail.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
