#include <hurwitzkit/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

using hurwitzkit::cli::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<const char*> args)
{
    args.insert(args.begin(), "hurwitzkit");
    std::ostringstream out, err;
    const int code = hurwitzkit::cli::run(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Cli, DensityExample)
{
    const Result r = run({"density", "--domain", "cstar", "--point", "1,0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"value\":0.125,\"provenance\":\"ClosedForm\"}\n");
}

TEST(Cli, DensityInterval)
{
    const Result r = run({"density", "--domain", "punctured-disk", "--point", "0.5,0", "--paper-normalization"});
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["provenance"], "Interval");
    EXPECT_DOUBLE_EQ(j["upper"].get<double>(), 3.0);
    EXPECT_DOUBLE_EQ(j["paper_printed_upper"].get<double>(), 1.5);
}

TEST(Cli, DistanceExample)
{
    const Result r = run({"distance", "--domain", "disk:0,0,1", "--metric", "hyperbolic", "--points", "0,0:0.5,0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(Json::parse(r.out)["distance"].get<double>(), 1.098612, 1e-5);
}

TEST(Cli, DistanceCsvWitness)
{
    const std::string path = ::testing::TempDir() + "hk_path.csv";
    const Result r = run({"distance", "--domain", "cstar", "--points", "1,0:0,1", "--path-csv", path.c_str()});
    ASSERT_EQ(r.code, 0);
    const std::string csv = slurp(path);
    EXPECT_EQ(csv.rfind("re,im\n1,0\n", 0), 0u);
    const Result c = run({"distance", "--domain", "cstar", "--points", "1,0:0,1", "--format", "csv"});
    EXPECT_EQ(c.out, csv);
    std::remove(path.c_str());
}

TEST(Cli, BoundsJson)
{
    const Result r = run({"bounds", "--basepoint-domain", "punctured-disk", "--domain", "cstar", "--point", "1,0"});
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["lower"].get<double>(), 0.125);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_TRUE(j["witness"].contains("s_re"));
    EXPECT_EQ(j["witness"]["family"], "RestrictionFamily");
}

TEST(Cli, ContractionAndCovering)
{
    const Result c = run({"contraction", "--domain", "disk:0,0,0.5", "--outer", "disk:0,0,1", "--pairs", "2"});
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(Json::parse(c.out)["classification"], "Lipschitz");
    const Result g = run({"covering", "--domain", "cstar", "--point", "1,0"});
    ASSERT_EQ(g.code, 0);
    EXPECT_EQ(Json::parse(g.out)["derivative_at_0"]["re"].get<double>(), 16.0);
}

TEST(Cli, UsageErrorsNameTheFlag)
{
    Result r = run({"density", "--domain", "annulus", "--point", "1,0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--domain"), std::string::npos);
    r = run({"density", "--domain", "cstar", "--point", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--point"), std::string::npos);
    r = run({"distance", "--domain", "cstar", "--points", "1,0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--points"), std::string::npos);
    r = run({"density", "--domain", "cstar", "--point", "1,0", "--metric", "euclid"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--metric"), std::string::npos);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"density", "--bogus"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "no-such-check"}).code, 2);
}

TEST(Cli, ModuleErrorsSurfaceTheirName)
{
    const Result r = run({"density", "--domain", "disk:0,0,1", "--point", "2,0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("OutsideDomain"), std::string::npos);
    const Result h = run({"density", "--domain", "cstar", "--point", "1,0", "--metric", "hyperbolic"});
    EXPECT_EQ(h.code, 1);
    EXPECT_NE(h.err.find("NotHyperbolic"), std::string::npos);
}

TEST(Cli, ConfigFile)
{
    const std::string path = ::testing::TempDir() + "hk_config.json";
    {
        std::ofstream(path) << R"({"tolerance": 1e-3, "budget": 8, "format": "csv"})";
    }
    const Result r = run({"bounds", "--basepoint-domain", "strip", "--domain", "cstar", "--point", "1,0", "--config", path.c_str()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("lower,upper,converged\n", 0), 0u);
    {
        std::ofstream(path) << R"({"budget": 8, "colour": "red"})";
    }
    const Result bad = run({"verify", "--suite", "thm2", "--config", path.c_str()});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("--config"), std::string::npos);
    {
        std::ofstream(path) << R"({"budget": -1})";
    }
    EXPECT_EQ(run({"verify", "--suite", "thm2", "--config", path.c_str()}).code, 2);
    std::remove(path.c_str());
}

TEST(Cli, VerifySubsetAndDeterminism)
{
    const Result a = run({"verify", "--suite", "thm"});
    const Result b = run({"verify", "--suite", "thm"});
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    const Json j = Json::parse(a.out);
    std::vector<std::string> ids;
    for (const auto& c : j["checks"])
        ids.push_back(c["id"]);
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
    EXPECT_EQ(std::count(ids.begin(), ids.end(), "thm2"), 1);
    EXPECT_EQ(j["failed"].get<int>(), 0);
}

TEST(Cli, ToolIsByteIdenticalAcrossRunsAndThreads)
{
    const std::string tool = HURWITZKIT_TOOL;
    const std::string dir = ::testing::TempDir();
    const std::string cmd = " verify --suite distance-s --format csv > ";
    ASSERT_EQ(std::system(("HURWITZKIT_THREADS=1 " + tool + cmd + dir + "hk_a.csv").c_str()), 0);
    ASSERT_EQ(std::system(("HURWITZKIT_THREADS=4 " + tool + cmd + dir + "hk_b.csv").c_str()), 0);
    const std::string a = slurp(dir + "hk_a.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir + "hk_b.csv"));
    std::remove((dir + "hk_a.csv").c_str());
    std::remove((dir + "hk_b.csv").c_str());
}
