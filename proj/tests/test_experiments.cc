#include <tourhom/experiments.hh>
#include <tourhom/hom.hh>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace tourhom;
namespace fs = std::filesystem;

namespace
{
    auto small_config() -> ExperimentConfig
    {
        ExperimentConfig c;
        c.oracle_pairs = 10;
        c.conditional_pairs = 5;
        c.multiplicativity_cases = 5;
        c.trace_hosts = 5;
        c.region_hosts = 20;
        return c;
    }
}

TEST(Config, ParsesFields)
{
    auto c = ExperimentConfig::from_json(R"({"seed": 7, "n": 20, "s": 3, "r": [2, 1], "generator": {"n": 64, "d": 16},
        "suites": ["core"], "sizes": [32], "cross_check": false})");
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.m, 20);
    EXPECT_EQ(c.s, 3);
    EXPECT_EQ(c.r, (std::vector<int>{2, 1}));
    EXPECT_EQ(c.generator_n, 64);
    EXPECT_EQ(c.generator_d, 16);
    EXPECT_EQ(c.suites, std::vector<std::string>{"core"});
    EXPECT_EQ(c.sizes, std::vector<int>{32});
    EXPECT_FALSE(c.cross_check);
    EXPECT_EQ(ExperimentConfig::from_json(c.to_json().dump()).to_json(), c.to_json());
}

TEST(Config, RejectsMalformedInput)
{
    EXPECT_THROW(ExperimentConfig::from_json("{"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json("[1, 2]"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(R"({"seed": "seven"})"), ConfigError);
}

TEST(Config, Validation)
{
    EXPECT_NO_THROW(ExperimentConfig{}.validate());
    auto bad = [] (auto mutate) {
        ExperimentConfig c;
        mutate(c);
        EXPECT_THROW(c.validate(), ConfigError);
    };
    bad([] (ExperimentConfig & c) { c.claim_samples = 0; });
    bad([] (ExperimentConfig & c) { c.t3 = 2; });
    bad([] (ExperimentConfig & c) { c.tolerance = 0; });
    bad([] (ExperimentConfig & c) { c.r = {1, 0}; });
    bad([] (ExperimentConfig & c) { c.sizes = {3}; });
    bad([] (ExperimentConfig & c) { c.graph_path = "/nonexistent/graph.txt"; });
    bad([] (ExperimentConfig & c) { c.wall_clock_seconds = -1; });

    ExperimentConfig c;
    EXPECT_EQ(c.effective_a(), 6);
    EXPECT_EQ(c.effective_t3(), 11);
    c.a = 4;
    c.t3 = 5;
    EXPECT_EQ(c.effective_a(), 4);
    EXPECT_EQ(c.effective_t3(), 5);
}

TEST(Suites, UnknownNameRejected)
{
    EXPECT_THROW(run_suite("nonsense", small_config()), ConfigError);
}

TEST(Suites, CoreIsDeterministic)
{
    auto first = run_suite("core", small_config()), second = run_suite("core", small_config());
    EXPECT_TRUE(first.passed());
    EXPECT_EQ(first.suite(), "core");
    EXPECT_EQ(first.checks(), second.checks());
    EXPECT_EQ(first.json()["measurements"], second.json()["measurements"]);
}

TEST(Suites, RegionPassesAndWritesReport)
{
    auto report = run_suite("region", small_config());
    EXPECT_TRUE(report.passed());
    auto dir = fs::temp_directory_path() / "tourhom_test_experiments";
    fs::remove_all(dir);
    write_report(report, dir.string());
    std::ifstream in{dir / "region.json"};
    ASSERT_TRUE(in);
    auto doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc["suite"], "region");
    EXPECT_EQ(doc["passed"], true);
    fs::remove_all(dir);
}

TEST(Suites, WallClockBudget)
{
    auto c = small_config();
    c.wall_clock_seconds = 1e-9;
    EXPECT_THROW(run_suite("region", c), BudgetExceeded);
}

TEST(Suites, DefaultHostGraphIsSingleEdge)
{
    auto g = host_graph_from_config(ExperimentConfig{});
    EXPECT_EQ(g.n, 2);
    EXPECT_EQ(g.edges, (std::vector<Arc>{{0, 1}}));

    ExperimentConfig c;
    c.generator_n = 20;
    c.generator_d = 3;
    auto regular = host_graph_from_config(c);
    EXPECT_EQ(regular.n, 20);
    EXPECT_EQ(regular.edges.size(), 30u);
}
