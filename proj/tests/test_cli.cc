#include <tourhom/gadget.hh>
#include <tourhom/io.hh>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace tourhom;
namespace fs = std::filesystem;

namespace
{
    struct Run
    {
        int status = -1;
        std::string out;
    };

    auto run(const std::string & args) -> Run
    {
        std::string command = std::string{TOURHOM_CLI} + " " + args + " 2>/dev/null";
        Run result;
        FILE * pipe = popen(command.c_str(), "r");
        if (! pipe)
            return result;
        char buffer[4096];
        std::size_t n;
        while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
            result.out.append(buffer, n);
        int raw = pclose(pipe);
        result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        return result;
    }

    class Cli : public testing::Test
    {
        protected:
            fs::path dir;

            auto SetUp() -> void override
            {
                dir = fs::temp_directory_path() / ("tourhom_cli_" + std::string{testing::UnitTest::GetInstance()->current_test_info()->name()});
                fs::remove_all(dir);
                fs::create_directories(dir);
            }

            auto TearDown() -> void override
            {
                fs::remove_all(dir);
            }

            auto path(const std::string & name) const -> std::string
            {
                return (dir / name).string();
            }
    };
}

TEST_F(Cli, RegionCheckExitCodes)
{
    auto inside = run("region-check --x 1/2 --y 1/4");
    EXPECT_EQ(inside.status, 0);
    EXPECT_EQ(nlohmann::json::parse(inside.out)["inside"], true);
    EXPECT_EQ(nlohmann::json::parse(inside.out)["bracket"], 2);
    EXPECT_EQ(run("region-check --x 0.4 --y 0.14").status, 1);
    EXPECT_EQ(run("region-check --x 0.4 --y 0.14 --tol 0.05").status, 0);
    EXPECT_EQ(run("region-check --x 0.3").status, 2);
    EXPECT_EQ(run("no-such-command").status, 2);
}

TEST_F(Cli, HomCounts)
{
    write_text_file(path("triangle.txt"), "digraph 3\n0 1\n1 2\n2 0\n");
    auto r = run("hom --pattern " + path("triangle.txt") + " --host " + path("triangle.txt"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "3\n");
    EXPECT_EQ(run("hom --pattern " + path("missing.txt") + " --host " + path("triangle.txt")).status, 2);
    EXPECT_EQ(run("hom --pattern " + path("triangle.txt") + " --host " + path("triangle.txt") + " --root-x 0").status, 2);
}

TEST_F(Cli, GadgetHostMatrixPipeline)
{
    write_text_file(path("f0.txt"), "digraph 3\n0 1\n1 2\n2 0\n");
    write_text_file(path("edge.txt"), "graph 2\n0 1\n");
    ASSERT_EQ(run("build-gadget --f0 " + path("f0.txt") + " --k 2 --out-f " + path("f.txt") + " --out-fdagger " + path("fd.txt")).status, 0);
    ASSERT_EQ(run("build-host --graph " + path("edge.txt") + " --f0 " + path("f0.txt") + " --m 3 --s 1 --k 2 --out "
        + path("host.txt") + " --atlas " + path("atlas.json")).status, 0);
    EXPECT_EQ(load_digraph(path("host.txt")).size(), 8);
    auto dm = run("density-matrix --gadget " + path("fd.txt") + " --host " + path("host.txt") + " --atlas " + path("atlas.json")
        + " --block 1 --out " + path("counts.csv"));
    EXPECT_EQ(dm.status, 0);
    auto xy = run("xy --matrix " + path("counts.csv"));
    ASSERT_EQ(xy.status, 0);
    auto doc = nlohmann::json::parse(xy.out);
    EXPECT_EQ(doc["x_exact"], "1/2");
    EXPECT_EQ(doc["y_exact"], "1/4");
    EXPECT_EQ(doc["in_region"], true);
}

TEST_F(Cli, SampleAndCheckF0)
{
    ASSERT_EQ(run("sample-f0 --n 36 --seed 42 --out " + path("f0.txt")).status, 0);
    EXPECT_EQ(run("check-f0 --input " + path("f0.txt")).status, 0);
    write_text_file(path("t3.txt"), "digraph 3\n0 1\n0 2\n1 2\n");
    EXPECT_EQ(run("check-f0 --input " + path("t3.txt") + " --a 1 --t3 3").status, 1);
}

TEST_F(Cli, ReduceAndEvaluate)
{
    auto family = toy_family(1);
    fs::create_directories(path("family"));
    write_text_file(path("family/fdagger_1.txt"), to_text(family.dagger[0]));
    write_text_file(path("p.txt"), "x1\n");
    auto r = run("reduce --poly " + path("p.txt") + " --family " + path("family") + " --out " + path("q.json"));
    ASSERT_EQ(r.status, 0);
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["penalty"], "100");
    EXPECT_EQ(doc["clearing"], (std::vector<int>{14}));
    EXPECT_EQ(run("reduce --poly " + path("p.txt") + " --family " + path("family") + " --mode three-degree --out " + path("q2.json")).status, 2);

    write_text_file(path("host.txt"), to_text(transitive_tournament(4).graph()));
    auto e = run("eval-quantum --quantum " + path("q.json") + " --host " + path("host.txt"));
    ASSERT_EQ(e.status, 0);
    EXPECT_EQ(nlohmann::json::parse(e.out)["value"], "0");
}

TEST_F(Cli, VerifyWritesReports)
{
    write_text_file(path("config.json"), R"({"oracle_pairs": 5, "conditional_pairs": 5, "multiplicativity_cases": 5})");
    auto r = run("verify --suite core --config " + path("config.json") + " --out " + path("reports"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("PASS core:"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("reports/core.json")));

    write_text_file(path("bad.json"), R"({"claim_samples": 0})");
    EXPECT_EQ(run("verify --suite core --config " + path("bad.json")).status, 2);
    EXPECT_EQ(run("verify --suite nonsense").status, 2);
}
