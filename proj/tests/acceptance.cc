#include <tourhom/experiments.hh>
#include <tourhom/io.hh>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>

using namespace tourhom;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        bool passed = true;
        std::vector<std::string> notes;
    };

    // Folds the checks whose names start with one of the prefixes into the outcome.
    auto absorb(Outcome & o, const RunReport & report, std::initializer_list<std::string> prefixes = {}) -> void
    {
        for (auto & c : report.checks()) {
            auto name = c["name"].get<std::string>();
            bool wanted = prefixes.size() == 0;
            for (auto & p : prefixes)
                wanted = wanted || name.rfind(p, 0) == 0;
            if (! wanted)
                continue;
            if (! c["passed"].get<bool>()) {
                o.passed = false;
                o.notes.push_back("failed: " + name + (c.contains("detail") ? " (" + c["detail"].get<std::string>() + ")" : ""));
            }
        }
    }

    auto within(Outcome & o, double seconds, double budget) -> void
    {
        if (seconds >= budget) {
            o.passed = false;
            o.notes.push_back("took " + std::to_string(seconds) + " s, budget " + std::to_string(budget) + " s");
        }
    }

    auto seconds_of(const std::function<void ()> & body) -> double
    {
        auto start = std::chrono::steady_clock::now();
        body();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    auto timing(const RunReport & report, const std::string & key) -> double
    {
        return report.json()["timings"].value(key, 0.0);
    }

    auto criterion_core(int which) -> Outcome
    {
        Outcome o;
        auto report = run_suite("core", ExperimentConfig{});
        if (which == 1) {
            absorb(o, report, {"hom counts equal", "rooted hom counts equal"});
            within(o, timing(report, "oracle") + timing(report, "conditional"), 60);
        }
        else {
            absorb(o, report, {"density of a disjoint union"});
            within(o, timing(report, "multiplicativity"), 10);
        }
        return o;
    }

    auto criterion_suite(const std::string & suite, double budget, ExperimentConfig config = {}) -> Outcome
    {
        Outcome o;
        RunReport report{suite};
        within(o, seconds_of([&] { report = run_suite(suite, config); }), budget);
        absorb(o, report);
        return o;
    }

    auto criterion_claims() -> Outcome
    {
        ExperimentConfig config;
        config.m = 36;
        config.s = 2;
        return criterion_suite("claims", 1800, config);
    }

    auto criterion_graphon() -> Outcome
    {
        Outcome o;
        ExperimentConfig edge;
        edge.s = 1;
        edge.r = {1, 2};

        auto dir = fs::temp_directory_path() / "tourhom_acceptance";
        fs::create_directories(dir);
        auto cycle = dir / "c5.txt";
        write_text_file(cycle.string(), to_text(SimpleGraph::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})));
        ExperimentConfig c5 = edge;
        c5.graph_path = cycle.string();
        c5.graphon_sampled_pairs = 500;

        double seconds = seconds_of([&] {
            absorb(o, run_suite("graphon", edge));
            absorb(o, run_suite("graphon", c5));
        });
        fs::remove_all(dir);
        within(o, seconds, 3600);
        return o;
    }

    auto criterion_convergence() -> Outcome
    {
        Outcome o;
        RunReport report{"convergence"};
        within(o, seconds_of([&] { report = run_convergence(ExperimentConfig{}); }), 900);
        absorb(o, report);
        return o;
    }
}

auto main() -> int
{
    struct Criterion
    {
        int number;
        std::string title;
        std::function<Outcome ()> run;
    };

    const std::vector<Criterion> criteria{
        {1, "hom counts match exhaustive enumeration", [] { return criterion_core(1); }},
        {2, "density is multiplicative over disjoint unions", [] { return criterion_core(2); }},
        {3, "necklace counts equal traces and spectral power sums", [] { return criterion_suite("spectral", 300); }},
        {4, "gadget claims at m = 36", criterion_claims},
        {5, "density matrix has graphon block structure", criterion_graphon},
        {6, "normalised power sums lie in the region", [] { return criterion_suite("region", 600); }},
        {7, "reduction identity on small hosts", [] { return criterion_suite("reduction", 600); }},
        {8, "convergence on random regular graphs", criterion_convergence},
    };

    bool all = true;
    for (auto & c : criteria) {
        Outcome o;
        double seconds = 0;
        try {
            seconds = seconds_of([&] { o = c.run(); });
        }
        catch (const std::exception & e) {
            o.passed = false;
            o.notes.push_back(std::string{"error: "} + e.what());
        }
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title
            << " (" << seconds << " s)" << std::endl;
        for (auto & note : o.notes)
            std::cout << "    " << note << std::endl;
        all = all && o.passed;
    }
    return all ? 0 : 1;
}
