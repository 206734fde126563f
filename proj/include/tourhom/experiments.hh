#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/gadget.hh>

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourhom
{
    class ConfigError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct ExperimentConfig
    {
        std::uint64_t seed = 1;

        // Gadget family. a and t3 of zero select the defaults.
        int m = 36;
        int a = 0;
        int t3 = 0;
        int max_tries = 200;
        int s = 2;
        std::vector<int> k;
        std::string f0_path;

        // Host graph: a file, or a random regular graph when generator_n > 0.
        std::string graph_path;
        int generator_n = 0;
        int generator_d = 0;
        std::vector<int> r{1};

        std::vector<std::string> suites;

        // Zero means unlimited.
        std::uint64_t node_limit = 0;
        double wall_clock_seconds = 0;

        double tolerance = 1e-9;
        std::string output_dir;
        std::string hosts_dir;

        // Sample sizes.
        int oracle_pairs = 50;
        int conditional_pairs = 30;
        int multiplicativity_cases = 20;
        int trace_hosts = 20;
        int region_hosts = 200;
        int reduction_hosts = 20;
        int claim_samples = 1000;
        int graphon_sampled_pairs = 0;

        // Convergence study.
        std::vector<int> sizes{64, 128, 256};
        std::vector<int> convergence_r{2, 3};
        bool cross_check = true;

        static auto from_json(const std::string & text) -> ExperimentConfig;
        auto to_json() const -> nlohmann::json;

        /// Throws ConfigError on nonpositive caps or missing files.
        auto validate() const -> void;

        auto effective_a() const -> int;
        auto effective_t3() const -> int;
    };

    /// Machine-readable record of one suite run. Exact quantities are stored
    /// as strings so that reruns compare bit for bit.
    class RunReport
    {
        public:
            explicit RunReport(std::string suite);

            auto check(const std::string & name, bool passed, const std::string & detail = {},
                    nlohmann::json witness = nullptr) -> bool;
            auto measure(const std::string & key, nlohmann::json value) -> void;
            auto param(const std::string & key, nlohmann::json value) -> void;
            auto timing(const std::string & key, double seconds) -> void;

            auto passed() const -> bool;
            auto suite() const -> std::string;
            auto json() const -> const nlohmann::json & { return _doc; }
            auto checks() const -> const nlohmann::json & { return _doc["checks"]; }

        private:
            nlohmann::json _doc;
    };

    /// Throws BudgetExceeded once the configured wall-clock budget is spent.
    class Deadline
    {
        public:
            explicit Deadline(double seconds);

            auto check(const std::string & where) const -> void;
            auto elapsed() const -> double;

        private:
            std::chrono::steady_clock::time_point _start;
            double _seconds;
    };

    /// Loads or samples F0 and builds the family with the configured or
    /// derived k values.
    auto family_from_config(const ExperimentConfig & config) -> GadgetFamily;

    auto host_graph_from_config(const ExperimentConfig & config) -> SimpleGraph;

    /// "core", "claims", "spectral", "region", "reduction", "graphon" or
    /// "convergence". Throws ConfigError for other names.
    auto run_suite(const std::string & name, const ExperimentConfig & config) -> RunReport;

    auto run_convergence(const ExperimentConfig & config) -> RunReport;

    /// Writes report.json and any tables (CSV) into the output directory.
    auto write_report(const RunReport & report, const std::string & output_dir) -> void;
}
