#include <tourhom/experiments.hh>
#include <tourhom/hom.hh>
#include <tourhom/host.hh>
#include <tourhom/io.hh>
#include <tourhom/reduction.hh>
#include <tourhom/region.hh>
#include <tourhom/regular.hh>
#include <tourhom/spectral.hh>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

namespace tourhom
{
    namespace fs = std::filesystem;
    using nlohmann::json;

    auto ExperimentConfig::from_json(const std::string & text) -> ExperimentConfig
    {
        json doc;
        try {
            doc = json::parse(text);
        }
        catch (const json::exception & e) {
            throw ConfigError{std::string{"config is not valid JSON: "} + e.what()};
        }
        if (! doc.is_object())
            throw ConfigError{"config must be a JSON object"};

        ExperimentConfig c;
        try {
            c.seed = doc.value("seed", c.seed);
            c.m = doc.value("m", doc.value("n", c.m));
            c.a = doc.value("a", c.a);
            c.t3 = doc.value("t3", c.t3);
            c.max_tries = doc.value("max_tries", c.max_tries);
            c.s = doc.value("s", c.s);
            c.k = doc.value("k", c.k);
            c.f0_path = doc.value("f0", c.f0_path);
            c.graph_path = doc.value("graph", c.graph_path);
            if (doc.contains("generator")) {
                auto & g = doc["generator"];
                c.generator_n = g.value("n", 0);
                c.generator_d = g.value("d", 0);
            }
            c.r = doc.value("r", c.r);
            c.suites = doc.value("suites", c.suites);
            c.node_limit = doc.value("node_limit", c.node_limit);
            c.wall_clock_seconds = doc.value("wall_clock_seconds", c.wall_clock_seconds);
            c.tolerance = doc.value("tolerance", c.tolerance);
            c.output_dir = doc.value("output_dir", c.output_dir);
            c.hosts_dir = doc.value("hosts", c.hosts_dir);
            c.oracle_pairs = doc.value("oracle_pairs", c.oracle_pairs);
            c.conditional_pairs = doc.value("conditional_pairs", c.conditional_pairs);
            c.multiplicativity_cases = doc.value("multiplicativity_cases", c.multiplicativity_cases);
            c.trace_hosts = doc.value("trace_hosts", c.trace_hosts);
            c.region_hosts = doc.value("region_hosts", c.region_hosts);
            c.reduction_hosts = doc.value("reduction_hosts", c.reduction_hosts);
            c.claim_samples = doc.value("claim_samples", c.claim_samples);
            c.graphon_sampled_pairs = doc.value("graphon_sampled_pairs", c.graphon_sampled_pairs);
            c.sizes = doc.value("sizes", c.sizes);
            c.convergence_r = doc.value("convergence_r", c.convergence_r);
            c.cross_check = doc.value("cross_check", c.cross_check);
        }
        catch (const json::exception & e) {
            throw ConfigError{std::string{"bad config field: "} + e.what()};
        }
        return c;
    }

    auto ExperimentConfig::to_json() const -> json
    {
        return {
            {"seed", seed}, {"m", m}, {"a", effective_a()}, {"t3", effective_t3()}, {"max_tries", max_tries},
            {"s", s}, {"k", k}, {"f0", f0_path}, {"graph", graph_path},
            {"generator", {{"n", generator_n}, {"d", generator_d}}}, {"r", r}, {"suites", suites},
            {"node_limit", node_limit}, {"wall_clock_seconds", wall_clock_seconds}, {"tolerance", tolerance},
            {"output_dir", output_dir}, {"hosts", hosts_dir}, {"oracle_pairs", oracle_pairs},
            {"conditional_pairs", conditional_pairs}, {"multiplicativity_cases", multiplicativity_cases},
            {"trace_hosts", trace_hosts}, {"region_hosts", region_hosts}, {"reduction_hosts", reduction_hosts},
            {"claim_samples", claim_samples}, {"graphon_sampled_pairs", graphon_sampled_pairs},
            {"sizes", sizes}, {"convergence_r", convergence_r}, {"cross_check", cross_check},
        };
    }

    auto ExperimentConfig::validate() const -> void
    {
        auto positive = [] (long long v, const char * name) {
            if (v <= 0)
                throw ConfigError{std::string{name} + " must be positive"};
        };
        positive(m - 2, "m - 2");
        positive(max_tries, "max_tries");
        positive(s, "s");
        positive(oracle_pairs, "oracle_pairs");
        positive(conditional_pairs, "conditional_pairs");
        positive(multiplicativity_cases, "multiplicativity_cases");
        positive(trace_hosts, "trace_hosts");
        positive(region_hosts, "region_hosts");
        positive(reduction_hosts, "reduction_hosts");
        positive(claim_samples, "claim_samples");
        if (a < 0 || t3 < 0 || graphon_sampled_pairs < 0 || generator_n < 0 || generator_d < 0)
            throw ConfigError{"a, t3, graphon_sampled_pairs and generator sizes must be nonnegative"};
        if (t3 != 0 && t3 < 3)
            throw ConfigError{"t3 must be at least 3"};
        if (! (tolerance > 0))
            throw ConfigError{"tolerance must be positive"};
        if (wall_clock_seconds < 0)
            throw ConfigError{"wall_clock_seconds must be nonnegative"};
        for (int ri : r)
            positive(ri, "every r");
        for (int ri : convergence_r)
            positive(ri, "every convergence_r");
        for (int n : sizes)
            if (n < 4)
                throw ConfigError{"convergence sizes must be at least 4"};
        if (! f0_path.empty() && ! fs::exists(f0_path))
            throw ConfigError{"f0 file " + f0_path + " does not exist"};
        if (! graph_path.empty() && ! fs::exists(graph_path))
            throw ConfigError{"graph file " + graph_path + " does not exist"};
        if (! hosts_dir.empty() && ! fs::is_directory(hosts_dir))
            throw ConfigError{"hosts directory " + hosts_dir + " does not exist"};
    }

    auto ExperimentConfig::effective_a() const -> int
    {
        return a > 0 ? a : default_a(m);
    }

    auto ExperimentConfig::effective_t3() const -> int
    {
        return t3 > 0 ? t3 : default_t3(m);
    }

    RunReport::RunReport(std::string suite)
    {
        _doc = {{"suite", std::move(suite)}, {"passed", true}, {"checks", json::array()},
            {"measurements", json::object()}, {"params", json::object()}, {"timings", json::object()}};
    }

    auto RunReport::check(const std::string & name, bool passed, const std::string & detail, nlohmann::json witness) -> bool
    {
        nlohmann::json entry{{"name", name}, {"passed", passed}};
        if (! detail.empty())
            entry["detail"] = detail;
        if (! witness.is_null())
            entry["witness"] = std::move(witness);
        _doc["checks"].push_back(std::move(entry));
        if (! passed)
            _doc["passed"] = false;
        return passed;
    }

    auto RunReport::measure(const std::string & key, nlohmann::json value) -> void
    {
        _doc["measurements"][key] = std::move(value);
    }

    auto RunReport::param(const std::string & key, nlohmann::json value) -> void
    {
        _doc["params"][key] = std::move(value);
    }

    auto RunReport::timing(const std::string & key, double seconds) -> void
    {
        _doc["timings"][key] = seconds;
    }

    auto RunReport::passed() const -> bool
    {
        return _doc["passed"].get<bool>();
    }

    auto RunReport::suite() const -> std::string
    {
        return _doc["suite"].get<std::string>();
    }

    Deadline::Deadline(double seconds) :
        _start(std::chrono::steady_clock::now()),
        _seconds(seconds)
    {
    }

    auto Deadline::elapsed() const -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
    }

    auto Deadline::check(const std::string & where) const -> void
    {
        if (_seconds > 0 && elapsed() > _seconds)
            throw BudgetExceeded{"wall-clock budget of " + std::to_string(_seconds) + " s exhausted during " + where};
    }

    auto family_from_config(const ExperimentConfig & config) -> GadgetFamily
    {
        Tournament f0 = config.f0_path.empty()
            ? sample_F0(config.m, config.effective_a(), config.effective_t3(), config.seed, config.max_tries).tournament
            : load_tournament(config.f0_path);
        if (f0.size() != config.m)
            throw ConfigError{"f0 has " + std::to_string(f0.size()) + " vertices but m is " + std::to_string(config.m)};
        auto k = config.k.empty() ? make_k_sequence(config.m, config.s) : config.k;
        if (static_cast<int>(k.size()) != config.s)
            throw ConfigError{"k lists " + std::to_string(k.size()) + " values for s = " + std::to_string(config.s)};
        return build_family(f0, k);
    }

    auto host_graph_from_config(const ExperimentConfig & config) -> SimpleGraph
    {
        if (! config.graph_path.empty())
            return load_simple_graph(config.graph_path);
        if (config.generator_n > 0) {
            int d = config.generator_d > 0 ? config.generator_d : degree_for_size(config.generator_n);
            return random_regular_graph(config.generator_n, d, config.seed);
        }
        return SimpleGraph::make(2, {{0, 1}});
    }

    namespace
    {
        auto random_digraph(int n, std::mt19937_64 & rng, double p) -> Digraph
        {
            std::bernoulli_distribution arc{p};
            Digraph g{n};
            for (Vertex u = 0 ; u < n ; ++u)
                for (Vertex v = 0 ; v < n ; ++v)
                    if (u != v && arc(rng))
                        g.add_arc(u, v);
            return g;
        }

        auto uniform(std::mt19937_64 & rng, int lo, int hi) -> int
        {
            return std::uniform_int_distribution<int>{lo, hi}(rng);
        }

        auto options_from(const ExperimentConfig & config) -> HomOptions
        {
            HomOptions options;
            options.node_limit = config.node_limit;
            return options;
        }

        auto seconds_since(std::chrono::steady_clock::time_point t) -> double
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
        }

        auto run_core(const ExperimentConfig & config) -> RunReport
        {
            RunReport report{"core"};
            Deadline deadline{config.wall_clock_seconds};
            std::mt19937_64 rng{config.seed};
            auto options = options_from(config);

            auto start = std::chrono::steady_clock::now();
            int mismatches = 0;
            json witness = nullptr;
            for (int i = 0 ; i < config.oracle_pairs ; ++i) {
                deadline.check("oracle pairs");
                auto f = random_digraph(uniform(rng, 1, 4), rng, 0.4);
                int n = uniform(rng, 1, 6);
                auto t = i % 2 == 0 ? random_tournament(n, rng()).graph() : random_digraph(n, rng, 0.5);
                auto pruned = count_hom(f, t, options);
                auto exhaustive = count_hom_bruteforce(f, t);
                if (pruned != exhaustive && ++mismatches == 1)
                    witness = {{"pattern", to_text(f)}, {"host", to_text(t)}, {"pruned", pruned.get_str()},
                        {"exhaustive", exhaustive.get_str()}};
            }
            report.check("hom counts equal exhaustive enumeration", mismatches == 0,
                std::to_string(config.oracle_pairs) + " pairs, " + std::to_string(mismatches) + " mismatches", witness);
            report.timing("oracle", seconds_since(start));

            start = std::chrono::steady_clock::now();
            mismatches = 0;
            witness = nullptr;
            for (int i = 0 ; i < config.conditional_pairs ; ++i) {
                deadline.check("conditional pairs");
                RootedDigraph f{random_digraph(uniform(rng, 2, 4), rng, 0.4), 0, 1, {}};
                auto t = random_tournament(uniform(rng, 1, 6), rng()).graph();
                Vertex x = uniform(rng, 0, t.size() - 1), y = uniform(rng, 0, t.size() - 1);
                auto pruned = count_hom_rooted(f, t, x, y, options);
                const Pin pins[] = {{f.z, x}, {f.w, y}};
                auto exhaustive = count_hom_bruteforce(f.graph, t, pins);
                if (pruned != exhaustive && ++mismatches == 1)
                    witness = {{"pattern", to_text(f)}, {"host", to_text(t)}, {"x", x}, {"y", y},
                        {"pruned", pruned.get_str()}, {"exhaustive", exhaustive.get_str()}};
            }
            report.check("rooted hom counts equal exhaustive enumeration", mismatches == 0,
                std::to_string(config.conditional_pairs) + " pairs, " + std::to_string(mismatches) + " mismatches", witness);
            report.timing("conditional", seconds_since(start));

            start = std::chrono::steady_clock::now();
            mismatches = 0;
            witness = nullptr;
            for (int i = 0 ; i < config.multiplicativity_cases ; ++i) {
                deadline.check("multiplicativity");
                auto f1 = random_digraph(uniform(rng, 1, 4), rng, 0.4);
                auto f2 = random_digraph(uniform(rng, 1, 4), rng, 0.4);
                auto t = random_tournament(uniform(rng, 1, 7), rng()).graph();
                auto joint = density(disjoint_union(f1, f2), t);
                Rational product = density(f1, t) * density(f2, t);
                if (joint != product && ++mismatches == 1)
                    witness = {{"f1", to_text(f1)}, {"f2", to_text(f2)}, {"host", to_text(t)},
                        {"union", to_string(joint)}, {"product", to_string(product)}};
            }
            report.check("density of a disjoint union is the product", mismatches == 0,
                std::to_string(config.multiplicativity_cases) + " cases, " + std::to_string(mismatches) + " mismatches", witness);
            report.timing("multiplicativity", seconds_since(start));
            return report;
        }

        auto run_spectral(const ExperimentConfig & config) -> RunReport
        {
            RunReport report{"spectral"};
            Deadline deadline{config.wall_clock_seconds};
            std::mt19937_64 rng{config.seed};
            auto options = options_from(config);
            auto dagger = build_F_dagger(toy_gadget());

            int trace_failures = 0, spectral_failures = 0, asymmetric = 0, degenerate = 0;
            double worst = 0;
            json trace_witness = nullptr, spectral_witness = nullptr;
            for (int h = 0 ; h < config.trace_hosts ; ++h) {
                deadline.check("trace identity");
                auto t = random_tournament(4 + h % 2, rng()).graph();

                HomCounter counter{dagger.graph, t, options};
                for (Vertex x = 0 ; x < t.size() ; ++x)
                    for (Vertex y = x + 1 ; y < t.size() ; ++y)
                        if (counter.count_rooted(dagger.z, dagger.w, x, y) != counter.count_rooted(dagger.z, dagger.w, y, x))
                            ++asymmetric;

                auto m = density_matrix(dagger, t, options);
                if (m.is_zero())
                    ++degenerate;
                auto spectrum = scaled_spectrum(m);
                for (int ell : {3, 4}) {
                    auto direct = count_hom(build_necklace(dagger, ell), t, options);
                    auto trace = trace_power(m, ell);
                    if (direct != trace && ++trace_failures == 1)
                        trace_witness = {{"host", to_text(t)}, {"ell", ell}, {"necklace", direct.get_str()}, {"trace", trace.get_str()}};

                    // Compare at the scale of the largest count so nothing underflows.
                    double sum = power_sum(spectrum.eigenvalues, ell);
                    double expected = 0;
                    if (! m.is_zero()) {
                        BigInt largest = 0;
                        for (auto & [key, value] : m.nonzero())
                            largest = std::max(largest, value);
                        expected = ratio_to_double(trace, pow(largest, ell));
                    }
                    double error = std::abs(sum - expected) / std::max(1.0, std::abs(expected));
                    worst = std::max(worst, error);
                    if (error > config.tolerance && ++spectral_failures == 1)
                        spectral_witness = {{"host", to_text(t)}, {"ell", ell}, {"power_sum", sum}, {"trace", expected}};
                }
            }
            report.check("gadget counts are symmetric in the roots", asymmetric == 0, std::to_string(asymmetric) + " asymmetric pairs");
            report.check("necklace counts equal traces of powers", trace_failures == 0,
                std::to_string(config.trace_hosts) + " hosts, lengths 3 and 4", trace_witness);
            report.check("eigenvalue power sums match traces", spectral_failures == 0,
                "worst relative error " + std::to_string(worst), spectral_witness);
            report.measure("worst_relative_error", worst);
            report.measure("zero_matrices", degenerate);
            return report;
        }

        // A random tournament on |pattern| + extra vertices containing a copy
        // of the pattern at random positions; non-adjacent pattern pairs get
        // random orientations.
        auto planted_host(const Digraph & pattern, int extra, std::mt19937_64 & rng) -> Digraph
        {
            const int n = pattern.size() + extra;
            std::vector<Vertex> slots(n);
            for (Vertex v = 0 ; v < n ; ++v)
                slots[v] = v;
            std::shuffle(slots.begin(), slots.end(), rng);
            std::vector<Vertex> owner(n, -1);
            for (Vertex v = 0 ; v < pattern.size() ; ++v)
                owner[slots[v]] = v;

            Digraph host{n};
            for (Vertex u = 0 ; u < n ; ++u)
                for (Vertex v = u + 1 ; v < n ; ++v) {
                    Vertex a = owner[u], b = owner[v];
                    bool forward;
                    if (a >= 0 && b >= 0 && pattern.adjacent(a, b))
                        forward = pattern.has_arc(a, b);
                    else
                        forward = rng() & 1;
                    forward ? host.add_arc(u, v) : host.add_arc(v, u);
                }
            return host;
        }

        auto injective(std::span<const Vertex> map) -> bool
        {
            std::set<Vertex> seen(map.begin(), map.end());
            return seen.size() == map.size();
        }

        auto run_claims(const ExperimentConfig & config) -> RunReport
        {
            RunReport report{"claims"};
            Deadline deadline{config.wall_clock_seconds};
            std::mt19937_64 rng{config.seed};
            auto options = options_from(config);
            auto family = family_from_config(config);
            report.param("m", family.m);
            report.param("k", family.k);

            auto start = std::chrono::steady_clock::now();
            for (int i = 0 ; i < family.size() ; ++i) {
                auto & f = family.f[i];
                std::uint64_t bad = 0;
                json witness = nullptr;
                auto result = enumerate_homs(f.graph, f.graph, {}, [&] (std::span<const Vertex> map) {
                    if (! injective(map) || map[f.z] != f.z || map[f.w] != f.w) {
                        if (++bad == 1)
                            witness = std::vector<Vertex>(map.begin(), map.end());
                    }
                    return true;
                }, 1'000'000);
                report.check("every endomorphism of gadget " + std::to_string(i + 1) + " is a root-fixing bijection",
                    bad == 0 && result.visited > 0, std::to_string(result.visited) + " endomorphisms", witness);
                report.measure("endomorphisms_" + std::to_string(i + 1), result.visited);
            }
            report.timing("endomorphisms", seconds_since(start));

            start = std::chrono::steady_clock::now();
            for (int i = 0 ; i < family.size() ; ++i)
                for (int j = 0 ; j < family.size() ; ++j) {
                    if (i == j)
                        continue;
                    deadline.check("cross-gadget search");
                    HomCounter counter{family.f[i].graph, family.f[j].graph, options};
                    auto count = counter.count();
                    report.check("no homomorphism from gadget " + std::to_string(i + 1) + " to gadget " + std::to_string(j + 1),
                        count == 0, "exhausted search, " + std::to_string(counter.nodes()) + " nodes, count " + count.get_str());
                }
            report.timing("cross_gadget", seconds_since(start));

            start = std::chrono::steady_clock::now();
            for (int i = 0 ; i < family.size() ; ++i) {
                auto & f = family.f[i];
                std::uint64_t sampled = 0, bad = 0, hosts = 0;
                json witness = nullptr;
                while (sampled < static_cast<std::uint64_t>(config.claim_samples)) {
                    deadline.check("planted-host sampling");
                    auto host = planted_host(f.graph, 8, rng);
                    ++hosts;
                    auto result = enumerate_homs(f.graph, host, {}, [&] (std::span<const Vertex> map) {
                        ++sampled;
                        if (! injective(map) && ++bad == 1)
                            witness = {{"host", to_text(host)}, {"map", std::vector<Vertex>(map.begin(), map.end())}};
                        return sampled < static_cast<std::uint64_t>(config.claim_samples);
                    }, 1'000'000);
                    if (result.visited == 0) {
                        report.check("planted copy of gadget " + std::to_string(i + 1) + " is found", false, "",
                            json{{"host", to_text(host)}});
                        break;
                    }
                }
                report.check("homomorphisms of gadget " + std::to_string(i + 1) + " into tournaments are injective", bad == 0,
                    std::to_string(sampled) + " homomorphisms over " + std::to_string(hosts) + " hosts", witness);
            }
            report.timing("injectivity", seconds_since(start));

            // Homomorphisms into a host carrying every gadget once, on a single edge.
            start = std::chrono::steady_clock::now();
            std::vector<int> ones(family.size(), 1);
            auto host = build_T_star(SimpleGraph::make(2, {{0, 1}}), family.dagger, ones);
            auto info = host.atlas.vertex_info();
            for (int i = 0 ; i < family.size() ; ++i) {
                auto & f = family.f[i];
                std::uint64_t bad = 0;
                json witness = nullptr;
                auto result = enumerate_homs(f.graph, host.tournament.graph(), {}, [&] (std::span<const Vertex> map) {
                    int block = info[map[0]].block;
                    std::set<int> cells;
                    std::set<Vertex> bases;
                    bool ok = host.atlas.blocks[block].i == i + 1;
                    for (auto v : map) {
                        ok = ok && info[v].block == block;
                        if (info[v].role == HostRole::Base)
                            bases.insert(info[v].index);
                        else
                            cells.insert(info[v].index);
                    }
                    ok = ok && cells.size() <= 1 && bases.size() <= 2;
                    if (ok && cells.size() == 1) {
                        auto edge = host.atlas.blocks[block].cells[*cells.begin()].edge;
                        for (auto b : bases)
                            ok = ok && (b == edge.first || b == edge.second);
                    }
                    if (! ok && ++bad == 1)
                        witness = std::vector<Vertex>(map.begin(), map.end());
                    return true;
                }, 1'000'000);
                report.check("homomorphisms of gadget " + std::to_string(i + 1) + " stay in one matching block and one cell",
                    bad == 0 && result.visited > 0, std::to_string(result.visited) + " homomorphisms", witness);
            }
            report.timing("host_embedding", seconds_since(start));
            return report;
        }

        auto run_graphon(const ExperimentConfig & config) -> RunReport
        {
            RunReport report{"graphon"};
            Deadline deadline{config.wall_clock_seconds};
            std::mt19937_64 rng{config.seed};
            auto options = options_from(config);
            auto family = family_from_config(config);
            auto graph = host_graph_from_config(config);
            auto & dagger = family.dagger.front();
            report.param("m", family.m);
            report.param("k", family.k.front());
            report.param("graph_vertices", graph.n);
            report.param("graph_edges", graph.edges.size());

            json rows = json::array();
            for (int r : config.r) {
                deadline.check("graphon host");
                auto start = std::chrono::steady_clock::now();
                auto host = build_T_star(graph, {dagger}, {r});
                const int n = host.tournament.size();

                DensityMatrix m;
                if (config.graphon_sampled_pairs == 0)
                    m = density_matrix(dagger, host.tournament.graph(), options);
                else {
                    std::vector<Arc> pairs;
                    std::vector<Vertex> bases;
                    for (auto & block : host.atlas.blocks)
                        bases.insert(bases.end(), block.base.begin(), block.base.end());
                    for (std::size_t p = 0 ; p < bases.size() ; ++p)
                        for (std::size_t q = p ; q < bases.size() ; ++q)
                            pairs.emplace_back(bases[p], bases[q]);
                    for (int p = 0 ; p < config.graphon_sampled_pairs ; ++p)
                        pairs.emplace_back(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1));
                    m = density_matrix_on_pairs(dagger, host.tournament.graph(), pairs, options);
                }

                auto verdict = graphon_pattern_check(m, host.atlas, 1);
                json witness = nullptr;
                if (verdict.offending)
                    witness = {verdict.offending->first, verdict.offending->second};
                report.check("density matrix is a constant times the adjacency of " + std::to_string(r) + " copies of G",
                    verdict.holds, verdict.holds ? "" : verdict.reason, witness);

                json row{{"r", r}, {"host_vertices", n}, {"nonzero_entries", m.nonzero().size()},
                    {"checked_pairs", verdict.checked_pairs}, {"expected_pairs", verdict.expected_pairs},
                    {"complete", m.complete()}, {"seconds", seconds_since(start)}};
                if (verdict.holds) {
                    row["count"] = verdict.count.get_str();
                    row["b"] = verdict.b ? json(verdict.b->get_str()) : json(nullptr);
                    row["a"] = to_string(verdict.a);
                    row["a_approx"] = to_double(verdict.a);
                }
                rows.push_back(std::move(row));
            }
            report.measure("blocks", rows);
            return report;
        }

        auto load_hosts(const std::string & dir) -> std::vector<Tournament>
        {
            std::vector<fs::path> files;
            for (auto & entry : fs::directory_iterator{dir})
                if (entry.is_regular_file())
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            std::vector<Tournament> hosts;
            for (auto & f : files)
                hosts.push_back(load_tournament(f.string()));
            return hosts;
        }

        auto run_region(const ExperimentConfig & config) -> RunReport
        {
            RunReport report{"region"};
            Deadline deadline{config.wall_clock_seconds};
            std::mt19937_64 rng{config.seed};

            std::vector<Tournament> hosts;
            if (! config.hosts_dir.empty())
                hosts = load_hosts(config.hosts_dir);
            else
                for (int h = 0 ; h < config.region_hosts ; ++h)
                    hosts.push_back(random_tournament(uniform(rng, 3, 7), rng()));

            auto start = std::chrono::steady_clock::now();
            auto result = verify_region_on_hosts(build_F_dagger(toy_gadget()), hosts, config.tolerance);
            json witness = nullptr;
            if (! result.outside.empty())
                witness = {{"host", result.outside.front().host}, {"x", result.outside.front().x}, {"y", result.outside.front().y}};
            report.check("every (x, y) lies in the region", result.passed(),
                std::to_string(result.checked) + " hosts checked, " + std::to_string(result.skipped) + " with vanishing p4", witness);
            report.check("every exact (x, y) lies in the region", result.exact_outside == 0,
                std::to_string(result.exact_outside) + " outside");
            report.measure("hosts_checked", result.checked);
            report.measure("hosts_skipped", result.skipped);
            report.timing("hosts", seconds_since(start));
            deadline.check("region hosts");

            // Small hosts rarely carry the toy gadget, so larger ones add coverage.
            std::vector<Tournament> larger;
            for (int h = 0 ; h < 50 ; ++h)
                larger.push_back(random_tournament(uniform(rng, 8, 12), rng()));
            auto wider = verify_region_on_hosts(build_F_dagger(toy_gadget()), larger, config.tolerance);
            report.check("every (x, y) on 8 to 12 vertex hosts lies in the region", wider.passed() && wider.exact_outside == 0,
                std::to_string(wider.checked) + " hosts checked, " + std::to_string(wider.skipped) + " with vanishing p4");
            deadline.check("larger region hosts");

            bool vertices_ok = true;
            long first_bad = 0;
            for (long r = 1 ; r <= 1'000'000 && vertices_ok ; ++r) {
                double x = 1.0 / static_cast<double>(r);
                if (! in_region(x, x * x, 0.0)) {
                    vertices_ok = false;
                    first_bad = r;
                }
            }
            report.check("hull vertices (1/r, 1/r^2) are members for r up to 10^6", vertices_ok,
                vertices_ok ? "" : "fails at r = " + std::to_string(first_bad));

            bool exact_ok = true;
            for (long r = 1 ; r <= 1000 && exact_ok ; ++r) {
                Rational x = make_rational(1, r);
                exact_ok = in_region(x, x * x);
                auto c = chord(BigInt{r});
                Rational left = make_rational(1, r + 1);
                exact_ok = exact_ok && c.slope * left + c.intercept == left * left && c.slope * x + c.intercept == x * x
                    && c.slope == make_rational(2 * r + 1, r * (r + 1)) && c.intercept == make_rational(-1, r * (r + 1));
            }
            report.check("hull vertices and chords are exact for r up to 1000", exact_ok);

            std::uniform_real_distribution<double> unit{0.0, 1.0};
            double worst = 0;
            for (int i = 0 ; i < 1000 ; ++i) {
                NonnegVector v{{unit(rng), unit(rng), unit(rng)}};
                PowerSums p{v.power_sum(1), v.power_sum(2), v.power_sum(3)};
                auto e = elementary_from_power(p);
                auto back = power_from_elementary(e);
                worst = std::max({worst, std::abs(back.p1 - p.p1), std::abs(back.p2 - p.p2), std::abs(back.p3 - p.p3),
                    std::abs(e.e2 - v.elementary(2)), std::abs(e.e3 - v.elementary(3))});
            }
            report.check("power sums and elementary symmetric sums round-trip", worst <= 1e-12,
                "worst deviation " + std::to_string(worst));
            report.measure("newton_worst", worst);

            int extremality_failures = 0;
            for (int i = 0 ; i < 50 ; ++i) {
                double c2 = unit(rng) * 2 - 1, c3 = unit(rng) * 2 - 1;
                double lowest = equal_mass_minimum(c2, c3, 1.0, 1000);
                double sampled = sampled_minimum(c2, c3, 1.0, 8, 200, rng);
                if (sampled < lowest - config.tolerance)
                    ++extremality_failures;
            }
            report.check("sampled minima of c2 e2 + c3 e3 are not below the equal-mass minimum", extremality_failures == 0,
                std::to_string(extremality_failures) + " of 50 forms");
            return report;
        }

        auto run_reduction(const ExperimentConfig & config) -> RunReport
        {
            RunReport report{"reduction"};
            Deadline deadline{config.wall_clock_seconds};
            std::mt19937_64 rng{config.seed};

            // Random hosts on which every fourth necklace density of the two
            // toy gadgets is nonzero, then some on which one vanishes.
            auto toy = toy_family(2);
            std::vector<Tournament> hosts, degenerate_hosts;
            int draws = 0;
            while (static_cast<int>(hosts.size()) < config.reduction_hosts) {
                deadline.check("reduction host sampling");
                if (++draws > 1000 * config.reduction_hosts)
                    throw BudgetExceeded{"too few random tournaments with nonvanishing necklace densities"};
                auto t = random_tournament(uniform(rng, 5, 8), rng());
                auto d = necklace_densities(toy.dagger, t.graph());
                if (d.t4[0] != 0 && d.t4[1] != 0)
                    hosts.push_back(std::move(t));
                else if (degenerate_hosts.size() < 3)
                    degenerate_hosts.push_back(std::move(t));
            }
            degenerate_hosts.push_back(transitive_tournament(4));
            degenerate_hosts.push_back(transitive_tournament(6));
            report.measure("host_draws", draws);
            hosts.insert(hosts.end(), degenerate_hosts.begin(), degenerate_hosts.end());

            const char * polynomials[] = {"x1", "x1 - x2", "x1^2 - 3"};
            json rows = json::array();
            for (auto text : polynomials) {
                auto start = std::chrono::steady_clock::now();
                auto p = parse_polynomial(text);
                auto family = toy_family(p.variables());
                auto necklaces = make_necklaces(family.dagger);
                auto r = build_f_of_p(p, necklaces, ClearingMode::Minimal);

                int mismatches = 0, nonzero_degenerate = 0, degenerate = 0;
                json witness = nullptr;
                for (std::size_t h = 0 ; h < hosts.size() ; ++h) {
                    deadline.check("reduction identity");
                    auto & t = hosts[h].graph();
                    auto densities = necklace_densities(family.dagger, t);
                    auto left = eval_quantum(r.quantum, t);
                    bool vanishing = std::any_of(densities.t4.begin(), densities.t4.end(), [] (const Rational & q) { return q == 0; });
                    if (vanishing) {
                        ++degenerate;
                        if (left != 0 && ++nonzero_degenerate == 1)
                            witness = {{"host", h}, {"value", to_string(left)}};
                        continue;
                    }
                    auto right = reduction_right_side(r, densities);
                    if (left != right && ++mismatches == 1)
                        witness = {{"host", h}, {"quantum", to_string(left)}, {"formula", to_string(right)}};
                }
                std::string clearing;
                for (std::size_t i = 0 ; i < r.clearing.size() ; ++i)
                    clearing += (i ? "," : "") + std::to_string(r.clearing[i]);
                report.check(std::string{"reduction identity holds exactly for "} + text, mismatches == 0 && nonzero_degenerate == 0,
                    std::to_string(hosts.size() - degenerate) + " hosts compared, " + std::to_string(degenerate)
                        + " with vanishing p4, clearing " + clearing, witness);
                std::vector<std::string> names;
                for (char letter : {'x', 'y'})
                    for (int i = 1 ; i <= p.variables() ; ++i)
                        names.push_back(letter + std::to_string(i));
                rows.push_back({{"p", text}, {"pbar", to_string(r.pbar.poly, names)}, {"penalty", r.pbar.penalty.get_str()},
                    {"clearing", r.clearing}, {"terms", r.quantum.terms().size()}, {"seconds", seconds_since(start)}});
            }
            report.measure("polynomials", rows);

            // The sign behaviour on both sides of the equivalence.
            for (auto [text, expect_negative] : {std::pair{"x1", false}, std::pair{"-1", true}}) {
                deadline.check("sign check");
                auto p = parse_polynomial(text, 1);
                auto family = toy_family(1);
                auto r = build_f_of_p(p, make_necklaces(family.dagger), ClearingMode::Minimal);
                auto sign = check_sign_direction(p, r, family.dagger, hosts, 8, config.tolerance);
                bool ok = sign.nonzero_degenerate == 0 && ! sign.contradiction
                    && (expect_negative ? sign.negative_hosts > 0 : sign.negative_hosts == 0);
                report.check(std::string{"sign behaviour of the reduction for "} + text, ok,
                    std::to_string(sign.negative_hosts) + " negative hosts of " + std::to_string(sign.hosts.size()));
            }
            return report;
        }
    }

    auto run_convergence(const ExperimentConfig & config) -> RunReport
    {
        RunReport report{"convergence"};
        Deadline deadline{config.wall_clock_seconds};
        if (config.sizes.empty() || config.convergence_r.empty())
            throw ConfigError{"convergence needs at least one size and one r"};

        struct Row
        {
            int n, d, r;
            double lambda1, lambda2, rho, x, y, error_x, error_y, bound;
        };
        std::vector<Row> rows;
        std::vector<SimpleGraph> graphs;
        std::vector<std::vector<double>> spectra;

        for (int n : config.sizes) {
            deadline.check("convergence spectra");
            int d = degree_for_size(n);
            graphs.push_back(random_regular_graph(n, d, config.seed + static_cast<std::uint64_t>(n)));
            spectra.push_back(adjacency_spectrum(graphs.back()));
            auto & l = spectra.back();
            double s4 = power_sum(l, 4), s8 = power_sum(l, 8), s12 = power_sum(l, 12);
            double lambda1 = std::abs(l[0]), lambda2 = l.size() > 1 ? std::abs(l[1]) : 0.0;
            double rho = lambda2 / lambda1;
            double bound = 3 * (n * std::pow(rho, 8) + n * std::pow(rho, 12));
            for (int r : config.convergence_r) {
                double x = s8 / (r * s4 * s4), y = s12 / (double(r) * r * s4 * s4 * s4);
                rows.push_back({n, d, r, lambda1, lambda2, rho, x, y, std::abs(x - 1.0 / r), std::abs(y - 1.0 / (double(r) * r)), bound});
            }
        }

        json table = json::array();
        for (auto & row : rows)
            table.push_back({{"n", row.n}, {"d", row.d}, {"r", row.r}, {"lambda1", row.lambda1}, {"lambda2", row.lambda2},
                {"rho", row.rho}, {"x", row.x}, {"y", row.y}, {"error_x", row.error_x}, {"error_y", row.error_y},
                {"bound", row.bound}});
        report.measure("trajectory", table);

        for (int r : config.convergence_r) {
            std::vector<const Row *> series;
            for (auto & row : rows)
                if (row.r == r)
                    series.push_back(&row);
            bool decreasing = true;
            for (std::size_t i = 1 ; i < series.size() ; ++i)
                decreasing = decreasing && series[i]->error_x < series[i - 1]->error_x && series[i]->error_y < series[i - 1]->error_y;
            report.check("errors decrease with n for r = " + std::to_string(r), decreasing);

            auto & last = *series.back();
            std::ostringstream detail;
            detail << "n = " << last.n << ": error_x " << last.error_x << ", error_y " << last.error_y << ", bound " << last.bound;
            report.check("final error within the spectral-gap bound for r = " + std::to_string(r),
                last.error_x <= last.bound && last.error_y <= last.bound, detail.str());
        }

        if (config.cross_check) {
            auto dagger = build_F_dagger(toy_gadget());
            auto & graph = graphs.front();
            json checks = json::array();
            for (int r : config.convergence_r) {
                deadline.check("convergence cross-check");
                auto start = std::chrono::steady_clock::now();
                auto host = build_T_star(graph, {dagger}, {r});
                auto m = density_matrix(dagger, host.tournament.graph(), options_from(config));
                auto pattern = graphon_pattern_check(m, host.atlas, 1);
                auto tournament_side = xy_point_spectral(m);
                const Row * closed = nullptr;
                for (auto & row : rows)
                    if (row.n == graph.n && row.r == r)
                        closed = &row;
                double dx = std::abs(tournament_side.x - closed->x), dy = std::abs(tournament_side.y - closed->y);
                std::ostringstream detail;
                detail << "host " << host.tournament.size() << " vertices: tournament (" << tournament_side.x << ", "
                    << tournament_side.y << ") vs spectrum (" << closed->x << ", " << closed->y << ")";
                report.check("tournament pipeline matches the spectrum at n = " + std::to_string(graph.n) + ", r = " + std::to_string(r),
                    dx <= config.tolerance && dy <= config.tolerance, detail.str());
                checks.push_back({{"r", r}, {"host_vertices", host.tournament.size()}, {"nonzero_entries", m.nonzero().size()},
                    {"support", m.support().size()}, {"pattern_holds", pattern.holds}, {"pattern_reason", pattern.reason},
                    {"tournament_x", tournament_side.x}, {"tournament_y", tournament_side.y},
                    {"spectrum_x", closed->x}, {"spectrum_y", closed->y}, {"seconds", seconds_since(start)}});
            }
            report.measure("cross_check", checks);
        }
        return report;
    }

    auto run_suite(const std::string & name, const ExperimentConfig & config) -> RunReport
    {
        config.validate();
        auto start = std::chrono::steady_clock::now();
        RunReport report = [&] {
            if (name == "core")
                return run_core(config);
            if (name == "claims")
                return run_claims(config);
            if (name == "spectral")
                return run_spectral(config);
            if (name == "region")
                return run_region(config);
            if (name == "reduction")
                return run_reduction(config);
            if (name == "graphon")
                return run_graphon(config);
            if (name == "convergence")
                return run_convergence(config);
            throw ConfigError{"unknown suite " + name};
        }();
        report.param("config", config.to_json());
        report.timing("total", seconds_since(start));
        return report;
    }

    auto write_report(const RunReport & report, const std::string & output_dir) -> void
    {
        fs::create_directories(output_dir);
        write_text_file((fs::path{output_dir} / (report.suite() + ".json")).string(), report.json().dump(2) + "\n");

        auto & measurements = report.json()["measurements"];
        if (measurements.contains("trajectory")) {
            std::ostringstream csv;
            csv << "n,d,r,lambda1,lambda2,rho,x,y,error_x,error_y,bound\n";
            csv.precision(17);
            for (auto & row : measurements["trajectory"])
                csv << row["n"].get<int>() << ',' << row["d"].get<int>() << ',' << row["r"].get<int>() << ','
                    << row["lambda1"].get<double>() << ',' << row["lambda2"].get<double>() << ',' << row["rho"].get<double>() << ','
                    << row["x"].get<double>() << ',' << row["y"].get<double>() << ',' << row["error_x"].get<double>() << ','
                    << row["error_y"].get<double>() << ',' << row["bound"].get<double>() << '\n';
            write_text_file((fs::path{output_dir} / "convergence.csv").string(), csv.str());
        }
    }
}
