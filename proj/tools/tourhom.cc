#include <tourhom/experiments.hh>
#include <tourhom/gadget.hh>
#include <tourhom/hom.hh>
#include <tourhom/host.hh>
#include <tourhom/io.hh>
#include <tourhom/reduction.hh>
#include <tourhom/region.hh>
#include <tourhom/spectral.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <regex>

using namespace tourhom;
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{
    enum ExitCode
    {
        exit_pass = 0,
        exit_failure = 1,
        exit_error = 2
    };

    auto print(const json & j) -> void
    {
        std::cout << j.dump(2) << std::endl;
    }

    auto parse_list(const std::string & text) -> std::vector<int>
    {
        std::vector<int> values;
        std::string item;
        std::istringstream in{text};
        while (std::getline(in, item, ','))
            if (! item.empty())
                values.push_back(std::stoi(item));
        return values;
    }

    // Rooted files named <prefix>_<i>.txt, in index order.
    auto load_indexed(const fs::path & dir, const std::string & prefix) -> std::vector<RootedDigraph>
    {
        std::regex pattern{prefix + "_([0-9]+)\\.txt"};
        std::vector<std::pair<int, fs::path>> found;
        for (auto & entry : fs::directory_iterator{dir}) {
            std::smatch match;
            auto name = entry.path().filename().string();
            if (std::regex_match(name, match, pattern))
                found.emplace_back(std::stoi(match[1]), entry.path());
        }
        std::sort(found.begin(), found.end());
        std::vector<RootedDigraph> result;
        for (auto & [i, path] : found)
            result.push_back(load_rooted(path.string()));
        return result;
    }

    auto load_family_daggers(const std::string & dir) -> std::vector<RootedDigraph>
    {
        if (! fs::is_directory(dir))
            throw ConfigError{"family directory " + dir + " does not exist"};
        auto daggers = load_indexed(dir, "fdagger");
        if (daggers.empty())
            for (auto & f : load_indexed(dir, "f"))
                daggers.push_back(build_F_dagger(f));
        if (daggers.empty())
            throw ConfigError{"family directory " + dir + " holds no fdagger_<i>.txt or f_<i>.txt files"};
        return daggers;
    }

    auto load_polynomial(const std::string & path) -> IntPolynomial
    {
        auto text = read_text_file(path);
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{')
            return polynomial_from_json(text);
        return parse_polynomial(text);
    }

    auto report_json(const F0Report & r) -> json
    {
        return {{"max_out_degree", r.max_out_degree}, {"max_in_degree", r.max_in_degree},
            {"max_biclique", r.max_biclique}, {"max_transitive", r.max_transitive}};
    }

    auto xy_json(const XYPoint & p) -> json
    {
        json j{{"x", p.x}, {"y", p.y}};
        if (p.exact_x) {
            j["x_exact"] = to_string(*p.exact_x);
            j["y_exact"] = to_string(*p.exact_y);
            j["in_region"] = in_region(*p.exact_x, *p.exact_y);
        }
        else
            j["in_region"] = in_region(p.x, p.y, 1e-9);
        if (p.traces)
            j["traces"] = {{"4", p.traces->t4.get_str()}, {"8", p.traces->t8.get_str()}, {"12", p.traces->t12.get_str()}};
        return j;
    }

    struct VerifyOptions
    {
        std::vector<std::string> suites;
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<int> m, s;
        std::string graph, hosts, f0, out;
        std::string r;
        std::optional<double> wall_clock;
    };

    auto load_config(const VerifyOptions & o) -> ExperimentConfig
    {
        auto config = o.config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_json(read_text_file(o.config_path));
        if (o.seed)
            config.seed = *o.seed;
        if (o.m)
            config.m = *o.m;
        if (o.s)
            config.s = *o.s;
        if (! o.graph.empty())
            config.graph_path = o.graph;
        if (! o.hosts.empty())
            config.hosts_dir = o.hosts;
        if (! o.f0.empty())
            config.f0_path = o.f0;
        if (! o.out.empty())
            config.output_dir = o.out;
        if (! o.r.empty())
            config.r = parse_list(o.r);
        if (o.wall_clock)
            config.wall_clock_seconds = *o.wall_clock;
        return config;
    }

    auto run_and_report(const std::vector<std::string> & suites, const ExperimentConfig & config) -> int
    {
        bool all_passed = true;
        for (auto & name : suites) {
            auto report = name == "convergence" ? run_convergence(config) : run_suite(name, config);
            for (auto & c : report.checks())
                std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << name << ": " << c["name"].get<std::string>()
                    << (c.contains("detail") ? " (" + c["detail"].get<std::string>() + ")" : "") << '\n';
            if (! config.output_dir.empty())
                write_report(report, config.output_dir);
            else
                print(report.json());
            all_passed = all_passed && report.passed();
        }
        return all_passed ? exit_pass : exit_failure;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Tournament homomorphism densities: gadgets, hosts, density matrices and reductions"};
    app.require_subcommand(1);
    int status = exit_pass;

    // sample-f0
    auto sample = app.add_subcommand("sample-f0", "Sample a base tournament meeting the degree, biclique and cycle conditions");
    int sample_n = 36, sample_a = 0, sample_t3 = 0, sample_tries = 200;
    std::uint64_t sample_seed = 1;
    std::string sample_out;
    sample->add_option("--n", sample_n, "Number of vertices")->check(CLI::PositiveNumber);
    sample->add_option("--a", sample_a, "Biclique size to exclude (default ceil(sqrt n))");
    sample->add_option("--t3", sample_t3, "Transitive-set size to exclude");
    sample->add_option("--seed", sample_seed);
    sample->add_option("--max-tries", sample_tries)->check(CLI::PositiveNumber);
    sample->add_option("--out", sample_out, "Tournament file to write")->required();
    sample->callback([&] {
        int a = sample_a > 0 ? sample_a : default_a(sample_n);
        int t3 = sample_t3 > 0 ? sample_t3 : default_t3(sample_n);
        auto f0 = sample_F0(sample_n, a, t3, sample_seed, sample_tries);
        write_text_file(sample_out, to_text(f0.tournament.graph()));
        print({{"n", f0.n}, {"a", f0.a}, {"t3", f0.t3}, {"tries", f0.tries}, {"seed", f0.seed}, {"report", report_json(f0.report)}});
    });

    // check-f0
    auto check = app.add_subcommand("check-f0", "Check the three base-tournament conditions");
    std::string check_input;
    int check_a = 0, check_t3 = 0;
    std::uint64_t check_nodes = 0;
    check->add_option("--input", check_input)->required()->check(CLI::ExistingFile);
    check->add_option("--a", check_a);
    check->add_option("--t3", check_t3);
    check->add_option("--node-limit", check_nodes, "Search-node cap, 0 for none");
    check->callback([&] {
        auto t = load_tournament(check_input);
        int a = check_a > 0 ? check_a : default_a(t.size());
        int t3 = check_t3 > 0 ? check_t3 : default_t3(t.size());
        auto one = check_condition_I(t, 2 * t.size() / 3);
        auto two = check_condition_II(t, a, check_nodes);
        auto three = check_condition_III(t, t3, check_nodes);
        json j{{"n", t.size()}, {"a", a}, {"t3", t3}, {"degree_bound", 2 * t.size() / 3},
            {"condition_I", one.holds}, {"condition_II", two.holds}, {"condition_III", three.holds},
            {"max_transitive", three.max_transitive}};
        if (one.witness)
            j["degree_witness"] = *one.witness;
        if (two.witness)
            j["biclique_witness"] = {{"from", two.witness->from}, {"to", two.witness->to}};
        if (! three.holds)
            j["transitive_witness"] = three.witness;
        print(j);
        status = one.holds && two.holds && three.holds ? exit_pass : exit_failure;
    });

    // build-gadget
    auto gadget = app.add_subcommand("build-gadget", "Build F_i and its symmetrised double from a base tournament");
    std::string gadget_f0, gadget_out_f, gadget_out_dagger;
    int gadget_k = 0;
    gadget->add_option("--f0", gadget_f0)->required()->check(CLI::ExistingFile);
    gadget->add_option("--k", gadget_k)->required();
    gadget->add_option("--out-f", gadget_out_f)->required();
    gadget->add_option("--out-fdagger", gadget_out_dagger);
    gadget->callback([&] {
        auto f = build_F_i(load_tournament(gadget_f0), gadget_k);
        write_text_file(gadget_out_f, to_text(f));
        if (! gadget_out_dagger.empty())
            write_text_file(gadget_out_dagger, to_text(build_F_dagger(f)));
    });

    // necklace
    auto necklace = app.add_subcommand("necklace", "Glue copies of a rooted gadget into a cycle");
    std::string necklace_gadget, necklace_out;
    int necklace_len = 4;
    necklace->add_option("--gadget", necklace_gadget)->required()->check(CLI::ExistingFile);
    necklace->add_option("--len", necklace_len)->required();
    necklace->add_option("--out", necklace_out)->required();
    necklace->callback([&] {
        write_text_file(necklace_out, to_text(build_necklace(load_rooted(necklace_gadget), necklace_len)));
    });

    // hom
    auto hom = app.add_subcommand("hom", "Count (or list) homomorphisms");
    std::string hom_pattern, hom_host;
    std::optional<Vertex> root_x, root_y;
    bool hom_enumerate = false;
    std::uint64_t hom_cap = 1000, hom_nodes = 0;
    hom->add_option("--pattern", hom_pattern)->required()->check(CLI::ExistingFile);
    hom->add_option("--host", hom_host)->required()->check(CLI::ExistingFile);
    auto rx = hom->add_option("--root-x", root_x, "Image of the pattern's root z");
    auto ry = hom->add_option("--root-y", root_y, "Image of the pattern's root w");
    rx->needs(ry);
    ry->needs(rx);
    hom->add_flag("--enumerate", hom_enumerate, "Print the maps");
    hom->add_option("--cap", hom_cap, "Most maps to list before failing");
    hom->add_option("--node-limit", hom_nodes);
    hom->callback([&] {
        auto host = load_digraph(hom_host);
        std::vector<Pin> pins;
        Digraph pattern;
        if (root_x) {
            auto rooted = load_rooted(hom_pattern);
            pattern = rooted.graph;
            pins = {{rooted.z, *root_x}, {rooted.w, *root_y}};
            if (*root_x >= host.size() || *root_y >= host.size())
                throw ConfigError{"root images must be host vertices"};
        }
        else
            pattern = load_digraph(hom_pattern);

        if (! hom_enumerate) {
            HomOptions options;
            options.node_limit = hom_nodes;
            HomCounter counter{pattern, host, options};
            std::cout << counter.count(pins).get_str() << std::endl;
            return;
        }
        auto result = enumerate_homs(pattern, host, pins, [] (std::span<const Vertex> map) {
            for (std::size_t i = 0 ; i < map.size() ; ++i)
                std::cout << (i ? " " : "") << map[i];
            std::cout << '\n';
            return true;
        }, hom_cap);
        std::cout << result.visited << std::endl;
    });

    // build-host
    auto build = app.add_subcommand("build-host", "Build the host tournament from a graph and gadgets");
    std::string build_graph, build_f0, build_out, build_atlas, build_k, build_r = "1";
    int build_m = 36, build_s = 1;
    std::uint64_t build_seed = 1;
    build->add_option("--graph", build_graph)->required()->check(CLI::ExistingFile);
    build->add_option("--f0", build_f0, "Base tournament (sampled from --m and --seed when absent)");
    build->add_option("--m", build_m);
    build->add_option("--s", build_s);
    build->add_option("--k", build_k, "Comma-separated k values");
    build->add_option("--r", build_r, "Comma-separated multiplicities");
    build->add_option("--seed", build_seed);
    build->add_option("--out", build_out)->required();
    build->add_option("--atlas", build_atlas);
    build->callback([&] {
        auto f0 = build_f0.empty() ? sample_F0(build_m, default_a(build_m), default_t3(build_m), build_seed).tournament
                                   : load_tournament(build_f0);
        auto k = build_k.empty() ? make_k_sequence(f0.size(), build_s) : parse_list(build_k);
        auto r = parse_list(build_r);
        if (r.size() == 1 && k.size() > 1)
            r.resize(k.size(), r.front());
        auto family = build_family(f0, k);
        auto host = build_T_star(load_simple_graph(build_graph), family.dagger, r);
        write_text_file(build_out, to_text(host.tournament.graph()));
        if (! build_atlas.empty())
            write_text_file(build_atlas, atlas_to_json(host.atlas));
        print({{"vertices", host.tournament.size()}, {"k", k}, {"r", r}});
    });

    // density-matrix
    auto dm = app.add_subcommand("density-matrix", "Rooted counts of a gadget over host pairs");
    std::string dm_gadget, dm_host, dm_atlas, dm_out, dm_density;
    int dm_block = 1;
    dm->add_option("--gadget", dm_gadget)->required()->check(CLI::ExistingFile);
    dm->add_option("--host", dm_host)->required()->check(CLI::ExistingFile);
    dm->add_option("--atlas", dm_atlas, "Host atlas; enables the block-pattern check")->check(CLI::ExistingFile);
    dm->add_option("--block", dm_block, "Gadget index whose blocks the pattern check uses");
    dm->add_option("--out", dm_out, "CSV of counts")->required();
    dm->add_option("--out-density", dm_density, "CSV of densities");
    dm->callback([&] {
        auto m = density_matrix(load_rooted(dm_gadget), load_digraph(dm_host));
        write_text_file(dm_out, counts_to_csv(m));
        if (! dm_density.empty())
            write_text_file(dm_density, densities_to_csv(m));
        json j{{"order", m.order()}, {"denominator", m.denominator().get_str()}, {"nonzero", m.nonzero().size()}};
        if (! dm_atlas.empty()) {
            auto verdict = graphon_pattern_check(m, atlas_from_json(read_text_file(dm_atlas)), dm_block);
            j["pattern"] = {{"holds", verdict.holds}, {"reason", verdict.reason}};
            if (verdict.holds)
                j["pattern"].update({{"count", verdict.count.get_str()}, {"a", to_string(verdict.a)},
                    {"b", verdict.b ? json(verdict.b->get_str()) : json(nullptr)}});
            status = verdict.holds ? exit_pass : exit_failure;
        }
        print(j);
    });

    // xy
    auto xy = app.add_subcommand("xy", "The (x, y) statistics of a density matrix");
    std::string xy_matrix;
    bool xy_spectral = false;
    xy->add_option("--matrix", xy_matrix)->required()->check(CLI::ExistingFile);
    xy->add_flag("--spectral", xy_spectral, "Use the floating-point spectrum instead of exact traces");
    xy->callback([&] {
        auto m = density_matrix_from_csv(read_text_file(xy_matrix));
        print(xy_json(xy_spectral ? xy_point_spectral(m) : xy_point(m)));
    });

    // region-check
    auto region = app.add_subcommand("region-check", "Test membership of (x, y) in the region");
    std::string region_x, region_y;
    double region_tol = 0;
    region->add_option("--x", region_x, "Decimal or p/q")->required();
    region->add_option("--y", region_y, "Decimal or p/q")->required();
    region->add_option("--tol", region_tol);
    region->callback([&] {
        bool exact = region_x.find_first_of(".eE") == std::string::npos && region_y.find_first_of(".eE") == std::string::npos;
        bool inside = exact ? in_region(parse_rational(region_x), parse_rational(region_y))
                            : in_region(std::stod(region_x), std::stod(region_y), region_tol);
        double x = exact ? to_double(parse_rational(region_x)) : std::stod(region_x);
        print({{"inside", inside}, {"exact", exact}, {"bracket", bracket_of(x)}});
        status = inside ? exit_pass : exit_failure;
    });

    // reduce
    auto reduce = app.add_subcommand("reduce", "Build the quantum digraph for a polynomial");
    std::string reduce_poly, reduce_family, reduce_mode = "minimal", reduce_out, reduce_clearing;
    reduce->add_option("--poly", reduce_poly, "Polynomial as text or JSON")->required()->check(CLI::ExistingFile);
    reduce->add_option("--family", reduce_family, "Directory of fdagger_<i>.txt or f_<i>.txt")->required();
    reduce->add_option("--mode", reduce_mode)->check(CLI::IsMember({"minimal", "three-degree", "explicit"}));
    reduce->add_option("--clearing", reduce_clearing, "Comma-separated exponents for explicit mode");
    reduce->add_option("--out", reduce_out)->required();
    reduce->callback([&] {
        auto daggers = load_family_daggers(reduce_family);
        auto p = load_polynomial(reduce_poly);
        if (p.variables() > static_cast<int>(daggers.size()))
            throw ConfigError{"polynomial uses " + std::to_string(p.variables()) + " variables but the family has "
                + std::to_string(daggers.size()) + " gadgets"};
        if (p.variables() < static_cast<int>(daggers.size()))
            daggers.resize(p.variables());
        auto mode = reduce_mode == "three-degree" ? ClearingMode::ThreeDegree
            : reduce_mode == "explicit" ? ClearingMode::Explicit : ClearingMode::Minimal;
        auto clearing = parse_list(reduce_clearing);
        auto r = build_f_of_p(p, make_necklaces(daggers), mode, clearing);
        write_text_file(reduce_out, quantum_to_json(r.quantum));
        print({{"pbar", to_string(r.pbar.poly)}, {"penalty", r.pbar.penalty.get_str()}, {"clearing", r.clearing},
            {"terms", r.quantum.terms().size()}});
    });

    // eval-quantum
    auto eval = app.add_subcommand("eval-quantum", "Evaluate a quantum digraph's density on a host");
    std::string eval_quantum_path, eval_host;
    eval->add_option("--quantum", eval_quantum_path)->required()->check(CLI::ExistingFile);
    eval->add_option("--host", eval_host)->required()->check(CLI::ExistingFile);
    eval->callback([&] {
        auto base = fs::path{eval_quantum_path}.parent_path().string();
        auto q = quantum_from_json(read_text_file(eval_quantum_path), base.empty() ? "." : base);
        auto value = eval_quantum(q, load_digraph(eval_host));
        print({{"value", to_string(value)}, {"approx", to_double(value)}});
    });

    // verify
    auto verify = app.add_subcommand("verify", "Run verification suites");
    VerifyOptions vo;
    verify->add_option("--suite", vo.suites, "core, claims, spectral, region, reduction, graphon, convergence or all")
        ->required();
    auto add_common = [&] (CLI::App * cmd) {
        cmd->add_option("--config", vo.config_path, "JSON config file")->check(CLI::ExistingFile);
        cmd->add_option("--seed", vo.seed, "Overrides the config seed");
        cmd->add_option("--out", vo.out, "Directory for JSON reports and CSV tables");
        cmd->add_option("--wall-clock", vo.wall_clock, "Seconds before a suite gives up");
    };
    add_common(verify);
    verify->add_option("--m", vo.m);
    verify->add_option("--s", vo.s);
    verify->add_option("--graph", vo.graph)->check(CLI::ExistingFile);
    verify->add_option("--hosts", vo.hosts)->check(CLI::ExistingDirectory);
    verify->add_option("--f0", vo.f0)->check(CLI::ExistingFile);
    verify->add_option("--r", vo.r, "Comma-separated multiplicities");
    verify->callback([&] {
        auto config = load_config(vo);
        std::vector<std::string> suites;
        for (auto & s : vo.suites)
            if (s == "all")
                suites.insert(suites.end(), {"core", "spectral", "region", "reduction", "claims", "graphon", "convergence"});
            else
                suites.push_back(s);
        status = run_and_report(suites, config);
    });

    // converge
    auto converge = app.add_subcommand("converge", "Convergence study on random regular graphs");
    std::string converge_sizes, converge_r;
    bool no_cross_check = false;
    add_common(converge);
    converge->add_option("--sizes", converge_sizes, "Comma-separated graph sizes");
    converge->add_option("--r", converge_r, "Comma-separated multiplicities");
    converge->add_flag("--no-cross-check", no_cross_check, "Skip the tournament-side comparison");
    converge->callback([&] {
        auto config = load_config(vo);
        if (! converge_sizes.empty())
            config.sizes = parse_list(converge_sizes);
        if (! converge_r.empty())
            config.convergence_r = parse_list(converge_r);
        if (no_cross_check)
            config.cross_check = false;
        config.validate();
        status = run_and_report({"convergence"}, config);
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_error;
    }
    catch (const ConfigError & e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_error;
    }
    catch (const BudgetExceeded & e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return exit_error;
    }
    catch (const SearchBudgetExceeded & e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return exit_error;
    }
    catch (const CapExceeded & e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return exit_error;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return status;
}
