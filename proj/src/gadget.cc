#include <tourhom/gadget.hh>

#include <algorithm>
#include <cmath>
#include <random>

namespace tourhom
{
    namespace
    {
        struct NodeCounter
        {
            std::uint64_t limit, used = 0;

            auto tick(const char * what) -> void
            {
                if (limit != 0 && ++used > limit)
                    throw SearchBudgetExceeded{std::string{what} + ": node limit " + std::to_string(limit) + " exceeded"};
            }
        };

        auto find_biclique(const Digraph & g, int a, NodeCounter & nodes) -> std::optional<Biclique>
        {
            const int n = g.size();
            std::vector<Vertex> chosen;
            std::optional<Biclique> found;

            auto search = [&] (auto & self, const Bitset * common, Vertex start) -> bool {
                nodes.tick("biclique search");
                if (static_cast<int>(chosen.size()) == a) {
                    Biclique b{chosen, {}};
                    common->for_each([&] (Vertex v) {
                        if (static_cast<int>(b.to.size()) < a)
                            b.to.push_back(v);
                    });
                    found = std::move(b);
                    return true;
                }
                const int need = a - static_cast<int>(chosen.size());
                for (Vertex v = start ; v + need <= n ; ++v) {
                    if (g.out_degree(v) < a)
                        continue;
                    Bitset next = g.out(v);
                    if (common)
                        next &= *common;
                    if (static_cast<int>(next.count()) < a)
                        continue;
                    chosen.push_back(v);
                    if (self(self, &next, v + 1))
                        return true;
                    chosen.pop_back();
                }
                return false;
            };

            search(search, nullptr, 0);
            return found;
        }

        auto largest_transitive(const Digraph & g, std::size_t stop_at, NodeCounter & nodes) -> std::vector<Vertex>
        {
            std::vector<Vertex> best, path;

            // A transitive set has a unique source; the rest of it lies in
            // the source's out-neighbourhood.
            auto search = [&] (auto & self, const Bitset & candidates) -> void {
                nodes.tick("transitive set search");
                if (path.size() > best.size())
                    best = path;
                if (best.size() >= stop_at)
                    return;
                candidates.for_each([&] (Vertex v) {
                    if (best.size() >= stop_at)
                        return;
                    Bitset rest = candidates;
                    rest &= g.out(v);
                    if (path.size() + 1 + rest.count() <= best.size())
                        return;
                    path.push_back(v);
                    self(self, rest);
                    path.pop_back();
                });
            };

            Bitset all{g.size()};
            all.set_all();
            search(search, all);
            return best;
        }
    }

    auto check_condition_I(const Tournament & t, int bound) -> ConditionI
    {
        const auto & g = t.graph();
        for (Vertex v = 0 ; v < g.size() ; ++v)
            if (g.out_degree(v) > bound || g.in_degree(v) > bound)
                return {false, v};
        return {};
    }

    auto check_condition_II(const Tournament & t, int a, std::uint64_t node_limit) -> ConditionII
    {
        if (a < 1)
            throw std::invalid_argument{"biclique size must be at least 1"};
        NodeCounter nodes{node_limit};
        auto found = find_biclique(t.graph(), a, nodes);
        return {! found.has_value(), std::move(found)};
    }

    auto max_transitive_subtournament(const Tournament & t, std::uint64_t node_limit) -> std::vector<Vertex>
    {
        NodeCounter nodes{node_limit};
        return largest_transitive(t.graph(), static_cast<std::size_t>(t.size()) + 1, nodes);
    }

    auto check_condition_III(const Tournament & t, int t3, std::uint64_t node_limit) -> ConditionIII
    {
        if (t3 < 3)
            throw std::invalid_argument{"transitive-set threshold must be at least 3"};
        auto best = max_transitive_subtournament(t, node_limit);
        ConditionIII result;
        result.max_transitive = static_cast<int>(best.size());
        result.holds = result.max_transitive < t3;
        result.witness = std::move(best);
        return result;
    }

    auto max_one_way_biclique(const Tournament & t, std::uint64_t node_limit) -> int
    {
        NodeCounter nodes{node_limit};
        int b = 0;
        while (2 * (b + 1) <= t.size() && find_biclique(t.graph(), b + 1, nodes))
            ++b;
        return b;
    }

    auto measure_f0(const Tournament & t) -> F0Report
    {
        F0Report report;
        report.max_out_degree = t.graph().max_out_degree();
        report.max_in_degree = t.graph().max_in_degree();
        report.max_biclique = max_one_way_biclique(t);
        report.max_transitive = static_cast<int>(max_transitive_subtournament(t).size());
        return report;
    }

    auto default_a(int n) -> int
    {
        int a = 0;
        while (a * a < n)
            ++a;
        return a;
    }

    auto default_t3(int n) -> int
    {
        double linear = 2.0 * n / 13.0 - std::sqrt(static_cast<double>(n));
        double logarithmic = 2.0 * std::log2(static_cast<double>(std::max(n, 1)));
        return std::max({3, static_cast<int>(std::ceil(linear)), static_cast<int>(std::ceil(logarithmic))});
    }

    SamplingFailed::SamplingFailed(const std::string & message, F0Report closest_) :
        std::runtime_error(message),
        closest(closest_)
    {
    }

    auto sample_F0(int n, int a, int t3, std::uint64_t seed, int max_tries) -> BaseTournamentF0
    {
        if (n < 3 || a < 1 || t3 < 3 || max_tries < 1)
            throw std::invalid_argument{"sample_F0 needs n >= 3, a >= 1, t3 >= 3 and max_tries >= 1"};

        const int bound = 2 * n / 3;
        std::mt19937_64 seeds{seed};
        F0Report closest;
        int closest_violations = 4;

        for (int attempt = 1 ; attempt <= max_tries ; ++attempt) {
            std::uint64_t try_seed = seeds();
            auto t = random_tournament(n, try_seed);
            auto report = measure_f0(t);
            int violations = (report.max_out_degree > bound || report.max_in_degree > bound)
                + (report.max_biclique >= a) + (report.max_transitive >= t3);
            if (violations == 0)
                return {std::move(t), n, a, t3, attempt, try_seed, report};
            if (violations < closest_violations) {
                closest_violations = violations;
                closest = report;
            }
        }

        throw SamplingFailed{"no tournament met all three conditions in " + std::to_string(max_tries)
            + " tries; closest had max degree " + std::to_string(std::max(closest.max_out_degree, closest.max_in_degree))
            + " (bound " + std::to_string(bound) + "), biclique " + std::to_string(closest.max_biclique)
            + " (need < " + std::to_string(a) + "), transitive " + std::to_string(closest.max_transitive)
            + " (need < " + std::to_string(t3) + ")", closest};
    }

    namespace
    {
        auto admissible_k(int m, int k) -> bool
        {
            return 3 * k > 2 * m + 6 && 6 * k < 5 * m;
        }

        auto spaced_ks(int m, int s) -> std::vector<int>
        {
            std::vector<int> ks;
            for (int k = (5 * m - 1) / 6 ; static_cast<int>(ks.size()) < s && admissible_k(m, k) ; k -= 2)
                ks.push_back(k);
            return ks;
        }
    }

    auto make_k_sequence(int m, int s) -> std::vector<int>
    {
        if (m < 1 || s < 1)
            throw std::invalid_argument{"make_k_sequence needs m >= 1 and s >= 1"};
        auto ks = spaced_ks(m, s);
        if (static_cast<int>(ks.size()) == s)
            return ks;
        int smallest = m + 1;
        while (static_cast<int>(spaced_ks(smallest, s).size()) < s)
            ++smallest;
        throw std::invalid_argument{"(2m/3 + 2, 5m/6) holds fewer than " + std::to_string(s)
            + " values spaced by 2 for m = " + std::to_string(m) + "; smallest workable m is " + std::to_string(smallest)};
    }

    auto build_F_i(const Tournament & f0, int k) -> RootedDigraph
    {
        const int m = f0.size();
        if (k <= 0 || k >= m)
            throw std::invalid_argument{"k must lie strictly between 0 and " + std::to_string(m)};
        Digraph g{m + 2};
        for (auto [u, v] : f0.graph().arcs())
            g.add_arc(u, v);
        const Vertex z = m, w = m + 1;
        for (Vertex v = 0 ; v < m ; ++v)
            if (v < k) {
                g.add_arc(z, v);
                g.add_arc(v, w);
            }
            else {
                g.add_arc(v, z);
                g.add_arc(w, v);
            }
        return {std::move(g), z, w, {}};
    }

    auto build_F_dagger(const RootedDigraph & f) -> RootedDigraph
    {
        f.validate();
        auto interior = f.interior();
        const int q = static_cast<int>(interior.size());
        const Vertex z = 2 * q, w = 2 * q + 1;

        std::vector<Vertex> left(f.graph.size()), right(f.graph.size());
        for (int i = 0 ; i < q ; ++i) {
            left[interior[i]] = i;
            right[interior[i]] = q + i;
        }
        left[f.z] = z;
        left[f.w] = w;
        right[f.z] = w;
        right[f.w] = z;

        Digraph g{2 * q + 2};
        for (auto [u, v] : f.graph.arcs()) {
            g.add_arc(left[u], left[v]);
            g.add_arc(right[u], right[v]);
        }

        std::vector<GadgetRole> roles(2 * q + 2, GadgetRole::Left);
        for (int i = q ; i < 2 * q ; ++i)
            roles[i] = GadgetRole::Right;
        roles[z] = GadgetRole::RootZ;
        roles[w] = GadgetRole::RootW;
        return {std::move(g), z, w, std::move(roles)};
    }

    auto build_necklace(const RootedDigraph & f, int ell) -> Digraph
    {
        if (ell < 3)
            throw std::invalid_argument{"necklace length must be at least 3"};
        f.validate();
        auto interior = f.interior();
        const int stride = f.graph.size() - 1;

        Digraph g{ell * stride};
        std::vector<Vertex> place(f.graph.size());
        for (int i = 0 ; i < ell ; ++i) {
            place[f.z] = i * stride;
            place[f.w] = ((i + 1) % ell) * stride;
            for (std::size_t j = 0 ; j < interior.size() ; ++j)
                place[interior[j]] = i * stride + 1 + static_cast<int>(j);
            for (auto [u, v] : f.graph.arcs())
                g.add_arc(place[u], place[v]);
        }
        return g;
    }

    auto build_family(const Tournament & f0, const std::vector<int> & k) -> GadgetFamily
    {
        GadgetFamily family;
        family.m = f0.size();
        family.k = k;
        for (int ki : k) {
            family.f.push_back(build_F_i(f0, ki));
            family.dagger.push_back(build_F_dagger(family.f.back()));
        }
        return family;
    }

    auto toy_gadget() -> RootedDigraph
    {
        const Arc arcs[] = {{0, 1}, {1, 2}, {2, 0}};
        return build_F_i(Tournament::make(3, arcs), 2);
    }

    auto toy_family(int s) -> GadgetFamily
    {
        if (s < 1 || s > 2)
            throw std::invalid_argument{"the toy family has one or two gadgets"};
        const Arc arcs[] = {{0, 1}, {1, 2}, {2, 0}};
        std::vector<int> k{2, 1};
        k.resize(s);
        return build_family(Tournament::make(3, arcs), k);
    }
}
