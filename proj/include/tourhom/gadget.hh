#pragma once

#include <tourhom/digraph.hh>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourhom
{
    class SearchBudgetExceeded : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct ConditionI
    {
        bool holds = true;
        std::optional<Vertex> witness;
    };

    /// A pair of disjoint sets with every arc from the first to the second.
    struct Biclique
    {
        std::vector<Vertex> from, to;
    };

    struct ConditionII
    {
        bool holds = true;
        std::optional<Biclique> witness;
    };

    struct ConditionIII
    {
        bool holds = true;
        int max_transitive = 0;
        /// A largest transitive set, listed from source to sink.
        std::vector<Vertex> witness;
    };

    /// True iff no vertex has in- or out-degree above the bound.
    auto check_condition_I(const Tournament & t, int bound) -> ConditionI;

    /// True iff there are no disjoint A1, A2 of size a with A1 => A2. Exact
    /// branch and bound over A1, tracking the common out-neighbourhood.
    /// A node_limit of zero means unlimited.
    auto check_condition_II(const Tournament & t, int a, std::uint64_t node_limit = 0) -> ConditionII;

    /// True iff every set of t3 vertices spans a directed cycle, i.e. the
    /// largest transitive subtournament has fewer than t3 vertices.
    auto check_condition_III(const Tournament & t, int t3, std::uint64_t node_limit = 0) -> ConditionIII;

    /// Size of the largest transitive subtournament.
    auto max_transitive_subtournament(const Tournament & t, std::uint64_t node_limit = 0) -> std::vector<Vertex>;

    /// Largest b such that a one-way b x b biclique exists.
    auto max_one_way_biclique(const Tournament & t, std::uint64_t node_limit = 0) -> int;

    struct F0Report
    {
        int max_out_degree = 0;
        int max_in_degree = 0;
        int max_biclique = 0;
        int max_transitive = 0;
    };

    auto measure_f0(const Tournament & t) -> F0Report;

    struct BaseTournamentF0
    {
        Tournament tournament;
        int n = 0;
        int a = 0;
        int t3 = 0;
        int tries = 0;
        std::uint64_t seed = 0;
        F0Report report;
    };

    /// Default biclique parameter: ceil(sqrt(n)).
    auto default_a(int n) -> int;

    /// Default transitive-set threshold: the larger of ceil(2n/13 - sqrt(n))
    /// and ceil(2 log2 n), at least 3. The first term alone is below 3 for
    /// n < ~200, where no tournament could meet it; a random tournament's
    /// largest transitive set is close to 2 log2 n.
    auto default_t3(int n) -> int;

    class SamplingFailed : public std::runtime_error
    {
        public:
            SamplingFailed(const std::string & message, F0Report closest);

            F0Report closest;
    };

    /// Draws random tournaments until the degree bound floor(2n/3), the
    /// biclique condition with a and the cycle condition with t3 all hold.
    /// Try i uses the i-th draw of an mt19937_64 seeded with seed.
    auto sample_F0(int n, int a, int t3, std::uint64_t seed, int max_tries = 200) -> BaseTournamentF0;

    /// The s largest integers in (2m/3 + 2, 5m/6), descending, pairwise at
    /// least 2 apart. Throws std::invalid_argument naming the smallest m
    /// that would work.
    auto make_k_sequence(int m, int s) -> std::vector<int>;

    /// F0's vertices keep their labels; z = m, w = m + 1. z -> v -> w for
    /// v < k, and v -> z, w -> v otherwise.
    auto build_F_i(const Tournament & f0, int k) -> RootedDigraph;

    /// Two copies of F glued with swapped roots. Interior of the first copy
    /// on 0..q-1, of the second on q..2q-1 (q = |V(F)| - 2), then z, w.
    auto build_F_dagger(const RootedDigraph & f) -> RootedDigraph;

    /// Copy i of F maps z to bead i and w to bead i+1 (mod ell). Bead i sits
    /// at i * (|V(F)| - 1), followed by that copy's interior.
    auto build_necklace(const RootedDigraph & f, int ell) -> Digraph;

    struct GadgetFamily
    {
        int m = 0;
        std::vector<int> k;
        std::vector<RootedDigraph> f;
        std::vector<RootedDigraph> dagger;

        auto size() const -> int { return static_cast<int>(k.size()); }
    };

    auto build_family(const Tournament & f0, const std::vector<int> & k) -> GadgetFamily;

    /// Cyclic triangle with k = 2: the smallest gadget the constructions accept.
    auto toy_gadget() -> RootedDigraph;

    /// Cyclic-triangle gadgets with k = 2 and k = 1, for s <= 2.
    auto toy_family(int s) -> GadgetFamily;
}
