#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/numeric.hh>
#include <tourhom/quantum.hh>

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>

namespace tourhom
{
    class BudgetExceeded : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Thrown by enumerate_homs when more maps exist than the cap allows.
    class CapExceeded : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct HomOptions
    {
        /// Sub-counts of a pattern component are memoised when it touches at
        /// most this many already-placed vertices. Zero disables the cache.
        int cache_boundary_limit = 4;

        /// The memo is cleared when it grows past this many entries.
        std::size_t cache_max_entries = std::size_t{1} << 20;

        /// Search-node cap; zero means unlimited. Exceeding it throws BudgetExceeded.
        std::uint64_t node_limit = 0;

        /// Worker threads for per-pair loops; zero means one per hardware thread.
        unsigned threads = 0;
    };

    /// A pre-assigned pattern vertex.
    struct Pin
    {
        Vertex pattern_vertex;
        Vertex host_vertex;
    };

    /// Counts arc-preserving maps V(pattern) -> V(host) by backtracking with
    /// bitset candidate filtering. At each node the unplaced part of the
    /// pattern is split into connected components whose counts multiply;
    /// components touching few placed vertices are memoised on the images of
    /// those vertices. Reusable across calls with different pins.
    class HomCounter
    {
        public:
            HomCounter(const Digraph & pattern, const Digraph & host, HomOptions options = {});
            ~HomCounter();

            HomCounter(const HomCounter &) = delete;
            auto operator= (const HomCounter &) -> HomCounter & = delete;

            auto count() -> BigInt;
            auto count(std::span<const Pin> pins) -> BigInt;
            auto count_rooted(Vertex z, Vertex w, Vertex x, Vertex y) -> BigInt;

            /// Search nodes visited so far, over all calls.
            auto nodes() const -> std::uint64_t;

        private:
            struct Impl;
            std::unique_ptr<Impl> _imp;
    };

    auto count_hom(const Digraph & pattern, const Digraph & host, HomOptions options = {}) -> BigInt;

    /// Plain enumeration of all |host|^|pattern| maps. Throws BudgetExceeded
    /// when that number (with pins removed) exceeds the budget.
    auto count_hom_bruteforce(const Digraph & pattern, const Digraph & host,
            std::span<const Pin> pins = {}, std::uint64_t budget = 100'000'000) -> BigInt;

    /// Homomorphisms with z -> x and w -> y.
    auto count_hom_rooted(const RootedDigraph & pattern, const Digraph & host, Vertex x, Vertex y,
            HomOptions options = {}) -> BigInt;

    /// hom / |host|^|pattern|. Throws GraphError for an empty host.
    auto density(const Digraph & pattern, const Digraph & host) -> Rational;

    /// hom_{x,y} / |host|^(|pattern|-2).
    auto conditional_density(const RootedDigraph & pattern, const Digraph & host, Vertex x, Vertex y) -> Rational;

    /// Called with the full map (indexed by pattern vertex). Return false to stop.
    using HomVisitor = std::function<bool (std::span<const Vertex>)>;

    struct EnumerationResult
    {
        std::uint64_t visited = 0;
        bool stopped = false;
    };

    /// Streams homomorphisms to the visitor. If the visitor has not stopped
    /// the search and a (cap+1)-th map exists, throws CapExceeded.
    auto enumerate_homs(const Digraph & pattern, const Digraph & host, std::span<const Pin> pins,
            const HomVisitor & visit, std::uint64_t cap) -> EnumerationResult;

    /// Sum of coef * t(D, host) over the terms. Each term is split into weakly
    /// connected components whose densities multiply; identical components
    /// (after relabelling) are counted once.
    auto eval_quantum(const QuantumDigraph & g, const Digraph & host, HomOptions options = {}) -> Rational;
}
