#pragma once

#include <tourhom/bitset.hh>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tourhom
{
    using Vertex = int;
    using Arc = std::pair<Vertex, Vertex>;

    class GraphError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Simple digraph on vertices 0..n-1: no loops, at most one arc per
    /// ordered pair. Out- and in-neighbourhoods are kept as bitsets so that
    /// candidate filtering is a word-wise intersection.
    class Digraph
    {
        public:
            Digraph() = default;
            explicit Digraph(int n);

            /// Throws GraphError on a loop, a repeated arc or an out-of-range endpoint.
            static auto from_arcs(int n, std::span<const Arc> arcs) -> Digraph;

            auto size() const -> int { return _n; }
            auto arc_count() const -> std::size_t { return _arc_count; }

            /// Throws GraphError on a loop, a repeated arc or an out-of-range endpoint.
            auto add_arc(Vertex u, Vertex v) -> void;

            auto has_arc(Vertex u, Vertex v) const -> bool { return _out[u].test(v); }
            auto adjacent(Vertex u, Vertex v) const -> bool { return _out[u].test(v) || _in[u].test(v); }

            auto out(Vertex v) const -> const Bitset & { return _out[v]; }
            auto in(Vertex v) const -> const Bitset & { return _in[v]; }

            auto out_degree(Vertex v) const -> int { return static_cast<int>(_out[v].count()); }
            auto in_degree(Vertex v) const -> int { return static_cast<int>(_in[v].count()); }
            auto degree(Vertex v) const -> int { return out_degree(v) + in_degree(v); }

            auto max_out_degree() const -> int;
            auto max_in_degree() const -> int;

            /// All arcs, ascending by (tail, head).
            auto arcs() const -> std::vector<Arc>;

            friend auto operator== (const Digraph &, const Digraph &) -> bool = default;

        private:
            int _n = 0;
            std::size_t _arc_count = 0;
            std::vector<Bitset> _out, _in;
    };

    /// An orientation of a complete graph.
    class Tournament
    {
        public:
            enum class Violation
            {
                MissingPair,
                DoubleOrientation,
                SelfLoop,
                OutOfRange
            };

            class Invalid : public GraphError
            {
                public:
                    Invalid(Violation kind, Vertex u, Vertex v);

                    Violation kind;
                    Vertex u, v;
            };

            /// Validates completeness and antisymmetry; throws Invalid naming the
            /// offending pair.
            static auto make(int n, std::span<const Arc> arcs) -> Tournament;
            static auto from_digraph(Digraph g) -> Tournament;

            auto graph() const -> const Digraph & { return _g; }
            auto size() const -> int { return _g.size(); }
            auto beats(Vertex u, Vertex v) const -> bool { return _g.has_arc(u, v); }

            friend auto operator== (const Tournament &, const Tournament &) -> bool = default;

        private:
            explicit Tournament(Digraph g) : _g(std::move(g)) { }

            Digraph _g;
    };

    /// Role of a vertex in an annotated two-rooted gadget.
    enum class GadgetRole : std::uint8_t
    {
        RootZ,
        RootW,
        Left,
        Right
    };

    /// A digraph with an ordered pair of distinct roots (z, w). Symmetrised
    /// gadgets additionally carry a per-vertex role.
    struct RootedDigraph
    {
        Digraph graph;
        Vertex z = 0, w = 1;
        std::vector<GadgetRole> roles;

        /// Throws GraphError if the roots are out of range or equal.
        auto validate() const -> void;

        /// Non-root vertices, ascending.
        auto interior() const -> std::vector<Vertex>;
    };

    /// Undirected simple graph given as edges (a, b) with a < b.
    struct SimpleGraph
    {
        int n = 0;
        std::vector<Arc> edges;

        /// Normalises each edge to a < b, sorts, and rejects loops and repeats.
        static auto make(int n, std::vector<Arc> edges) -> SimpleGraph;
    };

    auto transitive_tournament(int n) -> Tournament;

    /// Each pair u < v is oriented u->v or v->u with probability 1/2, using the
    /// low bit of successive mt19937_64 draws, pairs in ascending order.
    auto random_tournament(int n, std::uint64_t seed) -> Tournament;

    auto disjoint_union(const Digraph & a, const Digraph & b) -> Digraph;

    /// Vertices keep their relative order and are relabelled 0..|S|-1.
    auto induced_subdigraph(const Digraph & g, std::span<const Vertex> subset) -> Digraph;

    auto is_acyclic(const Digraph & g) -> bool;

    /// Weakly connected components, each ascending, ordered by smallest vertex.
    auto weak_components(const Digraph & g) -> std::vector<std::vector<Vertex>>;
}
