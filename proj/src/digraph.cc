#include <tourhom/digraph.hh>

#include <algorithm>
#include <random>

namespace tourhom
{
    Digraph::Digraph(int n) :
        _n(n),
        _out(n, Bitset{n}),
        _in(n, Bitset{n})
    {
        if (n < 0)
            throw GraphError{"negative vertex count"};
    }

    auto Digraph::from_arcs(int n, std::span<const Arc> arcs) -> Digraph
    {
        Digraph g{n};
        for (auto [u, v] : arcs)
            g.add_arc(u, v);
        return g;
    }

    auto Digraph::add_arc(Vertex u, Vertex v) -> void
    {
        if (u < 0 || v < 0 || u >= _n || v >= _n)
            throw GraphError{"arc (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for " + std::to_string(_n) + " vertices"};
        if (u == v)
            throw GraphError{"self-loop at " + std::to_string(u)};
        if (_out[u].test(v))
            throw GraphError{"repeated arc (" + std::to_string(u) + "," + std::to_string(v) + ")"};
        _out[u].set(v);
        _in[v].set(u);
        ++_arc_count;
    }

    auto Digraph::max_out_degree() const -> int
    {
        int result = 0;
        for (Vertex v = 0 ; v < _n ; ++v)
            result = std::max(result, out_degree(v));
        return result;
    }

    auto Digraph::max_in_degree() const -> int
    {
        int result = 0;
        for (Vertex v = 0 ; v < _n ; ++v)
            result = std::max(result, in_degree(v));
        return result;
    }

    auto Digraph::arcs() const -> std::vector<Arc>
    {
        std::vector<Arc> result;
        result.reserve(_arc_count);
        for (Vertex u = 0 ; u < _n ; ++u)
            _out[u].for_each([&] (Vertex v) { result.emplace_back(u, v); });
        return result;
    }

    namespace
    {
        auto describe(Tournament::Violation kind, Vertex u, Vertex v) -> std::string
        {
            std::string pair = "(" + std::to_string(u) + "," + std::to_string(v) + ")";
            switch (kind) {
                case Tournament::Violation::MissingPair:       return "pair " + pair + " has no arc";
                case Tournament::Violation::DoubleOrientation: return "pair " + pair + " is oriented both ways";
                case Tournament::Violation::SelfLoop:          return "self-loop " + pair;
                case Tournament::Violation::OutOfRange:        return "arc " + pair + " is out of range";
            }
            return "invalid tournament";
        }
    }

    Tournament::Invalid::Invalid(Violation k, Vertex a, Vertex b) :
        GraphError{describe(k, a, b)},
        kind(k),
        u(a),
        v(b)
    {
    }

    auto Tournament::make(int n, std::span<const Arc> arcs) -> Tournament
    {
        Digraph g{n};
        for (auto [u, v] : arcs) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw Invalid{Violation::OutOfRange, u, v};
            if (u == v)
                throw Invalid{Violation::SelfLoop, u, v};
            if (g.adjacent(u, v))
                throw Invalid{Violation::DoubleOrientation, std::min(u, v), std::max(u, v)};
            g.add_arc(u, v);
        }
        return from_digraph(std::move(g));
    }

    auto Tournament::from_digraph(Digraph g) -> Tournament
    {
        const int n = g.size();
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v) {
                bool forward = g.has_arc(u, v), backward = g.has_arc(v, u);
                if (forward && backward)
                    throw Invalid{Violation::DoubleOrientation, u, v};
                if (! forward && ! backward)
                    throw Invalid{Violation::MissingPair, u, v};
            }
        return Tournament{std::move(g)};
    }

    auto RootedDigraph::validate() const -> void
    {
        const int n = graph.size();
        if (z < 0 || w < 0 || z >= n || w >= n)
            throw GraphError{"root out of range"};
        if (z == w)
            throw GraphError{"roots must be distinct"};
        if (! roles.empty() && roles.size() != static_cast<std::size_t>(n))
            throw GraphError{"role annotation has the wrong length"};
    }

    auto RootedDigraph::interior() const -> std::vector<Vertex>
    {
        std::vector<Vertex> result;
        for (Vertex v = 0 ; v < graph.size() ; ++v)
            if (v != z && v != w)
                result.push_back(v);
        return result;
    }

    auto SimpleGraph::make(int n, std::vector<Arc> edges) -> SimpleGraph
    {
        for (auto & [a, b] : edges) {
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw GraphError{"edge {" + std::to_string(a) + "," + std::to_string(b) + "} out of range"};
            if (a == b)
                throw GraphError{"loop at " + std::to_string(a)};
            if (a > b)
                std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
        if (auto dup = std::adjacent_find(edges.begin(), edges.end()) ; dup != edges.end())
            throw GraphError{"repeated edge {" + std::to_string(dup->first) + "," + std::to_string(dup->second) + "}"};
        return SimpleGraph{n, std::move(edges)};
    }

    auto transitive_tournament(int n) -> Tournament
    {
        Digraph g{n};
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v)
                g.add_arc(u, v);
        return Tournament::from_digraph(std::move(g));
    }

    auto random_tournament(int n, std::uint64_t seed) -> Tournament
    {
        std::mt19937_64 rng{seed};
        Digraph g{n};
        for (Vertex u = 0 ; u < n ; ++u)
            for (Vertex v = u + 1 ; v < n ; ++v) {
                if (rng() & 1)
                    g.add_arc(u, v);
                else
                    g.add_arc(v, u);
            }
        return Tournament::from_digraph(std::move(g));
    }

    auto disjoint_union(const Digraph & a, const Digraph & b) -> Digraph
    {
        Digraph g{a.size() + b.size()};
        for (auto [u, v] : a.arcs())
            g.add_arc(u, v);
        for (auto [u, v] : b.arcs())
            g.add_arc(u + a.size(), v + a.size());
        return g;
    }

    auto induced_subdigraph(const Digraph & g, std::span<const Vertex> subset) -> Digraph
    {
        std::vector<Vertex> sorted{subset.begin(), subset.end()};
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto v : sorted)
            if (v < 0 || v >= g.size())
                throw GraphError{"vertex " + std::to_string(v) + " out of range"};

        Digraph result{static_cast<int>(sorted.size())};
        for (std::size_t i = 0 ; i < sorted.size() ; ++i)
            for (std::size_t j = 0 ; j < sorted.size() ; ++j)
                if (g.has_arc(sorted[i], sorted[j]))
                    result.add_arc(static_cast<Vertex>(i), static_cast<Vertex>(j));
        return result;
    }

    auto is_acyclic(const Digraph & g) -> bool
    {
        // Kahn's algorithm
        std::vector<int> indegree(g.size());
        std::vector<Vertex> ready;
        for (Vertex v = 0 ; v < g.size() ; ++v)
            if ((indegree[v] = g.in_degree(v)) == 0)
                ready.push_back(v);

        int removed = 0;
        while (! ready.empty()) {
            Vertex u = ready.back();
            ready.pop_back();
            ++removed;
            g.out(u).for_each([&] (Vertex v) {
                if (--indegree[v] == 0)
                    ready.push_back(v);
            });
        }
        return removed == g.size();
    }

    auto weak_components(const Digraph & g) -> std::vector<std::vector<Vertex>>
    {
        std::vector<int> label(g.size(), -1);
        std::vector<std::vector<Vertex>> result;
        for (Vertex s = 0 ; s < g.size() ; ++s) {
            if (label[s] != -1)
                continue;
            std::vector<Vertex> component{s}, stack{s};
            label[s] = static_cast<int>(result.size());
            while (! stack.empty()) {
                Vertex u = stack.back();
                stack.pop_back();
                auto visit = [&] (Vertex v) {
                    if (label[v] == -1) {
                        label[v] = label[s];
                        component.push_back(v);
                        stack.push_back(v);
                    }
                };
                g.out(u).for_each(visit);
                g.in(u).for_each(visit);
            }
            std::sort(component.begin(), component.end());
            result.push_back(std::move(component));
        }
        return result;
    }
}
