#include <tourhom/quantum.hh>
#include <tourhom/io.hh>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>

namespace tourhom
{
    auto QuantumDigraph::add(const Rational & coef, Digraph g) -> void
    {
        if (coef == 0)
            return;
        for (auto it = _terms.begin() ; it != _terms.end() ; ++it)
            if (it->graph == g) {
                it->coef += coef;
                if (it->coef == 0)
                    _terms.erase(it);
                return;
            }
        _terms.push_back(QuantumTerm{coef, std::move(g)});
    }

    auto QuantumDigraph::merge_isomorphic() -> void
    {
        std::vector<QuantumTerm> merged;
        for (auto & term : _terms) {
            auto same = std::find_if(merged.begin(), merged.end(),
                    [&] (const QuantumTerm & m) { return are_isomorphic(m.graph, term.graph); });
            if (same == merged.end())
                merged.push_back(std::move(term));
            else
                same->coef += term.coef;
        }
        std::erase_if(merged, [] (const QuantumTerm & t) { return t.coef == 0; });
        _terms = std::move(merged);
    }

    auto QuantumDigraph::operator+= (const QuantumDigraph & other) -> QuantumDigraph &
    {
        for (auto & term : other._terms)
            add(term.coef, term.graph);
        return *this;
    }

    auto QuantumDigraph::scaled(const Rational & factor) const -> QuantumDigraph
    {
        QuantumDigraph result;
        for (auto & term : _terms)
            result.add(term.coef * factor, term.graph);
        return result;
    }

    namespace
    {
        auto degree_signature(const Digraph & g, Vertex v) -> std::pair<int, int>
        {
            return {g.out_degree(v), g.in_degree(v)};
        }
    }

    auto are_isomorphic(const Digraph & a, const Digraph & b) -> bool
    {
        const int n = a.size();
        if (n != b.size() || a.arc_count() != b.arc_count())
            return false;

        std::vector<std::pair<int, int>> sig_a(n), sig_b(n);
        for (Vertex v = 0 ; v < n ; ++v) {
            sig_a[v] = degree_signature(a, v);
            sig_b[v] = degree_signature(b, v);
        }
        {
            auto sa = sig_a, sb = sig_b;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb)
                return false;
        }

        // Map a's vertices in BFS order so each new vertex is anchored to an
        // already-mapped neighbour where possible.
        std::vector<Vertex> order;
        std::vector<bool> seen(n, false);
        for (Vertex s = 0 ; s < n ; ++s) {
            if (seen[s])
                continue;
            seen[s] = true;
            order.push_back(s);
            for (std::size_t i = order.size() - 1 ; i < order.size() ; ++i) {
                Vertex u = order[i];
                auto visit = [&] (Vertex v) { if (! seen[v]) { seen[v] = true; order.push_back(v); } };
                a.out(u).for_each(visit);
                a.in(u).for_each(visit);
            }
        }

        std::vector<Vertex> image(n, -1);
        std::vector<bool> used(n, false);

        std::function<bool (std::size_t)> extend = [&] (std::size_t depth) -> bool {
            if (depth == order.size())
                return true;
            Vertex v = order[depth];
            for (Vertex c = 0 ; c < n ; ++c) {
                if (used[c] || sig_a[v] != sig_b[c])
                    continue;
                bool ok = true;
                for (std::size_t i = 0 ; i < depth && ok ; ++i) {
                    Vertex u = order[i];
                    ok = a.has_arc(u, v) == b.has_arc(image[u], c) && a.has_arc(v, u) == b.has_arc(c, image[u]);
                }
                if (! ok)
                    continue;
                image[v] = c;
                used[c] = true;
                if (extend(depth + 1))
                    return true;
                used[c] = false;
                image[v] = -1;
            }
            return false;
        };

        return extend(0);
    }

    auto quantum_from_json(const std::string & json_text, const std::string & base_dir) -> QuantumDigraph
    {
        auto doc = nlohmann::json::parse(json_text);
        QuantumDigraph result;
        for (auto & term : doc.at("terms")) {
            Rational coef;
            auto & c = term.at("coef");
            if (c.is_string())
                coef = parse_rational(c.get<std::string>());
            else if (c.is_number_integer())
                coef = Rational{BigInt{std::to_string(c.get<long long>())}};
            else
                throw FormatError{"coefficient must be a string or an integer"};

            auto graph = term.at("graph").get<std::string>();
            std::string text = graph.rfind("digraph", 0) == 0
                ? graph
                : read_text_file((std::filesystem::path{base_dir} / graph).string());
            auto parsed = parse_graph_text(text);
            result.add(coef, Digraph::from_arcs(parsed.n, parsed.pairs));
        }
        return result;
    }

    auto quantum_to_json(const QuantumDigraph & q) -> std::string
    {
        nlohmann::json doc;
        doc["terms"] = nlohmann::json::array();
        for (auto & term : q.terms())
            doc["terms"].push_back({{"coef", to_string(term.coef)}, {"graph", to_text(term.graph)}});
        return doc.dump(1);
    }
}
