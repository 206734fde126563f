#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/numeric.hh>

#include <string>
#include <vector>

namespace tourhom
{
    struct QuantumTerm
    {
        Rational coef;
        Digraph graph;
    };

    /// Finite formal linear combination of digraphs with rational coefficients.
    class QuantumDigraph
    {
        public:
            QuantumDigraph() = default;

            /// Adds coef * g, merging with a label-identical existing term.
            /// Terms whose coefficient cancels to zero are dropped.
            auto add(const Rational & coef, Digraph g) -> void;

            /// Merges terms whose digraphs are isomorphic (exhaustive test).
            auto merge_isomorphic() -> void;

            auto terms() const -> const std::vector<QuantumTerm> & { return _terms; }
            auto empty() const -> bool { return _terms.empty(); }

            auto operator+= (const QuantumDigraph & other) -> QuantumDigraph &;
            auto scaled(const Rational & factor) const -> QuantumDigraph;

        private:
            std::vector<QuantumTerm> _terms;
    };

    /// Exhaustive isomorphism test with degree refinement.
    auto are_isomorphic(const Digraph & a, const Digraph & b) -> bool;

    /// {"terms":[{"coef":"<num>/<den>","graph":"<path-or-inline>"}]}. A graph
    /// string starting with "digraph" is inline text, otherwise a path
    /// resolved relative to base_dir.
    auto quantum_from_json(const std::string & json_text, const std::string & base_dir = ".") -> QuantumDigraph;
    auto quantum_to_json(const QuantumDigraph & q) -> std::string;
}
