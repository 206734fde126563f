#include <tourhom/reduction.hh>
#include <tourhom/spectral.hh>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace tourhom
{
    IntPolynomial::IntPolynomial(int s, std::vector<Monomial> terms) :
        _s(s),
        _terms(std::move(terms))
    {
        if (s < 0)
            throw std::invalid_argument{"negative variable count"};
        normalise();
    }

    auto IntPolynomial::constant(int s, const BigInt & c) -> IntPolynomial
    {
        return {s, {{c, std::vector<int>(s, 0)}}};
    }

    auto IntPolynomial::variable(int s, int index) -> IntPolynomial
    {
        if (index < 0 || index >= s)
            throw std::invalid_argument{"variable index out of range"};
        std::vector<int> exps(s, 0);
        exps[index] = 1;
        return {s, {{1, std::move(exps)}}};
    }

    auto IntPolynomial::normalise() -> void
    {
        for (auto & t : _terms) {
            if (static_cast<int>(t.exps.size()) != _s)
                throw std::invalid_argument{"exponent vector has " + std::to_string(t.exps.size())
                    + " entries for " + std::to_string(_s) + " variables"};
            for (int e : t.exps)
                if (e < 0)
                    throw std::invalid_argument{"negative exponent"};
        }
        std::sort(_terms.begin(), _terms.end(), [] (const Monomial & a, const Monomial & b) { return a.exps < b.exps; });
        std::vector<Monomial> merged;
        for (auto & t : _terms) {
            if (! merged.empty() && merged.back().exps == t.exps)
                merged.back().coef += t.coef;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [] (const Monomial & t) { return t.coef == 0; });
        _terms = std::move(merged);
    }

    auto IntPolynomial::degree() const -> int
    {
        int d = 0;
        for (auto & t : _terms)
            d = std::max(d, std::accumulate(t.exps.begin(), t.exps.end(), 0));
        return d;
    }

    auto IntPolynomial::coefficient_weight() const -> BigInt
    {
        BigInt total = 0;
        for (auto & t : _terms)
            total += abs(t.coef);
        return total;
    }

    auto IntPolynomial::evaluate(std::span<const Rational> point) const -> Rational
    {
        if (static_cast<int>(point.size()) != _s)
            throw std::invalid_argument{"evaluation point has the wrong dimension"};
        Rational total = 0;
        for (auto & t : _terms) {
            Rational value{t.coef};
            for (int i = 0 ; i < _s ; ++i)
                if (t.exps[i] > 0)
                    value *= pow(point[i], t.exps[i]);
            total += value;
        }
        return total;
    }

    namespace
    {
        auto require_same_variables(const IntPolynomial & a, const IntPolynomial & b) -> int
        {
            if (a.variables() != b.variables())
                throw std::invalid_argument{"polynomials over different variable counts"};
            return a.variables();
        }
    }

    auto operator+ (const IntPolynomial & a, const IntPolynomial & b) -> IntPolynomial
    {
        int s = require_same_variables(a, b);
        auto terms = a._terms;
        terms.insert(terms.end(), b._terms.begin(), b._terms.end());
        return {s, std::move(terms)};
    }

    auto operator- (const IntPolynomial & a, const IntPolynomial & b) -> IntPolynomial
    {
        int s = require_same_variables(a, b);
        auto terms = a._terms;
        for (auto t : b._terms) {
            t.coef = -t.coef;
            terms.push_back(std::move(t));
        }
        return {s, std::move(terms)};
    }

    auto operator* (const IntPolynomial & a, const IntPolynomial & b) -> IntPolynomial
    {
        int s = require_same_variables(a, b);
        std::vector<Monomial> terms;
        for (auto & u : a._terms)
            for (auto & v : b._terms) {
                Monomial t{u.coef * v.coef, u.exps};
                for (int i = 0 ; i < s ; ++i)
                    t.exps[i] += v.exps[i];
                terms.push_back(std::move(t));
            }
        return {s, std::move(terms)};
    }

    auto operator== (const IntPolynomial & a, const IntPolynomial & b) -> bool
    {
        if (a._s != b._s || a._terms.size() != b._terms.size())
            return false;
        for (std::size_t i = 0 ; i < a._terms.size() ; ++i)
            if (a._terms[i].coef != b._terms[i].coef || a._terms[i].exps != b._terms[i].exps)
                return false;
        return true;
    }

    auto parse_polynomial(const std::string & text, std::optional<int> s) -> IntPolynomial
    {
        struct Factor
        {
            int variable, power;
        };
        struct Term
        {
            BigInt coef;
            std::vector<Factor> factors;
        };

        std::size_t pos = 0;
        auto skip = [&] {
            while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
                ++pos;
        };
        auto digits = [&] () -> std::string {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            return text.substr(start, pos - start);
        };
        auto fail = [&] (const std::string & what) {
            throw PolynomialSyntaxError{what + " at offset " + std::to_string(pos) + " in \"" + text + "\""};
        };

        std::vector<Term> terms;
        int largest = 0;
        bool first = true;
        while (true) {
            skip();
            if (pos == text.size()) {
                if (first)
                    fail("empty polynomial");
                break;
            }
            int sign = 1;
            if (text[pos] == '+' || text[pos] == '-') {
                sign = text[pos] == '-' ? -1 : 1;
                ++pos;
                skip();
            }
            else if (! first)
                fail("expected '+' or '-'");
            first = false;

            Term term{1, {}};
            bool has_coef = false;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                term.coef = BigInt{digits()};
                has_coef = true;
            }
            while (true) {
                skip();
                if (pos >= text.size() || text[pos] != 'x')
                    break;
                ++pos;
                auto index = digits();
                if (index.empty())
                    fail("expected a variable index");
                int variable = std::stoi(index);
                if (variable < 1)
                    fail("variables are numbered from 1");
                int power = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    auto e = digits();
                    if (e.empty())
                        fail("expected an exponent");
                    power = std::stoi(e);
                }
                largest = std::max(largest, variable);
                term.factors.push_back({variable, power});
            }
            if (! has_coef && term.factors.empty())
                fail("expected a coefficient or a variable");
            term.coef *= sign;
            terms.push_back(std::move(term));
        }

        int vars = s.value_or(largest);
        if (vars < largest)
            throw PolynomialSyntaxError{"x" + std::to_string(largest) + " used with only " + std::to_string(vars) + " variables"};
        std::vector<Monomial> monomials;
        for (auto & t : terms) {
            Monomial mono{t.coef, std::vector<int>(vars, 0)};
            for (auto [v, e] : t.factors)
                mono.exps[v - 1] += e;
            monomials.push_back(std::move(mono));
        }
        return {vars, std::move(monomials)};
    }

    auto polynomial_from_json(const std::string & text) -> IntPolynomial
    {
        auto doc = nlohmann::json::parse(text);
        int s = doc.at("s").get<int>();
        std::vector<Monomial> terms;
        for (auto & t : doc.at("terms")) {
            auto & c = t.at("coef");
            BigInt coef = c.is_string() ? BigInt{c.get<std::string>()} : BigInt{std::to_string(c.get<long long>())};
            terms.push_back({coef, t.at("exps").get<std::vector<int>>()});
        }
        return {s, std::move(terms)};
    }

    auto polynomial_to_json(const IntPolynomial & p) -> std::string
    {
        nlohmann::json doc;
        doc["s"] = p.variables();
        doc["terms"] = nlohmann::json::array();
        for (auto & t : p.terms()) {
            nlohmann::json coef;
            if (t.coef.fits_slong_p())
                coef = t.coef.get_si();
            else
                coef = t.coef.get_str();
            doc["terms"].push_back({{"coef", coef}, {"exps", t.exps}});
        }
        return doc.dump();
    }

    auto to_string(const IntPolynomial & p, const std::vector<std::string> & names) -> std::string
    {
        if (p.is_zero())
            return "0";
        std::ostringstream out;
        bool first = true;
        for (auto & t : p.terms()) {
            BigInt magnitude = abs(t.coef);
            out << (t.coef < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            first = false;
            bool constant = std::all_of(t.exps.begin(), t.exps.end(), [] (int e) { return e == 0; });
            bool wrote = false;
            if (magnitude != 1 || constant) {
                out << magnitude.get_str();
                wrote = true;
            }
            for (int i = 0 ; i < p.variables() ; ++i) {
                if (t.exps[i] == 0)
                    continue;
                out << (wrote ? " " : "") << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1));
                if (t.exps[i] > 1)
                    out << '^' << t.exps[i];
                wrote = true;
            }
        }
        return out.str();
    }

    auto build_pbar(const IntPolynomial & p) -> PBar
    {
        const int s = p.variables();
        std::vector<Monomial> lifted;
        for (auto & t : p.terms()) {
            Monomial m{t.coef, t.exps};
            m.exps.resize(2 * s, 0);
            lifted.push_back(std::move(m));
        }
        IntPolynomial poly{2 * s, std::move(lifted)};

        std::vector<int> sixth(2 * s, 0);
        std::fill(sixth.begin(), sixth.begin() + s, 6);
        poly = poly * IntPolynomial{2 * s, {{1, sixth}}};

        const int deg = p.degree();
        BigInt penalty = p.coefficient_weight() * 100 * deg;
        std::vector<Monomial> penalty_terms;
        for (int i = 0 ; i < s ; ++i) {
            std::vector<int> y(2 * s, 0), x2(2 * s, 0);
            y[s + i] = 1;
            x2[i] = 2;
            penalty_terms.push_back({penalty, y});
            penalty_terms.push_back({-penalty, x2});
        }
        poly = poly + IntPolynomial{2 * s, std::move(penalty_terms)};
        return {std::move(poly), penalty, deg == 0};
    }

    auto make_necklaces(const std::vector<RootedDigraph> & daggers) -> NecklaceSet
    {
        NecklaceSet set;
        for (auto & d : daggers) {
            set.d4.push_back(build_necklace(d, 4));
            set.d8.push_back(build_necklace(d, 8));
            set.d12.push_back(build_necklace(d, 12));
        }
        return set;
    }

    namespace
    {
        auto union_of(const std::vector<const Digraph *> & parts) -> Digraph
        {
            int total = 0;
            for (auto * p : parts)
                total += p->size();
            Digraph g{total};
            int offset = 0;
            for (auto * p : parts) {
                for (auto [u, v] : p->arcs())
                    g.add_arc(offset + u, offset + v);
                offset += p->size();
            }
            return g;
        }
    }

    auto monomial_to_quantum(std::span<const int> exps_x, std::span<const int> exps_y,
            const NecklaceSet & necklaces, std::span<const int> clearing) -> Digraph
    {
        const auto s = static_cast<std::size_t>(necklaces.size());
        if (exps_x.size() != s || exps_y.size() != s || clearing.size() != s)
            throw std::invalid_argument{"monomial, clearing vector and necklace set sizes differ"};
        std::vector<const Digraph *> parts;
        for (std::size_t i = 0 ; i < s ; ++i) {
            int fillers = clearing[i] - 2 * exps_x[i] - 3 * exps_y[i];
            if (exps_x[i] < 0 || exps_y[i] < 0)
                throw std::invalid_argument{"negative exponent"};
            if (fillers < 0)
                throw ClearingExponentTooSmall{"clearing exponent " + std::to_string(clearing[i]) + " for gadget "
                    + std::to_string(i + 1) + " is below " + std::to_string(2 * exps_x[i] + 3 * exps_y[i])};
            for (int c = 0 ; c < exps_x[i] ; ++c)
                parts.push_back(&necklaces.d8[i]);
            for (int c = 0 ; c < exps_y[i] ; ++c)
                parts.push_back(&necklaces.d12[i]);
            for (int c = 0 ; c < fillers ; ++c)
                parts.push_back(&necklaces.d4[i]);
        }
        return union_of(parts);
    }

    auto minimal_clearing(const IntPolynomial & poly2s) -> std::vector<int>
    {
        if (poly2s.variables() % 2 != 0)
            throw std::invalid_argument{"expected a polynomial in x1..xs, y1..ys"};
        const int s = poly2s.variables() / 2;
        std::vector<int> e(s, 0);
        for (auto & t : poly2s.terms())
            for (int i = 0 ; i < s ; ++i)
                e[i] = std::max(e[i], 2 * t.exps[i] + 3 * t.exps[s + i]);
        return e;
    }

    auto quantum_from_polynomial(const IntPolynomial & poly2s, const NecklaceSet & necklaces,
            std::span<const int> clearing) -> QuantumDigraph
    {
        const int s = necklaces.size();
        if (poly2s.variables() != 2 * s)
            throw std::invalid_argument{"polynomial needs " + std::to_string(2 * s) + " variables"};
        QuantumDigraph q;
        for (auto & t : poly2s.terms()) {
            std::span<const int> exps{t.exps};
            q.add(Rational{t.coef}, monomial_to_quantum(exps.first(s), exps.subspan(s), necklaces, clearing));
        }
        return q;
    }

    auto build_f_of_p(const IntPolynomial & p, const NecklaceSet & necklaces, ClearingMode mode,
            std::span<const int> explicit_clearing) -> Reduction
    {
        if (p.variables() != necklaces.size())
            throw std::invalid_argument{"polynomial has " + std::to_string(p.variables()) + " variables but the family has "
                + std::to_string(necklaces.size()) + " gadgets"};
        Reduction r;
        r.pbar = build_pbar(p);
        auto minimal = minimal_clearing(r.pbar.poly);

        auto describe = [] (const std::vector<int> & e) {
            std::string text;
            for (std::size_t i = 0 ; i < e.size() ; ++i)
                text += (i ? "," : "") + std::to_string(e[i]);
            return text;
        };

        switch (mode) {
            case ClearingMode::Minimal:
                r.clearing = minimal;
                break;
            case ClearingMode::ThreeDegree:
                r.clearing.assign(p.variables(), 3 * p.degree());
                break;
            case ClearingMode::Explicit:
                r.clearing.assign(explicit_clearing.begin(), explicit_clearing.end());
                if (r.clearing.size() != minimal.size())
                    throw std::invalid_argument{"explicit clearing vector needs " + std::to_string(minimal.size()) + " entries"};
                break;
        }
        for (std::size_t i = 0 ; i < minimal.size() ; ++i)
            if (r.clearing[i] < minimal[i])
                throw ClearingExponentTooSmall{"clearing vector " + describe(r.clearing) + " does not clear every term; minimal is "
                    + describe(minimal)};

        r.quantum = quantum_from_polynomial(r.pbar.poly, necklaces, r.clearing);
        return r;
    }

    auto necklace_densities(const std::vector<RootedDigraph> & daggers, const Digraph & host) -> NecklaceDensities
    {
        NecklaceDensities d;
        for (auto & dagger : daggers) {
            auto m = density_matrix(dagger, host);
            int e = dagger.graph.size() - 2;
            auto traces = trace_powers_4_8_12(m);
            BigInt n{host.size()};
            d.t4.push_back(make_rational(traces.t4, pow(n, 4UL * (e + 1))));
            d.t8.push_back(make_rational(traces.t8, pow(n, 8UL * (e + 1))));
            d.t12.push_back(make_rational(traces.t12, pow(n, 12UL * (e + 1))));
        }
        return d;
    }

    auto reduction_right_side(const Reduction & r, const NecklaceDensities & d) -> Rational
    {
        const int s = static_cast<int>(r.clearing.size());
        std::vector<Rational> point(2 * s);
        Rational factor = 1;
        for (int i = 0 ; i < s ; ++i) {
            if (d.t4[i] == 0)
                throw DegenerateHost{"fourth necklace density of gadget " + std::to_string(i + 1) + " vanishes"};
            point[i] = d.x(i);
            point[s + i] = d.y(i);
            factor *= pow(d.t4[i], r.clearing[i]);
        }
        return r.pbar.poly.evaluate(point) * factor;
    }

    auto check_sign_direction(const IntPolynomial & p, const Reduction & r, const std::vector<RootedDigraph> & daggers,
            const std::vector<Tournament> & hosts, int grid, double tol) -> SignCheckReport
    {
        SignCheckReport report;
        const int s = p.variables();
        std::vector<int> n(s, 1);
        std::vector<Rational> point(s);
        while (true) {
            for (int i = 0 ; i < s ; ++i)
                point[i] = make_rational(1, n[i]);
            if (p.evaluate(point) < 0) {
                report.nonnegative_on_samples = false;
                break;
            }
            int i = 0;
            while (i < s && ++n[i] > grid)
                n[i++] = 1;
            if (i == s)
                break;
        }

        for (auto & host : hosts) {
            SignCheckHost h;
            auto d = necklace_densities(daggers, host.graph());
            h.degenerate = std::any_of(d.t4.begin(), d.t4.end(), [] (const Rational & t) { return t == 0; });
            h.value = eval_quantum(r.quantum, host.graph());
            if (h.degenerate && h.value != 0)
                ++report.nonzero_degenerate;
            if (h.value < 0)
                ++report.negative_hosts;
            if (report.nonnegative_on_samples && to_double(h.value) < -tol)
                report.contradiction = true;
            report.hosts.push_back(std::move(h));
        }
        return report;
    }
}
