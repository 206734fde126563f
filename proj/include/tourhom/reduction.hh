#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/gadget.hh>
#include <tourhom/hom.hh>
#include <tourhom/numeric.hh>
#include <tourhom/quantum.hh>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourhom
{
    struct Monomial
    {
        BigInt coef;
        std::vector<int> exps;
    };

    /// Integer polynomial in s variables. Terms are kept sorted by exponent
    /// vector, with repeats merged and zero coefficients dropped.
    class IntPolynomial
    {
        public:
            IntPolynomial() = default;
            IntPolynomial(int s, std::vector<Monomial> terms);

            static auto constant(int s, const BigInt & c) -> IntPolynomial;

            /// The variable with the given 0-based index.
            static auto variable(int s, int index) -> IntPolynomial;

            auto variables() const -> int { return _s; }
            auto terms() const -> const std::vector<Monomial> & { return _terms; }
            auto is_zero() const -> bool { return _terms.empty(); }

            /// Largest total degree; 0 for constants and for the zero polynomial.
            auto degree() const -> int;

            /// Sum of absolute values of the coefficients.
            auto coefficient_weight() const -> BigInt;

            auto evaluate(std::span<const Rational> point) const -> Rational;

            friend auto operator+ (const IntPolynomial & a, const IntPolynomial & b) -> IntPolynomial;
            friend auto operator- (const IntPolynomial & a, const IntPolynomial & b) -> IntPolynomial;
            friend auto operator* (const IntPolynomial & a, const IntPolynomial & b) -> IntPolynomial;
            friend auto operator== (const IntPolynomial &, const IntPolynomial &) -> bool;

        private:
            auto normalise() -> void;

            int _s = 0;
            std::vector<Monomial> _terms;
    };

    class PolynomialSyntaxError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Text such as "3 x1^2 x2 - 2 x2 + 7"; '*' between factors is optional.
    /// Variables are x1..xs; s defaults to the largest index used.
    auto parse_polynomial(const std::string & text, std::optional<int> s = std::nullopt) -> IntPolynomial;

    /// {"s":2,"terms":[{"coef":3,"exps":[2,1]}]}; coef may also be a string.
    auto polynomial_from_json(const std::string & text) -> IntPolynomial;
    auto polynomial_to_json(const IntPolynomial & p) -> std::string;
    auto to_string(const IntPolynomial & p, const std::vector<std::string> & names = {}) -> std::string;

    /// The penalised polynomial in x1..xs, y1..ys:
    /// p * prod x_i^6 + M * sum (y_i - x_i^2), M = weight(p) * 100 * deg(p).
    struct PBar
    {
        IntPolynomial poly;
        BigInt penalty;
        /// Set when deg(p) = 0, so the penalty vanishes.
        bool degenerate = false;
    };

    auto build_pbar(const IntPolynomial & p) -> PBar;

    /// The necklaces of length 4, 8 and 12 for each gadget of a family.
    struct NecklaceSet
    {
        std::vector<Digraph> d4, d8, d12;

        auto size() const -> int { return static_cast<int>(d4.size()); }
    };

    auto make_necklaces(const std::vector<RootedDigraph> & daggers) -> NecklaceSet;

    class ClearingExponentTooSmall : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Disjoint union over i of exps_x[i] copies of D8_i, exps_y[i] copies
    /// of D12_i and E[i] - 2 exps_x[i] - 3 exps_y[i] copies of D4_i.
    auto monomial_to_quantum(std::span<const int> exps_x, std::span<const int> exps_y,
            const NecklaceSet & necklaces, std::span<const int> clearing) -> Digraph;

    /// Smallest clearing exponent per gadget for a polynomial in 2s variables.
    auto minimal_clearing(const IntPolynomial & poly2s) -> std::vector<int>;

    /// Sum of coef * monomial_to_quantum over the terms of a polynomial in
    /// x1..xs, y1..ys. Linear in the polynomial for a fixed clearing vector.
    auto quantum_from_polynomial(const IntPolynomial & poly2s, const NecklaceSet & necklaces,
            std::span<const int> clearing) -> QuantumDigraph;

    enum class ClearingMode
    {
        ThreeDegree,
        Minimal,
        Explicit
    };

    struct Reduction
    {
        PBar pbar;
        std::vector<int> clearing;
        QuantumDigraph quantum;
    };

    /// ThreeDegree mode uses 3 deg(p) for every gadget and throws
    /// ClearingExponentTooSmall (naming the minimal vector) when that does not
    /// clear every term.
    auto build_f_of_p(const IntPolynomial & p, const NecklaceSet & necklaces, ClearingMode mode,
            std::span<const int> explicit_clearing = {}) -> Reduction;

    /// Per-host statistics needed by the evaluation identity, all exact.
    struct NecklaceDensities
    {
        std::vector<Rational> t4, t8, t12;

        auto x(int i) const -> Rational { return t8[i] / (t4[i] * t4[i]); }
        auto y(int i) const -> Rational { return t12[i] / (t4[i] * t4[i] * t4[i]); }
    };

    auto necklace_densities(const std::vector<RootedDigraph> & daggers, const Digraph & host) -> NecklaceDensities;

    /// pbar(x(T), y(T)) * prod t4_i^E_i. Requires every t4_i to be nonzero.
    auto reduction_right_side(const Reduction & r, const NecklaceDensities & d) -> Rational;

    struct SignCheckHost
    {
        Rational value;
        bool degenerate = false;
    };

    struct SignCheckReport
    {
        /// p >= 0 on every sampled point (1/n_1, ..., 1/n_s), 1 <= n_i <= grid.
        bool nonnegative_on_samples = true;
        std::vector<SignCheckHost> hosts;
        /// Hosts with a negative value, in exact arithmetic.
        std::size_t negative_hosts = 0;
        /// Degenerate hosts whose value was not exactly zero.
        std::size_t nonzero_degenerate = 0;
        /// Nonnegative on samples yet some host value below -tol.
        bool contradiction = false;
    };

    /// Evaluates the reduction on each host: when p is nonnegative on the
    /// sampled reciprocal points every value must be >= -tol, and hosts with
    /// a vanishing fourth necklace density must give exactly zero.
    auto check_sign_direction(const IntPolynomial & p, const Reduction & r, const std::vector<RootedDigraph> & daggers,
            const std::vector<Tournament> & hosts, int grid = 8, double tol = 1e-9) -> SignCheckReport;
}
