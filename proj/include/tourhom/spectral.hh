#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/hom.hh>
#include <tourhom/host.hh>
#include <tourhom/numeric.hh>

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourhom
{
    class DegenerateHost : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Symmetric matrix with entries count(x, y) / denominator. For a
    /// symmetrised gadget F with e non-root vertices on an N-vertex host the
    /// counts are rooted homomorphism counts and the denominator is N^e.
    /// Only nonzero counts are stored.
    class DensityMatrix
    {
        public:
            DensityMatrix() = default;
            DensityMatrix(int order, BigInt denominator);

            auto order() const -> int { return _order; }
            auto denominator() const -> const BigInt & { return _denominator; }

            auto count(Vertex x, Vertex y) const -> BigInt;
            auto entry(Vertex x, Vertex y) const -> Rational;
            auto set_count(Vertex x, Vertex y, BigInt value) -> void;

            /// Nonzero entries keyed by (x, y) with x <= y.
            auto nonzero() const -> const std::map<Arc, BigInt> & { return _counts; }
            auto is_zero() const -> bool { return _counts.empty(); }

            /// Vertices with a nonzero entry in their row, ascending.
            auto support() const -> std::vector<Vertex>;

            /// False when only some pairs were evaluated; those pairs are
            /// then listed by evaluated().
            auto complete() const -> bool { return _complete; }
            auto evaluated() const -> const std::vector<Arc> & { return _evaluated; }
            auto mark_partial(std::vector<Arc> pairs) -> void;

            /// Dense integer counts on the support, in support order.
            auto support_counts() const -> std::vector<std::vector<BigInt>>;

        private:
            int _order = 0;
            BigInt _denominator{1};
            std::map<Arc, BigInt> _counts;
            bool _complete = true;
            std::vector<Arc> _evaluated;
    };

    /// Rooted counts of the gadget for every unordered host pair.
    auto density_matrix(const RootedDigraph & gadget, const Digraph & host, HomOptions options = {}) -> DensityMatrix;

    /// Rooted counts for the given pairs only, mirrored.
    auto density_matrix_on_pairs(const RootedDigraph & gadget, const Digraph & host, const std::vector<Arc> & pairs,
            HomOptions options = {}) -> DensityMatrix;

    /// Exact trace of C^ell, C the count matrix.
    auto trace_power(const DensityMatrix & m, int ell) -> BigInt;

    /// Exact traces of C^4, C^8 and C^12 from a single C^4.
    struct TraceTriple
    {
        BigInt t4, t8, t12;
    };

    auto trace_powers_4_8_12(const DensityMatrix & m) -> TraceTriple;

    /// Eigenvalues of a symmetric matrix, ordered by absolute value descending.
    auto symmetric_eigenvalues(const Eigen::MatrixXd & a) -> std::vector<double>;

    /// Eigenvalues of the count matrix divided by its largest entry, zeros
    /// included; multiply by (largest count / denominator) for the spectrum
    /// of the density matrix itself. Working at this scale avoids underflow.
    struct ScaledSpectrum
    {
        std::vector<double> eigenvalues;
        Rational scale;
    };

    auto scaled_spectrum(const DensityMatrix & m) -> ScaledSpectrum;

    auto power_sum(std::span<const double> eigenvalues, int ell) -> double;

    /// Sum of the ell-th powers of the density matrix's eigenvalues.
    auto power_sum(const DensityMatrix & m, int ell) -> double;

    /// Necklace density by counting the necklace digraph itself.
    auto necklace_density_direct(const RootedDigraph & gadget, const Digraph & host, int ell,
            HomOptions options = {}) -> Rational;

    /// Necklace density as the exact trace of C^ell over N^(ell (e + 1)).
    /// Requires the denominator to be N^e for the given e.
    auto necklace_density_trace(const DensityMatrix & m, int ell, int exponent) -> Rational;

    /// Necklace density from the spectrum: sum of lambda^ell over N^ell.
    auto necklace_density_spectral(const DensityMatrix & m, int ell) -> double;

    struct XYPoint
    {
        double x = 0;
        double y = 0;
        /// Present when computed from exact traces.
        std::optional<Rational> exact_x, exact_y;
        std::optional<TraceTriple> traces;
    };

    /// x = p8 / p4^2 and y = p12 / p4^3 from exact traces. Throws
    /// DegenerateHost when the matrix is zero.
    auto xy_point(const DensityMatrix & m) -> XYPoint;

    /// The same statistics from the floating-point spectrum.
    auto xy_point_spectral(const DensityMatrix & m) -> XYPoint;

    auto xy_point(const RootedDigraph & gadget, const Digraph & host, HomOptions options = {}) -> XYPoint;

    struct GraphonVerdict
    {
        bool holds = false;
        std::string reason;
        std::optional<Arc> offending;
        /// Common count on the expected pairs.
        BigInt count;
        /// Square root of the common count, when it is a perfect square.
        std::optional<BigInt> b;
        /// Common density entry.
        Rational a;
        std::size_t expected_pairs = 0;
        std::size_t checked_pairs = 0;
    };

    /// Checks that the nonzero entries sit exactly on the graph edges of the
    /// blocks built from gadget i (1-based), all with the same positive
    /// value. Partial matrices are checked on their evaluated pairs.
    auto graphon_pattern_check(const DensityMatrix & m, const HostAtlas & atlas, int i) -> GraphonVerdict;

    /// Header row of vertex ids; each row starts with its id.
    auto counts_to_csv(const DensityMatrix & m) -> std::string;
    auto densities_to_csv(const DensityMatrix & m) -> std::string;

    /// Reads either CSV form back. Entries may be integers or a/b.
    auto density_matrix_from_csv(const std::string & text) -> DensityMatrix;
}
