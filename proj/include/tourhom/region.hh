#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/numeric.hh>

#include <random>
#include <span>
#include <utility>
#include <vector>

namespace tourhom
{
    /// r with x in [1/(r+1), 1/r], i.e. floor(1/x). Requires 0 < x <= 1.
    auto bracket_of(double x) -> long;
    auto bracket_of(const Rational & x) -> BigInt;

    /// The line through (1/(r+1), 1/(r+1)^2) and (1/r, 1/r^2), as slope
    /// (2r+1)/(r(r+1)) and intercept -1/(r(r+1)).
    struct Chord
    {
        Rational slope, intercept;
    };

    auto chord(const BigInt & r) -> Chord;

    auto chord_lower_bound(long r, double x) -> double;

    /// Membership in the convex hull of the points (1/r, 1/r^2) together
    /// with its limit point (0, 0). Throws std::invalid_argument on NaN.
    auto in_region(double x, double y, double tol = 0.0) -> bool;

    /// Exact membership.
    auto in_region(const Rational & x, const Rational & y) -> bool;

    struct PowerSums
    {
        double p1, p2, p3;
    };

    struct ElementarySums
    {
        double e1, e2, e3;
    };

    auto elementary_from_power(const PowerSums & p) -> ElementarySums;
    auto power_from_elementary(const ElementarySums & e) -> PowerSums;

    /// Finitely supported nonincreasing vector of nonnegative reals.
    class NonnegVector
    {
        public:
            /// Sorts descending; throws std::invalid_argument on a negative
            /// or non-finite entry.
            explicit NonnegVector(std::vector<double> values);

            auto values() const -> std::span<const double> { return _values; }
            auto power_sum(int j) const -> double;

            /// Elementary symmetric polynomial e_j by direct recurrence.
            auto elementary(int j) const -> double;

        private:
            std::vector<double> _values;
    };

    /// (e2, e3) of m equal entries alpha/m.
    auto hull_point(int m, double alpha) -> std::pair<double, double>;

    /// Sends (e2, e3) at total mass alpha to (p2/alpha^2, p3/alpha^3).
    auto hull_map(double e2, double e3, double alpha) -> std::pair<double, double>;

    /// Minimum of c2 e2 + c3 e3 over the equal-mass vectors of size
    /// 1..max_m with total alpha.
    auto equal_mass_minimum(double c2, double c3, double alpha, int max_m) -> double;

    /// Minimum of c2 e2 + c3 e3 over random nonnegative vectors of total
    /// alpha with at most max_support entries.
    auto sampled_minimum(double c2, double c3, double alpha, int max_support, int samples, std::mt19937_64 & rng) -> double;

    struct RegionOutlier
    {
        std::size_t host = 0;
        double x = 0, y = 0;
    };

    struct RegionReport
    {
        std::size_t checked = 0;
        /// Hosts whose fourth power sum vanishes.
        std::size_t skipped = 0;
        std::vector<RegionOutlier> outside;
        /// Points outside the region in exact arithmetic.
        std::size_t exact_outside = 0;

        auto passed() const -> bool { return outside.empty(); }
    };

    /// Computes the (x, y) statistics of the gadget on every host and checks
    /// membership within tol.
    auto verify_region_on_hosts(const RootedDigraph & gadget, const std::vector<Tournament> & hosts,
            double tol = 1e-9) -> RegionReport;
}
