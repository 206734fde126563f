#include <tourhom/region.hh>
#include <tourhom/spectral.hh>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tourhom
{
    auto bracket_of(double x) -> long
    {
        if (! (x > 0.0 && x <= 1.0))
            throw std::invalid_argument{"bracket needs 0 < x <= 1"};
        return std::max(1L, static_cast<long>(std::floor(1.0 / x)));
    }

    auto bracket_of(const Rational & x) -> BigInt
    {
        if (x <= 0 || x > 1)
            throw std::invalid_argument{"bracket needs 0 < x <= 1"};
        BigInt r;
        mpz_fdiv_q(r.get_mpz_t(), x.get_den_mpz_t(), x.get_num_mpz_t());
        return r;
    }

    auto chord(const BigInt & r) -> Chord
    {
        if (r < 1)
            throw std::invalid_argument{"chord index must be positive"};
        BigInt denom = r * (r + 1);
        return {make_rational(2 * r + 1, denom), make_rational(BigInt{-1}, denom)};
    }

    auto chord_lower_bound(long r, double x) -> double
    {
        double rr = static_cast<double>(r);
        return ((2.0 * rr + 1.0) * x - 1.0) / (rr * (rr + 1.0));
    }

    auto in_region(double x, double y, double tol) -> bool
    {
        if (std::isnan(x) || std::isnan(y) || std::isnan(tol))
            throw std::invalid_argument{"in_region called with NaN"};
        if (tol < 0)
            throw std::invalid_argument{"negative tolerance"};
        if (x < -tol || y < -tol || x > 1 + tol || y > 1 + tol || y > x + tol)
            return false;
        if (x <= 0)
            return y <= tol;

        // The lower boundary is the largest of the chords; the neighbours of
        // the bracket are checked too so rounding at a hull vertex cannot
        // pick a chord that is slightly too high. A few ulps of slack keep
        // exact hull vertices inside at zero tolerance.
        long r = bracket_of(std::min(x, 1.0));
        double bound = -std::numeric_limits<double>::infinity();
        for (long q = std::max(1L, r - 1) ; q <= r + 1 ; ++q)
            bound = std::max(bound, chord_lower_bound(q, x));
        double slack = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(bound));
        return y >= bound - tol - slack;
    }

    auto in_region(const Rational & x, const Rational & y) -> bool
    {
        if (x < 0 || y < 0 || x > 1 || y > 1 || y > x)
            return false;
        if (x == 0)
            return y == 0;
        auto c = chord(bracket_of(x));
        return y >= c.slope * x + c.intercept;
    }

    auto elementary_from_power(const PowerSums & p) -> ElementarySums
    {
        return {p.p1, (p.p1 * p.p1 - p.p2) / 2, (p.p1 * p.p1 * p.p1 - 3 * p.p1 * p.p2 + 2 * p.p3) / 6};
    }

    auto power_from_elementary(const ElementarySums & e) -> PowerSums
    {
        return {e.e1, e.e1 * e.e1 - 2 * e.e2, e.e1 * e.e1 * e.e1 - 3 * e.e1 * e.e2 + 3 * e.e3};
    }

    NonnegVector::NonnegVector(std::vector<double> values) :
        _values(std::move(values))
    {
        for (double v : _values)
            if (! std::isfinite(v) || v < 0)
                throw std::invalid_argument{"entries must be finite and nonnegative"};
        std::sort(_values.begin(), _values.end(), std::greater<>{});
    }

    auto NonnegVector::power_sum(int j) const -> double
    {
        double total = 0;
        for (double v : _values)
            total += std::pow(v, j);
        return total;
    }

    auto NonnegVector::elementary(int j) const -> double
    {
        if (j < 0)
            return 0;
        std::vector<double> e(j + 1, 0.0);
        e[0] = 1;
        for (double v : _values)
            for (int i = j ; i >= 1 ; --i)
                e[i] += v * e[i - 1];
        return e[j];
    }

    auto hull_point(int m, double alpha) -> std::pair<double, double>
    {
        if (m < 1 || ! (alpha > 0))
            throw std::invalid_argument{"hull_point needs m >= 1 and alpha > 0"};
        double mm = m;
        return {alpha * alpha * (mm - 1) / (2 * mm), alpha * alpha * alpha * (mm - 1) * (mm - 2) / (6 * mm * mm)};
    }

    auto hull_map(double e2, double e3, double alpha) -> std::pair<double, double>
    {
        return {1 - 2 * e2 / (alpha * alpha), 1 - 3 * e2 / (alpha * alpha) + 3 * e3 / (alpha * alpha * alpha)};
    }

    auto equal_mass_minimum(double c2, double c3, double alpha, int max_m) -> double
    {
        double best = std::numeric_limits<double>::infinity();
        for (int m = 1 ; m <= max_m ; ++m) {
            auto [e2, e3] = hull_point(m, alpha);
            best = std::min(best, c2 * e2 + c3 * e3);
        }
        // Infinitely many vanishing entries.
        best = std::min(best, c2 * alpha * alpha / 2 + c3 * alpha * alpha * alpha / 6);
        return best;
    }

    auto sampled_minimum(double c2, double c3, double alpha, int max_support, int samples, std::mt19937_64 & rng) -> double
    {
        std::uniform_int_distribution<int> size{1, max_support};
        std::exponential_distribution<double> weight{1.0};
        double best = std::numeric_limits<double>::infinity();
        for (int s = 0 ; s < samples ; ++s) {
            std::vector<double> v(size(rng));
            double total = 0;
            for (auto & x : v)
                total += x = weight(rng);
            for (auto & x : v)
                x *= alpha / total;
            NonnegVector vec{std::move(v)};
            best = std::min(best, c2 * vec.elementary(2) + c3 * vec.elementary(3));
        }
        return best;
    }

    auto verify_region_on_hosts(const RootedDigraph & gadget, const std::vector<Tournament> & hosts, double tol) -> RegionReport
    {
        RegionReport report;
        for (std::size_t h = 0 ; h < hosts.size() ; ++h) {
            auto m = density_matrix(gadget, hosts[h].graph());
            if (m.is_zero()) {
                ++report.skipped;
                continue;
            }
            auto p = xy_point(m);
            ++report.checked;
            if (! in_region(p.x, p.y, tol))
                report.outside.push_back({h, p.x, p.y});
            if (! in_region(*p.exact_x, *p.exact_y))
                ++report.exact_outside;
        }
        return report;
    }
}
