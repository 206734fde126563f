#include <tourhom/gadget.hh>
#include <tourhom/region.hh>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace tourhom;

namespace
{
    auto random_vector(std::mt19937_64 & rng, int max_support) -> std::vector<double>
    {
        std::uniform_int_distribution<int> size{1, max_support};
        std::exponential_distribution<double> mass{1.0};
        std::vector<double> v(size(rng));
        for (auto & x : v)
            x = mass(rng);
        return v;
    }
}

TEST(Region, MembershipExamples)
{
    EXPECT_TRUE(in_region(0.5, 0.25));
    EXPECT_FALSE(in_region(0.3, 0.35));
    EXPECT_FALSE(in_region(0.4, 0.14));
    EXPECT_TRUE(in_region(1.0, 1.0));
    EXPECT_TRUE(in_region(0.0, 0.0));
    EXPECT_TRUE(in_region(0.4, 0.2));
    EXPECT_FALSE(in_region(-0.1, 0.0));
    EXPECT_FALSE(in_region(1.1, 1.0));
    EXPECT_TRUE(in_region(0.4, 0.14, 0.05));

    EXPECT_TRUE(in_region(make_rational(1, 2), make_rational(1, 4)));
    EXPECT_FALSE(in_region(make_rational(2, 5), make_rational(7, 50)));
    EXPECT_TRUE(in_region(make_rational(1, 7), make_rational(1, 49)));
    EXPECT_FALSE(in_region(make_rational(1, 7), make_rational(1, 49) - make_rational(1, 1000000)));
}

TEST(Region, NaNRejected)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(in_region(nan, 0.1), std::invalid_argument);
    EXPECT_THROW(in_region(0.1, nan), std::invalid_argument);
}

TEST(Region, Brackets)
{
    EXPECT_EQ(bracket_of(1.0), 1);
    EXPECT_EQ(bracket_of(0.4), 2);
    EXPECT_EQ(bracket_of(0.3), 3);
    EXPECT_EQ(bracket_of(make_rational(1, 3)), 3);
    EXPECT_EQ(bracket_of(make_rational(2, 7)), 3);
    for (long r = 1 ; r < 200 ; ++r) {
        double x = 1.0 / (r + 0.5);
        EXPECT_EQ(bracket_of(x), r);
        EXPECT_LE(1.0 / (r + 1), x);
        EXPECT_LE(x, 1.0 / r);
    }
}

TEST(Region, ChordsPassThroughVertices)
{
    auto c = chord(2);
    EXPECT_EQ(c.slope, make_rational(5, 6));
    EXPECT_EQ(c.intercept, make_rational(-1, 6));
    for (long r = 1 ; r <= 1000 ; r += 37) {
        auto line = chord(r);
        for (long v : {r, r + 1}) {
            Rational x = make_rational(1, v);
            Rational y = line.slope * x + line.intercept;
            EXPECT_EQ(y, make_rational(1, v * v));
        }
        EXPECT_NEAR(chord_lower_bound(r, 1.0 / r), 1.0 / (static_cast<double>(r) * r), 1e-15);
    }
}

TEST(Region, ExactAndFloatAgreeAwayFromBoundary)
{
    std::mt19937_64 rng{4};
    int compared = 0;
    for (int trial = 0 ; trial < 2000 ; ++trial) {
        long den = 1 + rng() % 500;
        Rational x = make_rational(1 + rng() % den, den);
        Rational y = make_rational(rng() % (den + 1), den);
        double fx = to_double(x), fy = to_double(y);
        if (in_region(fx, fy + 1e-9) != in_region(fx, fy - 1e-9) || in_region(fx + 1e-9, fy) != in_region(fx - 1e-9, fy))
            continue;
        EXPECT_EQ(in_region(x, y), in_region(fx, fy)) << to_string(x) << ", " << to_string(y);
        ++compared;
    }
    EXPECT_GT(compared, 1000);
}

TEST(Region, NewtonIdentitiesRoundTrip)
{
    std::mt19937_64 rng{5};
    for (int trial = 0 ; trial < 500 ; ++trial) {
        NonnegVector v{random_vector(rng, 8)};
        PowerSums p{v.power_sum(1), v.power_sum(2), v.power_sum(3)};
        auto e = elementary_from_power(p);
        EXPECT_NEAR(e.e1, v.elementary(1), 1e-9 * std::max(1.0, v.elementary(1)));
        EXPECT_NEAR(e.e2, v.elementary(2), 1e-9 * std::max(1.0, v.elementary(2)));
        EXPECT_NEAR(e.e3, v.elementary(3), 1e-9 * std::max(1.0, v.elementary(3)));
        auto back = power_from_elementary(e);
        EXPECT_NEAR(back.p2, p.p2, 1e-9 * std::max(1.0, p.p2));
        EXPECT_NEAR(back.p3, p.p3, 1e-9 * std::max(1.0, p.p3));
    }
}

TEST(Region, NonnegVectorRejectsBadEntries)
{
    EXPECT_THROW(NonnegVector({1.0, -0.5}), std::invalid_argument);
    EXPECT_THROW(NonnegVector({std::numeric_limits<double>::infinity()}), std::invalid_argument);
    NonnegVector v{{1.0, 3.0, 2.0}};
    EXPECT_EQ(std::vector<double>(v.values().begin(), v.values().end()), (std::vector<double>{3.0, 2.0, 1.0}));
    EXPECT_DOUBLE_EQ(v.elementary(2), 11.0);
    EXPECT_DOUBLE_EQ(v.elementary(3), 6.0);
}

TEST(Region, HullPoints)
{
    auto [e2a, e3a] = hull_point(1, 1.0);
    EXPECT_DOUBLE_EQ(e2a, 0.0);
    EXPECT_DOUBLE_EQ(e3a, 0.0);
    auto one = hull_map(e2a, e3a, 1.0);
    EXPECT_DOUBLE_EQ(one.first, 1.0);
    EXPECT_DOUBLE_EQ(one.second, 1.0);

    auto [e2b, e3b] = hull_point(2, 1.0);
    EXPECT_DOUBLE_EQ(e2b, 0.25);
    EXPECT_DOUBLE_EQ(e3b, 0.0);
    auto two = hull_map(e2b, e3b, 1.0);
    EXPECT_DOUBLE_EQ(two.first, 0.5);
    EXPECT_DOUBLE_EQ(two.second, 0.25);

    auto [e2c, e3c] = hull_point(3, 1.0);
    EXPECT_DOUBLE_EQ(e2c, 1.0 / 3);
    EXPECT_DOUBLE_EQ(e3c, 1.0 / 27);
    auto three = hull_map(e2c, e3c, 1.0);
    EXPECT_NEAR(three.first, 1.0 / 3, 1e-15);
    EXPECT_NEAR(three.second, 1.0 / 9, 1e-15);

    for (int m = 1 ; m <= 50 ; ++m)
        for (double alpha : {0.5, 1.0, 3.0}) {
            auto [e2, e3] = hull_point(m, alpha);
            auto [x, y] = hull_map(e2, e3, alpha);
            EXPECT_NEAR(x, 1.0 / m, 1e-12);
            EXPECT_NEAR(y, 1.0 / (static_cast<double>(m) * m), 1e-12);
        }
}

TEST(Region, NormalisedPowerSumsLieInRegion)
{
    std::mt19937_64 rng{6};
    for (int trial = 0 ; trial < 2000 ; ++trial) {
        NonnegVector v{random_vector(rng, 12)};
        const double alpha = v.power_sum(1);
        const double x = v.power_sum(2) / (alpha * alpha), y = v.power_sum(3) / (alpha * alpha * alpha);
        EXPECT_TRUE(in_region(x, y, 1e-12)) << x << ", " << y;
    }
}

TEST(Region, EqualMassVectorsMinimiseLinearForms)
{
    std::mt19937_64 rng{7};
    std::uniform_real_distribution<double> coef{-1.0, 1.0};
    for (int trial = 0 ; trial < 20 ; ++trial) {
        const double c2 = coef(rng), c3 = coef(rng);
        const double best = equal_mass_minimum(c2, c3, 1.0, 64);
        EXPECT_GE(sampled_minimum(c2, c3, 1.0, 10, 2000, rng), best - 1e-9);
    }
}

TEST(Region, ToyGadgetHosts)
{
    std::vector<Tournament> hosts;
    for (std::uint64_t seed = 0 ; seed < 30 ; ++seed)
        hosts.push_back(random_tournament(8 + seed % 4, seed));
    auto report = verify_region_on_hosts(build_F_dagger(toy_gadget()), hosts);
    EXPECT_EQ(report.checked + report.skipped, hosts.size());
    EXPECT_GT(report.checked, 0u);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.exact_outside, 0u);
}
