#include <tourhom/bitset.hh>
#include <tourhom/kernels.hh>

#include <gtest/gtest.h>

#include <random>

using namespace tourhom;

namespace
{
    auto random_words(std::size_t n, std::mt19937_64 & rng, double density) -> std::vector<std::uint64_t>
    {
        std::vector<std::uint64_t> words(n);
        std::bernoulli_distribution bit{density};
        for (auto & w : words)
            for (int b = 0 ; b < 64 ; ++b)
                if (bit(rng))
                    w |= std::uint64_t{1} << b;
        return words;
    }

    struct RestoreLevel
    {
        kernels::Level saved = kernels::active().level;
        ~RestoreLevel() { kernels::select(saved); }
    };
}

TEST(Kernels, ScalarAlwaysAvailable)
{
    auto levels = kernels::available_levels();
    ASSERT_FALSE(levels.empty());
    EXPECT_EQ(levels.front(), kernels::Level::Scalar);
    EXPECT_NE(kernels::table_for(kernels::Level::Scalar), nullptr);
}

TEST(Kernels, UnavailableLevelRejected)
{
    for (auto level : {kernels::Level::Avx2, kernels::Level::Neon})
        if (! kernels::table_for(level)) {
            EXPECT_THROW(kernels::select(level), std::invalid_argument);
        }
}

TEST(Kernels, EveryLevelMatchesScalar)
{
    const auto & scalar = kernels::scalar_table();
    std::mt19937_64 rng{11};
    for (auto level : kernels::available_levels()) {
        const auto & table = *kernels::table_for(level);
        SCOPED_TRACE(kernels::level_name(level));
        for (std::size_t n = 0 ; n <= 70 ; ++n)
            for (double density : {0.0, 0.02, 0.5, 1.0}) {
                auto a = random_words(n, rng, density), b = random_words(n, rng, density);
                EXPECT_EQ(table.popcount(a.data(), n), scalar.popcount(a.data(), n));
                EXPECT_EQ(table.and_popcount(a.data(), b.data(), n), scalar.and_popcount(a.data(), b.data(), n));
                EXPECT_EQ(table.and_any(a.data(), b.data(), n), scalar.and_any(a.data(), b.data(), n));

                std::vector<std::uint64_t> got(n), want(n);
                table.and_into(got.data(), a.data(), b.data(), n);
                scalar.and_into(want.data(), a.data(), b.data(), n);
                EXPECT_EQ(got, want);

                got = a;
                want = a;
                table.and_assign(got.data(), b.data(), n);
                scalar.and_assign(want.data(), b.data(), n);
                EXPECT_EQ(got, want);
            }
    }
}

TEST(Kernels, BitsetAgreesAcrossLevels)
{
    RestoreLevel restore;
    std::mt19937_64 rng{5};
    for (int trial = 0 ; trial < 50 ; ++trial) {
        const int n = std::uniform_int_distribution<int>{1, 700}(rng);
        Bitset a{n}, b{n};
        for (int i = 0 ; i < n ; ++i) {
            if (rng() % 3 == 0)
                a.set(i);
            if (rng() % 2 == 0)
                b.set(i);
        }

        std::vector<std::tuple<std::size_t, std::size_t, bool, std::vector<int>>> results;
        for (auto level : kernels::available_levels()) {
            kernels::select(level);
            Bitset c{n};
            c.assign_and(a, b);
            results.emplace_back(a.count(), a.intersection_count(b), a.intersects(b), c.members());
        }
        for (auto & r : results)
            EXPECT_EQ(r, results.front());
    }
}
