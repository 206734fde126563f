#include <tourhom/regular.hh>

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace tourhom;

TEST(Regular, DegreeForSize)
{
    EXPECT_EQ(degree_for_size(64), 16);
    EXPECT_EQ(degree_for_size(128), 26);
    EXPECT_EQ(degree_for_size(256), 41);
    for (int n = 8 ; n <= 300 ; ++n) {
        long d = degree_for_size(n);
        EXPECT_EQ(n * d % 2, 0);
        EXPECT_GE(d * d * d, static_cast<long>(n) * n);
    }
}

TEST(Regular, GraphsAreSimpleAndRegular)
{
    for (auto [n, d] : {std::pair(10, 3), std::pair(64, 16), std::pair(30, 7 + 1), std::pair(12, 11)}) {
        auto g = random_regular_graph(n, d, 5);
        EXPECT_EQ(g.n, n);
        EXPECT_EQ(g.edges.size(), static_cast<std::size_t>(n * d / 2));
        std::vector<int> degree(n, 0);
        std::set<Arc> seen;
        for (auto [a, b] : g.edges) {
            EXPECT_LT(a, b);
            EXPECT_TRUE(seen.insert({a, b}).second);
            ++degree[a];
            ++degree[b];
        }
        for (int v = 0 ; v < n ; ++v)
            EXPECT_EQ(degree[v], d);
    }
}

TEST(Regular, Deterministic)
{
    EXPECT_EQ(random_regular_graph(40, 6, 9).edges, random_regular_graph(40, 6, 9).edges);
    EXPECT_NE(random_regular_graph(40, 6, 9).edges, random_regular_graph(40, 6, 10).edges);
}

TEST(Regular, RejectsImpossibleParameters)
{
    EXPECT_THROW(random_regular_graph(7, 3, 1), std::invalid_argument);
    EXPECT_THROW(random_regular_graph(5, 5, 1), std::invalid_argument);
}

TEST(Regular, TopEigenvalueIsDegree)
{
    for (int n : {20, 64}) {
        int d = degree_for_size(n);
        auto spectrum = adjacency_spectrum(random_regular_graph(n, d, 2));
        ASSERT_EQ(spectrum.size(), static_cast<std::size_t>(n));
        EXPECT_NEAR(spectrum.front(), d, 1e-9);
        double sum = 0, squares = 0;
        for (double l : spectrum) {
            sum += l;
            squares += l * l;
        }
        EXPECT_NEAR(sum, 0.0, 1e-8);
        EXPECT_NEAR(squares, static_cast<double>(n) * d, 1e-7);
    }
}
