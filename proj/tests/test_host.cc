#include "oracle.hh"

#include <tourhom/host.hh>

#include <gtest/gtest.h>

#include <random>

using namespace tourhom;

namespace
{
    auto toy_dagger() -> RootedDigraph
    {
        return build_F_dagger(toy_gadget());
    }

    auto block_vertices(const HostAtlas & atlas, int b) -> std::vector<Vertex>
    {
        std::vector<Vertex> result;
        auto info = atlas.vertex_info();
        for (Vertex v = 0 ; v < static_cast<Vertex>(info.size()) ; ++v)
            if (info[v].block == b)
                result.push_back(v);
        return result;
    }

    auto random_graph(int n, double p, std::mt19937_64 & rng) -> SimpleGraph
    {
        std::bernoulli_distribution edge{p};
        std::vector<Arc> edges;
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                if (edge(rng))
                    edges.emplace_back(a, b);
        return SimpleGraph::make(n, edges);
    }
}

TEST(EdgeOrder, Examples)
{
    EXPECT_TRUE(edge_succ({2, 3}, {1, 4}));
    EXPECT_FALSE(edge_succ({1, 4}, {2, 3}));
    EXPECT_TRUE(edge_succ({2, 3}, {0, 1}));
    EXPECT_FALSE(edge_succ({0, 1}, {0, 1}));
}

TEST(EdgeOrder, IsStrictTotalOrder)
{
    std::vector<Arc> edges;
    for (int a = 0 ; a < 6 ; ++a)
        for (int b = a + 1 ; b < 6 ; ++b)
            edges.emplace_back(a, b);
    for (auto e : edges)
        for (auto f : edges)
            if (e != f) {
                EXPECT_NE(edge_succ(e, f), edge_succ(f, e));
            }
}

TEST(Host, SingleEdge)
{
    auto host = build_T_i(SimpleGraph::make(2, {{0, 1}}), toy_dagger());
    EXPECT_EQ(host.tournament.size(), 8);
    ASSERT_EQ(host.atlas.blocks.size(), 1u);
    EXPECT_EQ(host.atlas.blocks[0].cells.size(), 1u);
    EXPECT_EQ(host.atlas.base_edges(), (std::vector<Arc>{{0, 1}}));
}

TEST(Host, PathCellsFollowEdgeOrder)
{
    auto host = build_T_i(oracle::path_graph(3), toy_dagger());
    EXPECT_EQ(host.tournament.size(), 15);
    auto & cells = host.atlas.blocks[0].cells;
    ASSERT_EQ(cells.size(), 2u);
    const AtlasCell * low = &cells[0], * high = &cells[1];
    if (low->edge != Arc{0, 1})
        std::swap(low, high);
    ASSERT_EQ(low->edge, (Arc{0, 1}));
    ASSERT_EQ(high->edge, (Arc{1, 2}));
    auto members = [] (const AtlasCell & c) {
        auto all = c.left;
        all.insert(all.end(), c.right.begin(), c.right.end());
        return all;
    };
    for (auto u : members(*high))
        for (auto v : members(*low))
            EXPECT_TRUE(host.tournament.beats(u, v));
}

TEST(Host, EdgelessGraphGivesTransitiveBase)
{
    auto host = build_T_i(SimpleGraph::make(5, {}), toy_dagger());
    EXPECT_EQ(host.tournament, transitive_tournament(5));
}

TEST(Host, StarWithOneCopyEqualsSingleHost)
{
    auto g = oracle::cycle_graph(5);
    EXPECT_EQ(build_T_star(g, {toy_dagger()}, {1}).tournament, build_T_i(g, toy_dagger()).tournament);
}

TEST(Host, EarlierBlocksBeatLaterOnes)
{
    auto host = build_T_star(SimpleGraph::make(2, {{0, 1}}), {toy_dagger()}, {2});
    EXPECT_EQ(host.tournament.size(), 16);
    auto first = block_vertices(host.atlas, 0), second = block_vertices(host.atlas, 1);
    ASSERT_EQ(first.size() * second.size(), 64u);
    for (auto u : first)
        for (auto v : second)
            EXPECT_TRUE(host.tournament.beats(u, v));

    auto family = toy_family(2);
    auto mixed = build_T_star(SimpleGraph::make(2, {{0, 1}}), family.dagger, {1, 1});
    EXPECT_EQ(mixed.atlas.blocks[0].i, 1);
    EXPECT_EQ(mixed.atlas.blocks[1].i, 2);
    for (auto u : block_vertices(mixed.atlas, 0))
        for (auto v : block_vertices(mixed.atlas, 1))
            EXPECT_TRUE(mixed.tournament.beats(u, v));
}

TEST(Host, SizeFormulaAndValidity)
{
    std::mt19937_64 rng{3};
    auto family = toy_family(2);
    for (int trial = 0 ; trial < 20 ; ++trial) {
        auto g = random_graph(1 + rng() % 7, 0.5, rng);
        std::vector<int> r{1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3)};
        auto host = build_T_star(g, family.dagger, r);
        const int m = 3;
        int expected = (r[0] + r[1]) * (g.n + static_cast<int>(g.edges.size()) * 2 * m);
        EXPECT_EQ(host.tournament.size(), expected);
        EXPECT_EQ(host.atlas.vertex_count(), expected);
        EXPECT_NO_THROW(Tournament::from_digraph(host.tournament.graph()));
    }
}

TEST(Host, GadgetCopiesAreEmbedded)
{
    auto dagger = toy_dagger();
    auto g = oracle::cycle_graph(4);
    auto host = build_T_i(g, dagger);
    auto & block = host.atlas.blocks[0];
    for (auto & cell : block.cells) {
        std::vector<Vertex> place(dagger.graph.size());
        place[dagger.z] = block.base[cell.edge.first];
        place[dagger.w] = block.base[cell.edge.second];
        auto interior = dagger.interior();
        const std::size_t q = interior.size() / 2;
        for (std::size_t j = 0 ; j < q ; ++j) {
            place[interior[j]] = cell.left[j];
            place[interior[q + j]] = cell.right[j];
        }
        for (auto [u, v] : dagger.graph.arcs())
            EXPECT_TRUE(host.tournament.beats(place[u], place[v]));
    }
}

TEST(Host, AtlasJsonRoundTrip)
{
    auto host = build_T_star(oracle::cycle_graph(5), toy_family(2).dagger, {2, 1});
    auto back = atlas_from_json(atlas_to_json(host.atlas));
    ASSERT_EQ(back.blocks.size(), host.atlas.blocks.size());
    for (std::size_t b = 0 ; b < back.blocks.size() ; ++b) {
        EXPECT_EQ(back.blocks[b].i, host.atlas.blocks[b].i);
        EXPECT_EQ(back.blocks[b].k, host.atlas.blocks[b].k);
        EXPECT_EQ(back.blocks[b].base, host.atlas.blocks[b].base);
        ASSERT_EQ(back.blocks[b].cells.size(), host.atlas.blocks[b].cells.size());
        for (std::size_t c = 0 ; c < back.blocks[b].cells.size() ; ++c) {
            EXPECT_EQ(back.blocks[b].cells[c].edge, host.atlas.blocks[b].cells[c].edge);
            EXPECT_EQ(back.blocks[b].cells[c].left, host.atlas.blocks[b].cells[c].left);
            EXPECT_EQ(back.blocks[b].cells[c].right, host.atlas.blocks[b].cells[c].right);
        }
    }
}

TEST(Host, RejectsBadMultiplicities)
{
    EXPECT_THROW(build_T_star(oracle::path_graph(2), {toy_dagger()}, {0}), std::invalid_argument);
    EXPECT_THROW(build_T_star(oracle::path_graph(2), {toy_dagger()}, {1, 1}), std::invalid_argument);
}
