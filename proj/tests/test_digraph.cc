#include <tourhom/digraph.hh>
#include <tourhom/io.hh>

#include <gtest/gtest.h>

#include <random>

using namespace tourhom;

namespace
{
    auto cyclic_triangle() -> Tournament
    {
        const Arc arcs[] = {{0, 1}, {1, 2}, {2, 0}};
        return Tournament::make(3, arcs);
    }
}

TEST(Tournament, MakeAcceptsCompleteOrientations)
{
    const Arc one[] = {{0, 1}};
    EXPECT_EQ(Tournament::make(2, one).graph().arc_count(), 1u);
    EXPECT_EQ(cyclic_triangle().size(), 3);
}

TEST(Tournament, MakeRejectsDoubleOrientation)
{
    const Arc arcs[] = {{0, 1}, {1, 0}, {1, 2}, {2, 0}};
    try {
        Tournament::make(3, arcs);
        FAIL() << "expected Tournament::Invalid";
    }
    catch (const Tournament::Invalid & e) {
        EXPECT_EQ(e.kind, Tournament::Violation::DoubleOrientation);
        EXPECT_EQ(std::pair(e.u, e.v), std::pair(0, 1));
    }
}

TEST(Tournament, MakeRejectsMissingPairAndLoops)
{
    const Arc missing[] = {{0, 1}, {1, 2}};
    EXPECT_THROW(Tournament::make(3, missing), Tournament::Invalid);
    const Arc loop[] = {{0, 0}, {0, 1}};
    EXPECT_THROW(Tournament::make(2, loop), Tournament::Invalid);
    const Arc range[] = {{0, 5}};
    EXPECT_THROW(Tournament::make(2, range), Tournament::Invalid);
}

TEST(Tournament, Transitive)
{
    EXPECT_EQ(transitive_tournament(1).graph().arc_count(), 0u);
    const Arc three[] = {{0, 1}, {0, 2}, {1, 2}};
    EXPECT_EQ(transitive_tournament(3).graph(), Digraph::from_arcs(3, three));
    EXPECT_TRUE(is_acyclic(transitive_tournament(4).graph()));
}

TEST(Tournament, RandomIsPureFunctionOfSeed)
{
    EXPECT_EQ(random_tournament(5, 7), random_tournament(5, 7));
    EXPECT_NO_THROW(Tournament::from_digraph(random_tournament(5, 8).graph()));

    auto big = random_tournament(1000, 3);
    std::size_t total = 0;
    for (Vertex v = 0 ; v < big.size() ; ++v)
        total += big.graph().out_degree(v);
    EXPECT_EQ(total, 1000u * 999u / 2u);
}

TEST(Digraph, DisjointUnion)
{
    const Arc arc[] = {{0, 1}};
    auto a = Digraph::from_arcs(2, arc);
    const Arc both[] = {{0, 1}, {2, 3}};
    EXPECT_EQ(disjoint_union(a, a), Digraph::from_arcs(4, both));
    EXPECT_EQ(disjoint_union(a, Digraph{0}), a);
}

TEST(Digraph, DisjointUnionCountsAddAndAssociate)
{
    std::mt19937_64 rng{1};
    for (int trial = 0 ; trial < 20 ; ++trial) {
        std::vector<Digraph> parts;
        for (int i = 0 ; i < 3 ; ++i)
            parts.push_back(random_tournament(1 + rng() % 5, rng()).graph());
        auto left = disjoint_union(disjoint_union(parts[0], parts[1]), parts[2]);
        auto right = disjoint_union(parts[0], disjoint_union(parts[1], parts[2]));
        EXPECT_EQ(left, right);
        EXPECT_EQ(left.size(), parts[0].size() + parts[1].size() + parts[2].size());
        EXPECT_EQ(left.arc_count(), parts[0].arc_count() + parts[1].arc_count() + parts[2].arc_count());
    }
}

TEST(Digraph, InducedSubdigraph)
{
    const Vertex pair[] = {0, 1};
    const Arc arc[] = {{0, 1}};
    EXPECT_EQ(induced_subdigraph(cyclic_triangle().graph(), pair), Digraph::from_arcs(2, arc));

    const Vertex odd[] = {1, 3};
    EXPECT_EQ(induced_subdigraph(transitive_tournament(4).graph(), odd), Digraph::from_arcs(2, arc));

    auto g = random_tournament(6, 2).graph();
    const Vertex all[] = {0, 1, 2, 3, 4, 5};
    EXPECT_EQ(induced_subdigraph(g, all), g);
}

TEST(Digraph, Acyclicity)
{
    EXPECT_TRUE(is_acyclic(transitive_tournament(5).graph()));
    EXPECT_FALSE(is_acyclic(cyclic_triangle().graph()));
    EXPECT_TRUE(is_acyclic(Digraph{3}));
}

TEST(Digraph, AcyclicTournamentsAreTransitive)
{
    for (std::uint64_t seed = 0 ; seed < 200 ; ++seed) {
        auto t = random_tournament(5, seed);
        std::vector<int> degrees;
        for (Vertex v = 0 ; v < 5 ; ++v)
            degrees.push_back(t.graph().out_degree(v));
        std::sort(degrees.begin(), degrees.end());
        EXPECT_EQ(is_acyclic(t.graph()), degrees == std::vector<int>({0, 1, 2, 3, 4}));
    }
}

TEST(Digraph, WeakComponents)
{
    const Arc arcs[] = {{0, 2}, {3, 4}};
    auto parts = weak_components(Digraph::from_arcs(5, arcs));
    EXPECT_EQ(parts, (std::vector<std::vector<Vertex>>{{0, 2}, {1}, {3, 4}}));
}

TEST(SimpleGraph, Normalises)
{
    auto g = SimpleGraph::make(3, {{2, 1}, {0, 1}});
    EXPECT_EQ(g.edges, (std::vector<Arc>{{0, 1}, {1, 2}}));
    EXPECT_THROW(SimpleGraph::make(3, {{1, 1}}), GraphError);
    EXPECT_THROW(SimpleGraph::make(3, {{0, 1}, {1, 0}}), GraphError);
}

TEST(Io, RoundTrip)
{
    auto t = random_tournament(7, 9);
    auto parsed = parse_graph_text(to_text(t.graph()));
    EXPECT_EQ(Digraph::from_arcs(parsed.n, parsed.pairs), t.graph());

    RootedDigraph r{t.graph(), 2, 5, {}};
    auto back = parse_graph_text(to_text(r));
    ASSERT_TRUE(back.roots);
    EXPECT_EQ(*back.roots, std::pair(2, 5));

    auto g = SimpleGraph::make(4, {{0, 1}, {2, 3}});
    auto undirected = parse_graph_text(to_text(g));
    EXPECT_TRUE(undirected.undirected_header);
    EXPECT_EQ(undirected.pairs, g.edges);
}

TEST(Io, RejectsMalformedText)
{
    EXPECT_THROW(parse_graph_text("digraph x\n"), FormatError);
    auto out_of_range = parse_graph_text("digraph 2\n0 7\n");
    EXPECT_THROW(Digraph::from_arcs(out_of_range.n, out_of_range.pairs), GraphError);
    EXPECT_THROW(parse_graph_text("0 1\n"), FormatError);
}
