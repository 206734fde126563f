#pragma once

#include <tourhom/digraph.hh>
#include <tourhom/gadget.hh>

#include <string>
#include <vector>

namespace tourhom
{
    /// e1 follows e2 in the edge order: larger endpoint sum, ties broken by
    /// the larger smaller endpoint. Edges are given with first < second.
    auto edge_succ(Arc e1, Arc e2) -> bool;

    /// The vertices of one glued gadget, excluding its roots.
    struct AtlasCell
    {
        Arc edge;
        std::vector<Vertex> left, right;
    };

    struct AtlasBlock
    {
        int i = 1;
        int k = 1;
        /// base[v] is the host vertex of graph vertex v.
        std::vector<Vertex> base;
        std::vector<AtlasCell> cells;
    };

    enum class HostRole : std::uint8_t
    {
        Base,
        Left,
        Right
    };

    struct HostVertexInfo
    {
        int block = 0;
        HostRole role = HostRole::Base;
        /// Graph vertex for Base, cell index within the block otherwise.
        int index = 0;
    };

    /// Provenance of every host vertex.
    struct HostAtlas
    {
        std::vector<AtlasBlock> blocks;

        auto vertex_count() const -> int;

        /// Per-vertex roles, derived from the blocks.
        auto vertex_info() const -> std::vector<HostVertexInfo>;

        /// Host-vertex pairs (a, b), a < b, that carry a graph edge inside a block.
        auto base_edges() const -> std::vector<Arc>;
    };

    struct Host
    {
        Tournament tournament;
        HostAtlas atlas;
    };

    /// Transitive base on V(G), one symmetrised gadget per edge {a, b} with
    /// z on a and w on b, left copy beating right copy inside each cell,
    /// base vertices off the edge beating the cell, and cells ordered by
    /// edge_succ. Graph vertices are 0..n-1; cell j occupies
    /// n + 2q*j .. n + 2q*(j+1) - 1 (q = gadget interior size / 2), edges in
    /// ascending order. Throws Tournament::Invalid if the result is not a
    /// tournament.
    auto build_T_i(const SimpleGraph & g, const RootedDigraph & dagger) -> Host;

    /// r[i] copies of the host for gadget i, blocks ordered by (i, copy), each
    /// block beating every later block.
    auto build_T_star(const SimpleGraph & g, const std::vector<RootedDigraph> & daggers, const std::vector<int> & r) -> Host;

    auto atlas_to_json(const HostAtlas & atlas) -> std::string;
    auto atlas_from_json(const std::string & text) -> HostAtlas;
}
