#include <tourhom/host.hh>

#include <json.hpp>

#include <algorithm>

namespace tourhom
{
    auto edge_succ(Arc e1, Arc e2) -> bool
    {
        auto [x, y] = e1;
        auto [a, b] = e2;
        return x + y > a + b || (x + y == a + b && x > a);
    }

    auto HostAtlas::vertex_count() const -> int
    {
        int total = 0;
        for (auto & block : blocks) {
            total += static_cast<int>(block.base.size());
            for (auto & cell : block.cells)
                total += static_cast<int>(cell.left.size() + cell.right.size());
        }
        return total;
    }

    auto HostAtlas::vertex_info() const -> std::vector<HostVertexInfo>
    {
        std::vector<HostVertexInfo> info(vertex_count());
        for (int b = 0 ; b < static_cast<int>(blocks.size()) ; ++b) {
            auto & block = blocks[b];
            for (int v = 0 ; v < static_cast<int>(block.base.size()) ; ++v)
                info.at(block.base[v]) = {b, HostRole::Base, v};
            for (int c = 0 ; c < static_cast<int>(block.cells.size()) ; ++c) {
                for (auto v : block.cells[c].left)
                    info.at(v) = {b, HostRole::Left, c};
                for (auto v : block.cells[c].right)
                    info.at(v) = {b, HostRole::Right, c};
            }
        }
        return info;
    }

    auto HostAtlas::base_edges() const -> std::vector<Arc>
    {
        std::vector<Arc> result;
        for (auto & block : blocks)
            for (auto & cell : block.cells) {
                Vertex a = block.base.at(cell.edge.first), b = block.base.at(cell.edge.second);
                result.emplace_back(std::min(a, b), std::max(a, b));
            }
        std::sort(result.begin(), result.end());
        return result;
    }

    namespace
    {
        // Builds the single-block host into g at the given offset and
        // returns its block description.
        auto place_block(Digraph & g, Vertex offset, const SimpleGraph & graph, const RootedDigraph & dagger) -> AtlasBlock
        {
            dagger.validate();
            if (dagger.roles.size() != static_cast<std::size_t>(dagger.graph.size()))
                throw GraphError{"gadget lacks left/right role annotation"};

            const int n = graph.n;
            auto interior = dagger.interior();
            const int cell_size = static_cast<int>(interior.size());

            AtlasBlock block;
            for (Vertex v = 0 ; v < n ; ++v)
                block.base.push_back(offset + v);

            // Step 1: transitive base.
            for (Vertex u = 0 ; u < n ; ++u)
                for (Vertex v = u + 1 ; v < n ; ++v)
                    g.add_arc(offset + u, offset + v);

            // Step 2: one gadget per edge, z on the smaller end.
            std::vector<Vertex> image(dagger.graph.size());
            for (std::size_t j = 0 ; j < graph.edges.size() ; ++j) {
                auto [a, b] = graph.edges[j];
                Vertex start = offset + n + static_cast<Vertex>(j) * cell_size;
                AtlasCell cell{{a, b}, {}, {}};
                for (int t = 0 ; t < cell_size ; ++t) {
                    Vertex v = interior[t];
                    image[v] = start + t;
                    (dagger.roles[v] == GadgetRole::Right ? cell.right : cell.left).push_back(start + t);
                }
                image[dagger.z] = offset + a;
                image[dagger.w] = offset + b;
                for (auto [u, v] : dagger.graph.arcs())
                    g.add_arc(image[u], image[v]);

                // Step 3: left copy beats right copy.
                for (auto x : cell.left)
                    for (auto y : cell.right)
                        g.add_arc(x, y);

                // Step 4: base vertices off the edge beat the cell.
                for (Vertex x = 0 ; x < n ; ++x)
                    if (x != a && x != b)
                        for (int t = 0 ; t < cell_size ; ++t)
                            g.add_arc(offset + x, start + t);

                block.cells.push_back(std::move(cell));
            }

            // Step 5: later edges in the order beat earlier ones.
            for (std::size_t j1 = 0 ; j1 < graph.edges.size() ; ++j1)
                for (std::size_t j2 = 0 ; j2 < graph.edges.size() ; ++j2)
                    if (edge_succ(graph.edges[j1], graph.edges[j2])) {
                        Vertex s1 = offset + n + static_cast<Vertex>(j1) * cell_size;
                        Vertex s2 = offset + n + static_cast<Vertex>(j2) * cell_size;
                        for (int t1 = 0 ; t1 < cell_size ; ++t1)
                            for (int t2 = 0 ; t2 < cell_size ; ++t2)
                                g.add_arc(s1 + t1, s2 + t2);
                    }

            return block;
        }

        auto block_size(const SimpleGraph & graph, const RootedDigraph & dagger) -> int
        {
            return graph.n + static_cast<int>(graph.edges.size()) * (dagger.graph.size() - 2);
        }
    }

    auto build_T_i(const SimpleGraph & g, const RootedDigraph & dagger) -> Host
    {
        return build_T_star(g, {dagger}, {1});
    }

    auto build_T_star(const SimpleGraph & g, const std::vector<RootedDigraph> & daggers, const std::vector<int> & r) -> Host
    {
        if (daggers.size() != r.size())
            throw std::invalid_argument{"one multiplicity per gadget is required"};
        for (int ri : r)
            if (ri < 1)
                throw std::invalid_argument{"multiplicities must be at least 1"};

        int total = 0;
        std::vector<std::pair<Vertex, int>> spans;
        for (std::size_t i = 0 ; i < daggers.size() ; ++i)
            for (int k = 0 ; k < r[i] ; ++k) {
                int size = block_size(g, daggers[i]);
                spans.emplace_back(total, size);
                total += size;
            }

        Digraph host{total};
        HostAtlas atlas;
        std::size_t b = 0;
        for (std::size_t i = 0 ; i < daggers.size() ; ++i)
            for (int k = 0 ; k < r[i] ; ++k, ++b) {
                auto block = place_block(host, spans[b].first, g, daggers[i]);
                block.i = static_cast<int>(i) + 1;
                block.k = k + 1;
                atlas.blocks.push_back(std::move(block));
            }

        for (std::size_t b1 = 0 ; b1 < spans.size() ; ++b1)
            for (std::size_t b2 = b1 + 1 ; b2 < spans.size() ; ++b2)
                for (Vertex u = spans[b1].first ; u < spans[b1].first + spans[b1].second ; ++u)
                    for (Vertex v = spans[b2].first ; v < spans[b2].first + spans[b2].second ; ++v)
                        host.add_arc(u, v);

        return {Tournament::from_digraph(std::move(host)), std::move(atlas)};
    }

    auto atlas_to_json(const HostAtlas & atlas) -> std::string
    {
        nlohmann::json doc;
        doc["blocks"] = nlohmann::json::array();
        for (auto & block : atlas.blocks) {
            nlohmann::json cells = nlohmann::json::array();
            for (auto & cell : block.cells)
                cells.push_back({{"edge", {cell.edge.first, cell.edge.second}}, {"left", cell.left}, {"right", cell.right}});
            doc["blocks"].push_back({{"i", block.i}, {"k", block.k}, {"base", block.base}, {"cells", std::move(cells)}});
        }
        return doc.dump();
    }

    auto atlas_from_json(const std::string & text) -> HostAtlas
    {
        auto doc = nlohmann::json::parse(text);
        HostAtlas atlas;
        for (auto & b : doc.at("blocks")) {
            AtlasBlock block;
            block.i = b.at("i").get<int>();
            block.k = b.at("k").get<int>();
            block.base = b.at("base").get<std::vector<Vertex>>();
            for (auto & c : b.at("cells")) {
                auto edge = c.at("edge").get<std::vector<Vertex>>();
                if (edge.size() != 2)
                    throw std::invalid_argument{"atlas edge must have two endpoints"};
                block.cells.push_back({{edge[0], edge[1]}, c.at("left").get<std::vector<Vertex>>(),
                    c.at("right").get<std::vector<Vertex>>()});
            }
            atlas.blocks.push_back(std::move(block));
        }
        return atlas;
    }
}
