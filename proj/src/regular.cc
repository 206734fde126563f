#include <tourhom/regular.hh>
#include <tourhom/spectral.hh>

#include <random>
#include <set>
#include <optional>
#include <stdexcept>

namespace tourhom
{
    namespace
    {
        auto try_pairing(int n, int d, std::mt19937_64 & rng) -> std::optional<std::vector<Arc>>
        {
            std::vector<Vertex> points;
            points.reserve(static_cast<std::size_t>(n) * d);
            for (Vertex v = 0 ; v < n ; ++v)
                for (int i = 0 ; i < d ; ++i)
                    points.push_back(v);

            std::set<Arc> edges;
            const int patience = 50 * n;
            while (! points.empty()) {
                bool paired = false;
                for (int attempt = 0 ; attempt < patience && ! paired ; ++attempt) {
                    std::uniform_int_distribution<std::size_t> pick{0, points.size() - 1};
                    std::size_t i = pick(rng), j = pick(rng);
                    Vertex u = points[i], v = points[j];
                    if (i == j || u == v || edges.contains({std::min(u, v), std::max(u, v)}))
                        continue;
                    edges.emplace(std::min(u, v), std::max(u, v));
                    // Remove the larger index first so the smaller stays valid.
                    for (auto k : {std::max(i, j), std::min(i, j)}) {
                        points[k] = points.back();
                        points.pop_back();
                    }
                    paired = true;
                }
                if (! paired)
                    return std::nullopt;
            }
            return std::vector<Arc>{edges.begin(), edges.end()};
        }
    }

    auto random_regular_graph(int n, int d, std::uint64_t seed, int max_restarts) -> SimpleGraph
    {
        if (n < 1 || d < 0 || d >= n || (static_cast<long>(n) * d) % 2 != 0)
            throw std::invalid_argument{"no " + std::to_string(d) + "-regular simple graph on " + std::to_string(n) + " vertices"};
        std::mt19937_64 rng{seed};
        for (int attempt = 0 ; attempt <= max_restarts ; ++attempt)
            if (auto edges = try_pairing(n, d, rng))
                return SimpleGraph::make(n, std::move(*edges));
        throw std::runtime_error{"random regular generation failed after " + std::to_string(max_restarts) + " restarts"};
    }

    auto degree_for_size(int n) -> int
    {
        long long target = static_cast<long long>(n) * n;
        int d = 1;
        while (static_cast<long long>(d) * d * d < target)
            ++d;
        if ((static_cast<long long>(n) * d) % 2 != 0)
            ++d;
        return d;
    }

    auto adjacency_spectrum(const SimpleGraph & g) -> std::vector<double>
    {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
        for (auto [u, v] : g.edges) {
            a(u, v) = 1;
            a(v, u) = 1;
        }
        return symmetric_eigenvalues(a);
    }
}
