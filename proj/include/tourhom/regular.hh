#pragma once

#include <tourhom/digraph.hh>

#include <cstdint>
#include <vector>

namespace tourhom
{
    /// Uniform-ish random d-regular simple graph by sequential pairing of
    /// vertex points, restarting when the pairing gets stuck. Throws
    /// std::invalid_argument if n*d is odd or d >= n, std::runtime_error
    /// after max_restarts failed attempts.
    auto random_regular_graph(int n, int d, std::uint64_t seed, int max_restarts = 1000) -> SimpleGraph;

    /// Smallest d with d^3 >= n^2, bumped by one if n*d would be odd.
    auto degree_for_size(int n) -> int;

    /// Adjacency eigenvalues ordered by absolute value descending.
    auto adjacency_spectrum(const SimpleGraph & g) -> std::vector<double>;
}
