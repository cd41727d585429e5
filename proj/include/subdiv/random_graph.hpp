#pragma once

#include <cstddef>
#include <cstdint>

#include "subdiv/graph.hpp"

namespace subdiv {

/// Erdős–Rényi G(n, p): pairs (u, v), u < v, in lexicographic order, each
/// kept with probability p using one Rng draw per pair. InputError unless
/// p is in [0, 1].
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);

/// Bipartite G(a, b, p), pairs in lexicographic (A, B) order.
BipartiteGraph sample_bipartite_gnp(std::size_t a, std::size_t b, double p, std::uint64_t seed);

}  // namespace subdiv
