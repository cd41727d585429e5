#pragma once

#include <cstddef>

#include "subdiv/graph.hpp"

namespace subdiv::named {

Graph complete(std::size_t n);
/// Sides {0..s-1} and {s..s+t-1}.
Graph complete_bipartite(std::size_t s, std::size_t t);
Graph cycle(std::size_t n);
/// Path on n vertices.
Graph path(std::size_t n);
/// K_{1,k} with centre 0.
Graph star(std::size_t leaves);
/// K_{n,n} minus the matching {i, n+i}.
Graph crown(std::size_t n);
/// Hypercube Q_d on 2^d vertices.
Graph hypercube(std::size_t d);

BipartiteGraph complete_bipartite_sides(std::size_t a, std::size_t b);
/// C_{2k} with a_i ~ b_i and a_i ~ b_{i+1 mod k}.
BipartiteGraph even_cycle_sides(std::size_t k);
/// Point-line incidence graph of the Fano plane: lines {i, i+1, i+3} mod 7.
BipartiteGraph heawood();

}  // namespace subdiv::named
