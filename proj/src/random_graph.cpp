#include "subdiv/random_graph.hpp"

#include <vector>

#include "subdiv/errors.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
}

}  // namespace

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  Rng rng(seed);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return Graph(n, e);
}

BipartiteGraph sample_bipartite_gnp(std::size_t a, std::size_t b, double p, std::uint64_t seed) {
  check_probability(p);
  Rng rng(seed);
  std::vector<Edge> e;
  for (Vertex i = 0; i < a; ++i)
    for (Vertex j = 0; j < b; ++j)
      if (rng.bernoulli(p)) e.emplace_back(i, j);
  return BipartiteGraph(a, b, e);
}

}  // namespace subdiv
