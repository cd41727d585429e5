#include "subdiv/named.hpp"

#include <vector>

#include "subdiv/errors.hpp"

namespace subdiv::named {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph complete_bipartite(std::size_t s, std::size_t t) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < s; ++u)
    for (Vertex v = 0; v < t; ++v) e.emplace_back(u, static_cast<Vertex>(s + v));
  return Graph(s + t, e);
}

Graph cycle(std::size_t n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph(n, e);
}

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

Graph crown(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) e.emplace_back(u, static_cast<Vertex>(n + v));
  return Graph(2 * n, e);
}

Graph hypercube(std::size_t d) {
  if (d > 16) throw ResourceError("hypercube dimension too large");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t bit = 0; bit < d; ++bit) {
      const Vertex u = v ^ static_cast<Vertex>(1U << bit);
      if (v < u) e.emplace_back(v, u);
    }
  return Graph(n, e);
}

BipartiteGraph complete_bipartite_sides(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) e.emplace_back(u, v);
  return BipartiteGraph(a, b, e);
}

BipartiteGraph even_cycle_sides(std::size_t k) {
  if (k < 2) throw InputError("an even cycle needs k >= 2");
  std::vector<Edge> e;
  for (Vertex i = 0; i < k; ++i) {
    e.emplace_back(i, i);
    e.emplace_back(i, static_cast<Vertex>((i + 1) % k));
  }
  return BipartiteGraph(k, k, e);
}

BipartiteGraph heawood() {
  std::vector<Edge> e;
  for (Vertex line = 0; line < 7; ++line)
    for (Vertex offset : {0U, 1U, 3U}) e.emplace_back((line + offset) % 7, line);
  return BipartiteGraph(7, 7, e);
}

}  // namespace subdiv::named
