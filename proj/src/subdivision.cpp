#include "subdiv/subdivision.hpp"

#include <algorithm>
#include <string>

#include "subdiv/errors.hpp"
#include "subdiv/named.hpp"

namespace subdiv {

namespace {

void require_positive(std::size_t x, const char* name) {
  if (x < 1) throw InputError(std::string(name) + " must be at least 1");
}

}  // namespace

void validate(const Multigraph& h) {
  for (const auto& [u, v] : h.edges) {
    if (u >= h.vertex_count || v >= h.vertex_count) throw InputError("multigraph edge endpoint out of range");
    if (u == v) throw InputError("multigraph has a loop at " + std::to_string(u));
  }
}

Multigraph as_multigraph(const Graph& g) { return {g.vertex_count(), g.edges()}; }

Subdivision subdivide_k(const Multigraph& h, std::size_t k) {
  validate(h);
  Subdivision out;
  out.branch_count = h.vertex_count;
  out.interior.resize(h.edges.size());
  if (k == 0) {
    std::vector<Edge> seen;
    for (auto [u, v] : h.edges) seen.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw InputError("k = 0 with parallel edges would give a multigraph");
    out.graph = Graph(h.vertex_count, h.edges);
    return out;
  }
  std::vector<Edge> e;
  Vertex next = static_cast<Vertex>(h.vertex_count);
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    Vertex prev = h.edges[i].first;
    for (std::size_t s = 0; s < k; ++s) {
      out.interior[i].push_back(next);
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, h.edges[i].second);
  }
  out.graph = Graph(next, e);
  return out;
}

Hypergraph::Hypergraph(std::size_t vertex_count, std::size_t uniformity, std::vector<std::vector<Vertex>> edges)
    : n_(vertex_count), r_(uniformity), edges_(std::move(edges)) {
  require_positive(r_, "uniformity");
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (e.size() != r_) throw InputError("hyperedge size differs from the uniformity");
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw InputError("hyperedge repeats a vertex");
    if (!e.empty() && e.back() >= n_) throw InputError("hyperedge vertex out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

BipartiteGraph incidence_subdivision(const Hypergraph& h) {
  std::vector<Edge> e;
  for (std::size_t j = 0; j < h.edges().size(); ++j)
    for (Vertex v : h.edges()[j]) e.emplace_back(v, static_cast<Vertex>(j));
  return BipartiteGraph(h.vertex_count(), h.edges().size(), e);
}

Graph family_kt(std::size_t t) {
  require_positive(t, "t");
  return named::complete(t);
}

Graph family_kst(std::size_t s, std::size_t t) {
  require_positive(s, "s");
  require_positive(t, "t");
  return named::complete_bipartite(s, t);
}

Hypergraph family_kt_uniform(std::size_t t, std::size_t r) {
  require_positive(t, "t");
  require_positive(r, "r");
  if (t < r) throw InputError("K_t^(r) needs t >= r");
  std::vector<std::vector<Vertex>> edges;
  std::vector<char> pick(t, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), 1);
  do {
    std::vector<Vertex> e;
    for (Vertex v = 0; v < t; ++v)
      if (pick[v]) e.push_back(v);
    edges.push_back(std::move(e));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return Hypergraph(t, r, std::move(edges));
}

Hypergraph family_complete_r_partite(std::size_t t, std::size_t r) {
  require_positive(t, "t");
  require_positive(r, "r");
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (total > (std::size_t{1} << 24) / t) throw ResourceError("complete r-partite hypergraph too large");
    total *= t;
  }
  std::vector<std::vector<Vertex>> edges;
  std::vector<std::size_t> digit(r, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<Vertex> e(r);
    for (std::size_t i = 0; i < r; ++i) e[i] = static_cast<Vertex>(i * t + digit[i]);
    edges.push_back(std::move(e));
    for (std::size_t i = r; i-- > 0;) {
      if (++digit[i] < t) break;
      digit[i] = 0;
    }
  }
  return Hypergraph(t * r, r, std::move(edges));
}

Hypergraph fano_plane() {
  std::vector<std::vector<Vertex>> lines;
  for (Vertex i = 0; i < 7; ++i) lines.push_back({i, (i + 1) % 7, (i + 3) % 7});
  return Hypergraph(7, 3, std::move(lines));
}

}  // namespace subdiv
