#pragma once

#include <cstddef>
#include <vector>

#include "subdiv/graph.hpp"

namespace subdiv {

/// Loopless multigraph; parallel edges allowed.
struct Multigraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
};

/// InputError on a loop or an endpoint out of range.
void validate(const Multigraph& h);

Multigraph as_multigraph(const Graph& g);

struct Subdivision {
  Graph graph;
  /// Original vertices keep indices 0..branch_count-1.
  std::size_t branch_count = 0;
  /// interior[e]: the k new vertices on edge e, walking from edges[e].first.
  std::vector<std::vector<Vertex>> interior;
};

/// Replaces every edge by a path of length k + 1. New vertices follow the
/// originals, k per edge, in edge-list order. k = 0 returns the underlying
/// simple graph and throws InputError if h has parallel edges.
Subdivision subdivide_k(const Multigraph& h, std::size_t k);

/// r-uniform hypergraph. Edges are stored with sorted vertices, the edge
/// list sorted and duplicates dropped.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// InputError if an edge does not have exactly `uniformity` distinct
  /// in-range vertices, or uniformity is 0.
  Hypergraph(std::size_t vertex_count, std::size_t uniformity, std::vector<std::vector<Vertex>> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t uniformity() const { return r_; }
  const std::vector<std::vector<Vertex>>& edges() const { return edges_; }

 private:
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<std::vector<Vertex>> edges_;
};

/// A = V(H), B = E(H), v ~ e iff v ∈ e.
BipartiteGraph incidence_subdivision(const Hypergraph& h);

/// Named families. Parameters must be at least 1 (InputError otherwise).
Graph family_kt(std::size_t t);
/// Sides {0..s-1} and {s..s+t-1}.
Graph family_kst(std::size_t s, std::size_t t);
/// All r-subsets of t vertices; requires t >= r.
Hypergraph family_kt_uniform(std::size_t t, std::size_t r);
/// r parts of size t (part i is {i t, ..., i t + t - 1}), one edge per
/// transversal: t^r edges.
Hypergraph family_complete_r_partite(std::size_t t, std::size_t r);
/// Points 0..6, lines {i, i+1, i+3} mod 7.
Hypergraph fano_plane();

}  // namespace subdiv
