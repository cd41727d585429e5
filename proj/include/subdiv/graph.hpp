#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace subdiv {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class Side : std::uint8_t { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
constexpr const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

/// Side sizes up to this bound also get bitset adjacency rows.
inline constexpr std::size_t kBitRowLimit = 4096;

/// Fixed-width bit matrix, one row per vertex.
class BitRows {
 public:
  BitRows() = default;
  BitRows(std::size_t rows, std::size_t cols);

  void set(std::size_t r, std::size_t c) { bits_[r * words_ + (c >> 6)] |= std::uint64_t{1} << (c & 63); }
  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {bits_.data() + r * words_, words_};
  }
  std::size_t words() const { return words_; }
  bool empty() const { return bits_.empty(); }

  static std::size_t and_count(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y);

 private:
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct Subgraph;

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  /// Duplicate edges (in either orientation) are merged. Self-loops and
  /// out-of-range endpoints throw InputError naming the edge.
  Graph(std::size_t vertex_count, std::span<const Edge> edges);
  Graph(std::size_t vertex_count, std::initializer_list<Edge> edges)
      : Graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return adj_.size() / 2; }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbours(Vertex v) const {
    return {adj_.data() + offsets_[v], degree(v)};
  }
  bool adjacent(Vertex u, Vertex v) const;
  std::size_t min_degree() const;
  std::size_t max_degree() const;

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool has_bit_rows() const { return !rows_.empty(); }
  const BitRows& bit_rows() const { return rows_; }

  /// Induced subgraph on `keep` (in the given order); parent_map[i] = keep[i].
  Subgraph induced(std::span<const Vertex> keep) const;

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.n_ == y.n_ && x.offsets_ == y.offsets_ && x.adj_ == y.adj_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  BitRows rows_;
};

/// A graph together with the index of each of its vertices in a parent graph.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> parent_map;
};

struct BipartiteSubgraph;

/// Bipartite graph on sides A = {0..a_count-1} and B = {0..b_count-1}.
/// Edges are (a, b) pairs; vertex indices are per side.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t a_count, std::size_t b_count, std::span<const Edge> edges);
  BipartiteGraph(std::size_t a_count, std::size_t b_count, std::initializer_list<Edge> edges)
      : BipartiteGraph(a_count, b_count, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t a_count() const { return count_[0]; }
  std::size_t b_count() const { return count_[1]; }
  std::size_t side_count(Side s) const { return count_[idx(s)]; }
  std::size_t edge_count() const { return adj_[0].size(); }

  std::size_t degree(Side s, Vertex v) const {
    return offsets_[idx(s)][v + 1] - offsets_[idx(s)][v];
  }
  std::span<const Vertex> neighbours(Side s, Vertex v) const {
    return {adj_[idx(s)].data() + offsets_[idx(s)][v], degree(s, v)};
  }
  bool adjacent(Vertex a, Vertex b) const;
  std::size_t min_degree(Side s) const;
  std::size_t max_degree(Side s) const;

  /// |N(u) ∩ N(v)| for distinct u, v on side s. Throws InputError when u == v.
  std::size_t codegree(Side s, Vertex u, Vertex v) const;
  /// Same as codegree but with the diagonal convention d*(u, u) = deg(u).
  std::size_t codegree_or_degree(Side s, Vertex u, Vertex v) const;
  std::vector<Vertex> common_neighbours(Side s, Vertex u, Vertex v) const;

  /// (a, b) pairs in lexicographic order.
  std::vector<Edge> edges() const;
  /// e(G) / (|A| |B|); zero for an empty side.
  double density() const;

  BipartiteGraph swapped() const;
  /// The same graph as a plain Graph: A-vertices first, then B-vertices.
  Graph to_graph() const;
  Vertex global_index(Side s, Vertex v) const {
    return s == Side::A ? v : static_cast<Vertex>(count_[0] + v);
  }

  /// G[a_keep, b_keep]; maps give parent indices per side.
  BipartiteSubgraph induced(std::span<const Vertex> a_keep, std::span<const Vertex> b_keep) const;
  /// G[a_keep, B], the restriction used throughout the structure analysis.
  BipartiteSubgraph restrict_a(std::span<const Vertex> a_keep) const;

  bool has_bit_rows() const { return !rows_[0].empty(); }
  /// Row v of side s, a bitset over the other side.
  std::span<const std::uint64_t> bit_row(Side s, Vertex v) const { return rows_[idx(s)].row(v); }

  friend bool operator==(const BipartiteGraph& x, const BipartiteGraph& y) {
    return x.count_[0] == y.count_[0] && x.count_[1] == y.count_[1] && x.adj_[0] == y.adj_[0] &&
           x.offsets_[0] == y.offsets_[0];
  }

 private:
  static constexpr int idx(Side s) { return s == Side::A ? 0 : 1; }

  std::size_t count_[2] = {0, 0};
  std::vector<std::size_t> offsets_[2] = {{0}, {0}};
  std::vector<Vertex> adj_[2];
  BitRows rows_[2];
};

struct BipartiteSubgraph {
  BipartiteGraph graph;
  std::vector<Vertex> a_map;
  std::vector<Vertex> b_map;
};

/// Symmetric nonnegative integer weights on unordered pairs of distinct
/// vertices; absent pairs weigh zero.
class WeightedGraph {
 public:
  using Weight = std::uint32_t;

  struct WeightedPair {
    Vertex u;
    Vertex v;
    Weight w;
  };

  /// Dense storage bound: n (n - 1) / 2 weights.
  static constexpr std::size_t kMaxVertices = 8192;

  WeightedGraph() = default;
  /// Throws InputError on a diagonal pair, an out-of-range index or a pair
  /// listed twice; ResourceError above kMaxVertices.
  WeightedGraph(std::size_t vertex_count, std::span<const WeightedPair> pairs);

  std::size_t vertex_count() const { return n_; }
  Weight weight(Vertex u, Vertex v) const {
    if (u == v) return 0;
    if (u > v) std::swap(u, v);
    return w_[slot(u, v)];
  }

  /// Σ over unordered pairs of W(u, v).
  std::uint64_t total_weight() const;
  /// Σ over unordered pairs of W(u, v)^2.
  unsigned __int128 sum_of_squares() const;
  /// Pairs (u < v) with positive weight, lexicographic.
  std::vector<Edge> support() const;
  /// Weighted graph induced on `keep`; vertex i is keep[i].
  WeightedGraph restrict(std::span<const Vertex> keep) const;

 private:
  friend WeightedGraph neighbourhood_graph(const BipartiteGraph& g, Side side);
  explicit WeightedGraph(std::size_t n);
  std::size_t slot(Vertex u, Vertex v) const {
    // u < v; row-major upper triangle
    return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
  }

  std::size_t n_ = 0;
  std::vector<Weight> w_;
};

/// Construction with range checking; duplicate edges are merged.
BipartiteGraph build_bipartite(std::size_t a_count, std::size_t b_count, std::span<const Edge> edges);

/// |N(u) ∩ N(v)| for distinct u, v on `side`.
std::size_t codegree(const BipartiteGraph& g, Side side, Vertex u, Vertex v);

/// Weighted graph on `side` with W(u, v) = codegree(u, v).
WeightedGraph neighbourhood_graph(const BipartiteGraph& g, Side side);

}  // namespace subdiv
