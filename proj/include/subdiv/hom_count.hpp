#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subdiv/count.hpp"
#include "subdiv/graph.hpp"

namespace subdiv {

/// A small pattern graph H with an optional proper 2-colouring (0/1 per vertex).
struct Pattern {
  static constexpr std::size_t kMaxVertices = 16;

  Pattern() = default;
  /// Throws InputError if `sides` is given and is not a proper 2-colouring.
  explicit Pattern(Graph g, std::string name = {},
                   std::optional<std::vector<std::uint8_t>> sides = std::nullopt);

  std::size_t vertex_count() const { return graph.vertex_count(); }
  std::size_t edge_count() const { return graph.edge_count(); }

  Graph graph;
  std::string name;
  std::optional<std::vector<std::uint8_t>> sides;
};

/// Proper 2-colouring by BFS from the lowest unvisited index (colour 0), or
/// nullopt if g is not bipartite.
std::optional<std::vector<std::uint8_t>> two_colouring(const Graph& g);

struct HomOptions {
  /// Count only injective maps (labelled copies).
  bool injective = false;
  unsigned threads = 1;
};

/// Number of homomorphisms h -> g (ordered maps) by backtracking with
/// adjacency pruning. Throws ResourceError if h has more than 16 vertices.
BigCount hom_generic(const Pattern& h, const Graph& g, HomOptions options = {});

/// Calls `visit` with every injective homomorphism h -> g (as a map indexed
/// by pattern vertex) until it returns false. Maps are produced in
/// lexicographic order of the search and never repeat.
void for_each_injective_hom(const Graph& h, const Graph& g,
                            const std::function<bool(std::span<const Vertex>)>& visit);

/// As for_each_injective_hom, restricted to maps sending pattern vertex
/// `pattern_vertex` to host vertex `host_vertex`.
void for_each_injective_hom_through(const Graph& h, const Graph& g, Vertex pattern_vertex,
                                    Vertex host_vertex,
                                    const std::function<bool(std::span<const Vertex>)>& visit);

/// Oriented C4 homomorphisms: Σ_{a∈A} Σ_{(u,v)∈N(a)^2} d*(u, v), with
/// d*(u, u) = deg(u). Counts maps of C4 with one colour class in A.
BigCount hom_c4_oriented(const BipartiteGraph& g);

/// Σ_{v on centre_side} deg(v)^leaves: oriented homomorphisms of the star
/// K_{1,leaves} with its centre on `centre_side`. leaves must be >= 1.
///   centre_side = B, leaves = 2  ->  Hom*(K_{2,1})  (the pair lands in A)
///   centre_side = A, leaves = 2  ->  Hom*(K_{1,2})  (the pair lands in B)
BigCount hom_star_oriented(const BipartiteGraph& g, Side centre_side, unsigned leaves);

/// Labelled (injective, sides distinguished) copies of K_{s,t}:
/// Σ over ordered s-tuples S of distinct vertices of t! C(|N(S)|, t).
/// Requires 1 <= s <= t and s + t <= |V(g)|.
BigCount count_kst_labelled(const Graph& g, std::size_t s, std::size_t t, unsigned threads = 1);

struct NormingResult {
  /// (hom(L, G) / n^{|L|})^{1/e(L)}
  double lhs = 0.0;
  /// (hom(K_{s,t}, G) / n^{s+t})^{1/st}
  double rhs = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  BigCount hom_l = 0;
  BigCount hom_kst = 0;
  bool holds = false;
};

/// Both sides of the weakly-norming inequality for K_{s,t} against its
/// subgraph L, compared on the log scale with absolute tolerance 1e-9.
/// Throws InputError if e(L) = 0 or L does not embed in K_{s,t}.
NormingResult norming_check(const Graph& g, std::size_t s, std::size_t t, const Pattern& l);

inline constexpr double kNormingLogTolerance = 1e-9;

}  // namespace subdiv
