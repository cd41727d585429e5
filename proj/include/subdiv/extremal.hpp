#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/count.hpp"
#include "subdiv/graph.hpp"

namespace subdiv {

inline constexpr std::size_t kExtremalVertexLimit = 10;

struct ExtremalReport {
  std::size_t n = 0;
  std::string pattern_id;
  std::size_t max_edges = 0;
  Graph witness;
  /// Candidate graphs whose pattern-freeness was tested.
  std::uint64_t graphs_examined = 0;
  /// Isomorphism classes kept at the final level (those reaching the bound).
  std::uint64_t classes_at_n = 0;
  double elapsed_seconds = 0.0;
};

/// Largest edge count of a pattern-free graph on n vertices.
///
/// Vertex-by-vertex augmentation over isomorphism classes: a class on k + 1
/// vertices is produced from one on k vertices by adding a vertex of minimum
/// degree, so deleting a minimum-degree vertex from any extremal graph walks
/// back through kept classes. A greedy pattern-free graph supplies a lower
/// bound LB; a class on k vertices needs at least LB k(k-1) / (n(n-1)) edges
/// (minimum-degree deletion never lowers edge density), which prunes the
/// rest. ResourceError above kExtremalVertexLimit vertices.
ExtremalReport extremal_exact(std::size_t n, const Graph& pattern, std::string pattern_id = {},
                              unsigned threads = 1);

/// max over subgraphs F with at least 3 vertices of (e(F) - 1) / (v(F) - 2);
/// 1/2 for a single edge. Needs at least 2 edges for a meaningful exponent.
double two_density(const Graph& pattern);

/// Deletion-optimal exponent 2 - 1/m2. With p = n^(gamma - 2) the expected
/// number of copies of the densest subgraph F, n^v(F) p^e(F), is at most
/// the expected edge count n^2 p, so deleting one edge per copy keeps order
/// n^gamma edges. For the subdivided K_t this is
/// 3/2 - (t - 3/2)/(t^2 - t - 1); for the subdivided K_{s,t} it is
/// 3/2 - (s + t - 3/2)/(2st - 1).
double deletion_exponent(const Graph& pattern);

struct DeletionResult {
  std::size_t n = 0;
  double gamma = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t edges_before = 0;
  /// Injective homomorphisms divided by |Aut(pattern)|.
  BigCount copies_found = 0;
  std::size_t edges_after = 0;
  BigCount automorphisms = 0;
  Graph output;
};

inline constexpr double kDeletionHomBudget = 5e7;

/// Samples G(n, p) with p = min(1, n^(gamma - 2)), walks the injective
/// homomorphisms of the pattern and deletes the first image edge of every
/// copy still intact, then checks that the output is pattern-free.
/// InputError for patterns with fewer than 2 edges; ResourceError when the
/// expected homomorphism count exceeds kDeletionHomBudget.
DeletionResult deletion_lower_bound(std::size_t n, const Graph& pattern, std::optional<double> exponent_override,
                                    std::uint64_t seed);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log(edges) on log(n). InputError with fewer than 3
/// points, repeated n, or non-positive values.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> points);

struct SubdivisionHomCounts {
  BigCount total = 0;
  BigCount nondegenerate = 0;
  BigCount degenerate = 0;
};

inline constexpr std::uint64_t kClassifyBudget = 50'000'000;

/// Maps of the subdivided K_t with the t branch vertices sent to distinct
/// A-vertices and each subdivider to a common neighbour of its pair.
/// Degenerate maps send two subdividers to the same B-vertex. ResourceError
/// once the search exceeds kClassifyBudget nodes; InputError if t < 2.
SubdivisionHomCounts classify_subdivision_homs(const BipartiteGraph& g, std::size_t t);

}  // namespace subdiv
