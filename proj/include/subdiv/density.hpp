#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subdiv/graph.hpp"

namespace subdiv {

/// A weighted graph W on V is (rho, d)-dense when every U with
/// |U| >= rho |V| has Σ_{uv ⊆ U} W(u, v) >= d C(|U|, 2).
struct DensityParams {
  double rho = 1.0;
  double d = 0.0;
};

enum class DensityMode { kExhaustive, kSampled };

enum class DensityVerdict {
  kDense,
  /// Sampled mode only: one-sided, nothing was proven.
  kNoCounterexampleFound,
  kCounterexample,
};

struct DensityReport {
  DensityVerdict verdict = DensityVerdict::kDense;
  /// Violating subset, ascending.
  std::vector<Vertex> counterexample;
  /// Σ W over the counterexample and the required d C(|U|, 2).
  std::uint64_t counterexample_weight = 0;
  double counterexample_required = 0.0;
  std::uint64_t subsets_checked = 0;
  std::size_t min_size = 0;
};

inline constexpr std::size_t kExhaustiveDensityLimit = 24;

struct DensityOptions {
  DensityMode mode = DensityMode::kExhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  unsigned threads = 1;
};

/// Exhaustive mode walks every subset (meet in the middle over two halves of
/// V, so each subset costs O(1)) and returns the violator that is smallest by
/// (size, bitmask). Refuses |V| > 24 with ResourceError. Sampled mode checks
/// `trials` seeded subsets with sizes uniform over the qualifying range.
/// InputError unless rho in (0, 1], rho |V| >= 1 and d >= 0.
DensityReport check_rho_d_dense(const WeightedGraph& w, DensityParams p, DensityOptions options = {});

/// Σ_{uv ⊆ U} d(u, v) against (δ^2 / 2n) C(|U|, 2), where δ is the minimum
/// degree over all of A and n = |B|. The inequality is guaranteed when
/// δ|U| >= 2n; otherwise it is merely evaluated.
struct CodegreeBound {
  std::uint64_t lhs = 0;
  double rhs = 0.0;
  bool holds = false;
  bool precondition_met = false;
  std::size_t min_degree = 0;
};

/// InputError if U has an index outside A or a repeated vertex.
CodegreeBound local_codegree_bound(const BipartiteGraph& g, std::span<const Vertex> U);

/// Unordered pair sum Σ_{uv ⊆ U} d(u, v) and ordered sum Σ_{(u,v) ∈ U^2}
/// d(u, v) with d(u, u) = deg(u). holds = 4 * unordered >= ordered,
/// guaranteed when δ|U| >= 2n.
struct PairSums {
  std::uint64_t unordered_sum = 0;
  std::uint64_t ordered_sum = 0;
  /// e(G[U, B]).
  std::uint64_t edge_count = 0;
  bool holds = false;
  bool precondition_met = false;
};

PairSums pair_sum_bounds(const BipartiteGraph& g, std::span<const Vertex> U);

struct FilterResult {
  /// Support pairs with 0 < W < M.
  std::vector<Edge> kept_pairs;
  /// Pairs with W >= M.
  std::vector<Edge> removed_pairs;
  std::uint64_t removed_weight = 0;
  std::uint64_t threshold = 0;
  /// Σ W^2 over all pairs, and S / M.
  unsigned __int128 sum_of_squares = 0;
  double bound = 0.0;
};

/// Splits the support at weight M. Checks removed_weight * M <= Σ W^2 before
/// returning (std::logic_error if it ever fails). InputError if M < 1.
FilterResult heavy_edge_filter(const WeightedGraph& w, std::uint64_t M);

struct SupportSet {
  /// Vertices whose light weighted degree Σ_v W'(u, v) is at least d|V|,
  /// where W' keeps only pairs with W < M.
  std::vector<Vertex> U;
  /// Σ of light weight / |V|^2.
  double d = 0.0;
  /// d|V| / M: lower bound on |U| and on each member's light neighbour count.
  double guarantee = 0.0;
  /// Fewest light neighbours (0 < W < M) among members of U.
  std::size_t min_light_neighbours = 0;
};

/// InputError "no light edges" when no pair has 0 < W < M; both guarantees
/// are checked before returning (std::logic_error otherwise).
SupportSet large_support_set(const WeightedGraph& w, std::uint64_t M);

}  // namespace subdiv
