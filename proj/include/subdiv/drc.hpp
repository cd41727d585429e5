#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/count.hpp"
#include "subdiv/graph.hpp"
#include "subdiv/hom_count.hpp"

namespace subdiv {

/// Dependent random choice, derandomized: find a pivot x in A whose
/// neighbourhood carries many C4s, bucket A' = N(N(x)) by degree into N(x),
/// pick the witness z whose neighbourhood has the fewest low-codegree pairs,
/// find h pairwise high-codegree B-vertices there and route the pattern
/// through their common neighbourhoods.

struct Pivot {
  Vertex x = 0;
  /// Σ_{(u,v) ∈ N(x)^2} d*(u, v) − M (Σ_{v ∈ N(x)} deg(v) + deg(x)^2).
  BigCount surplus = 0;
};

/// The non-isolated pivot of largest surplus (ties: smaller index), or
/// nullopt when every A-vertex is isolated.
std::optional<Pivot> best_pivot(const BipartiteGraph& g, std::uint64_t M, unsigned threads = 1);

/// best_pivot, returned only when its surplus is nonnegative.
std::optional<Pivot> select_pivot(const BipartiteGraph& g, std::uint64_t M, unsigned threads = 1);

struct DyadicSelection {
  /// buckets[i - 1] = {a ∈ A' : 2^(i-1) <= deg_{B'}(a) < 2^i}, i = 1..L.
  std::vector<std::vector<Vertex>> buckets;
  /// 1-based index of the chosen bucket.
  std::size_t j = 0;
  std::size_t L = 0;
  /// Σ_{a ∈ A_j} deg_{B'}(a)^2 and Σ_{a ∈ A'} deg_{B'}(a)^2 (= Σ_{(u,v) ∈ B'^2} d*(u, v)).
  std::uint64_t bucket_mass = 0;
  std::uint64_t total_mass = 0;

  const std::vector<Vertex>& a_j() const { return buckets[j - 1]; }
};

/// Picks the bucket of largest squared-degree mass (ties: smallest j) and
/// checks L * bucket_mass >= total_mass. InputError if B' is empty, repeats a
/// vertex or has no neighbours.
DyadicSelection dyadic_select(const BipartiteGraph& g, std::span<const Vertex> b_prime);

struct Witness {
  Vertex z = 0;
  /// N_{B'}(z), ascending.
  std::vector<Vertex> neighbourhood;
  /// Ordered pairs in the neighbourhood with codegree below the threshold.
  std::uint64_t bad_pairs = 0;
  double bad_fraction = 0.0;
  /// Mean bad fraction over the candidates with at least two neighbours in B'.
  double average_fraction = 0.0;
};

/// Every z in a_j with |N_{B'}(z)| >= 2, best first: smallest bad fraction
/// (compared exactly), then larger neighbourhood, then smaller index.
/// Empty when no candidate has two neighbours in B'.
std::vector<Witness> rank_witnesses(const BipartiteGraph& g, std::span<const Vertex> a_j,
                                    std::span<const Vertex> b_prime, std::size_t bad_threshold,
                                    unsigned threads = 1);

/// Front of rank_witnesses, or nullopt ("witness neighbourhoods too small").
std::optional<Witness> select_witness(const BipartiteGraph& g, std::span<const Vertex> a_j,
                                      std::span<const Vertex> b_prime, std::size_t bad_threshold,
                                      unsigned threads = 1);

/// Calls `visit` with each h-subset of `candidates` (ascending, in
/// lexicographic order) whose pairwise codegrees are all >= bad_threshold,
/// until it returns false. Exact: branch and bound on the compatibility graph.
void for_each_nonbad_clique(const BipartiteGraph& g, std::span<const Vertex> candidates, std::size_t h,
                            std::size_t bad_threshold,
                            const std::function<bool(std::span<const Vertex>)>& visit);

/// First clique of for_each_nonbad_clique. InputError if h < 2.
std::optional<std::vector<Vertex>> clique_nonbad(const BipartiteGraph& g, std::span<const Vertex> candidates,
                                                 std::size_t h, std::size_t bad_threshold);

/// Pattern vertices split into a branch side (any degree) and a subdivider
/// side (degree <= 2, no two sharing both neighbours).
struct PatternSplit {
  std::vector<Vertex> branch;
  std::vector<Vertex> subdividers;
  std::vector<std::uint8_t> side;
  std::uint8_t subdivider_side = 1;
};

/// Uses the pattern's own sides, else its 2-colouring. When both sides have
/// maximum degree <= 2 the subdividers are side 1. InputError if the pattern
/// is not bipartite, neither side has maximum degree <= 2, or two
/// subdividers share both neighbours.
PatternSplit split_pattern(const Pattern& h);

struct DrcParams {
  /// Surplus multiplier; nullopt picks floor(Hom(C4) / (Hom*(K21) + Hom*(K12))), at least 1.
  std::optional<std::uint64_t> M;
  /// Codegree below which a pair of B-vertices is bad; nullopt means |V(H)|.
  std::optional<std::size_t> bad_threshold;
  /// Ranked witnesses tried before widening the candidate set.
  std::size_t witness_trials = 8;
  /// Stop at the first unmet stage instead of falling back.
  bool strict = false;
  unsigned threads = 1;
};

struct StageEntry {
  std::string stage;
  std::vector<std::pair<std::string, std::string>> values;
};

struct Embedding {
  /// Pattern vertex -> host vertex, global numbering (A first, then B).
  std::vector<Vertex> map;
  bool injective = false;
  std::vector<StageEntry> stage_log;
};

struct FailureReport {
  std::string stage;
  std::string reason;
  std::vector<StageEntry> stage_log;
};

struct EmbedOutcome {
  std::optional<Embedding> embedding;
  std::optional<FailureReport> failure;
  explicit operator bool() const { return embedding.has_value(); }
};

/// Branch vertices of H go to a non-bad clique in B, subdividers to distinct
/// common neighbours in A (greedy with backtracking). The strict pipeline
/// needs a nonnegative pivot surplus and uses only the best witness's
/// neighbourhood; the default mode also tries ranked witnesses, then widens
/// the candidates to N(x) and to all of B. Any returned map has been checked
/// edge by edge and for injectivity.
EmbedOutcome embed_h(const BipartiteGraph& g, const Pattern& h, const DrcParams& params = {});

/// Injective, and every pattern edge lands on a host edge. Host vertices are
/// numbered A first, then B.
bool is_bipartite_embedding(const BipartiteGraph& g, const Graph& pattern, std::span<const Vertex> map);

struct ThresholdCheck {
  BigCount lhs = 0;
  double rhs = 0.0;
  bool exceeds = false;
  /// |A| and |B| within a factor 2 of each other.
  bool balanced = false;
  /// floor(lhs / (Hom*(K21) + Hom*(K12))), zero for an edgeless graph.
  BigCount auto_M = 0;
};

/// lhs = oriented Hom(C4), rhs = n^(2 - 2c + eps) with n = |A| + |B|.
ThresholdCheck drc_threshold_check(const BipartiteGraph& g, double c, double eps);

/// max(1, floor(Hom(C4) / (Hom*(K21) + Hom*(K12)))), saturated to 64 bits.
std::uint64_t auto_multiplier(const BipartiteGraph& g);

}  // namespace subdiv
