#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subdiv/count.hpp"
#include "subdiv/drc.hpp"
#include "subdiv/graph.hpp"

namespace subdiv {

/// A' ⊆ A is L-bounded when Hom(C4, G[A', B]) <= L Hom*(K21, G[A', B]).
struct LBoundedness {
  BigCount c4_count = 0;
  BigCount k21_count = 0;
  bool bounded = false;
};

/// Counts on G[A', B]. InputError if a_prime leaves A or repeats a vertex.
LBoundedness check_l_bounded(const BipartiteGraph& g, std::span<const Vertex> a_prime, double L);

/// {a ∈ A \ {u} : 1 <= d(u, a) < T}, ascending.
std::vector<Vertex> eta_set(const BipartiteGraph& g, Vertex u, std::size_t T);

/// An ordered tuple (a_1, ..., a_j) of A-vertices with 1 <= d(a_i, a_k) < T_i
/// for i < k, and the vertices extending it: ∩_i eta(a_i, T_i).
struct GoodTupleCertificate {
  std::vector<Vertex> tuple;
  std::vector<std::size_t> thresholds;
  std::size_t min_extension = 1;
  std::vector<Vertex> extension_set;
};

/// Recomputes the codegree windows and the extension set from scratch.
bool verify_certificate(const BipartiteGraph& g, const GoodTupleCertificate& cert);

struct GoodTupleList {
  std::vector<GoodTupleCertificate> certificates;
  bool truncated = false;
};

/// Thresholds must be non-decreasing and at least 1; the tuple length is
/// thresholds.size(). Depth-first in lexicographic order, pruning a partial
/// tuple once its running extension set has fewer than min_extension
/// members. Stops after `cap` certificates (truncated = true if more exist).
GoodTupleList enumerate_good_tuples(const BipartiteGraph& g, std::span<const std::size_t> thresholds,
                                    std::size_t min_extension, std::size_t cap, unsigned threads = 1);

/// Streaming form: `visit` returns false to stop.
void for_each_good_tuple(const BipartiteGraph& g, std::span<const std::size_t> thresholds,
                         std::size_t min_extension,
                         const std::function<bool(const GoodTupleCertificate&)>& visit);

struct ExtensionCandidate {
  Vertex u = 0;
  /// Members v of the extension set with 0 < d(u, v) < next_threshold.
  std::vector<Vertex> light_neighbours;
  /// (tuple, u) is a good tuple for thresholds + next_threshold.
  bool extends = false;
};

struct ExtensionStep {
  std::vector<ExtensionCandidate> U;
  /// Light weight density and the size guarantee from large_support_set.
  double d = 0.0;
  double guarantee = 0.0;
  std::uint64_t removed_weight = 0;
  std::size_t removed_pairs = 0;
};

/// One induction step: codegree weights restricted to the extension set,
/// heavy pairs (d >= next_threshold) filtered out, then large_support_set.
/// InputError if next_threshold is below the certificate's last threshold,
/// or "no light edges" when the restricted weights are all heavy or zero.
ExtensionStep extend_step(const BipartiteGraph& g, const GoodTupleCertificate& cert, std::size_t next_threshold);

/// Pattern order for the subdivided K_t: branch vertices 0..t-1, then one
/// subdivider per pair (i, j), i < j, in lexicographic order.
Graph subdivided_clique(std::size_t t);

struct GoodTupleEmbedding {
  /// Pattern (subdivided_clique(t)) vertex -> host vertex, A first then B.
  Embedding embedding;
  GoodTupleCertificate certificate;
  Vertex extension_vertex = 0;
};

struct GoodTupleOutcome {
  std::optional<GoodTupleEmbedding> result;
  std::optional<FailureReport> failure;
  explicit operator bool() const { return result.has_value(); }
};

/// Branch vertices are a good (t-1)-tuple plus a vertex extending it; each
/// of the C(t, 2) pairs then gets a distinct common neighbour in B through
/// bipartite matching. Failure stages: "good_tuple", "extension",
/// "subdivider_assignment". Requires t >= 3 and t - 1 thresholds.
GoodTupleOutcome embed_via_good_tuples(const BipartiteGraph& g, std::size_t t, std::span<const std::size_t> thresholds,
                                       std::size_t min_extension);

/// The two cases of the boundedness dichotomy on G' = G[A', B]. With
/// K12 = Σ_{a ∈ A'} deg(a)^2 and K21 = Σ_b deg_{G'}(b)^2: either the C4 count
/// reaches boost (K12 + K21) (the dependent random choice branch), or A' is
/// L-bounded with L = 2 boost when K12 <= K21, and
/// L = 2 boost maxdeg^2 |B| / (mindeg^2 |A'|) otherwise (degrees over A').
struct DichotomyReport {
  BigCount c4 = 0;
  BigCount k12 = 0;
  BigCount k21 = 0;
  /// 1 when K12 <= K21, else 2.
  int branch_case = 1;
  bool drc_branch = false;
  double implied_L = 0.0;
  bool bounded_at_implied_L = false;
  /// |A'| / |A|.
  double density = 0.0;
  bool exhaustive() const { return drc_branch || bounded_at_implied_L; }
};

DichotomyReport dichotomy_check(const BipartiteGraph& g, std::span<const Vertex> a_prime, double boost);

/// Exponent schedule of the good-tuple induction for given (n, t, delta):
/// delta_j = delta / 6^(t-j), c = xi_1 = delta / 6^t, xi_j = 2 delta_(j-1)
/// for j >= 2, and integer thresholds T_j = ceil(n^xi_j). Entries are
/// indexed from j = 1 (slot 0 unused).
struct ProofSchedule {
  double c = 0.0;
  std::vector<double> delta;
  std::vector<double> xi;
  std::vector<std::size_t> thresholds;
};

ProofSchedule proof_schedule(double n, std::size_t t, double delta);

}  // namespace subdiv
