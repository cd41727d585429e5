#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/graph.hpp"

namespace subdiv {

/// max deg <= K * min deg over all vertices. An isolated vertex makes this
/// false for every finite K. g must have at least one vertex.
bool verify_almost_regular(const Graph& g, double K);
bool verify_almost_regular(const BipartiteGraph& g, double K);

/// 20 * 2^(1 + 1/alpha^2); +inf once that overflows a double.
double almost_regular_bound(double alpha);

/// Result of almost_regular_subgraph. The size and edge targets are the
/// asymptotic guarantees; they are reported, not enforced.
struct RegularizationCert {
  Graph subgraph;
  std::vector<Vertex> parent_map;
  std::size_t m = 0;
  std::size_t max_degree = 0;
  std::size_t min_degree = 0;
  /// max_degree / min_degree.
  double K_achieved = 0.0;
  double K_bound = 0.0;
  double alpha = 0.0;
  /// e(g) / n^(1+alpha) of the input.
  double C_input = 0.0;
  /// n^(alpha(1-alpha) / (2(1+alpha))).
  double size_target = 0.0;
  /// (2C/5) m^(1+alpha).
  double edge_bound_target = 0.0;
  bool size_target_met = false;
  bool edge_target_met = false;
  /// Number of bucket-and-peel rounds performed.
  std::size_t rounds = 0;
};

/// Extracts a K-almost-regular subgraph with K = 20 * 2^(1 + 1/alpha^2).
/// Each round peels vertices of degree below half the average degree, then,
/// if the bound still fails, keeps the dyadic degree bucket [2^i, 2^(i+1))
/// whose induced subgraph retains the most edges. Requires
/// e(g) >= n^(1+alpha); otherwise throws InputError ("C < 1").
RegularizationCert almost_regular_subgraph(const Graph& g, double alpha);

inline constexpr std::size_t kDefaultMaxRetries = 64;

struct BipartitionChecks {
  bool balanced = false;
  bool degrees_retained = false;
  bool edges_retained = false;
  bool almost_regular = false;

  bool all() const { return balanced && degrees_retained && edges_retained && almost_regular; }
  /// Name of the first failing check, or empty.
  std::string first_violation() const;
  std::size_t passed() const {
    return static_cast<std::size_t>(balanced) + degrees_retained + edges_retained + almost_regular;
  }
};

struct BipartitionCert {
  BipartiteGraph subgraph;
  /// A-index -> input vertex, B-index -> input vertex.
  std::vector<Vertex> a_map;
  std::vector<Vertex> b_map;
  std::size_t m = 0;
  double K_in = 0.0;
  double K_achieved = 0.0;
  std::size_t attempts = 0;
  BipartitionChecks checks;
};

struct BipartitionFailure {
  std::size_t attempts = 0;
  /// Checks of the attempt that passed the most of them.
  BipartitionChecks best_checks;
  std::string violated;
};

struct BipartitionOutcome {
  std::optional<BipartitionCert> cert;
  std::optional<BipartitionFailure> failure;
  explicit operator bool() const { return cert.has_value(); }
};

/// Allowed range for the degree a vertex keeps after the split:
/// [ceil(d/4), floor(3d/4)], widened to [ceil(d/4), ceil(d/4)] when the
/// quarter window holds no integer (d <= 2).
std::pair<std::size_t, std::size_t> retained_degree_window(std::size_t degree);

/// Checks an explicit split of g: `in_a[v]` says which side v lands on.
BipartitionChecks check_bipartition(const Graph& g, double K_in, const std::vector<char>& in_a);

/// Random halving into A and B keeping only A–B edges, retried with fresh
/// randomness until the split is balanced (|A| in [m/3, 2m/3]), every vertex
/// keeps a quarter-to-three-quarters of its degree, at least e(g)/4 edges
/// survive and the result is 3*K_in-almost-regular. Each attempt is checked
/// deterministically. Requires g to be K_in-almost-regular with min degree
/// >= 1 (InputError otherwise).
BipartitionOutcome balanced_bipartition(const Graph& g, double K_in, std::uint64_t seed,
                                        std::size_t max_retries = kDefaultMaxRetries);

}  // namespace subdiv
