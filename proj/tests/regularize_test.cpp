#include "subdiv/regularize.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "subdiv/errors.hpp"
#include "subdiv/named.hpp"

namespace subdiv {
namespace {

Graph c6_with_chord() {
  return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
}

// Every output edge maps to an input edge and the map is injective.
void expect_parent_map_sound(const Graph& input, const Graph& sub, const std::vector<Vertex>& map) {
  ASSERT_EQ(map.size(), sub.vertex_count());
  EXPECT_TRUE(oracle::is_embedding(sub, input, map));
}

std::pair<std::size_t, std::size_t> degree_range(const Graph& g) {
  const auto m = oracle::adjacency(g);
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& row : m) {
    std::size_t d = 0;
    for (char c : row) d += c;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

TEST(VerifyAlmostRegular, Examples) {
  EXPECT_TRUE(verify_almost_regular(named::complete(5), 1));
  EXPECT_FALSE(verify_almost_regular(named::star(4), 3));
  EXPECT_TRUE(verify_almost_regular(c6_with_chord(), 2));
  EXPECT_FALSE(verify_almost_regular(c6_with_chord(), 1.4));
}

TEST(VerifyAlmostRegular, IsolatedVertexAlwaysFails) {
  EXPECT_FALSE(verify_almost_regular(Graph(3, {{0, 1}}), 1e12));
  EXPECT_THROW(verify_almost_regular(Graph(0, {}), 1), InputError);
}

TEST(VerifyAlmostRegular, BipartiteUsesBothSides) {
  EXPECT_TRUE(verify_almost_regular(named::complete_bipartite_sides(2, 2), 1));
  EXPECT_FALSE(verify_almost_regular(named::complete_bipartite_sides(1, 4), 3));
  EXPECT_TRUE(verify_almost_regular(named::complete_bipartite_sides(1, 4), 4));
}

TEST(AlmostRegularBound, Values) {
  EXPECT_DOUBLE_EQ(almost_regular_bound(0.5), 640.0);
  EXPECT_NEAR(almost_regular_bound(1.0 / std::sqrt(2.0)), 160.0, 1e-9);
  EXPECT_TRUE(std::isinf(almost_regular_bound(0.02)));
}

TEST(AlmostRegularSubgraph, CompleteGraphIsReturnedWhole) {
  for (std::size_t n : {8, 20, 40}) {
    const Graph k = named::complete(n);
    const auto cert = almost_regular_subgraph(k, 0.3);
    EXPECT_EQ(cert.m, n);
    EXPECT_EQ(cert.subgraph, k);
    EXPECT_DOUBLE_EQ(cert.K_achieved, 1.0);
    EXPECT_TRUE(cert.size_target_met);
    EXPECT_TRUE(cert.edge_target_met);
  }
}

Graph k50_plus_isolated() {
  std::vector<Edge> e;
  for (Vertex u = 0; u < 50; ++u)
    for (Vertex v = u + 1; v < 50; ++v) e.emplace_back(u, v);
  return Graph(1050, e);
}

TEST(AlmostRegularSubgraph, SparseHostRejectedWithReason) {
  // 1225 edges on 1050 vertices is below 1050^1.5, so C < 1 at alpha = 1/2.
  try {
    almost_regular_subgraph(k50_plus_isolated(), 0.5);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("C < 1"), std::string::npos);
  }
}

TEST(AlmostRegularSubgraph, FindsDenseBlock) {
  // At a small alpha the same host is admissible; the answer must sit inside
  // the K50 block.
  const Graph g = k50_plus_isolated();
  const auto cert = almost_regular_subgraph(g, 0.02);
  EXPECT_DOUBLE_EQ(cert.K_achieved, 1.0);
  EXPECT_EQ(cert.m, 50U);
  for (Vertex v : cert.parent_map) EXPECT_LT(v, 50U);
  expect_parent_map_sound(g, cert.subgraph, cert.parent_map);
}

TEST(AlmostRegularSubgraph, SeededRandomRegression) {
  const std::size_t n = 512;
  const Graph g = oracle::random_graph(n, std::pow(double(n), -0.25), 20240501);
  const auto cert = almost_regular_subgraph(g, 0.5);
  EXPECT_LE(cert.K_achieved, 160.0);
  EXPECT_TRUE(verify_almost_regular(cert.subgraph, 160.0));
  expect_parent_map_sound(g, cert.subgraph, cert.parent_map);
  // A dense random graph is already nearly regular: nothing is discarded.
  EXPECT_EQ(cert.m, n);
  EXPECT_EQ(cert.subgraph.edge_count(), g.edge_count());
  EXPECT_TRUE(cert.edge_target_met);
  EXPECT_TRUE(cert.size_target_met);
}

TEST(AlmostRegularSubgraph, SkewedDegreesAreBounded) {
  // Unbalanced complete bipartite graphs plus a dense core: degrees spread
  // over many dyadic buckets.
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::vector<Edge> e;
    const std::size_t n = 300;
    Rng rng(seed);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        const double p = (u < 40 || v < 40) ? 0.9 : 0.05;
        if (rng.uniform() < p) e.emplace_back(u, v);
      }
    const Graph g(n, e);
    for (double alpha : {0.05, 0.2, 0.5}) {
      if (double(g.edge_count()) < std::pow(double(n), 1 + alpha)) continue;
      const auto cert = almost_regular_subgraph(g, alpha);
      const auto [lo, hi] = degree_range(cert.subgraph);
      ASSERT_GE(lo, 1U);
      EXPECT_LE(double(hi), cert.K_bound * double(lo));
      EXPECT_DOUBLE_EQ(cert.K_achieved, double(hi) / double(lo));
      expect_parent_map_sound(g, cert.subgraph, cert.parent_map);
    }
  }
}

TEST(AlmostRegularSubgraph, RejectsBadAlpha) {
  EXPECT_THROW(almost_regular_subgraph(named::complete(5), 0.0), InputError);
  EXPECT_THROW(almost_regular_subgraph(named::complete(5), 1.0), InputError);
}

using Window = std::pair<std::size_t, std::size_t>;

TEST(RetainedDegreeWindow, Values) {
  EXPECT_EQ(retained_degree_window(1), (Window{1, 1}));
  EXPECT_EQ(retained_degree_window(2), (Window{1, 1}));
  EXPECT_EQ(retained_degree_window(4), (Window{1, 3}));
  EXPECT_EQ(retained_degree_window(10), (Window{3, 7}));
}

// Independent re-check of a bipartition certificate against the input.
void expect_valid_split(const Graph& g, double K_in, const BipartitionCert& cert) {
  const std::size_t m = g.vertex_count();
  const auto adj = oracle::adjacency(g);
  ASSERT_EQ(cert.a_map.size() + cert.b_map.size(), m);
  EXPECT_GE(3 * cert.a_map.size(), m);
  EXPECT_LE(3 * cert.a_map.size(), 2 * m);
  std::vector<int> side(m, -1);
  for (Vertex v : cert.a_map) side[v] = 0;
  for (Vertex v : cert.b_map) side[v] = 1;
  for (int s : side) ASSERT_NE(s, -1);
  std::size_t kept_total = 0, lo = SIZE_MAX, hi = 0;
  for (Vertex v = 0; v < m; ++v) {
    std::size_t deg = 0, kept = 0;
    for (Vertex u = 0; u < m; ++u)
      if (adj[v][u]) {
        ++deg;
        kept += side[u] != side[v];
      }
    EXPECT_GE(4 * kept, deg);
    if (deg > 2) EXPECT_LE(4 * kept, 3 * deg);
    kept_total += kept;
    lo = std::min(lo, kept);
    hi = std::max(hi, kept);
  }
  EXPECT_EQ(cert.subgraph.edge_count() * 2, kept_total);
  EXPECT_GE(4 * cert.subgraph.edge_count(), g.edge_count());
  EXPECT_TRUE(verify_almost_regular(cert.subgraph, 3 * K_in));
  EXPECT_LE(double(hi), 3 * K_in * double(lo));
  for (const auto& [a, b] : cert.subgraph.edges()) EXPECT_TRUE(adj[cert.a_map[a]][cert.b_map[b]]);
}

TEST(BalancedBipartition, SingleEdgeIsSplit) {
  const Graph g(2, {{0, 1}});
  const auto out = balanced_bipartition(g, 1, 3);
  ASSERT_TRUE(out);
  EXPECT_EQ(out.cert->a_map.size(), 1U);
  EXPECT_EQ(out.cert->subgraph.edge_count(), 1U);
  expect_valid_split(g, 1, *out.cert);
}

TEST(BalancedBipartition, FourCycle) {
  const Graph g = named::cycle(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = balanced_bipartition(g, 1, seed);
    ASSERT_TRUE(out) << out.failure->violated;
    expect_valid_split(g, 1, *out.cert);
  }
}

TEST(BalancedBipartition, SixCycleHasNoValidSplit) {
  // Keeping exactly one of two edges at every vertex forces the side pattern
  // to have period 4 around the cycle, which 6 does not allow. Exhaustive
  // check over all 64 splits:
  const Graph g = named::cycle(6);
  for (unsigned mask = 0; mask < 64; ++mask) {
    bool every_vertex_keeps_one = true;
    for (unsigned v = 0; v < 6; ++v) {
      const unsigned l = (v + 5) % 6, r = (v + 1) % 6;
      const unsigned s = (mask >> v) & 1U;
      const unsigned kept = (((mask >> l) & 1U) != s) + (((mask >> r) & 1U) != s);
      every_vertex_keeps_one = every_vertex_keeps_one && kept == 1;
    }
    EXPECT_FALSE(every_vertex_keeps_one) << mask;
  }
}

TEST(BalancedBipartition, SixCycleSeedSevenRegression) {
  const Graph g = named::cycle(6);
  const auto out = balanced_bipartition(g, 1, 7);
  ASSERT_FALSE(out);
  EXPECT_EQ(out.failure->attempts, kDefaultMaxRetries);
  EXPECT_EQ(out.failure->violated, "degree_retention");
  EXPECT_EQ(out.failure->best_checks.passed(), 3U);
  const auto again = balanced_bipartition(g, 1, 7);
  EXPECT_EQ(again.failure->violated, out.failure->violated);
}

TEST(BalancedBipartition, EverySuccessIsValid) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = oracle::random_graph(60, 0.4, 100 + seed);
    if (g.min_degree() == 0) continue;
    const double K = double(g.max_degree()) / double(g.min_degree());
    const auto out = balanced_bipartition(g, K, seed);
    ASSERT_TRUE(out);
    expect_valid_split(g, K, *out.cert);
  }
}

TEST(BalancedBipartition, ExhaustedRetriesReportViolation) {
  // A triangle cannot be split with every vertex keeping exactly one edge.
  const auto out = balanced_bipartition(named::complete(3), 1, 0, 16);
  ASSERT_FALSE(out);
  EXPECT_EQ(out.failure->attempts, 16U);
  EXPECT_FALSE(out.failure->violated.empty());
}

TEST(BalancedBipartition, Preconditions) {
  EXPECT_THROW(balanced_bipartition(Graph(3, {{0, 1}}), 1, 0), InputError);
  EXPECT_THROW(balanced_bipartition(named::star(4), 2, 0), InputError);
}

}  // namespace
}  // namespace subdiv
