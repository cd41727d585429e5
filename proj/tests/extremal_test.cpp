#include "subdiv/extremal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "subdiv/errors.hpp"
#include "subdiv/hom_count.hpp"
#include "subdiv/named.hpp"
#include "subdiv/structure.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {
namespace {

const Graph& c6() {
  static const Graph g = named::cycle(6);
  return g;
}

TEST(Extremal, SixCycleSmallValues) {
  EXPECT_EQ(extremal_exact(5, c6(), "C6").max_edges, 10U);
  for (std::size_t n = 6; n <= 7; ++n) EXPECT_EQ(extremal_exact(n, c6()).max_edges, oracle::brute_extremal(n, c6())) << n;
  EXPECT_EQ(extremal_exact(6, c6()).max_edges, 11U);
}

TEST(Extremal, SingleEdgeIsZero) {
  const Graph edge(2, {{0, 1}});
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(extremal_exact(n, edge).max_edges, 0U);
}

TEST(Extremal, PatternLargerThanHost) {
  const auto k33 = named::complete_bipartite(3, 3);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(extremal_exact(n, k33).max_edges, n * (n - 1) / 2);
}

TEST(Extremal, TriangleFollowsMantel) {
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(extremal_exact(n, named::cycle(3)).max_edges, n * n / 4) << n;
}

TEST(Extremal, FourCycleKnownValues) {
  const std::size_t known[] = {0, 0, 1, 3, 4, 6, 7, 9, 11, 13, 16};
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(extremal_exact(n, named::cycle(4)).max_edges, known[n]) << n;
}

TEST(Extremal, MatchesBruteForceOnSmallPatterns) {
  const Graph patterns[] = {named::path(4), named::star(3), named::cycle(5), named::complete(4),
                            named::complete_bipartite(2, 3)};
  for (const auto& p : patterns)
    for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(extremal_exact(n, p).max_edges, oracle::brute_extremal(n, p));
}

TEST(Extremal, MonotoneAndWitnessVerified) {
  std::size_t prev = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = extremal_exact(n, c6());
    EXPECT_GE(r.max_edges, prev);
    prev = r.max_edges;
    EXPECT_EQ(r.witness.vertex_count(), n);
    EXPECT_EQ(r.witness.edge_count(), r.max_edges);
    EXPECT_FALSE(oracle::brute_contains(c6(), r.witness));
  }
}

TEST(Extremal, DeterministicAcrossThreads) {
  const auto a = extremal_exact(8, c6(), "C6", 1);
  const auto b = extremal_exact(8, c6(), "C6", 3);
  EXPECT_EQ(a.max_edges, b.max_edges);
  EXPECT_EQ(a.witness.edges(), b.witness.edges());
  EXPECT_EQ(a.graphs_examined, b.graphs_examined);
}

TEST(Extremal, Errors) {
  EXPECT_THROW(extremal_exact(11, c6()), ResourceError);
  EXPECT_THROW(extremal_exact(5, Graph(3, std::initializer_list<Edge>{})), InputError);
}

TEST(DeletionExponent, Formulas) {
  EXPECT_NEAR(deletion_exponent(c6()), 1.2, 1e-12);
  EXPECT_NEAR(deletion_exponent(named::cycle(3)), 1.5, 1e-12);
  EXPECT_NEAR(deletion_exponent(named::cycle(4)), 4.0 / 3.0, 1e-12);
  for (std::size_t t = 3; t <= 5; ++t) {
    const double want = 1.5 - (double(t) - 1.5) / (double(t * t) - double(t) - 1.0);
    EXPECT_NEAR(deletion_exponent(subdivided_clique(t)), want, 1e-12) << t;
  }
  for (std::size_t s = 1; s <= 2; ++s)
    for (std::size_t t = 2; t <= 3; ++t) {
      const auto h = subdivide_k(as_multigraph(family_kst(s, t)), 1).graph;
      const double want = 1.5 - (double(s + t) - 1.5) / (2.0 * double(s * t) - 1.0);
      EXPECT_NEAR(deletion_exponent(h), want, 1e-12) << s << "," << t;
    }
  EXPECT_THROW(deletion_exponent(Graph(2, {{0, 1}})), InputError);
}

TEST(Deletion, SixCycleAt256) {
  const auto r = deletion_lower_bound(256, c6(), std::nullopt, 42);
  EXPECT_NEAR(r.gamma, 1.2, 1e-12);
  EXPECT_EQ(r.automorphisms, 12);
  const double target = std::pow(256.0, 1.2);
  EXPECT_GE(double(r.edges_after), target / 4);
  EXPECT_LE(double(r.edges_after), target * 4);
  Pattern p(c6());
  EXPECT_EQ(hom_generic(p, r.output, {.injective = true}), 0);
  EXPECT_GE(BigCount(r.edges_after) + r.copies_found, BigCount(r.edges_before));
}

TEST(Deletion, InvariantsOverSeeds) {
  const Graph patterns[] = {c6(), named::cycle(4), named::complete(3)};
  for (const auto& pat : patterns)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto r = deletion_lower_bound(40, pat, std::nullopt, seed);
      EXPECT_EQ(hom_generic(Pattern(pat), r.output, {.injective = true}), 0);
      EXPECT_GE(BigCount(r.edges_after) + r.copies_found, BigCount(r.edges_before));
      EXPECT_LE(r.edges_after, r.edges_before);
    }
}

TEST(Deletion, RareCopiesDeleteNothing) {
  const auto r = deletion_lower_bound(8, named::complete(5), 1.3, 1);
  EXPECT_EQ(r.copies_found, 0);
  EXPECT_EQ(r.edges_after, r.edges_before);
}

TEST(Deletion, SeedDeterminesOutput) {
  const auto a = deletion_lower_bound(128, c6(), std::nullopt, 9);
  const auto b = deletion_lower_bound(128, c6(), std::nullopt, 9);
  EXPECT_EQ(a.output.edges(), b.output.edges());
}

TEST(Deletion, Errors) {
  EXPECT_THROW(deletion_lower_bound(10, Graph(2, {{0, 1}}), std::nullopt, 0), InputError);
  EXPECT_THROW(deletion_lower_bound(4096, named::complete(5), 2.0, 0), ResourceError);
}

TEST(ScalingFit, Examples) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {64.0, 128.0, 512.0, 2048.0}) pts.emplace_back(n, std::pow(n, 1.2));
  const auto f = scaling_fit(pts);
  EXPECT_NEAR(f.slope, 1.2, 1e-9);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-9);
  std::vector<std::pair<double, double>> flat{{10, 5}, {20, 5}, {40, 5}};
  EXPECT_NEAR(scaling_fit(flat).slope, 0.0, 1e-12);
  std::vector<std::pair<double, double>> two{{10, 5}, {20, 5}};
  EXPECT_THROW(scaling_fit(two), InputError);
  std::vector<std::pair<double, double>> dup{{10, 5}, {10, 6}, {20, 7}};
  EXPECT_THROW(scaling_fit(dup), InputError);
  std::vector<std::pair<double, double>> zero{{10, 0}, {20, 6}, {30, 7}};
  EXPECT_THROW(scaling_fit(zero), InputError);
}

TEST(Classify, Examples) {
  const auto k33 = classify_subdivision_homs(named::complete_bipartite_sides(3, 3), 3);
  EXPECT_EQ(k33.total, 162);
  EXPECT_EQ(k33.nondegenerate, 36);
  EXPECT_EQ(k33.degenerate, 126);
  const auto c = classify_subdivision_homs(named::even_cycle_sides(3), 3);
  // Branch vertices go to A only: 3! orders of the three A-vertices, each
  // with forced subdividers.
  EXPECT_EQ(c.total, 6);
  EXPECT_EQ(c.nondegenerate, 6);
  const auto k32 = classify_subdivision_homs(named::complete_bipartite_sides(3, 2), 3);
  EXPECT_EQ(k32.nondegenerate, 0);
  EXPECT_EQ(k32.total, 48);
  EXPECT_THROW(classify_subdivision_homs(named::complete_bipartite_sides(3, 2), 1), InputError);
}

TEST(Classify, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = oracle::random_bipartite(3 + seed % 3, 3 + (seed / 3) % 3, 0.6, seed);
    const auto r = classify_subdivision_homs(g, 3);
    const auto [total, distinct] = oracle::brute_classify(g, 3);
    EXPECT_EQ(r.total, total) << "seed " << seed;
    EXPECT_EQ(r.nondegenerate, distinct) << "seed " << seed;
    EXPECT_EQ(r.total, r.nondegenerate + r.degenerate);
  }
  const auto k44 = named::complete_bipartite_sides(4, 4);
  const auto r4 = classify_subdivision_homs(k44, 4);
  const auto [total4, distinct4] = oracle::brute_classify(k44, 4);
  EXPECT_EQ(r4.total, total4);
  EXPECT_EQ(r4.nondegenerate, distinct4);
}

TEST(Classify, NondegenerateIffEmbedding) {
  std::size_t positives = 0, negatives = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t a = 3 + seed % 5, b = 3 + (seed / 5) % 5;
    const auto g = oracle::random_bipartite(a, b, 0.3 + 0.004 * double(seed), seed);
    const bool nondeg = classify_subdivision_homs(g, 3).nondegenerate > 0;
    EXPECT_EQ(nondeg, oracle::brute_embeds_with_branches_in_a(g, 3)) << "seed " << seed;
    (nondeg ? positives : negatives)++;
  }
  EXPECT_GT(positives, 0U);
  EXPECT_GT(negatives, 0U);
}

}  // namespace
}  // namespace subdiv
