#include "subdiv/hom_count.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "subdiv/errors.hpp"
#include "subdiv/named.hpp"

namespace subdiv {
namespace {

BipartiteGraph k22() { return named::complete_bipartite_sides(2, 2); }
BipartiteGraph c6() { return named::even_cycle_sides(3); }

TEST(HomC4Oriented, Examples) {
  EXPECT_EQ(hom_c4_oriented(k22()), 16);
  EXPECT_EQ(hom_c4_oriented(c6()), 18);
  EXPECT_EQ(hom_c4_oriented(build_bipartite(3, 4, {})), 0);
}

TEST(HomC4Oriented, CompleteBipartiteIsFourthPower) {
  for (std::size_t m = 1; m <= 6; ++m)
    EXPECT_EQ(hom_c4_oriented(named::complete_bipartite_sides(m, m)), BigCount(m * m * m * m));
  EXPECT_EQ(hom_c4_oriented(named::complete_bipartite_sides(16, 16)), 65536);
}

TEST(HomC4Oriented, WithoutBitRowsAgrees) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < 5000; ++a) {
    e.emplace_back(a, a % 7);
    e.emplace_back(a, (a * 3 + 1) % 7);
  }
  const BipartiteGraph big(5000, 7, e);
  ASSERT_FALSE(big.has_bit_rows());
  // Same value through the swapped orientation, which again has no bit rows,
  // and through explicit per-pair codegrees.
  BigCount expected = 0;
  for (Vertex u = 0; u < 7; ++u)
    for (Vertex v = 0; v < 7; ++v) {
      const auto d = big.codegree_or_degree(Side::B, u, v);
      expected += BigCount(d) * d;
    }
  EXPECT_EQ(hom_c4_oriented(big), expected);
}

TEST(HomStarOriented, Examples) {
  EXPECT_EQ(hom_star_oriented(k22(), Side::A, 2), 8);
  EXPECT_EQ(hom_star_oriented(c6(), Side::A, 2), 12);
  const auto g = oracle::random_bipartite(6, 8, 0.5, 11);
  EXPECT_EQ(hom_star_oriented(g, Side::A, 1), g.edge_count());
  EXPECT_EQ(hom_star_oriented(g, Side::B, 1), g.edge_count());
  EXPECT_THROW(hom_star_oriented(g, Side::A, 0), InputError);
}

TEST(HomStarOriented, AlternativeExpressionForPairsInA) {
  // Hom*(K_{2,1}) = Σ_{a∈A} Σ_{v∈N(a)} deg(v).
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = oracle::random_bipartite(2 + seed % 9, 3 + seed % 7, 0.45, seed);
    std::uint64_t alt = 0;
    for (Vertex a = 0; a < g.a_count(); ++a)
      for (Vertex v : g.neighbours(Side::A, a)) alt += g.degree(Side::B, v);
    EXPECT_EQ(hom_star_oriented(g, Side::B, 2), alt);
    EXPECT_EQ(hom_star_oriented(g, Side::B, 3), oracle::brute_star_oriented(g, Side::B, 3));
  }
}

TEST(HomGeneric, Examples) {
  const Pattern c4(named::cycle(4), "C4");
  EXPECT_EQ(hom_generic(c4, k22().to_graph()), 32);
  const auto g = oracle::random_graph(9, 0.4, 5);
  EXPECT_EQ(hom_generic(Pattern(named::path(2)), g), 2 * g.edge_count());
  EXPECT_EQ(hom_generic(Pattern(Graph(1, {})), g), g.vertex_count());
}

TEST(HomGeneric, MatchesBruteForceMaps) {
  const std::vector<Graph> patterns = {named::path(3), named::cycle(4), named::star(3),
                                       named::complete(3), named::complete_bipartite(2, 3),
                                       Graph(4, {{0, 1}, {2, 3}})};
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto g = oracle::random_graph(6, 0.5, 100 + seed);
    for (const auto& h : patterns)
      for (bool injective : {false, true}) {
        const auto expected = oracle::brute_hom(oracle::adjacency(h), oracle::adjacency(g), injective);
        EXPECT_EQ(hom_generic(Pattern(h), g, {.injective = injective, .threads = 2}), expected);
      }
  }
}

TEST(HomGeneric, RefusesLargePatterns) {
  EXPECT_THROW(hom_generic(Pattern(named::path(17)), named::complete(3)), ResourceError);
}

TEST(HomGeneric, ThreadCountDoesNotChangeResult) {
  const auto g = oracle::random_graph(30, 0.3, 9);
  const Pattern c6p(named::cycle(6));
  EXPECT_EQ(hom_generic(c6p, g, {.threads = 1}), hom_generic(c6p, g, {.threads = 4}));
}

TEST(HomC4Oriented, BothOrientationsSumToGenericCount) {
  const Pattern c4(named::cycle(4));
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = oracle::random_bipartite(1 + seed % 7, 1 + (seed / 7) % 7, 0.5, seed);
    EXPECT_EQ(hom_c4_oriented(g) + hom_c4_oriented(g.swapped()), hom_generic(c4, g.to_graph()));
  }
}

TEST(CountKst, Examples) {
  EXPECT_EQ(count_kst_labelled(k22().to_graph(), 2, 2), 8);
  EXPECT_EQ(count_kst_labelled(Graph(4, {}), 1, 1), 0);
  EXPECT_EQ(count_kst_labelled(named::star(3), 1, 2), 6);
  EXPECT_THROW(count_kst_labelled(named::star(3), 3, 2), InputError);
  EXPECT_THROW(count_kst_labelled(named::star(3), 2, 3), InputError);
}

TEST(CountKst, EqualsInjectiveHomAndBoundedByHom) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = oracle::random_graph(8, 0.5, 300 + seed);
    for (std::size_t s = 1; s <= 2; ++s)
      for (std::size_t t = s; t <= 3; ++t) {
        const Pattern kst(named::complete_bipartite(s, t));
        const auto labelled = count_kst_labelled(g, s, t, 2);
        EXPECT_EQ(labelled, hom_generic(kst, g, {.injective = true}));
        EXPECT_LE(labelled, hom_generic(kst, g));
      }
    EXPECT_EQ(count_kst_labelled(g, 1, 1), hom_generic(Pattern(named::path(2)), g));
  }
}

TEST(NormingCheck, EdgelessHost) {
  const auto r = norming_check(Graph(6, {}), 2, 2, Pattern(named::path(3)));
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.holds);
}

TEST(NormingCheck, PathInK22) {
  const auto r = norming_check(k22().to_graph(), 2, 2, Pattern(named::path(3)));
  // hom(P3, C4) = 4 * 2 * 2 = 16 over 4^3; hom(C4, C4) = 32 over 4^4.
  EXPECT_EQ(r.hom_l, 16);
  EXPECT_EQ(r.hom_kst, 32);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.lhs, std::sqrt(16.0 / 64.0), 1e-12);
  EXPECT_NEAR(r.rhs, std::pow(32.0 / 256.0, 0.25), 1e-12);
}

TEST(NormingCheck, RejectsBadPatterns) {
  EXPECT_THROW(norming_check(named::complete(4), 2, 2, Pattern(Graph(3, {}))), InputError);
  EXPECT_THROW(norming_check(named::complete(4), 2, 2, Pattern(named::complete(3))), InputError);
}

TEST(Pattern, ValidatesBipartition) {
  EXPECT_THROW(Pattern(named::path(3), "P3", std::vector<std::uint8_t>{0, 0, 1}), InputError);
  EXPECT_NO_THROW(Pattern(named::path(3), "P3", std::vector<std::uint8_t>{0, 1, 0}));
  EXPECT_FALSE(two_colouring(named::complete(3)).has_value());
  EXPECT_EQ(*two_colouring(named::path(3)), (std::vector<std::uint8_t>{0, 1, 0}));
}

}  // namespace
}  // namespace subdiv
