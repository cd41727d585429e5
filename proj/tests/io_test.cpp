#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "subdiv/errors.hpp"
#include "subdiv/io.hpp"
#include "subdiv/iso.hpp"
#include "subdiv/named.hpp"
#include "subdiv/patterns.hpp"
#include "subdiv/random_graph.hpp"
#include "subdiv/structure.hpp"

using namespace subdiv;

namespace {

AnyGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

std::string message_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(EdgeList, ParsesGeneralGraph) {
  const auto g = parse("# triangle\n\ng 3\n0 1\n1 2\n  # indented comment\n2 0\n");
  ASSERT_TRUE(std::holds_alternative<Graph>(g));
  EXPECT_EQ(std::get<Graph>(g), named::cycle(3));
}

TEST(EdgeList, ParsesBipartiteGraph) {
  const auto g = parse("bip 2 3\r\n0 2\r\n1 0\r\n0 2\r\n");
  ASSERT_TRUE(std::holds_alternative<BipartiteGraph>(g));
  const auto& b = std::get<BipartiteGraph>(g);
  EXPECT_EQ(b.a_count(), 2U);
  EXPECT_EQ(b.b_count(), 3U);
  EXPECT_EQ(b.edge_count(), 2U);
  EXPECT_TRUE(b.adjacent(0, 2));
  EXPECT_TRUE(b.adjacent(1, 0));
}

TEST(EdgeList, ErrorsNameTheLine) {
  EXPECT_NE(message_of("g 3\n0 1\n0 7\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("g 3\n1 1\n").find("self-loop"), std::string::npos);
  EXPECT_NE(message_of("bip 2 2\n0 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("graph 3\n").find("header"), std::string::npos);
  EXPECT_NE(message_of("g -3\n").find("non-negative"), std::string::npos);
  EXPECT_NE(message_of("g 3\n0 1 2\n").find("two vertex"), std::string::npos);
  EXPECT_NE(message_of("g 3\n0 x\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("# only a comment\n").find("missing header"), std::string::npos);
  EXPECT_NE(message_of("g 99999999999\n").find("too large"), std::string::npos);
}

TEST(EdgeList, RoundTripRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = sample_gnp(3 + seed % 20, 0.3, seed);
    std::ostringstream out;
    write_graph(out, g);
    EXPECT_EQ(std::get<Graph>(parse(out.str())), g);

    const BipartiteGraph b = sample_bipartite_gnp(1 + seed % 9, 2 + seed % 7, 0.4, seed);
    std::ostringstream bout;
    write_graph(bout, b);
    EXPECT_EQ(std::get<BipartiteGraph>(parse(bout.str())), b);
  }
}

TEST(EdgeList, BipartiteConversion) {
  const AnyGraph c6 = named::cycle(6);
  const auto b = as_bipartite(c6);
  EXPECT_EQ(b.a_count(), 3U);
  EXPECT_EQ(b.edge_count(), 6U);
  EXPECT_TRUE(iso_check(b.to_graph(), named::cycle(6)));
  EXPECT_THROW(as_bipartite(AnyGraph(named::cycle(5))), InputError);
  const AnyGraph hw = named::heawood();
  EXPECT_EQ(as_graph(hw), named::heawood().to_graph());
}

TEST(RandomGraphs, SeededAndBounded) {
  EXPECT_EQ(sample_gnp(30, 0.5, 7), sample_gnp(30, 0.5, 7));
  EXPECT_NE(sample_gnp(30, 0.5, 7), sample_gnp(30, 0.5, 8));
  EXPECT_EQ(sample_gnp(10, 0.0, 1).edge_count(), 0U);
  EXPECT_EQ(sample_gnp(10, 1.0, 1).edge_count(), 45U);
  EXPECT_EQ(sample_bipartite_gnp(4, 5, 1.0, 1).edge_count(), 20U);
  EXPECT_THROW(sample_gnp(5, 1.5, 0), InputError);
  EXPECT_THROW(sample_bipartite_gnp(5, 5, -0.1, 0), InputError);
}

TEST(PatternNames, Graphs) {
  auto graph = [](const std::string& name) { return std::get<Graph>(parse_pattern(name)); };
  EXPECT_EQ(graph("Kt:4"), named::complete(4));
  EXPECT_EQ(graph("Kst:2,3"), named::complete_bipartite(2, 3));
  EXPECT_EQ(graph("cycle:6"), named::cycle(6));
  EXPECT_EQ(graph("C4"), named::cycle(4));
  EXPECT_EQ(graph("path:3"), named::path(3));
  EXPECT_EQ(graph("star:3"), named::star(3));
  EXPECT_EQ(graph("cube"), named::hypercube(3));
  EXPECT_TRUE(iso_check(graph("hypercube:2"), named::cycle(4)));
  EXPECT_EQ(graph("Ht:4"), subdivided_clique(4));
  EXPECT_EQ(graph("heawood"), named::heawood().to_graph());
}

TEST(PatternNames, Hypergraphs) {
  EXPECT_TRUE(std::holds_alternative<Hypergraph>(parse_pattern("fano")));
  EXPECT_TRUE(std::holds_alternative<Hypergraph>(parse_pattern("KtUniform:4,3")));
  EXPECT_TRUE(std::holds_alternative<Hypergraph>(parse_pattern("CompleteRPartite:2,3")));
  const Pattern fano = realize_pattern(parse_pattern("fano"), 1, "fano");
  EXPECT_TRUE(iso_check(fano.graph, named::heawood().to_graph()));
  ASSERT_TRUE(fano.sides.has_value());
  EXPECT_EQ(std::count(fano.sides->begin(), fano.sides->end(), 0), 7);
  EXPECT_THROW(realize_pattern(parse_pattern("fano"), 2, "fano"), InputError);
}

TEST(PatternNames, Rejected) {
  for (const char* bad : {"", "K", "Kt", "Kt:", "Kt:x", "Kt:3,4", "Kst:2", "cube:3", "C", "Cx", "C4:1", "Ht:1",
                          "path:0", "star:0", "heawood:1", "unknown:3", "Kt:-1", "Kt:3,", ":3"})
    EXPECT_THROW(parse_pattern(bad), InputError) << bad;
  EXPECT_THROW(parse_pattern("Kt:999999"), ResourceError);
}

TEST(PatternNames, SubdivisionAndSides) {
  const Pattern c6 = realize_pattern(parse_pattern("Kt:3"), 1, "Kt:3");
  EXPECT_TRUE(iso_check(c6.graph, named::cycle(6)));
  ASSERT_TRUE(c6.sides.has_value());
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ((*c6.sides)[v], 0);
  const Pattern k3 = realize_pattern(parse_pattern("Kt:3"), 0, "Kt:3");
  EXPECT_FALSE(k3.sides.has_value());
  const Pattern c9 = realize_pattern(parse_pattern("Kt:3"), 2, "Kt:3");
  EXPECT_TRUE(iso_check(c9.graph, named::cycle(9)));
}
