#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "subdiv/io.hpp"
#include "subdiv/iso.hpp"
#include "subdiv/named.hpp"

using namespace subdiv;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run lab(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("subdiv_cli_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& body) const {
    const auto p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string edge_list(const BipartiteGraph& g) {
  std::ostringstream s;
  write_graph(s, g);
  return s.str();
}

}  // namespace

TEST(Cli, GenSubdividedTriangleIsSixCycle) {
  const auto r = lab({"gen", "--pattern", "Kt:3", "--subdivide", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto g = std::get<Graph>(read_graph(in));
  EXPECT_EQ(g.vertex_count(), 6U);
  EXPECT_TRUE(iso_check(g, named::cycle(6)));
}

TEST(Cli, CountOrientedFourCycleOnK22) {
  TempDir dir;
  const auto k22 = dir.write("k22.bip", "bip 2 2\n0 0\n0 1\n1 0\n1 1\n");
  const auto r = lab({"count", "--pattern", "C4", "--oriented", "--input", k22, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], cli::kSchemaVersion);
  EXPECT_EQ(doc["command"], "count");
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_EQ(doc["result"]["hom_c4_oriented"], "16");

  const auto text = lab({"count", "--pattern", "C4", "--oriented", "--input", k22});
  EXPECT_NE(text.out.find("hom_c4_oriented: 16"), std::string::npos);
}

TEST(Cli, CountMatchesBruteForce) {
  TempDir dir;
  const auto host = oracle::random_graph(9, 0.5, 4);
  std::ostringstream s;
  write_graph(s, host);
  const auto path = dir.write("h.g", s.str());
  const auto doc = Json::parse(lab({"--format", "json", "count", "--pattern", "C4", "--input", path}).out);
  const auto expected = oracle::brute_hom(oracle::adjacency(named::cycle(4)), oracle::adjacency(host), false);
  EXPECT_EQ(doc["result"]["hom"], std::to_string(expected));
  const auto inj = Json::parse(lab({"--format", "json", "count", "--pattern", "C4", "--injective", "--input", path}).out);
  EXPECT_EQ(inj["result"]["injective_hom"],
            std::to_string(oracle::brute_hom(oracle::adjacency(named::cycle(4)), oracle::adjacency(host), true)));
}

TEST(Cli, EmbedSixCycleInHeawood) {
  TempDir dir;
  const auto hw = named::heawood();
  const auto path = dir.write("heawood.bip", edge_list(hw));
  const auto r = lab({"embed", "--pattern", "Kt:3", "--subdivide", "1", "--input", path, "--bad-threshold", "1",
                      "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = Json::parse(r.out);
  EXPECT_TRUE(doc["result"]["found"].get<bool>());
  EXPECT_FALSE(doc["result"]["stage_log"].empty());
  std::vector<Vertex> map;
  for (const auto& m : doc["result"]["map"]) {
    const Vertex v = m["host_vertex"];
    map.push_back(m["side"] == "A" ? v : static_cast<Vertex>(hw.a_count() + v));
  }
  Graph c6(6, {{0, 3}, {0, 4}, {1, 3}, {1, 5}, {2, 4}, {2, 5}});
  EXPECT_TRUE(oracle::is_embedding(c6, hw.to_graph(), map));
}

TEST(Cli, SoundNegativeExitsOne) {
  TempDir dir;
  const auto c8 = dir.write("c8.bip", edge_list(named::even_cycle_sides(4)));
  const auto r = lab({"embed", "--pattern", "C6", "--input", c8, "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["status"], "negative");
}

TEST(Cli, UsageErrorsExitTwo) {
  auto r = lab({});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(r.out.empty());

  r = lab({"count", "--no-such-flag"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);

  EXPECT_EQ(lab({"gen", "--pattern", "nonsense"}).code, 2);
  EXPECT_EQ(lab({"gen"}).code, 2);
  EXPECT_EQ(lab({"count", "--input", "/nonexistent/file", "--pattern", "C4"}).code, 2);
  EXPECT_EQ(lab({"--format", "xml", "gen", "--pattern", "C4"}).code, 2);
  EXPECT_EQ(lab({"--threads", "0", "gen", "--pattern", "C4"}).code, 2);
}

TEST(Cli, MalformedInputExitsTwoWithLine) {
  TempDir dir;
  const auto bad = dir.write("bad.g", "g 3\n0 1\n0 5\n");
  const auto r = lab({"count", "--pattern", "C4", "--input", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

TEST(Cli, ResourceLimitExitsThree) {
  const auto r = lab({"extremal", "--n", "11", "--pattern", "C6"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("deletion-lb"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const auto r = lab({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("extremal"), std::string::npos);
}

TEST(Cli, ThreadEnvironmentVariable) {
  ::setenv("SUBDIV_LAB_THREADS", "abc", 1);
  EXPECT_EQ(lab({"gen", "--pattern", "C4"}).code, 2);
  EXPECT_EQ(lab({"--threads", "2", "gen", "--pattern", "C4"}).code, 0);
  ::setenv("SUBDIV_LAB_THREADS", "3", 1);
  EXPECT_EQ(lab({"gen", "--pattern", "C4"}).code, 0);
  ::unsetenv("SUBDIV_LAB_THREADS");
}

TEST(Cli, OutputIndependentOfThreads) {
  TempDir dir;
  const auto host = dir.file("host.bip");
  const auto gen = lab({"--seed", "9", "gen", "--bipartite-gnp", "12,12,0.5"});
  ASSERT_EQ(gen.code, 0);
  std::ofstream(host) << gen.out;
  const std::vector<std::vector<std::string>> commands = {
      {"good-tuples", "--input", host, "--thresholds", "4,5"},
      {"density", "--input", host, "--rho", "0.6", "--d", "2", "--mode", "sampled", "--trials", "200"},
      {"fit", "--pattern", "C6", "--ns", "24,48,96", "--seeds", "3"},
      {"count", "--kst", "2,2", "--input", host},
  };
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* threads : {"1", "2", "4"}) {
      std::vector<std::string> args = {"--seed", "5", "--threads", threads, "--format", "json"};
      args.insert(args.end(), cmd.begin(), cmd.end());
      const auto r = lab(args);
      ASSERT_LE(r.code, 1) << r.err;
      if (first.empty())
        first = r.out;
      else
        EXPECT_EQ(r.out, first) << cmd[0];
    }
  }
}

TEST(Cli, SeedChangesRandomOutput) {
  const auto a = lab({"--seed", "1", "gen", "--gnp", "20,0.5"});
  const auto b = lab({"--seed", "2", "gen", "--gnp", "20,0.5"});
  EXPECT_NE(a.out, b.out);
  EXPECT_EQ(a.out, lab({"--seed", "1", "gen", "--gnp", "20,0.5"}).out);
}

TEST(Cli, ExtremalTimingIsOptIn) {
  const auto plain = Json::parse(lab({"--format", "json", "extremal", "--n", "5", "--pattern", "C6"}).out);
  EXPECT_EQ(plain["result"]["max_edges"], 10);
  EXPECT_FALSE(plain["result"].contains("elapsed_seconds"));
  const auto timed = Json::parse(lab({"--format", "json", "extremal", "--n", "5", "--pattern", "C6", "--timing"}).out);
  EXPECT_TRUE(timed["result"].contains("elapsed_seconds"));
}

TEST(Cli, DeletionWritesPatternFreeGraph) {
  TempDir dir;
  const auto out = dir.file("free.g");
  const auto r = lab({"--seed", "3", "--format", "json", "deletion-lb", "--n", "40", "--pattern", "C4", "--output", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto g = std::get<Graph>(read_graph_file(out));
  EXPECT_EQ(g.edge_count(), Json::parse(r.out)["result"]["edges_after"].get<std::size_t>());
  EXPECT_FALSE(oracle::brute_contains(named::cycle(4), g));
}

TEST(Cli, FitFromPointsFile) {
  TempDir dir;
  const auto pts = dir.write("pts.txt", "# n value\n2 8\n4 64\n8 512\n");
  const auto doc = Json::parse(lab({"--format", "json", "fit", "--points", pts}).out);
  EXPECT_NEAR(doc["result"]["slope"].get<double>(), 3.0, 1e-12);
  EXPECT_EQ(lab({"fit", "--points", dir.write("few.txt", "2 8\n4 64\n")}).code, 2);
  EXPECT_EQ(lab({"fit", "--points", dir.write("junk.txt", "2 8\n4 x\n8 1\n")}).code, 2);
}
