#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "subdiv/density.hpp"
#include "subdiv/drc.hpp"
#include "subdiv/errors.hpp"
#include "subdiv/extremal.hpp"
#include "subdiv/hom_count.hpp"
#include "subdiv/io.hpp"
#include "subdiv/named.hpp"
#include "subdiv/parallel.hpp"
#include "subdiv/patterns.hpp"
#include "subdiv/random_graph.hpp"
#include "subdiv/regularize.hpp"
#include "subdiv/rng.hpp"
#include "subdiv/structure.hpp"

namespace subdiv::cli {

namespace {

using Json = nlohmann::ordered_json;

// A finished command: the JSON result plus an optional verbatim text body
// (edge lists) used instead of the generic text rendering.
struct Report {
  bool negative = false;
  Json result = Json::object();
  std::optional<std::string> text;
};

Json count_json(const BigCount& x) { return to_decimal(x); }

// Non-finite doubles become strings so the JSON stays valid.
Json real_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json edges_json(const std::vector<Edge>& edges) {
  Json arr = Json::array();
  for (auto [u, v] : edges) arr.push_back(Json::array({u, v}));
  return arr;
}

Json graph_json(const Graph& g) {
  return Json{{"format", "g"},
              {"vertex_count", g.vertex_count()},
              {"edge_count", g.edge_count()},
              {"edges", edges_json(g.edges())}};
}

Json graph_json(const BipartiteGraph& g) {
  return Json{{"format", "bip"},
              {"a_count", g.a_count()},
              {"b_count", g.b_count()},
              {"edge_count", g.edge_count()},
              {"edges", edges_json(g.edges())}};
}

Json stage_log_json(const std::vector<StageEntry>& log) {
  Json arr = Json::array();
  for (const auto& entry : log) {
    Json values = Json::object();
    for (const auto& [k, v] : entry.values) values[k] = v;
    arr.push_back(Json{{"stage", entry.stage}, {"values", values}});
  }
  return arr;
}

Json vertices_json(std::span<const Vertex> vs) { return Json(std::vector<Vertex>(vs.begin(), vs.end())); }

Side parse_side(const std::string& s) {
  if (s == "A" || s == "a") return Side::A;
  if (s == "B" || s == "b") return Side::B;
  throw InputError("side must be A or B, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 12 || s.find_first_not_of("0123456789") != std::string::npos)
    throw InputError(what + ": expected a non-negative integer, got '" + s + "'");
  return std::stoull(s);
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(x))
    throw InputError(what + ": expected a number, got '" + s + "'");
  return x;
}

std::vector<Vertex> parse_vertex_list(const std::string& s, const std::string& what) {
  std::vector<Vertex> out;
  for (const auto& tok : split(s, ',')) out.push_back(static_cast<Vertex>(parse_size(tok, what)));
  return out;
}

// Options shared by every command that takes a named pattern.
struct PatternOptions {
  std::string name;
  std::size_t subdivide = 0;

  void add(CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--pattern", name, "Pattern name, e.g. Kt:3, Kst:2,3, cycle:6, C4, cube, fano");
    if (required) opt->required();
    sub->add_option("--subdivide", subdivide, "Replace each pattern edge by a path with this many interior vertices");
  }

  Pattern realize() const {
    std::string id = name;
    if (subdivide > 0) id += "/subdivide=" + std::to_string(subdivide);
    return realize_pattern(parse_pattern(name), subdivide, id);
  }
};

struct Config {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "text";
};

// ---------------------------------------------------------------- gen

struct GenOptions {
  PatternOptions pattern;
  std::string gnp;
  std::string bipartite_gnp;
  bool as_bipartite = false;
};

BipartiteGraph bipartite_from_sides(const Pattern& p) {
  if (!p.sides) throw InputError("pattern '" + p.name + "' is not bipartite");
  std::vector<Vertex> index(p.vertex_count());
  std::size_t na = 0, nb = 0;
  for (Vertex v = 0; v < p.vertex_count(); ++v)
    index[v] = static_cast<Vertex>((*p.sides)[v] == 0 ? na++ : nb++);
  std::vector<Edge> edges;
  for (auto [u, v] : p.graph.edges()) {
    if ((*p.sides)[u] != 0) std::swap(u, v);
    edges.emplace_back(index[u], index[v]);
  }
  return BipartiteGraph(na, nb, edges);
}

Report cmd_gen(const GenOptions& o, const Config& cfg) {
  const int sources = !o.pattern.name.empty() + !o.gnp.empty() + !o.bipartite_gnp.empty();
  if (sources != 1) throw InputError("gen needs exactly one of --pattern, --gnp, --bipartite-gnp");
  AnyGraph g;
  if (!o.pattern.name.empty()) {
    const Pattern p = o.pattern.realize();
    if (o.as_bipartite)
      g = bipartite_from_sides(p);
    else
      g = p.graph;
  } else if (!o.gnp.empty()) {
    const auto parts = split(o.gnp, ',');
    if (parts.size() != 2) throw InputError("--gnp expects n,p");
    g = sample_gnp(parse_size(parts[0], "--gnp"), parse_real(parts[1], "--gnp"), cfg.seed);
  } else {
    const auto parts = split(o.bipartite_gnp, ',');
    if (parts.size() != 3) throw InputError("--bipartite-gnp expects a,b,p");
    g = sample_bipartite_gnp(parse_size(parts[0], "--bipartite-gnp"), parse_size(parts[1], "--bipartite-gnp"),
                             parse_real(parts[2], "--bipartite-gnp"), cfg.seed);
  }
  Report r;
  std::ostringstream text;
  std::visit(
      [&](const auto& graph) {
        r.result = graph_json(graph);
        write_graph(text, graph);
      },
      g);
  r.text = text.str();
  return r;
}

// ---------------------------------------------------------------- count

struct CountOptions {
  std::string input;
  PatternOptions pattern;
  bool oriented = false;
  bool injective = false;
  std::string centre = "A";
  std::vector<std::size_t> kst;
};

Report cmd_count(const CountOptions& o, const Config& cfg) {
  const AnyGraph host = read_graph_file(o.input);
  Report r;
  if (!o.kst.empty()) {
    if (o.kst.size() != 2) throw InputError("--kst expects s,t");
    r.result["kst"] = Json::array({o.kst[0], o.kst[1]});
    r.result["kst_labelled"] = count_json(count_kst_labelled(as_graph(host), o.kst[0], o.kst[1], cfg.threads));
    return r;
  }
  if (o.pattern.name.empty()) throw InputError("count needs --pattern or --kst");
  const Pattern p = o.pattern.realize();
  r.result["pattern"] = p.name;
  if (o.oriented) {
    const BipartiteGraph bip = as_bipartite(host);
    if (p.graph == named::cycle(4)) {
      r.result["hom_c4_oriented"] = count_json(hom_c4_oriented(bip));
    } else if (p.vertex_count() >= 2 && p.graph == named::star(p.vertex_count() - 1)) {
      const Side centre = parse_side(o.centre);
      r.result["centre_side"] = side_name(centre);
      r.result["hom_star_oriented"] =
          count_json(hom_star_oriented(bip, centre, static_cast<unsigned>(p.vertex_count() - 1)));
    } else {
      throw InputError("--oriented supports the patterns C4 and star:<k>");
    }
    return r;
  }
  HomOptions options;
  options.injective = o.injective;
  options.threads = cfg.threads;
  r.result[o.injective ? "injective_hom" : "hom"] = count_json(hom_generic(p, as_graph(host), options));
  return r;
}

// ---------------------------------------------------------------- regularize

struct RegularizeOptions {
  std::string input;
  double alpha = 0.0;
  bool bipartition = false;
  std::size_t max_retries = kDefaultMaxRetries;
  std::string output;
};

Json checks_json(const BipartitionChecks& c) {
  return Json{{"balanced", c.balanced},
              {"degrees_retained", c.degrees_retained},
              {"edges_retained", c.edges_retained},
              {"almost_regular", c.almost_regular}};
}

Report cmd_regularize(const RegularizeOptions& o, const Config& cfg) {
  const Graph g = as_graph(read_graph_file(o.input));
  const auto cert = almost_regular_subgraph(g, o.alpha);
  Report r;
  r.result["almost_regular"] = Json{{"m", cert.m},
                                    {"edge_count", cert.subgraph.edge_count()},
                                    {"max_degree", cert.max_degree},
                                    {"min_degree", cert.min_degree},
                                    {"K_achieved", real_json(cert.K_achieved)},
                                    {"K_bound", real_json(cert.K_bound)},
                                    {"C_input", real_json(cert.C_input)},
                                    {"size_target", real_json(cert.size_target)},
                                    {"edge_bound_target", real_json(cert.edge_bound_target)},
                                    {"size_target_met", cert.size_target_met},
                                    {"edge_target_met", cert.edge_target_met},
                                    {"rounds", cert.rounds},
                                    {"parent_map", vertices_json(cert.parent_map)}};
  if (!o.bipartition) {
    if (!o.output.empty()) {
      std::ofstream f(o.output);
      if (!f) throw InputError("cannot write '" + o.output + "'");
      write_graph(f, cert.subgraph);
    }
    return r;
  }
  const double k_in = std::max(1.0, cert.K_achieved);
  const auto split = balanced_bipartition(cert.subgraph, k_in, cfg.seed, o.max_retries);
  if (split) {
    const auto& c = *split.cert;
    // Map back to vertices of the input graph.
    std::vector<Vertex> a_map, b_map;
    for (Vertex v : c.a_map) a_map.push_back(cert.parent_map[v]);
    for (Vertex v : c.b_map) b_map.push_back(cert.parent_map[v]);
    r.result["bipartition"] = Json{{"a_count", c.subgraph.a_count()},
                                   {"b_count", c.subgraph.b_count()},
                                   {"edge_count", c.subgraph.edge_count()},
                                   {"K_in", real_json(c.K_in)},
                                   {"K_achieved", real_json(c.K_achieved)},
                                   {"attempts", c.attempts},
                                   {"checks", checks_json(c.checks)},
                                   {"a_map", vertices_json(a_map)},
                                   {"b_map", vertices_json(b_map)}};
    if (!o.output.empty()) {
      std::ofstream f(o.output);
      if (!f) throw InputError("cannot write '" + o.output + "'");
      write_graph(f, c.subgraph);
    }
  } else {
    const auto& f = *split.failure;
    r.negative = true;
    r.result["bipartition"] = Json{{"attempts", f.attempts},
                                   {"violated", f.violated},
                                   {"best_checks", checks_json(f.best_checks)}};
  }
  return r;
}

// ---------------------------------------------------------------- density

struct DensityCmdOptions {
  std::string input;
  std::string side = "A";
  double rho = 1.0;
  double d = 0.0;
  std::string mode = "exhaustive";
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> heavy;
  std::string subset;
};

const char* verdict_name(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::kDense:
      return "dense";
    case DensityVerdict::kNoCounterexampleFound:
      return "no_counterexample_found";
    case DensityVerdict::kCounterexample:
      return "counterexample";
  }
  return "unknown";
}

Report cmd_density(const DensityCmdOptions& o, const Config& cfg) {
  const BipartiteGraph g = as_bipartite(read_graph_file(o.input));
  const Side side = parse_side(o.side);
  const WeightedGraph w = neighbourhood_graph(g, side);
  DensityOptions options;
  options.mode = o.mode == "sampled" ? DensityMode::kSampled : DensityMode::kExhaustive;
  options.seed = cfg.seed;
  options.trials = o.trials;
  options.threads = cfg.threads;
  const auto rep = check_rho_d_dense(w, DensityParams{o.rho, o.d}, options);
  Report r;
  r.negative = rep.verdict == DensityVerdict::kCounterexample;
  r.result["side"] = side_name(side);
  r.result["vertex_count"] = w.vertex_count();
  r.result["total_weight"] = w.total_weight();
  r.result["mode"] = o.mode;
  r.result["verdict"] = verdict_name(rep.verdict);
  r.result["subsets_checked"] = std::to_string(rep.subsets_checked);
  r.result["min_size"] = rep.min_size;
  if (rep.verdict == DensityVerdict::kCounterexample) {
    r.result["counterexample"] = vertices_json(rep.counterexample);
    r.result["counterexample_weight"] = rep.counterexample_weight;
    r.result["counterexample_required"] = real_json(rep.counterexample_required);
  }
  if (o.heavy) {
    const auto filter = heavy_edge_filter(w, *o.heavy);
    Json heavy{{"threshold", filter.threshold},
               {"kept_pairs", filter.kept_pairs.size()},
               {"removed_pairs", filter.removed_pairs.size()},
               {"removed_weight", filter.removed_weight},
               {"bound", real_json(filter.bound)}};
    try {
      const auto support = large_support_set(w, *o.heavy);
      heavy["support"] = Json{{"U", vertices_json(support.U)},
                              {"d", real_json(support.d)},
                              {"guarantee", real_json(support.guarantee)},
                              {"min_light_neighbours", support.min_light_neighbours}};
    } catch (const InputError&) {
      heavy["support"] = nullptr;  // no light pairs
    }
    r.result["heavy_filter"] = heavy;
  }
  if (!o.subset.empty()) {
    if (side != Side::A) throw InputError("--subset refers to A-vertices; use --side A");
    const auto U = parse_vertex_list(o.subset, "--subset");
    const auto cb = local_codegree_bound(g, U);
    const auto ps = pair_sum_bounds(g, U);
    r.result["subset"] = Json{{"U", vertices_json(U)},
                              {"codegree_lhs", cb.lhs},
                              {"codegree_rhs", real_json(cb.rhs)},
                              {"codegree_holds", cb.holds},
                              {"precondition_met", cb.precondition_met},
                              {"unordered_sum", ps.unordered_sum},
                              {"ordered_sum", ps.ordered_sum},
                              {"pair_sums_hold", ps.holds}};
  }
  return r;
}

// ---------------------------------------------------------------- embed

struct EmbedOptions {
  std::string input;
  PatternOptions pattern;
  std::optional<std::uint64_t> M;
  std::optional<std::size_t> bad_threshold;
  std::size_t witness_trials = 8;
  bool strict = false;
};

Json map_json(const BipartiteGraph& g, std::span<const Vertex> map) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < map.size(); ++i) {
    const bool in_a = map[i] < g.a_count();
    arr.push_back(Json{{"pattern_vertex", i},
                       {"side", in_a ? "A" : "B"},
                       {"host_vertex", in_a ? map[i] : static_cast<Vertex>(map[i] - g.a_count())}});
  }
  return arr;
}

Report cmd_embed(const EmbedOptions& o, const Config& cfg) {
  const BipartiteGraph g = as_bipartite(read_graph_file(o.input));
  const Pattern p = o.pattern.realize();
  DrcParams params;
  params.M = o.M;
  params.bad_threshold = o.bad_threshold;
  params.witness_trials = o.witness_trials;
  params.strict = o.strict;
  params.threads = cfg.threads;
  const auto out = embed_h(g, p, params);
  Report r;
  r.result["pattern"] = p.name;
  if (out) {
    if (!is_bipartite_embedding(g, p.graph, out.embedding->map))
      throw std::logic_error("embedding failed verification");
    r.result["found"] = true;
    r.result["injective"] = out.embedding->injective;
    r.result["map"] = map_json(g, out.embedding->map);
    r.result["stage_log"] = stage_log_json(out.embedding->stage_log);
  } else {
    r.negative = true;
    r.result["found"] = false;
    r.result["failed_stage"] = out.failure->stage;
    r.result["reason"] = out.failure->reason;
    r.result["stage_log"] = stage_log_json(out.failure->stage_log);
  }
  return r;
}

// ---------------------------------------------------------------- good-tuples

struct GoodTupleOptions {
  std::string input;
  std::vector<std::size_t> thresholds;
  std::size_t min_extension = 1;
  std::size_t cap = 1000;
  std::optional<std::size_t> embed_t;
};

Report cmd_good_tuples(const GoodTupleOptions& o, const Config& cfg) {
  const BipartiteGraph g = as_bipartite(read_graph_file(o.input));
  Report r;
  r.result["thresholds"] = o.thresholds;
  r.result["min_extension"] = o.min_extension;
  if (o.embed_t) {
    const auto out = embed_via_good_tuples(g, *o.embed_t, o.thresholds, o.min_extension);
    r.result["t"] = *o.embed_t;
    if (out) {
      const auto& e = *out.result;
      r.result["found"] = true;
      r.result["tuple"] = vertices_json(e.certificate.tuple);
      r.result["extension_vertex"] = e.extension_vertex;
      r.result["map"] = map_json(g, e.embedding.map);
    } else {
      r.negative = true;
      r.result["found"] = false;
      r.result["failed_stage"] = out.failure->stage;
      r.result["reason"] = out.failure->reason;
    }
    return r;
  }
  const auto list = enumerate_good_tuples(g, o.thresholds, o.min_extension, o.cap, cfg.threads);
  Json tuples = Json::array();
  for (const auto& c : list.certificates)
    tuples.push_back(Json{{"tuple", vertices_json(c.tuple)}, {"extension_set", vertices_json(c.extension_set)}});
  r.negative = list.certificates.empty();
  r.result["count"] = list.certificates.size();
  r.result["truncated"] = list.truncated;
  r.result["tuples"] = tuples;
  return r;
}

// ---------------------------------------------------------------- extremal

struct ExtremalOptions {
  std::size_t n = 0;
  PatternOptions pattern;
  bool timing = false;
};

Report cmd_extremal(const ExtremalOptions& o, const Config& cfg) {
  const Pattern p = o.pattern.realize();
  const auto rep = extremal_exact(o.n, p.graph, p.name, cfg.threads);
  Report r;
  r.result["n"] = rep.n;
  r.result["pattern"] = rep.pattern_id;
  r.result["max_edges"] = rep.max_edges;
  r.result["witness"] = graph_json(rep.witness);
  r.result["graphs_examined"] = std::to_string(rep.graphs_examined);
  r.result["classes_at_n"] = std::to_string(rep.classes_at_n);
  if (o.timing) r.result["elapsed_seconds"] = rep.elapsed_seconds;
  return r;
}

// ---------------------------------------------------------------- deletion-lb

struct DeletionOptions {
  std::size_t n = 0;
  PatternOptions pattern;
  std::optional<double> gamma;
  std::string output;
};

Report cmd_deletion(const DeletionOptions& o, const Config& cfg) {
  const Pattern p = o.pattern.realize();
  const auto res = deletion_lower_bound(o.n, p.graph, o.gamma, cfg.seed);
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) throw InputError("cannot write '" + o.output + "'");
    write_graph(f, res.output);
  }
  Report r;
  r.result["n"] = res.n;
  r.result["pattern"] = p.name;
  r.result["gamma"] = real_json(res.gamma);
  r.result["p"] = real_json(res.p);
  r.result["seed"] = std::to_string(res.seed);
  r.result["edges_before"] = res.edges_before;
  r.result["copies_found"] = count_json(res.copies_found);
  r.result["edges_after"] = res.edges_after;
  r.result["automorphisms"] = count_json(res.automorphisms);
  return r;
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  std::string points;
  PatternOptions pattern;
  std::vector<std::size_t> ns;
  std::size_t seeds = 5;
  std::optional<double> gamma;
};

std::vector<std::pair<double, double>> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<std::pair<double, double>> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream is(line);
    std::string x, y, extra;
    if (!(is >> x >> y) || (is >> extra))
      throw InputError("line " + std::to_string(lineno) + ": expected '<n> <value>'");
    const std::string where = "line " + std::to_string(lineno);
    pts.emplace_back(parse_real(x, where), parse_real(y, where));
  }
  return pts;
}

Report cmd_fit(const FitOptions& o, const Config& cfg) {
  Report r;
  std::vector<std::pair<double, double>> pts;
  if (!o.points.empty()) {
    if (!o.pattern.name.empty() || !o.ns.empty()) throw InputError("fit takes either --points or a sweep, not both");
    pts = read_points(o.points);
  } else {
    if (o.pattern.name.empty() || o.ns.empty()) throw InputError("fit needs --points, or --pattern with --ns");
    if (o.seeds == 0) throw InputError("--seeds must be positive");
    const Pattern p = o.pattern.realize();
    r.result["pattern"] = p.name;
    r.result["predicted_exponent"] = real_json(o.gamma.value_or(deletion_exponent(p.graph)));
    r.result["seeds"] = o.seeds;
    // One job per (n, seed) pair; the seed of job s is the same for every n.
    const std::size_t jobs = o.ns.size() * o.seeds;
    const auto chunks = parallel_chunks<std::vector<std::size_t>>(
        jobs, cfg.threads,
        [&](std::size_t begin, std::size_t end, std::size_t) {
          std::vector<std::size_t> edges;
          for (std::size_t j = begin; j < end; ++j) {
            const auto n = o.ns[j / o.seeds];
            edges.push_back(deletion_lower_bound(n, p.graph, o.gamma, derive_seed(cfg.seed, j % o.seeds)).edges_after);
          }
          return edges;
        },
        jobs);
    std::vector<std::size_t> edges;
    for (const auto& c : chunks) edges.insert(edges.end(), c.begin(), c.end());
    Json sweep = Json::array();
    for (std::size_t i = 0; i < o.ns.size(); ++i) {
      double sum = 0.0;
      Json runs = Json::array();
      for (std::size_t s = 0; s < o.seeds; ++s) {
        sum += static_cast<double>(edges[i * o.seeds + s]);
        runs.push_back(edges[i * o.seeds + s]);
      }
      const double mean = sum / static_cast<double>(o.seeds);
      pts.emplace_back(static_cast<double>(o.ns[i]), mean);
      sweep.push_back(Json{{"n", o.ns[i]}, {"edges_after", runs}, {"mean", real_json(mean)}});
    }
    r.result["sweep"] = sweep;
  }
  const auto fit = scaling_fit(pts);
  r.result["points"] = pts.size();
  r.result["slope"] = real_json(fit.slope);
  r.result["intercept"] = real_json(fit.intercept);
  r.result["r_squared"] = real_json(fit.r_squared);
  return r;
}

// ---------------------------------------------------------------- output

void render_text(const Json& j, const std::string& key, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, key.empty() ? k : key + "." + k, out);
    return;
  }
  if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      out << key << ":";
      for (const auto& x : j) out << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
      out << '\n';
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], key + "." + std::to_string(i), out);
    return;
  }
  out << key << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

unsigned threads_from_environment() {
  const char* env = std::getenv("SUBDIV_LAB_THREADS");
  if (env == nullptr || *env == '\0') return default_thread_count();
  const std::string s(env);
  if (s.size() > 4 || s.find_first_not_of("0123456789") != std::string::npos || std::stoul(s) == 0)
    throw InputError("SUBDIV_LAB_THREADS must be a positive integer, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(s));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal graph theory of subdivisions: counting, embedding and extremal search.", "subdiv_lab"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  Config cfg;
  std::optional<unsigned> threads;
  app.add_option("--seed", cfg.seed, "Seed for every randomized step (default 0)");
  app.add_option("--threads", threads, "Worker threads (default: SUBDIV_LAB_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"text", "json"}));

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a named pattern or a seeded random graph as an edge list");
  gen.pattern.add(gen_cmd, false);
  gen_cmd->add_option("--gnp", gen.gnp, "Random graph G(n, p), given as n,p");
  gen_cmd->add_option("--bipartite-gnp", gen.bipartite_gnp, "Random bipartite graph G(a, b, p), given as a,b,p");
  gen_cmd->add_flag("--bipartite", gen.as_bipartite, "Write the pattern in 'bip' format using its 2-colouring");

  CountOptions count;
  auto* count_cmd = app.add_subcommand("count", "Homomorphism counts of a pattern in an input graph");
  count_cmd->add_option("--input", count.input, "Edge-list file")->required();
  count.pattern.add(count_cmd, false);
  count_cmd->add_flag("--oriented", count.oriented, "Oriented counts on a bipartite host (C4 or star:<k>)");
  count_cmd->add_flag("--injective", count.injective, "Count injective homomorphisms only");
  count_cmd->add_option("--centre", count.centre, "Side of the star centre for --oriented")
      ->check(CLI::IsMember({"A", "B"}));
  count_cmd->add_option("--kst", count.kst, "Labelled K_{s,t} copies, given as s,t")->delimiter(',');

  RegularizeOptions reg;
  auto* reg_cmd = app.add_subcommand("regularize", "Almost-regular subgraph, optionally split into a balanced bipartite graph");
  reg_cmd->add_option("--input", reg.input, "Edge-list file")->required();
  reg_cmd->add_option("--alpha", reg.alpha, "Density exponent: e(G) >= n^(1+alpha)")->required();
  reg_cmd->add_flag("--bipartition", reg.bipartition, "Also run the balanced random bipartition");
  reg_cmd->add_option("--max-retries", reg.max_retries, "Bipartition attempts");
  reg_cmd->add_option("--output", reg.output, "Write the resulting subgraph here");

  DensityCmdOptions dens;
  auto* dens_cmd = app.add_subcommand("density", "(rho, d)-density of the codegree graph and related filters");
  dens_cmd->add_option("--input", dens.input, "Bipartite edge-list file")->required();
  dens_cmd->add_option("--side", dens.side, "Side carrying the codegree graph")->check(CLI::IsMember({"A", "B"}));
  dens_cmd->add_option("--rho", dens.rho, "Subset fraction")->required();
  dens_cmd->add_option("--d", dens.d, "Required average pair weight")->required();
  dens_cmd->add_option("--mode", dens.mode, "Search mode")->check(CLI::IsMember({"exhaustive", "sampled"}));
  dens_cmd->add_option("--trials", dens.trials, "Sampled subsets");
  dens_cmd->add_option("--heavy", dens.heavy, "Also filter pairs of weight >= this and report the support set");
  dens_cmd->add_option("--subset", dens.subset, "A-vertices U for the codegree and pair-sum bounds, e.g. 0,2,5");

  EmbedOptions emb;
  auto* emb_cmd = app.add_subcommand("embed", "Dependent random choice embedding with stage log");
  emb_cmd->add_option("--input", emb.input, "Bipartite edge-list file")->required();
  emb.pattern.add(emb_cmd, true);
  emb_cmd->add_option("--M", emb.M, "Surplus multiplier (default: automatic)");
  emb_cmd->add_option("--bad-threshold", emb.bad_threshold, "Codegree below which a pair is bad (default |V(H)|)");
  emb_cmd->add_option("--witness-trials", emb.witness_trials, "Ranked witnesses to try");
  emb_cmd->add_flag("--strict", emb.strict, "Stop at the first unmet stage");

  GoodTupleOptions gt;
  auto* gt_cmd = app.add_subcommand("good-tuples", "Enumerate good tuples, or embed a subdivided clique through them");
  gt_cmd->add_option("--input", gt.input, "Bipartite edge-list file")->required();
  gt_cmd->add_option("--thresholds", gt.thresholds, "Non-decreasing codegree thresholds, e.g. 2,3")
      ->delimiter(',')
      ->required();
  gt_cmd->add_option("--min-extension", gt.min_extension, "Smallest extension set kept");
  gt_cmd->add_option("--cap", gt.cap, "Maximum tuples reported");
  gt_cmd->add_option("--embed", gt.embed_t, "Embed the subdivided K_t for this t (needs t-1 thresholds)");

  ExtremalOptions ext;
  auto* ext_cmd = app.add_subcommand("extremal", "Exact extremal number ex(n, H) by exhaustive search");
  ext_cmd->add_option("--n", ext.n, "Host vertex count")->required();
  ext.pattern.add(ext_cmd, true);
  ext_cmd->add_flag("--timing", ext.timing, "Include elapsed time (output then varies between runs)");

  DeletionOptions del;
  auto* del_cmd = app.add_subcommand("deletion-lb", "Pattern-free graph from G(n, p) by the deletion method");
  del_cmd->add_option("--n", del.n, "Vertex count")->required();
  del.pattern.add(del_cmd, true);
  del_cmd->add_option("--gamma", del.gamma, "Target exponent (default: deletion-optimal)");
  del_cmd->add_option("--output", del.output, "Write the pattern-free graph here");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Log-log least squares of edge counts against n");
  fit_cmd->add_option("--points", fit.points, "File of '<n> <value>' lines");
  fit.pattern.add(fit_cmd, false);
  fit_cmd->add_option("--ns", fit.ns, "Sweep sizes, e.g. 128,256,512")->delimiter(',');
  fit_cmd->add_option("--seeds", fit.seeds, "Runs per size");
  fit_cmd->add_option("--gamma", fit.gamma, "Target exponent for the sweep");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    cfg.threads = threads ? *threads : threads_from_environment();
    Report report;
    std::string command;
    if (gen_cmd->parsed()) {
      command = "gen";
      report = cmd_gen(gen, cfg);
    } else if (count_cmd->parsed()) {
      command = "count";
      report = cmd_count(count, cfg);
    } else if (reg_cmd->parsed()) {
      command = "regularize";
      report = cmd_regularize(reg, cfg);
    } else if (dens_cmd->parsed()) {
      command = "density";
      report = cmd_density(dens, cfg);
    } else if (emb_cmd->parsed()) {
      command = "embed";
      report = cmd_embed(emb, cfg);
    } else if (gt_cmd->parsed()) {
      command = "good-tuples";
      report = cmd_good_tuples(gt, cfg);
    } else if (ext_cmd->parsed()) {
      command = "extremal";
      report = cmd_extremal(ext, cfg);
    } else if (del_cmd->parsed()) {
      command = "deletion-lb";
      report = cmd_deletion(del, cfg);
    } else {
      command = "fit";
      report = cmd_fit(fit, cfg);
    }
    const char* status = report.negative ? "negative" : "ok";
    if (cfg.format == "json") {
      Json doc{{"schema_version", kSchemaVersion}, {"command", command}, {"status", status}, {"result", report.result}};
      out << doc.dump(2, ' ', false, Json::error_handler_t::replace) << '\n';
    } else if (report.text) {
      out << *report.text;
    } else {
      out << "status: " << status << '\n';
      render_text(report.result, "", out);
    }
    return report.negative ? kNegative : kOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace subdiv::cli
