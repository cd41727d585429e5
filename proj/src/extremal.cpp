#include "subdiv/extremal.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_set>

#include "subdiv/errors.hpp"
#include "subdiv/hom_count.hpp"
#include "subdiv/iso.hpp"
#include "subdiv/parallel.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

namespace {

bool contains_pattern(const Graph& pattern, const Graph& host) {
  bool found = false;
  for_each_injective_hom(pattern, host, [&](std::span<const Vertex>) {
    found = true;
    return false;
  });
  return found;
}

// One representative per automorphism orbit of the pattern's vertices, or
// every vertex when the group is too large to list cheaply.
std::vector<Vertex> orbit_representatives(const Graph& pattern) {
  const std::size_t k = pattern.vertex_count();
  std::vector<Vertex> parent(k);
  for (Vertex v = 0; v < k; ++v) parent[v] = v;
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t seen = 0;
  bool complete = true;
  for_each_injective_hom(pattern, pattern, [&](std::span<const Vertex> map) {
    if (++seen > 100000) {
      complete = false;
      return false;
    }
    for (Vertex v = 0; v < k; ++v) parent[find(v)] = find(map[v]);
    return true;
  });
  std::vector<Vertex> reps;
  for (Vertex v = 0; v < k; ++v)
    if (!complete || find(v) == v) reps.push_back(v);
  return reps;
}

// Does host contain a copy of the pattern through host vertex `v`?
bool copy_through(const Graph& pattern, const std::vector<Vertex>& reps, const Graph& host, Vertex v) {
  for (Vertex p : reps) {
    if (pattern.degree(p) > host.degree(v)) continue;
    bool found = false;
    for_each_injective_hom_through(pattern, host, p, v, [&](std::span<const Vertex>) {
      found = true;
      return false;
    });
    if (found) return true;
  }
  return false;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& labelling) {
  std::vector<Vertex> pos(g.vertex_count());
  for (std::size_t i = 0; i < labelling.size(); ++i) pos[labelling[i]] = static_cast<Vertex>(i);
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
  std::sort(e.begin(), e.end());
  return Graph(g.vertex_count(), e);
}

// Random-order greedy edge addition, best of several seeded orders.
Graph greedy_free_graph(std::size_t n, const Graph& pattern) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  Graph best(n, std::span<const Edge>{});
  for (std::uint64_t trial = 0; trial < 16; ++trial) {
    Rng rng(derive_seed(0x5eed, trial));
    auto order = pairs;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<Edge> kept;
    for (const Edge& e : order) {
      kept.push_back(e);
      if (contains_pattern(pattern, Graph(n, kept))) kept.pop_back();
    }
    if (kept.size() > best.edge_count()) best = Graph(n, kept);
  }
  return best;
}

std::size_t binom2(std::size_t k) { return k * (k - (k ? 1 : 0)) / 2; }

}  // namespace

ExtremalReport extremal_exact(std::size_t n, const Graph& pattern, std::string pattern_id, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  if (n > kExtremalVertexLimit)
    throw ResourceError("exact search is limited to n <= " + std::to_string(kExtremalVertexLimit) +
                        "; use deletion-lb for a sampled lower bound");
  if (pattern.edge_count() == 0) throw InputError("pattern must have at least one edge");
  if (pattern.vertex_count() > Pattern::kMaxVertices)
    throw ResourceError("pattern has more than " + std::to_string(Pattern::kMaxVertices) + " vertices");

  ExtremalReport out;
  out.n = n;
  out.pattern_id = std::move(pattern_id);
  const unsigned workers = threads == 0 ? default_thread_count() : threads;

  const Graph seed_graph = greedy_free_graph(n, pattern);
  const double lower = static_cast<double>(seed_graph.edge_count());
  auto needed = [&](std::size_t k) -> std::size_t {
    if (n < 2) return 0;
    const double x = lower * double(k) * double(k - 1) / (double(n) * double(n - 1));
    return static_cast<std::size_t>(std::ceil(x - 1e-9));
  };
  const auto reps = orbit_representatives(pattern);

  using Classes = std::map<std::vector<std::uint64_t>, Graph>;
  Classes level;
  level.emplace(std::vector<std::uint64_t>{}, Graph(n ? 1 : 0, std::span<const Edge>{}));
  struct Part {
    std::vector<std::pair<std::vector<std::uint64_t>, Graph>> found;
    std::uint64_t examined = 0;
  };
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<const Graph*> parents;
    for (const auto& [key, g] : level) parents.push_back(&g);
    const std::size_t need = needed(k + 1);
    auto parts = parallel_chunks<Part>(parents.size(), workers, [&](std::size_t begin, std::size_t end, std::size_t) {
      Part part;
      for (std::size_t i = begin; i < end; ++i) {
        const Graph& g = *parents[i];
        std::vector<Edge> base = g.edges();
        const std::size_t e = base.size();
        std::size_t min_deg = k;
        for (Vertex u = 0; u < k; ++u) min_deg = std::min(min_deg, g.degree(u));
        for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
          const auto d = static_cast<std::size_t>(std::popcount(mask));
          if (e + d < need || d > min_deg + 1) continue;
          bool min_degree_ok = true;
          for (Vertex u = 0; u < k && min_degree_ok; ++u)
            min_degree_ok = d <= g.degree(u) + ((mask >> u) & 1U);
          if (!min_degree_ok) continue;
          std::vector<Edge> edges = base;
          for (Vertex u = 0; u < k; ++u)
            if ((mask >> u) & 1U) edges.emplace_back(u, static_cast<Vertex>(k));
          Graph child(k + 1, edges);
          ++part.examined;
          if (copy_through(pattern, reps, child, static_cast<Vertex>(k))) continue;
          auto form = canonical_form(child);
          part.found.emplace_back(std::move(form.bits), relabel(child, form.labelling));
        }
      }
      return part;
    });
    Classes next;
    for (auto& part : parts) {
      out.graphs_examined += part.examined;
      for (auto& [key, g] : part.found) next.emplace(std::move(key), std::move(g));
    }
    level = std::move(next);
  }

  out.classes_at_n = level.size();
  const Graph* best = nullptr;
  for (const auto& [key, g] : level)
    if (!best || g.edge_count() > best->edge_count()) best = &g;
  if (!best || best->edge_count() < seed_graph.edge_count())
    throw std::logic_error("exact search lost the greedy lower-bound graph");
  out.witness = *best;
  out.max_edges = out.witness.edge_count();
  if (out.witness.vertex_count() != n || contains_pattern(pattern, out.witness))
    throw std::logic_error("extremal witness failed re-verification");
  if (out.max_edges > binom2(n)) throw std::logic_error("extremal witness has too many edges");
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double two_density(const Graph& pattern) {
  const std::size_t k = pattern.vertex_count();
  if (k > Pattern::kMaxVertices) throw ResourceError("pattern too large for the two-density search");
  double best = pattern.edge_count() ? 0.5 : 0.0;
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    const auto v = static_cast<std::size_t>(std::popcount(mask));
    if (v < 3) continue;
    std::size_t e = 0;
    for (auto [a, b] : pattern.edges())
      if (((mask >> a) & 1U) && ((mask >> b) & 1U)) ++e;
    if (e == 0) continue;
    best = std::max(best, (double(e) - 1.0) / (double(v) - 2.0));
  }
  return best;
}

double deletion_exponent(const Graph& pattern) {
  if (pattern.edge_count() < 2) throw InputError("the deletion bound needs a pattern with at least 2 edges");
  return 2.0 - 1.0 / two_density(pattern);
}

DeletionResult deletion_lower_bound(std::size_t n, const Graph& pattern, std::optional<double> exponent_override,
                                    std::uint64_t seed) {
  if (pattern.edge_count() < 2) throw InputError("the deletion bound needs a pattern with at least 2 edges");
  if (n < 2) throw InputError("n must be at least 2");
  DeletionResult out;
  out.n = n;
  out.seed = seed;
  out.gamma = exponent_override ? *exponent_override : deletion_exponent(pattern);
  out.p = std::min(1.0, std::pow(double(n), out.gamma - 2.0));

  const std::size_t v = pattern.vertex_count(), e = pattern.edge_count();
  double expected_homs = std::pow(out.p, double(e));
  for (std::size_t i = 0; i < v; ++i) expected_homs *= double(n > i ? n - i : 0);
  if (expected_homs > kDeletionHomBudget)
    throw ResourceError("expected " + std::to_string(expected_homs) + " homomorphisms exceeds the budget of " +
                        std::to_string(kDeletionHomBudget));

  Rng rng(seed);
  std::vector<Edge> sample;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (rng.bernoulli(out.p)) sample.emplace_back(a, b);
  const Graph g(n, sample);
  out.edges_before = g.edge_count();
  out.automorphisms = automorphism_count(pattern);

  const auto pattern_edges = pattern.edges();
  auto key = [n](Vertex a, Vertex b) { return std::uint64_t(std::min(a, b)) * n + std::max(a, b); };
  std::unordered_set<std::uint64_t> deleted;
  BigCount homs = 0;
  for_each_injective_hom(pattern, g, [&](std::span<const Vertex> map) {
    ++homs;
    const bool intact = std::none_of(pattern_edges.begin(), pattern_edges.end(), [&](const Edge& pe) {
      return deleted.count(key(map[pe.first], map[pe.second])) > 0;
    });
    if (intact) deleted.insert(key(map[pattern_edges[0].first], map[pattern_edges[0].second]));
    return true;
  });
  out.copies_found = homs / out.automorphisms;

  std::vector<Edge> kept;
  for (const auto& [a, b] : sample)
    if (!deleted.count(key(a, b))) kept.emplace_back(a, b);
  out.output = Graph(n, kept);
  out.edges_after = out.output.edge_count();
  if (contains_pattern(pattern, out.output)) throw std::logic_error("deletion output still contains the pattern");
  if (BigCount(out.edges_after) + out.copies_found < BigCount(out.edges_before))
    throw std::logic_error("deletion removed more than one edge per copy");
  return out;
}

ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InputError("scaling_fit needs at least 3 points");
  std::vector<double> xs;
  for (const auto& [n, edges] : points) {
    if (!(n > 0) || !(edges > 0)) throw InputError("scaling_fit needs positive n and edge counts");
    xs.push_back(n);
  }
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) throw InputError("scaling_fit needs distinct n");
  const double m = double(points.size());
  double sx = 0, sy = 0;
  for (const auto& [n, edges] : points) {
    sx += std::log(n);
    sy += std::log(edges);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, edges] : points) {
    const double dx = std::log(n) - mx, dy = std::log(edges) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0)) throw InputError("degenerate regression");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

SubdivisionHomCounts classify_subdivision_homs(const BipartiteGraph& g, std::size_t t) {
  if (t < 2) throw InputError("t must be at least 2");
  SubdivisionHomCounts out;
  const std::size_t na = g.a_count();
  if (t > na) return out;
  std::uint64_t nodes = 0;
  auto tick = [&] {
    if (++nodes > kClassifyBudget) throw ResourceError("classify_subdivision_homs exceeded its search budget");
  };

  std::vector<Vertex> branch;
  std::vector<char> used_a(na, 0), used_b(g.b_count(), 0);
  std::vector<std::vector<Vertex>> pair_candidates;

  std::function<std::uint64_t(std::size_t)> count_distinct = [&](std::size_t p) -> std::uint64_t {
    tick();
    if (p == pair_candidates.size()) return 1;
    std::uint64_t c = 0;
    for (Vertex b : pair_candidates[p]) {
      if (used_b[b]) continue;
      used_b[b] = 1;
      c += count_distinct(p + 1);
      used_b[b] = 0;
    }
    return c;
  };

  std::function<void()> go = [&] {
    tick();
    if (branch.size() == t) {
      pair_candidates.clear();
      BigCount product = 1;
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
          pair_candidates.push_back(g.common_neighbours(Side::A, branch[i], branch[j]));
          product *= pair_candidates.back().size();
        }
      out.total += product;
      if (product != 0) out.nondegenerate += count_distinct(0);
      return;
    }
    for (Vertex a = 0; a < na; ++a) {
      if (used_a[a]) continue;
      // Every earlier branch vertex needs a common neighbour with a.
      bool ok = true;
      for (Vertex x : branch)
        if (g.codegree(Side::A, x, a) == 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used_a[a] = 1;
      branch.push_back(a);
      go();
      branch.pop_back();
      used_a[a] = 0;
    }
  };
  go();
  out.degenerate = out.total - out.nondegenerate;
  return out;
}

}  // namespace subdiv
