#include "subdiv/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiv/errors.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

namespace {

bool ratio_ok(std::size_t max_deg, std::size_t min_deg, double K) {
  if (min_deg == 0) return false;
  // Relative slack so that K = max / min, computed in floating point, passes.
  return static_cast<double>(max_deg) <= K * static_cast<double>(min_deg) * (1.0 + 1e-12);
}

std::size_t bucket_of(std::size_t degree) {
  std::size_t i = 0;
  while ((degree >> (i + 1)) != 0) ++i;
  return i;  // 2^i <= degree < 2^(i+1)
}

// Vertices of `g` (by local index) that survive repeated removal of vertices
// whose degree falls below `threshold`.
std::vector<Vertex> peel(const Graph& g, double threshold) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg(n);
  std::vector<char> alive(n, 1);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (static_cast<double>(deg[v]) < threshold || deg[v] == 0) {
      alive[v] = 0;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbours(v)) {
      if (!alive[u]) continue;
      --deg[u];
      if (static_cast<double>(deg[u]) < threshold || deg[u] == 0) {
        alive[u] = 0;
        stack.push_back(u);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) out.push_back(v);
  return out;
}

std::vector<Vertex> compose(const std::vector<Vertex>& outer, const std::vector<Vertex>& local) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(outer[v]);
  return out;
}

}  // namespace

bool verify_almost_regular(const Graph& g, double K) {
  if (g.vertex_count() == 0) throw InputError("verify_almost_regular needs at least one vertex");
  return ratio_ok(g.max_degree(), g.min_degree(), K);
}

bool verify_almost_regular(const BipartiteGraph& g, double K) {
  if (g.a_count() + g.b_count() == 0)
    throw InputError("verify_almost_regular needs at least one vertex");
  std::size_t lo = SIZE_MAX, hi = 0;
  for (Side s : {Side::A, Side::B})
    if (g.side_count(s) > 0) {
      lo = std::min(lo, g.min_degree(s));
      hi = std::max(hi, g.max_degree(s));
    }
  return ratio_ok(hi, lo, K);
}

double almost_regular_bound(double alpha) { return 20.0 * std::pow(2.0, 1.0 + 1.0 / (alpha * alpha)); }

RegularizationCert almost_regular_subgraph(const Graph& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InputError("almost_regular_subgraph needs a nonempty graph");
  const double scale = std::pow(static_cast<double>(n), 1.0 + alpha);
  const double C = static_cast<double>(g.edge_count()) / scale;
  if (C < 1.0) {
    std::ostringstream os;
    os << "C < 1: e(g) = " << g.edge_count() << " is below n^(1+alpha) = " << scale;
    throw InputError(os.str());
  }

  RegularizationCert cert;
  cert.alpha = alpha;
  cert.C_input = C;
  cert.K_bound = almost_regular_bound(alpha);

  std::vector<Vertex> keep(n);
  for (Vertex v = 0; v < n; ++v) keep[v] = v;
  Subgraph current = g.induced(keep);

  while (true) {
    ++cert.rounds;
    if (current.graph.edge_count() == 0) break;
    const double average = 2.0 * static_cast<double>(current.graph.edge_count()) /
                           static_cast<double>(current.graph.vertex_count());
    const auto survivors = peel(current.graph, average / 2.0);
    current = {current.graph.induced(survivors).graph, compose(current.parent_map, survivors)};
    if (ratio_ok(current.graph.max_degree(), current.graph.min_degree(), cert.K_bound)) break;

    // Dyadic buckets by current degree; keep the one retaining most edges.
    const Graph& h = current.graph;
    const std::size_t top = bucket_of(h.max_degree());
    std::vector<std::vector<Vertex>> buckets(top + 1);
    for (Vertex v = 0; v < h.vertex_count(); ++v) buckets[bucket_of(h.degree(v))].push_back(v);
    std::size_t best = 0, best_edges = 0;
    for (std::size_t i = 0; i <= top; ++i) {
      if (buckets[i].empty()) continue;
      const std::size_t e = h.induced(buckets[i]).graph.edge_count();
      if (e > best_edges) {
        best_edges = e;
        best = i;
      }
    }
    std::vector<Vertex> chosen;
    if (best_edges > 0) {
      chosen = buckets[best];
    } else {
      // Every bucket is edgeless on its own (degrees split across buckets, as
      // in an unbalanced complete bipartite graph): drop the top bucket.
      for (std::size_t i = 0; i < top; ++i) chosen.insert(chosen.end(), buckets[i].begin(), buckets[i].end());
      std::sort(chosen.begin(), chosen.end());
    }
    current = {h.induced(chosen).graph, compose(current.parent_map, chosen)};
  }

  if (current.graph.edge_count() == 0) {
    const auto [u, v] = g.edges().front();
    const std::vector<Vertex> pair = {u, v};
    current = g.induced(pair);
  }

  cert.subgraph = current.graph;
  cert.parent_map = current.parent_map;
  cert.m = cert.subgraph.vertex_count();
  cert.max_degree = cert.subgraph.max_degree();
  cert.min_degree = cert.subgraph.min_degree();
  cert.K_achieved = static_cast<double>(cert.max_degree) / static_cast<double>(cert.min_degree);
  cert.size_target = std::pow(static_cast<double>(n), alpha * (1.0 - alpha) / (2.0 * (1.0 + alpha)));
  cert.edge_bound_target = 0.4 * C * std::pow(static_cast<double>(cert.m), 1.0 + alpha);
  cert.size_target_met = static_cast<double>(cert.m) >= cert.size_target;
  cert.edge_target_met = static_cast<double>(cert.subgraph.edge_count()) >= cert.edge_bound_target;
  return cert;
}

std::string BipartitionChecks::first_violation() const {
  if (!balanced) return "balance";
  if (!degrees_retained) return "degree_retention";
  if (!edges_retained) return "edge_retention";
  if (!almost_regular) return "almost_regularity";
  return {};
}

std::pair<std::size_t, std::size_t> retained_degree_window(std::size_t degree) {
  const std::size_t lo = (degree + 3) / 4;
  const std::size_t hi = (3 * degree) / 4;
  return {lo, std::max(lo, hi)};
}

BipartitionChecks check_bipartition(const Graph& g, double K_in, const std::vector<char>& in_a) {
  const std::size_t m = g.vertex_count();
  BipartitionChecks checks;
  std::size_t a_size = 0;
  for (char c : in_a) a_size += c ? 1 : 0;
  checks.balanced = 3 * a_size >= m && 3 * a_size <= 2 * m;

  std::size_t kept_edges = 0, lo = SIZE_MAX, hi = 0;
  checks.degrees_retained = true;
  for (Vertex v = 0; v < m; ++v) {
    std::size_t kept = 0;
    for (Vertex u : g.neighbours(v)) kept += in_a[u] != in_a[v] ? 1 : 0;
    kept_edges += kept;
    const auto [wlo, whi] = retained_degree_window(g.degree(v));
    if (kept < wlo || kept > whi) checks.degrees_retained = false;
    lo = std::min(lo, kept);
    hi = std::max(hi, kept);
  }
  kept_edges /= 2;
  checks.edges_retained = 4 * kept_edges >= g.edge_count();
  checks.almost_regular = m > 0 && ratio_ok(hi, lo, 3.0 * K_in);
  return checks;
}

BipartitionOutcome balanced_bipartition(const Graph& g, double K_in, std::uint64_t seed,
                                        std::size_t max_retries) {
  if (g.vertex_count() == 0 || g.min_degree() == 0)
    throw InputError("balanced_bipartition needs minimum degree at least 1");
  if (!verify_almost_regular(g, K_in))
    throw InputError("balanced_bipartition input is not K_in-almost-regular");
  const std::size_t m = g.vertex_count();

  BipartitionFailure failure;
  bool have_best = false;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(max_retries, 1); ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<char> in_a(m);
    for (auto& c : in_a) c = static_cast<char>(rng.next() >> 63);
    const auto checks = check_bipartition(g, K_in, in_a);
    if (checks.all()) {
      BipartitionCert cert;
      std::vector<std::int64_t> local(m);
      for (Vertex v = 0; v < m; ++v) {
        auto& side = in_a[v] ? cert.a_map : cert.b_map;
        local[v] = static_cast<std::int64_t>(side.size());
        side.push_back(v);
      }
      std::vector<Edge> edges;
      for (Vertex a : cert.a_map)
        for (Vertex u : g.neighbours(a))
          if (!in_a[u]) edges.emplace_back(static_cast<Vertex>(local[a]), static_cast<Vertex>(local[u]));
      cert.subgraph = BipartiteGraph(cert.a_map.size(), cert.b_map.size(), edges);
      cert.m = m;
      cert.K_in = K_in;
      std::size_t lo = SIZE_MAX, hi = 0;
      for (Side s : {Side::A, Side::B}) {
        lo = std::min(lo, cert.subgraph.min_degree(s));
        hi = std::max(hi, cert.subgraph.max_degree(s));
      }
      cert.K_achieved = static_cast<double>(hi) / static_cast<double>(lo);
      cert.attempts = attempt + 1;
      cert.checks = checks;
      return {std::move(cert), std::nullopt};
    }
    if (!have_best || checks.passed() > failure.best_checks.passed()) {
      failure.best_checks = checks;
      have_best = true;
    }
    failure.attempts = attempt + 1;
  }
  failure.violated = failure.best_checks.first_violation();
  return {std::nullopt, std::move(failure)};
}

}  // namespace subdiv
