#include "subdiv/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "subdiv/errors.hpp"
#include "subdiv/parallel.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

namespace {

double required_weight(double d, std::size_t size) {
  return d * static_cast<double>(size) * static_cast<double>(size - (size > 0 ? 1 : 0)) / 2.0;
}

bool violates(std::uint64_t weight, double required) {
  return static_cast<double>(weight) < required - 1e-9 * std::max(1.0, required);
}

std::vector<Vertex> mask_to_vertices(std::uint64_t mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1U) out.push_back(v);
  return out;
}

// Row sums over every subset of `cols`: table[i][m] = Σ_{j ∈ m} W(rows[i], cols[j]).
std::vector<std::vector<std::uint64_t>> subset_row_sums(const WeightedGraph& w, std::span<const Vertex> rows,
                                                        std::span<const Vertex> cols) {
  const std::size_t size = std::size_t{1} << cols.size();
  std::vector<std::vector<std::uint64_t>> table(rows.size(), std::vector<std::uint64_t>(size, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t m = 1; m < size; ++m) {
      const auto low = static_cast<std::size_t>(std::countr_zero(m));
      table[i][m] = table[i][m & (m - 1)] + w.weight(rows[i], cols[low]);
    }
  return table;
}

// Total internal weight of every subset of `part`.
std::vector<std::uint64_t> internal_sums(const WeightedGraph& w, std::span<const Vertex> part) {
  const auto rows = subset_row_sums(w, part, part);
  const std::size_t size = std::size_t{1} << part.size();
  std::vector<std::uint64_t> sums(size, 0);
  for (std::size_t m = 1; m < size; ++m) {
    const auto low = static_cast<std::size_t>(std::countr_zero(m));
    const std::size_t rest = m & (m - 1);
    sums[m] = sums[rest] + rows[low][rest];
  }
  return sums;
}

struct ChunkBest {
  bool found = false;
  std::size_t size = 0;
  std::uint64_t mask = 0;
  std::uint64_t weight = 0;
  std::uint64_t checked = 0;
};

bool better(const ChunkBest& a, const ChunkBest& b) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  return a.size != b.size ? a.size < b.size : a.mask < b.mask;
}

DensityReport exhaustive(const WeightedGraph& w, DensityParams p, std::size_t min_size, unsigned threads) {
  const std::size_t n = w.vertex_count();
  const std::size_t nl = n / 2, nh = n - nl;
  std::vector<Vertex> low(nl), high(nh);
  std::iota(low.begin(), low.end(), 0);
  std::iota(high.begin(), high.end(), static_cast<Vertex>(nl));
  const auto sum_low = internal_sums(w, low);
  const auto sum_high = internal_sums(w, high);
  const auto low_to_high = subset_row_sums(w, low, high);
  const std::size_t low_size = std::size_t{1} << nl, high_size = std::size_t{1} << nh;

  const auto parts = parallel_chunks<ChunkBest>(high_size, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    ChunkBest best;
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> cross(low_size, 0);
    for (std::size_t mh = begin; mh < end; ++mh) {
      const auto high_count = static_cast<std::size_t>(std::popcount(mh));
      for (std::size_t ml = 0; ml < low_size; ++ml) {
        if (ml != 0) {
          const auto b = static_cast<std::size_t>(std::countr_zero(ml));
          cross[ml] = cross[ml & (ml - 1)] + low_to_high[b][mh];
        }
        const std::size_t size = high_count + static_cast<std::size_t>(std::popcount(ml));
        if (size < min_size) continue;
        ++checked;
        const std::uint64_t total = sum_low[ml] + sum_high[mh] + cross[ml];
        if (!violates(total, required_weight(p.d, size))) continue;
        ChunkBest here{true, size, (static_cast<std::uint64_t>(mh) << nl) | ml, total, 0};
        if (better(here, best)) best = here;
      }
    }
    best.checked = checked;
    return best;
  });

  DensityReport report;
  report.min_size = min_size;
  ChunkBest best;
  for (const auto& part : parts) {
    report.subsets_checked += part.checked;
    if (better(part, best)) best = part;
  }
  if (best.found) {
    report.verdict = DensityVerdict::kCounterexample;
    report.counterexample = mask_to_vertices(best.mask);
    report.counterexample_weight = best.weight;
    report.counterexample_required = required_weight(p.d, best.size);
  }
  return report;
}

DensityReport sampled(const WeightedGraph& w, DensityParams p, std::size_t min_size, std::uint64_t seed,
                      std::uint64_t trials) {
  const std::size_t n = w.vertex_count();
  DensityReport report;
  report.min_size = min_size;
  report.verdict = DensityVerdict::kNoCounterexampleFound;
  Rng rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::size_t size = min_size + static_cast<std::size_t>(rng.below(n - min_size + 1));
    for (std::size_t i = 0; i < size; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) total += w.weight(order[i], order[j]);
    ++report.subsets_checked;
    const double required = required_weight(p.d, size);
    if (violates(total, required)) {
      report.verdict = DensityVerdict::kCounterexample;
      report.counterexample.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
      std::sort(report.counterexample.begin(), report.counterexample.end());
      report.counterexample_weight = total;
      report.counterexample_required = required;
      break;
    }
  }
  return report;
}

// Degrees into B restricted to U: d_U(b) for every b.
std::vector<std::uint64_t> degrees_from(const BipartiteGraph& g, std::span<const Vertex> U) {
  std::vector<char> seen(g.a_count(), 0);
  std::vector<std::uint64_t> deg(g.b_count(), 0);
  for (Vertex u : U) {
    if (u >= g.a_count()) throw InputError("U must be a subset of A");
    if (seen[u]) throw InputError("U lists a vertex twice");
    seen[u] = 1;
    for (Vertex b : g.neighbours(Side::A, u)) ++deg[b];
  }
  return deg;
}

bool precondition(const BipartiteGraph& g, std::size_t u_size, std::size_t& min_degree) {
  min_degree = g.a_count() == 0 ? 0 : g.min_degree(Side::A);
  return min_degree * u_size >= 2 * g.b_count();
}

}  // namespace

DensityReport check_rho_d_dense(const WeightedGraph& w, DensityParams p, DensityOptions options) {
  const std::size_t n = w.vertex_count();
  if (!(p.rho > 0.0 && p.rho <= 1.0)) throw InputError("rho must lie in (0, 1]");
  if (!(p.d >= 0.0)) throw InputError("d must be nonnegative");
  if (p.rho * static_cast<double>(n) < 1.0 - 1e-12) throw InputError("rho |V| must be at least 1");
  const auto min_size = static_cast<std::size_t>(std::ceil(p.rho * static_cast<double>(n) - 1e-9));
  if (options.mode == DensityMode::kSampled) return sampled(w, p, min_size, options.seed, options.trials);
  if (n > kExhaustiveDensityLimit)
    throw ResourceError("exhaustive density check is limited to 24 vertices; use sampled mode");
  return exhaustive(w, p, min_size, options.threads == 0 ? default_thread_count() : options.threads);
}

CodegreeBound local_codegree_bound(const BipartiteGraph& g, std::span<const Vertex> U) {
  const auto deg = degrees_from(g, U);
  CodegreeBound out;
  for (auto d : deg) out.lhs += d * (d - (d > 0 ? 1 : 0)) / 2;
  out.precondition_met = precondition(g, U.size(), out.min_degree);
  const double delta = static_cast<double>(out.min_degree);
  const double pairs = static_cast<double>(U.size()) * static_cast<double>(U.size() - (U.empty() ? 0 : 1)) / 2.0;
  out.rhs = g.b_count() == 0 ? 0.0 : delta * delta / (2.0 * static_cast<double>(g.b_count())) * pairs;
  out.holds = static_cast<double>(out.lhs) >= out.rhs - 1e-9 * std::max(1.0, out.rhs);
  return out;
}

PairSums pair_sum_bounds(const BipartiteGraph& g, std::span<const Vertex> U) {
  const auto deg = degrees_from(g, U);
  PairSums out;
  for (auto d : deg) {
    out.unordered_sum += d * (d - (d > 0 ? 1 : 0)) / 2;
    out.ordered_sum += d * d;
    out.edge_count += d;
  }
  std::size_t min_degree = 0;
  out.precondition_met = precondition(g, U.size(), min_degree);
  out.holds = 4 * out.unordered_sum >= out.ordered_sum;
  return out;
}

FilterResult heavy_edge_filter(const WeightedGraph& w, std::uint64_t M) {
  if (M < 1) throw InputError("M must be at least 1");
  FilterResult out;
  out.threshold = M;
  for (const auto& [u, v] : w.support()) {
    const std::uint64_t x = w.weight(u, v);
    if (x >= M) {
      out.removed_pairs.emplace_back(u, v);
      out.removed_weight += x;
    } else {
      out.kept_pairs.emplace_back(u, v);
    }
  }
  out.sum_of_squares = w.sum_of_squares();
  out.bound = static_cast<double>(out.sum_of_squares) / static_cast<double>(M);
  if (static_cast<unsigned __int128>(out.removed_weight) * M > out.sum_of_squares)
    throw std::logic_error("heavy_edge_filter: removed weight exceeds S / M");
  return out;
}

SupportSet large_support_set(const WeightedGraph& w, std::uint64_t M) {
  if (M < 1) throw InputError("M must be at least 1");
  const std::size_t n = w.vertex_count();
  std::vector<std::uint64_t> light_degree(n, 0);
  std::vector<std::size_t> light_neighbours(n, 0);
  std::uint64_t light_total = 0;
  for (const auto& [u, v] : w.support()) {
    const std::uint64_t x = w.weight(u, v);
    if (x >= M) continue;
    light_degree[u] += x;
    light_degree[v] += x;
    ++light_neighbours[u];
    ++light_neighbours[v];
    light_total += x;
  }
  if (light_total == 0) throw InputError("no light edges");

  SupportSet out;
  const double size = static_cast<double>(n);
  out.d = static_cast<double>(light_total) / (size * size);
  // light_degree >= d|V| is light_degree * |V| >= light_total, exactly.
  for (Vertex u = 0; u < n; ++u)
    if (static_cast<unsigned __int128>(light_degree[u]) * n >= light_total) out.U.push_back(u);
  out.guarantee = out.d * size / static_cast<double>(M);
  out.min_light_neighbours = SIZE_MAX;
  for (Vertex u : out.U) out.min_light_neighbours = std::min(out.min_light_neighbours, light_neighbours[u]);
  // Both bounds are light_total / (|V| M) in exact arithmetic.
  const unsigned __int128 scale = static_cast<unsigned __int128>(n) * M;
  if (static_cast<unsigned __int128>(out.U.size()) * scale < light_total ||
      static_cast<unsigned __int128>(out.min_light_neighbours) * scale < light_total)
    throw std::logic_error("large_support_set: guarantee violated");
  return out;
}

}  // namespace subdiv
