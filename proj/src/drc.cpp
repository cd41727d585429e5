#include "subdiv/drc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "subdiv/errors.hpp"
#include "subdiv/parallel.hpp"

namespace subdiv {

namespace {

using u128 = unsigned __int128;

BigCount to_big(u128 x) {
  BigCount out = static_cast<std::uint64_t>(x >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(x);
  return out;
}

std::string join(std::span<const Vertex> vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vs[i]);
  }
  return out;
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<Vertex> sorted_unique(std::span<const Vertex> vs, std::size_t bound, const char* what) {
  std::vector<Vertex> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw InputError(std::string(what) + " lists a vertex twice");
  if (!out.empty() && out.back() >= bound) throw InputError(std::string(what) + " has an out-of-range vertex");
  return out;
}

// Ordered bad pairs among `nb` (B-vertices).
std::uint64_t count_bad_pairs(const BipartiteGraph& g, std::span<const Vertex> nb, std::size_t threshold) {
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t k = i + 1; k < nb.size(); ++k)
      if (g.codegree(Side::B, nb[i], nb[k]) < threshold) bad += 2;
  return bad;
}

// a/b < c/d for positive denominators.
bool fraction_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return static_cast<u128>(a) * d < static_cast<u128>(c) * b;
}

}  // namespace

std::optional<Pivot> best_pivot(const BipartiteGraph& g, std::uint64_t M, unsigned threads) {
  const std::size_t na = g.a_count();
  if (na == 0) return std::nullopt;
  struct Best {
    bool found = false;
    Pivot pivot;
  };
  const auto parts = parallel_chunks<Best>(na, threads == 0 ? default_thread_count() : threads,
                                           [&](std::size_t begin, std::size_t end, std::size_t) {
    Best best;
    std::vector<std::uint64_t> hits(na, 0);
    std::vector<Vertex> touched;
    for (std::size_t x = begin; x < end; ++x) {
      if (g.degree(Side::A, static_cast<Vertex>(x)) == 0) continue;
      // Σ_{(u,v) ∈ N(x)^2} d*(u,v) = Σ_a |N(a) ∩ N(x)|^2.
      u128 c4 = 0, star = 0;
      for (Vertex v : g.neighbours(Side::A, static_cast<Vertex>(x))) {
        star += g.degree(Side::B, v);
        for (Vertex a : g.neighbours(Side::B, v))
          if (hits[a]++ == 0) touched.push_back(a);
      }
      for (Vertex a : touched) {
        c4 += static_cast<u128>(hits[a]) * hits[a];
        hits[a] = 0;
      }
      touched.clear();
      const std::uint64_t dx = g.degree(Side::A, static_cast<Vertex>(x));
      star += static_cast<u128>(dx) * dx;
      BigCount surplus = to_big(c4) - BigCount(M) * to_big(star);
      if (!best.found || surplus > best.pivot.surplus) {
        best.found = true;
        best.pivot = {static_cast<Vertex>(x), std::move(surplus)};
      }
    }
    return best;
  });
  Best best;
  for (const auto& p : parts)
    if (p.found && (!best.found || p.pivot.surplus > best.pivot.surplus)) best = p;
  if (!best.found) return std::nullopt;
  return best.pivot;
}

std::optional<Pivot> select_pivot(const BipartiteGraph& g, std::uint64_t M, unsigned threads) {
  auto p = best_pivot(g, M, threads);
  if (!p || p->surplus < 0) return std::nullopt;
  return p;
}

DyadicSelection dyadic_select(const BipartiteGraph& g, std::span<const Vertex> b_prime) {
  const auto bp = sorted_unique(b_prime, g.b_count(), "B'");
  if (bp.empty()) throw InputError("B' must be nonempty");
  std::vector<std::uint64_t> deg(g.a_count(), 0);
  for (Vertex b : bp)
    for (Vertex a : g.neighbours(Side::B, b)) ++deg[a];

  DyadicSelection out;
  out.L = static_cast<std::size_t>(std::bit_width(bp.size()));
  out.buckets.assign(out.L, {});
  std::vector<std::uint64_t> mass(out.L, 0);
  bool any = false;
  for (Vertex a = 0; a < g.a_count(); ++a) {
    if (deg[a] == 0) continue;
    any = true;
    const auto i = static_cast<std::size_t>(std::bit_width(deg[a]));
    out.buckets[i - 1].push_back(a);
    mass[i - 1] += deg[a] * deg[a];
    out.total_mass += deg[a] * deg[a];
  }
  if (!any) throw InputError("N(B') is empty");
  for (std::size_t i = 0; i < out.L; ++i)
    if (mass[i] > out.bucket_mass) {
      out.bucket_mass = mass[i];
      out.j = i + 1;
    }
  if (static_cast<u128>(out.bucket_mass) * out.L < out.total_mass)
    throw std::logic_error("dyadic_select: averaging bound violated");
  return out;
}

std::vector<Witness> rank_witnesses(const BipartiteGraph& g, std::span<const Vertex> a_j,
                                    std::span<const Vertex> b_prime, std::size_t bad_threshold,
                                    unsigned threads) {
  std::vector<char> in_b(g.b_count(), 0);
  for (Vertex b : b_prime) {
    if (b >= g.b_count()) throw InputError("B' has an out-of-range vertex");
    in_b[b] = 1;
  }
  for (Vertex z : a_j)
    if (z >= g.a_count()) throw InputError("candidate witness outside A");

  const auto parts = parallel_chunks<std::vector<Witness>>(
      a_j.size(), threads == 0 ? default_thread_count() : threads,
      [&](std::size_t begin, std::size_t end, std::size_t) {
        std::vector<Witness> out;
        for (std::size_t i = begin; i < end; ++i) {
          Witness w;
          w.z = a_j[i];
          for (Vertex b : g.neighbours(Side::A, w.z))
            if (in_b[b]) w.neighbourhood.push_back(b);
          const std::uint64_t k = w.neighbourhood.size();
          if (k < 2) continue;
          w.bad_pairs = count_bad_pairs(g, w.neighbourhood, bad_threshold);
          w.bad_fraction = static_cast<double>(w.bad_pairs) / static_cast<double>(k * (k - 1));
          out.push_back(std::move(w));
        }
        return out;
      });
  std::vector<Witness> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  if (all.empty()) return all;

  double sum = 0;
  for (const auto& w : all) sum += w.bad_fraction;
  const double average = sum / static_cast<double>(all.size());
  for (auto& w : all) w.average_fraction = average;
  std::stable_sort(all.begin(), all.end(), [](const Witness& x, const Witness& y) {
    const std::uint64_t kx = x.neighbourhood.size(), ky = y.neighbourhood.size();
    if (fraction_less(x.bad_pairs, kx * (kx - 1), y.bad_pairs, ky * (ky - 1))) return true;
    if (fraction_less(y.bad_pairs, ky * (ky - 1), x.bad_pairs, kx * (kx - 1))) return false;
    if (kx != ky) return kx > ky;
    return x.z < y.z;
  });
  if (all.front().bad_fraction > average + 1e-12)
    throw std::logic_error("rank_witnesses: best witness above average");
  return all;
}

std::optional<Witness> select_witness(const BipartiteGraph& g, std::span<const Vertex> a_j,
                                      std::span<const Vertex> b_prime, std::size_t bad_threshold,
                                      unsigned threads) {
  auto ranked = rank_witnesses(g, a_j, b_prime, bad_threshold, threads);
  if (ranked.empty()) return std::nullopt;
  return std::move(ranked.front());
}

void for_each_nonbad_clique(const BipartiteGraph& g, std::span<const Vertex> candidates, std::size_t h,
                            std::size_t bad_threshold,
                            const std::function<bool(std::span<const Vertex>)>& visit) {
  const auto cand = sorted_unique(candidates, g.b_count(), "candidate set");
  const std::size_t k = cand.size();
  if (h == 0) {
    visit({});
    return;
  }
  if (h > k) return;
  std::vector<std::vector<char>> ok(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      ok[i][j] = ok[j][i] = g.codegree(Side::B, cand[i], cand[j]) >= bad_threshold;

  std::vector<Vertex> current;
  bool stop = false;
  std::function<void(const std::vector<std::size_t>&)> extend = [&](const std::vector<std::size_t>& pool) {
    if (current.size() == h) {
      stop = !visit(current);
      return;
    }
    for (std::size_t i = 0; i < pool.size() && !stop; ++i) {
      if (current.size() + (pool.size() - i) < h) return;
      const std::size_t v = pool[i];
      std::vector<std::size_t> next;
      for (std::size_t t = i + 1; t < pool.size(); ++t)
        if (ok[v][pool[t]]) next.push_back(pool[t]);
      current.push_back(cand[v]);
      extend(next);
      current.pop_back();
    }
  };
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  extend(all);
}

std::optional<std::vector<Vertex>> clique_nonbad(const BipartiteGraph& g, std::span<const Vertex> candidates,
                                                 std::size_t h, std::size_t bad_threshold) {
  if (h < 2) throw InputError("clique size must be at least 2");
  std::optional<std::vector<Vertex>> found;
  for_each_nonbad_clique(g, candidates, h, bad_threshold, [&](std::span<const Vertex> c) {
    found.emplace(c.begin(), c.end());
    return false;
  });
  return found;
}

PatternSplit split_pattern(const Pattern& h) {
  PatternSplit out;
  if (h.sides) {
    out.side = *h.sides;
  } else {
    auto colouring = two_colouring(h.graph);
    if (!colouring) throw InputError("pattern is not bipartite");
    out.side = std::move(*colouring);
  }
  bool low[2] = {true, true};
  for (Vertex v = 0; v < h.vertex_count(); ++v)
    if (h.graph.degree(v) > 2) low[out.side[v]] = false;
  if (!low[0] && !low[1]) throw InputError("pattern needs one side with maximum degree at most 2");
  out.subdivider_side = low[1] ? 1 : 0;
  std::set<Edge> pairs;
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    if (out.side[v] != out.subdivider_side) {
      out.branch.push_back(v);
      continue;
    }
    out.subdividers.push_back(v);
    const auto nb = h.graph.neighbours(v);
    if (nb.size() == 2 && !pairs.insert({std::min(nb[0], nb[1]), std::max(nb[0], nb[1])}).second)
      throw InputError("pattern contains a 4-cycle through two subdividing vertices");
  }
  return out;
}

namespace {

// Places the subdividers once the branch vertices have images in B.
class Assigner {
 public:
  Assigner(const BipartiteGraph& g, const Pattern& h, const PatternSplit& split, std::size_t cap)
      : g_(g), h_(h), cap_(cap) {
    order_ = split.subdividers;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex x, Vertex y) { return h.graph.degree(x) > h.graph.degree(y); });
  }

  /// branch_image[v] is the B-index for branch vertex v. Returns the full
  /// global map on success.
  std::optional<std::vector<Vertex>> run(const std::vector<Vertex>& branch, std::span<const Vertex> images) {
    const Vertex na = static_cast<Vertex>(g_.a_count());
    map_.assign(h_.vertex_count(), 0);
    for (std::size_t i = 0; i < branch.size(); ++i) map_[branch[i]] = na + images[i];
    used_.assign(g_.a_count(), 0);
    nodes_ = 0;
    if (!place(0)) return std::nullopt;
    return map_;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  std::vector<Vertex> candidates(Vertex v) const {
    const Vertex na = static_cast<Vertex>(g_.a_count());
    const auto nb = h_.graph.neighbours(v);
    std::vector<Vertex> out;
    if (nb.size() == 2) {
      out = g_.common_neighbours(Side::B, map_[nb[0]] - na, map_[nb[1]] - na);
    } else if (nb.size() == 1) {
      const auto n = g_.neighbours(Side::B, map_[nb[0]] - na);
      out.assign(n.begin(), n.end());
    } else {
      out.resize(g_.a_count());
      for (Vertex a = 0; a < g_.a_count(); ++a) out[a] = a;
    }
    std::erase_if(out, [&](Vertex a) { return used_[a] != 0; });
    if (out.size() > cap_) out.resize(cap_);
    return out;
  }

  bool place(std::size_t i) {
    if (i == order_.size()) return true;
    if (++nodes_ > kNodeBudget) return false;
    const Vertex v = order_[i];
    for (Vertex a : candidates(v)) {
      used_[a] = 1;
      map_[v] = a;
      if (place(i + 1)) return true;
      used_[a] = 0;
    }
    return false;
  }

  static constexpr std::size_t kNodeBudget = 200000;
  const BipartiteGraph& g_;
  const Pattern& h_;
  std::size_t cap_;
  std::vector<Vertex> order_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::size_t nodes_ = 0;
};

constexpr std::size_t kCliquesPerSource = 64;
constexpr std::size_t kAssignmentBudget = 4096;

}  // namespace

EmbedOutcome embed_h(const BipartiteGraph& g, const Pattern& h, const DrcParams& params) {
  const PatternSplit split = split_pattern(h);
  const std::size_t threshold = params.bad_threshold.value_or(h.vertex_count());
  if (threshold < 1) throw InputError("bad_threshold must be at least 1");
  const std::uint64_t M = params.M ? *params.M : auto_multiplier(g);
  if (M < 1) throw InputError("M must be at least 1");

  std::vector<StageEntry> log;
  log.push_back({"setup",
                 {{"M", std::to_string(M)},
                  {"bad_threshold", std::to_string(threshold)},
                  {"branch_vertices", std::to_string(split.branch.size())},
                  {"subdividers", std::to_string(split.subdividers.size())},
                  {"mode", params.strict ? "strict" : "relaxed"}}});
  auto fail = [&](std::string stage, std::string reason) {
    return EmbedOutcome{std::nullopt, FailureReport{std::move(stage), std::move(reason), log}};
  };

  if (g.edge_count() == 0) return fail("pivot", "host has no edges");
  const auto pivot = best_pivot(g, M, params.threads);
  const bool qualifies = pivot->surplus >= 0;
  log.push_back({"pivot",
                 {{"x", std::to_string(pivot->x)},
                  {"surplus", to_decimal(pivot->surplus)},
                  {"qualifies", qualifies ? "true" : "false"}}});
  if (!qualifies && params.strict) return fail("pivot", "no vertex has nonnegative surplus");

  const auto nx = g.neighbours(Side::A, pivot->x);
  const std::vector<Vertex> b_prime(nx.begin(), nx.end());
  if (b_prime.empty()) return fail("pivot", "pivot has no neighbours");
  const auto dyadic = dyadic_select(g, b_prime);
  std::size_t a_prime = 0;
  for (const auto& b : dyadic.buckets) a_prime += b.size();
  log.push_back({"dyadic",
                 {{"B_prime", std::to_string(b_prime.size())},
                  {"A_prime", std::to_string(a_prime)},
                  {"L", std::to_string(dyadic.L)},
                  {"j", std::to_string(dyadic.j)},
                  {"A_j", std::to_string(dyadic.a_j().size())},
                  {"bucket_mass", std::to_string(dyadic.bucket_mass)},
                  {"total_mass", std::to_string(dyadic.total_mass)}}});

  const auto witnesses = rank_witnesses(g, dyadic.a_j(), b_prime, threshold, params.threads);
  if (!witnesses.empty()) {
    const auto& w = witnesses.front();
    log.push_back({"witness",
                   {{"z", std::to_string(w.z)},
                    {"neighbourhood", std::to_string(w.neighbourhood.size())},
                    {"bad_pairs", std::to_string(w.bad_pairs)},
                    {"bad_fraction", fixed(w.bad_fraction)},
                    {"average_fraction", fixed(w.average_fraction)}}});
  } else {
    if (params.strict) return fail("witness", "witness neighbourhoods too small");
    log.push_back({"witness", {{"status", "witness neighbourhoods too small"}}});
  }

  std::vector<std::pair<std::string, std::vector<Vertex>>> sources;
  const std::size_t trials = params.strict ? 1 : std::max<std::size_t>(params.witness_trials, 1);
  for (std::size_t i = 0; i < std::min(trials, witnesses.size()); ++i)
    sources.emplace_back("witness:" + std::to_string(witnesses[i].z), witnesses[i].neighbourhood);
  if (!params.strict) {
    sources.emplace_back("pivot_neighbourhood", b_prime);
    std::vector<Vertex> all_b(g.b_count());
    for (Vertex b = 0; b < g.b_count(); ++b) all_b[b] = b;
    sources.emplace_back("host", std::move(all_b));
  }

  const std::size_t hb = split.branch.size();
  const std::size_t cap = params.strict ? threshold : std::max(threshold, split.subdividers.size());
  Assigner assigner(g, h, split, cap);
  bool clique_seen = false;
  std::size_t assignments = 0;
  std::optional<std::vector<Vertex>> result;
  std::string used_source;
  std::vector<Vertex> used_clique;

  for (const auto& [name, cand] : sources) {
    std::size_t cliques = 0;
    for_each_nonbad_clique(g, cand, hb, threshold, [&](std::span<const Vertex> clique) {
      clique_seen = true;
      ++cliques;
      std::vector<Vertex> images(clique.begin(), clique.end());
      do {
        ++assignments;
        result = assigner.run(split.branch, images);
        if (result) {
          used_source = name;
          used_clique.assign(clique.begin(), clique.end());
          return false;
        }
      } while (!params.strict && assignments < kAssignmentBudget &&
               std::next_permutation(images.begin(), images.end()));
      return !params.strict && cliques < kCliquesPerSource && assignments < kAssignmentBudget;
    });
    if (result || params.strict || assignments >= kAssignmentBudget) break;
  }

  if (!result) {
    if (!clique_seen)
      return fail("clique", "no " + std::to_string(hb) + " B-vertices with pairwise codegree >= " +
                                std::to_string(threshold));
    return fail("assignment", "no degeneracy-free placement of the subdividing vertices (" +
                                  std::to_string(assignments) + " attempts)");
  }
  log.push_back({"clique", {{"source", used_source}, {"members", join(used_clique)}}});
  log.push_back({"assignment", {{"attempts", std::to_string(assignments)}}});
  if (!is_bipartite_embedding(g, h.graph, *result)) throw std::logic_error("embed_h produced an invalid map");
  return EmbedOutcome{Embedding{std::move(*result), true, std::move(log)}, std::nullopt};
}

bool is_bipartite_embedding(const BipartiteGraph& g, const Graph& pattern, std::span<const Vertex> map) {
  const std::size_t na = g.a_count(), total = na + g.b_count();
  if (map.size() != pattern.vertex_count()) return false;
  std::vector<Vertex> sorted(map.begin(), map.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (!sorted.empty() && sorted.back() >= total) return false;
  for (const auto& [p, q] : pattern.edges()) {
    Vertex x = map[p], y = map[q];
    if (x > y) std::swap(x, y);
    if (x >= na || y < na) return false;
    if (!g.adjacent(x, static_cast<Vertex>(y - na))) return false;
  }
  return true;
}

ThresholdCheck drc_threshold_check(const BipartiteGraph& g, double c, double eps) {
  ThresholdCheck out;
  out.lhs = hom_c4_oriented(g);
  const double n = static_cast<double>(g.a_count() + g.b_count());
  out.rhs = std::pow(n, 2.0 - 2.0 * c + eps);
  if (out.lhs > 0) {
    const double log_lhs = log_count(out.lhs);
    out.exceeds = log_lhs >= std::log(out.rhs) - 1e-12;
  }
  out.balanced = g.a_count() <= 2 * g.b_count() && g.b_count() <= 2 * g.a_count();
  const BigCount stars = hom_star_oriented(g, Side::B, 2) + hom_star_oriented(g, Side::A, 2);
  if (stars > 0) out.auto_M = out.lhs / stars;
  return out;
}

std::uint64_t auto_multiplier(const BipartiteGraph& g) {
  if (g.edge_count() == 0) return 1;
  const BigCount stars = hom_star_oriented(g, Side::B, 2) + hom_star_oriented(g, Side::A, 2);
  const BigCount m = hom_c4_oriented(g) / stars;
  if (m < 1) return 1;
  if (m > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(m);
}

}  // namespace subdiv
