#include "subdiv/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "subdiv/density.hpp"
#include "subdiv/errors.hpp"
#include "subdiv/hom_count.hpp"
#include "subdiv/parallel.hpp"

namespace subdiv {

namespace {

void check_subset_of_a(const BipartiteGraph& g, std::span<const Vertex> vs) {
  std::vector<char> seen(g.a_count(), 0);
  for (Vertex v : vs) {
    if (v >= g.a_count()) throw InputError("vertex set must lie in A");
    if (seen[v]) throw InputError("vertex set lists a vertex twice");
    seen[v] = 1;
  }
}

void check_thresholds(std::span<const std::size_t> thresholds) {
  if (thresholds.empty()) throw InputError("at least one threshold is required");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 1) throw InputError("thresholds must be positive");
    if (i > 0 && thresholds[i] < thresholds[i - 1]) throw InputError("thresholds must be non-decreasing");
  }
}

double to_double(const BigCount& x) { return x.convert_to<double>(); }

// a <= L b with a relative slack for rounding in L.
bool at_most(const BigCount& a, double L, const BigCount& b) {
  if (std::isinf(L)) return true;
  const double rhs = L * to_double(b);
  return to_double(a) <= rhs * (1 + 1e-12);
}

std::vector<Vertex> intersect(const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  std::vector<Vertex> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

// Memoized eta sets, one table per distinct threshold.
class EtaCache {
 public:
  explicit EtaCache(const BipartiteGraph& g) : g_(g) {}
  const std::vector<Vertex>& get(Vertex u, std::size_t T) {
    auto& table = tables_[T];
    if (table.empty()) table.resize(g_.a_count());
    auto& slot = table[u];
    if (!slot) slot = eta_set(g_, u, T);
    return *slot;
  }

 private:
  const BipartiteGraph& g_;
  std::map<std::size_t, std::vector<std::optional<std::vector<Vertex>>>> tables_;
};

// Depth-first good-tuple search over first coordinates [first_begin, first_end).
class TupleSearch {
 public:
  TupleSearch(const BipartiteGraph& g, std::span<const std::size_t> thresholds, std::size_t min_extension,
              const std::function<bool(const GoodTupleCertificate&)>& visit)
      : g_(g), thresholds_(thresholds.begin(), thresholds.end()), min_extension_(min_extension), visit_(visit), eta_(g) {}

  void run(Vertex first_begin, Vertex first_end) {
    for (Vertex a = first_begin; a < first_end && !stop_; ++a) {
      const auto& eta = eta_.get(a, thresholds_[0]);
      if (eta.size() < min_extension_) continue;
      tuple_.push_back(a);
      descend(eta);
      tuple_.pop_back();
    }
  }

 private:
  void descend(const std::vector<Vertex>& extension) {
    if (tuple_.size() == thresholds_.size()) {
      GoodTupleCertificate cert{tuple_, thresholds_, min_extension_, extension};
      stop_ = !visit_(cert);
      return;
    }
    const std::size_t T = thresholds_[tuple_.size()];
    for (Vertex a : extension) {
      if (stop_) return;
      auto next = intersect(extension, eta_.get(a, T));
      if (next.size() < min_extension_) continue;
      tuple_.push_back(a);
      descend(next);
      tuple_.pop_back();
    }
  }

  const BipartiteGraph& g_;
  std::vector<std::size_t> thresholds_;
  std::size_t min_extension_;
  const std::function<bool(const GoodTupleCertificate&)>& visit_;
  EtaCache eta_;
  std::vector<Vertex> tuple_;
  bool stop_ = false;
};

// Kuhn's augmenting paths: pair p -> distinct B-vertex among candidates[p].
class PairMatcher {
 public:
  PairMatcher(std::size_t b_count, const std::vector<std::vector<Vertex>>& candidates)
      : candidates_(candidates), owner_(b_count, kFree), match_(candidates.size(), 0) {}

  bool run() {
    for (std::size_t p = 0; p < candidates_.size(); ++p) {
      seen_.assign(owner_.size(), 0);
      if (!augment(p)) return false;
    }
    return true;
  }
  Vertex image(std::size_t p) const { return match_[p]; }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  bool augment(std::size_t p) {
    for (Vertex b : candidates_[p]) {
      if (seen_[b]) continue;
      seen_[b] = 1;
      if (owner_[b] == kFree || augment(owner_[b])) {
        owner_[b] = p;
        match_[p] = b;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<Vertex>>& candidates_;
  std::vector<std::size_t> owner_;
  std::vector<Vertex> match_;
  std::vector<char> seen_;
};

constexpr std::size_t kExtensionBudget = 100000;

}  // namespace

LBoundedness check_l_bounded(const BipartiteGraph& g, std::span<const Vertex> a_prime, double L) {
  check_subset_of_a(g, a_prime);
  const auto sub = g.restrict_a(a_prime).graph;
  LBoundedness out;
  out.c4_count = hom_c4_oriented(sub);
  out.k21_count = hom_star_oriented(sub, Side::B, 2);
  out.bounded = out.c4_count == 0 || at_most(out.c4_count, L, out.k21_count);
  return out;
}

std::vector<Vertex> eta_set(const BipartiteGraph& g, Vertex u, std::size_t T) {
  if (u >= g.a_count()) throw InputError("eta_set: vertex outside A");
  std::vector<std::uint32_t> count(g.a_count(), 0);
  for (Vertex b : g.neighbours(Side::A, u))
    for (Vertex a : g.neighbours(Side::B, b)) ++count[a];
  std::vector<Vertex> out;
  for (Vertex a = 0; a < g.a_count(); ++a)
    if (a != u && count[a] >= 1 && count[a] < T) out.push_back(a);
  return out;
}

bool verify_certificate(const BipartiteGraph& g, const GoodTupleCertificate& cert) {
  const auto& t = cert.tuple;
  if (t.empty() || t.size() != cert.thresholds.size()) return false;
  for (Vertex a : t)
    if (a >= g.a_count()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t k = i + 1; k < t.size(); ++k) {
      if (t[i] == t[k]) return false;
      const std::size_t d = g.codegree(Side::A, t[i], t[k]);
      if (d < 1 || d >= cert.thresholds[i]) return false;
    }
  std::vector<Vertex> ext;
  for (Vertex a = 0; a < g.a_count(); ++a) {
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i) {
      if (a == t[i]) {
        ok = false;
        break;
      }
      const std::size_t d = g.codegree(Side::A, t[i], a);
      ok = d >= 1 && d < cert.thresholds[i];
    }
    if (ok) ext.push_back(a);
  }
  return ext == cert.extension_set && ext.size() >= cert.min_extension;
}

void for_each_good_tuple(const BipartiteGraph& g, std::span<const std::size_t> thresholds,
                         std::size_t min_extension,
                         const std::function<bool(const GoodTupleCertificate&)>& visit) {
  check_thresholds(thresholds);
  TupleSearch search(g, thresholds, min_extension, visit);
  search.run(0, static_cast<Vertex>(g.a_count()));
}

GoodTupleList enumerate_good_tuples(const BipartiteGraph& g, std::span<const std::size_t> thresholds,
                                    std::size_t min_extension, std::size_t cap, unsigned threads) {
  check_thresholds(thresholds);
  const auto parts = parallel_chunks<GoodTupleList>(
      g.a_count(), threads == 0 ? default_thread_count() : threads,
      [&](std::size_t begin, std::size_t end, std::size_t) {
        GoodTupleList part;
        const std::function<bool(const GoodTupleCertificate&)> visit = [&](const GoodTupleCertificate& c) {
          if (part.certificates.size() == cap) {
            part.truncated = true;
            return false;
          }
          part.certificates.push_back(c);
          return true;
        };
        TupleSearch search(g, thresholds, min_extension, visit);
        search.run(static_cast<Vertex>(begin), static_cast<Vertex>(end));
        return part;
      });
  GoodTupleList out;
  for (const auto& part : parts) {
    for (const auto& c : part.certificates) {
      if (out.certificates.size() == cap) {
        out.truncated = true;
        break;
      }
      out.certificates.push_back(c);
    }
    if (part.truncated) out.truncated = true;
    if (out.truncated) break;
  }
  for (const auto& c : out.certificates)
    if (!verify_certificate(g, c)) throw std::logic_error("enumerate_good_tuples: certificate fails verification");
  return out;
}

ExtensionStep extend_step(const BipartiteGraph& g, const GoodTupleCertificate& cert, std::size_t next_threshold) {
  if (cert.thresholds.empty() || next_threshold < cert.thresholds.back())
    throw InputError("next_threshold must be at least the certificate's last threshold");
  const auto& ext = cert.extension_set;
  std::vector<std::int64_t> local(g.a_count(), -1);
  for (std::size_t i = 0; i < ext.size(); ++i) local[ext[i]] = static_cast<std::int64_t>(i);

  std::vector<WeightedGraph::WeightedPair> pairs;
  std::vector<std::uint32_t> count(g.a_count(), 0);
  std::vector<Vertex> touched;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    for (Vertex b : g.neighbours(Side::A, ext[i]))
      for (Vertex a : g.neighbours(Side::B, b))
        if (local[a] > static_cast<std::int64_t>(i) && count[a]++ == 0) touched.push_back(a);
    for (Vertex a : touched) {
      pairs.push_back({static_cast<Vertex>(i), static_cast<Vertex>(local[a]), count[a]});
      count[a] = 0;
    }
    touched.clear();
  }
  const WeightedGraph w(ext.size(), pairs);
  const auto filtered = heavy_edge_filter(w, next_threshold);
  const auto support = large_support_set(w, next_threshold);

  ExtensionStep out;
  out.d = support.d;
  out.guarantee = support.guarantee;
  out.removed_weight = filtered.removed_weight;
  out.removed_pairs = filtered.removed_pairs.size();
  for (Vertex u : support.U) {
    ExtensionCandidate c;
    c.u = ext[u];
    for (Vertex v = 0; v < ext.size(); ++v) {
      const auto x = w.weight(u, v);
      if (x > 0 && x < next_threshold) c.light_neighbours.push_back(ext[v]);
    }
    c.extends = c.light_neighbours.size() >= cert.min_extension;
    out.U.push_back(std::move(c));
  }
  return out;
}

Graph subdivided_clique(std::size_t t) {
  std::vector<Edge> e;
  Vertex s = static_cast<Vertex>(t);
  for (Vertex i = 0; i < t; ++i)
    for (Vertex j = i + 1; j < t; ++j) {
      e.emplace_back(i, s);
      e.emplace_back(j, s);
      ++s;
    }
  return Graph(s, e);
}

GoodTupleOutcome embed_via_good_tuples(const BipartiteGraph& g, std::size_t t, std::span<const std::size_t> thresholds,
                                       std::size_t min_extension) {
  if (t < 3) throw InputError("t must be at least 3");
  if (thresholds.size() != t - 1) throw InputError("expected t - 1 thresholds");
  check_thresholds(thresholds);

  std::vector<StageEntry> log;
  log.push_back({"setup", {{"t", std::to_string(t)}, {"min_extension", std::to_string(min_extension)}}});
  std::size_t tuples = 0, attempts = 0;
  std::optional<GoodTupleEmbedding> found;
  for_each_good_tuple(g, thresholds, min_extension, [&](const GoodTupleCertificate& cert) {
    ++tuples;
    for (Vertex u : cert.extension_set) {
      ++attempts;
      std::vector<Vertex> branch = cert.tuple;
      branch.push_back(u);
      std::vector<std::vector<Vertex>> candidates;
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) candidates.push_back(g.common_neighbours(Side::A, branch[i], branch[j]));
      PairMatcher matcher(g.b_count(), candidates);
      if (matcher.run()) {
        std::vector<Vertex> map(branch.begin(), branch.end());
        for (std::size_t p = 0; p < candidates.size(); ++p)
          map.push_back(g.global_index(Side::B, matcher.image(p)));
        found = GoodTupleEmbedding{Embedding{std::move(map), true, {}}, cert, u};
        return false;
      }
      if (attempts >= kExtensionBudget) return false;
    }
    return attempts < kExtensionBudget;
  });

  log.push_back({"search", {{"good_tuples", std::to_string(tuples)}, {"extensions_tried", std::to_string(attempts)}}});
  if (!found) {
    if (tuples == 0) return {std::nullopt, FailureReport{"good_tuple", "no good (t-1)-tuple", log}};
    if (attempts == 0) return {std::nullopt, FailureReport{"extension", "no good tuple has an extending vertex", log}};
    return {std::nullopt,
            FailureReport{"subdivider_assignment", "no distinct common neighbours for all pairs", log}};
  }
  std::string tuple;
  for (Vertex a : found->certificate.tuple) tuple += std::to_string(a) + ",";
  log.push_back({"branch", {{"tuple", tuple.substr(0, tuple.size() - 1)},
                            {"extension_vertex", std::to_string(found->extension_vertex)}}});
  if (!is_bipartite_embedding(g, subdivided_clique(t), found->embedding.map))
    throw std::logic_error("embed_via_good_tuples produced an invalid map");
  found->embedding.stage_log = std::move(log);
  return {std::move(found), std::nullopt};
}

DichotomyReport dichotomy_check(const BipartiteGraph& g, std::span<const Vertex> a_prime, double boost) {
  check_subset_of_a(g, a_prime);
  if (!(boost > 0)) throw InputError("boost must be positive");
  const auto sub = g.restrict_a(a_prime).graph;
  DichotomyReport out;
  out.c4 = hom_c4_oriented(sub);
  out.k12 = sub.edge_count() ? hom_star_oriented(sub, Side::A, 2) : BigCount(0);
  out.k21 = sub.edge_count() ? hom_star_oriented(sub, Side::B, 2) : BigCount(0);
  out.density = g.a_count() ? static_cast<double>(a_prime.size()) / static_cast<double>(g.a_count()) : 0.0;
  out.drc_branch = to_double(out.c4) >= boost * to_double(out.k12 + out.k21) && out.c4 > 0;
  out.branch_case = out.k12 <= out.k21 ? 1 : 2;
  if (out.branch_case == 1) {
    out.implied_L = 2 * boost;
  } else {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (Vertex a : a_prime) {
      lo = std::min(lo, g.degree(Side::A, a));
      hi = std::max(hi, g.degree(Side::A, a));
    }
    out.implied_L = lo == 0 ? std::numeric_limits<double>::infinity()
                            : 2 * boost * double(hi) * double(hi) * double(g.b_count()) /
                                  (double(lo) * double(lo) * double(a_prime.size()));
  }
  out.bounded_at_implied_L = check_l_bounded(g, a_prime, out.implied_L).bounded;
  return out;
}

ProofSchedule proof_schedule(double n, std::size_t t, double delta) {
  if (t < 1) throw InputError("t must be at least 1");
  if (!(delta > 0)) throw InputError("delta must be positive");
  if (!(n >= 1)) throw InputError("n must be at least 1");
  ProofSchedule out;
  out.delta.assign(t + 1, 0.0);
  out.xi.assign(t + 1, 0.0);
  out.thresholds.assign(t + 1, 0);
  for (std::size_t j = 1; j <= t; ++j) out.delta[j] = delta / std::pow(6.0, double(t - j));
  out.c = delta / std::pow(6.0, double(t));
  out.xi[1] = out.c;
  for (std::size_t j = 2; j <= t; ++j) out.xi[j] = 2 * out.delta[j - 1];
  for (std::size_t j = 1; j <= t; ++j)
    out.thresholds[j] = static_cast<std::size_t>(std::ceil(std::pow(n, out.xi[j]) - 1e-12));
  return out;
}

}  // namespace subdiv
