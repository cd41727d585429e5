#include "subdiv/hom_count.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "subdiv/errors.hpp"
#include "subdiv/named.hpp"
#include "subdiv/parallel.hpp"

namespace subdiv {

Pattern::Pattern(Graph g, std::string name_, std::optional<std::vector<std::uint8_t>> sides_)
    : graph(std::move(g)), name(std::move(name_)), sides(std::move(sides_)) {
  if (!sides) return;
  if (sides->size() != graph.vertex_count())
    throw InputError("pattern bipartition has the wrong length");
  for (const auto& [u, v] : graph.edges())
    if ((*sides)[u] == (*sides)[v]) throw InputError("pattern bipartition is not proper");
}

std::optional<std::vector<std::uint8_t>> two_colouring(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> colour(n, 2);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] != 2) continue;
    colour[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex u : g.neighbours(v)) {
        if (colour[u] == 2) {
          colour[u] = static_cast<std::uint8_t>(1 - colour[v]);
          queue.push_back(u);
        } else if (colour[u] == colour[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return colour;
}

namespace {

// Search order: most-constrained-first. back[i] lists earlier positions that
// are pattern-adjacent to position i.
struct SearchPlan {
  std::vector<Vertex> order;
  std::vector<std::vector<std::size_t>> back;
};

SearchPlan make_plan(const Graph& h, std::optional<Vertex> first) {
  const std::size_t k = h.vertex_count();
  SearchPlan plan;
  std::vector<int> placed_neighbours(k, 0);
  std::vector<char> placed(k, 0);
  std::vector<std::size_t> position(k, 0);
  for (std::size_t step = 0; step < k; ++step) {
    Vertex pick = 0;
    bool found = false;
    if (step == 0 && first) {
      pick = *first;
      found = true;
    } else {
      for (Vertex v = 0; v < k; ++v) {
        if (placed[v]) continue;
        if (!found || placed_neighbours[v] > placed_neighbours[pick] ||
            (placed_neighbours[v] == placed_neighbours[pick] && h.degree(v) > h.degree(pick))) {
          pick = v;
          found = true;
        }
      }
    }
    placed[pick] = 1;
    position[pick] = step;
    std::vector<std::size_t> back;
    for (Vertex u : h.neighbours(pick))
      if (placed[u] && u != pick) back.push_back(position[u]);
    std::sort(back.begin(), back.end());
    plan.order.push_back(pick);
    plan.back.push_back(std::move(back));
    for (Vertex u : h.neighbours(pick)) ++placed_neighbours[u];
  }
  return plan;
}

class Searcher {
 public:
  Searcher(const Graph& g, const SearchPlan& plan, bool injective)
      : g_(g), plan_(plan), injective_(injective), image_(plan.order.size(), 0),
        used_(g.vertex_count(), 0) {}

  template <typename F>
  void for_candidates(std::size_t pos, F&& f) const {
    const auto& back = plan_.back[pos];
    if (back.empty()) {
      for (Vertex v = 0; v < g_.vertex_count(); ++v)
        if (!injective_ || !used_[v]) f(v);
      return;
    }
    std::size_t anchor = back[0];
    for (std::size_t b : back)
      if (g_.degree(image_[b]) < g_.degree(image_[anchor])) anchor = b;
    for (Vertex v : g_.neighbours(image_[anchor])) {
      if (injective_ && used_[v]) continue;
      bool ok = true;
      for (std::size_t b : back)
        if (b != anchor && !g_.adjacent(image_[b], v)) {
          ok = false;
          break;
        }
      if (ok) f(v);
    }
  }

  void count(std::size_t pos, CountAccumulator& acc) {
    if (pos + 1 == plan_.order.size()) {
      std::uint64_t c = 0;
      for_candidates(pos, [&](Vertex) { ++c; });
      acc.add(c);
      return;
    }
    for_candidates(pos, [&](Vertex v) {
      assign(pos, v);
      count(pos + 1, acc);
      unassign(v);
    });
  }

  // Returns false once the visitor asks to stop.
  bool enumerate(std::size_t pos, std::vector<Vertex>& map,
                 const std::function<bool(std::span<const Vertex>)>& visit) {
    if (pos == plan_.order.size()) {
      for (std::size_t i = 0; i < plan_.order.size(); ++i) map[plan_.order[i]] = image_[i];
      return visit(map);
    }
    bool keep_going = true;
    std::vector<Vertex> cands;
    for_candidates(pos, [&](Vertex v) { cands.push_back(v); });
    for (Vertex v : cands) {
      assign(pos, v);
      keep_going = enumerate(pos + 1, map, visit);
      unassign(v);
      if (!keep_going) break;
    }
    return keep_going;
  }

  void assign(std::size_t pos, Vertex v) {
    image_[pos] = v;
    if (injective_) used_[v] = 1;
  }
  void unassign(Vertex v) {
    if (injective_) used_[v] = 0;
  }

 private:
  const Graph& g_;
  const SearchPlan& plan_;
  bool injective_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
};

}  // namespace

BigCount hom_generic(const Pattern& h, const Graph& g, HomOptions options) {
  const std::size_t k = h.vertex_count();
  if (k > Pattern::kMaxVertices)
    throw ResourceError("pattern has " + std::to_string(k) + " vertices; the limit is " +
                        std::to_string(Pattern::kMaxVertices));
  if (k == 0) return 1;
  const std::size_t n = g.vertex_count();
  if (options.injective && k > n) return 0;
  const SearchPlan plan = make_plan(h.graph, std::nullopt);
  if (k == 1) return n;

  const unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
  auto partial = parallel_chunks<BigCount>(
      n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        Searcher s(g, plan, options.injective);
        CountAccumulator acc;
        for (std::size_t v = begin; v < end; ++v) {
          s.assign(0, static_cast<Vertex>(v));
          s.count(1, acc);
          s.unassign(static_cast<Vertex>(v));
        }
        return acc.value();
      });
  BigCount total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

void for_each_injective_hom(const Graph& h, const Graph& g,
                            const std::function<bool(std::span<const Vertex>)>& visit) {
  if (h.vertex_count() > g.vertex_count()) return;
  const SearchPlan plan = make_plan(h, std::nullopt);
  Searcher s(g, plan, true);
  std::vector<Vertex> map(h.vertex_count(), 0);
  s.enumerate(0, map, visit);
}

void for_each_injective_hom_through(const Graph& h, const Graph& g, Vertex pattern_vertex,
                                    Vertex host_vertex,
                                    const std::function<bool(std::span<const Vertex>)>& visit) {
  if (h.vertex_count() > g.vertex_count() || pattern_vertex >= h.vertex_count() ||
      host_vertex >= g.vertex_count())
    return;
  const SearchPlan plan = make_plan(h, pattern_vertex);
  Searcher s(g, plan, true);
  std::vector<Vertex> map(h.vertex_count(), 0);
  s.assign(0, host_vertex);
  s.enumerate(1, map, visit);
}

BigCount hom_c4_oriented(const BipartiteGraph& g) {
  // Σ_a Σ_{(u,v)∈N(a)^2} d*(u,v) = Σ_{(u,v)∈B^2} d*(u,v)^2 by exchanging the
  // order of summation: each a adjacent to both u and v contributes d*(u,v).
  CountAccumulator acc;
  const std::size_t nb = g.b_count();
  for (Vertex u = 0; u < nb; ++u) {
    const std::uint64_t du = g.degree(Side::B, u);
    acc.add_product(du, du);
  }
  if (g.has_bit_rows()) {
    for (Vertex u = 0; u < nb; ++u) {
      if (g.degree(Side::B, u) == 0) continue;
      for (Vertex v = u + 1; v < nb; ++v) {
        const std::uint64_t c = BitRows::and_count(g.bit_row(Side::B, u), g.bit_row(Side::B, v));
        acc.add_product(2 * c, c);
      }
    }
  } else {
    const WeightedGraph w = neighbourhood_graph(g, Side::B);
    const unsigned __int128 sq = w.sum_of_squares();
    BigCount off_diagonal = static_cast<std::uint64_t>(sq >> 64);
    off_diagonal <<= 64;
    off_diagonal += static_cast<std::uint64_t>(sq);
    acc.add(off_diagonal * 2);
  }
  return acc.value();
}

BigCount hom_star_oriented(const BipartiteGraph& g, Side centre_side, unsigned leaves) {
  if (leaves == 0) throw InputError("star patterns need at least one leaf");
  CountAccumulator acc;
  for (Vertex v = 0; v < g.side_count(centre_side); ++v) {
    const std::uint64_t d = g.degree(centre_side, v);
    if (d == 0) continue;
    BigCount p = 1;
    for (unsigned i = 0; i < leaves; ++i) p *= d;
    acc.add(p);
  }
  return acc.value();
}

namespace {

void kst_extend(const Graph& g, std::size_t s, std::size_t t, std::vector<Vertex>& chosen,
                const std::vector<Vertex>& common, CountAccumulator& acc) {
  if (common.size() < t) return;  // zero contribution here and below
  if (chosen.size() == s) {
    acc.add(falling_factorial(common.size(), t));
    return;
  }
  std::vector<Vertex> next;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
    next.clear();
    auto nb = g.neighbours(v);
    std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                          std::back_inserter(next));
    chosen.push_back(v);
    kst_extend(g, s, t, chosen, next, acc);
    chosen.pop_back();
  }
}

}  // namespace

BigCount count_kst_labelled(const Graph& g, std::size_t s, std::size_t t, unsigned threads) {
  if (s < 1 || s > t) throw InputError("count_kst_labelled needs 1 <= s <= t");
  if (s + t > g.vertex_count()) throw InputError("count_kst_labelled needs s + t <= |V(g)|");
  const std::size_t n = g.vertex_count();
  threads = threads == 0 ? default_thread_count() : threads;
  auto partial = parallel_chunks<BigCount>(n, threads, [&](std::size_t begin, std::size_t end,
                                                           std::size_t) {
    CountAccumulator acc;
    std::vector<Vertex> chosen;
    for (std::size_t v = begin; v < end; ++v) {
      if (g.degree(static_cast<Vertex>(v)) == 0) continue;
      auto nb = g.neighbours(static_cast<Vertex>(v));
      std::vector<Vertex> common(nb.begin(), nb.end());
      chosen.assign(1, static_cast<Vertex>(v));
      kst_extend(g, s, t, chosen, common, acc);
    }
    return acc.value();
  });
  BigCount total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

NormingResult norming_check(const Graph& g, std::size_t s, std::size_t t, const Pattern& l) {
  if (l.edge_count() == 0) throw InputError("norming_check: L must have at least one edge");
  const Pattern kst(named::complete_bipartite(s, t), "K_{s,t}");
  if (hom_generic(l, kst.graph, {.injective = true}) == 0)
    throw InputError("norming_check: L is not a subgraph of K_{s,t}");

  NormingResult r;
  r.hom_l = hom_generic(l, g);
  r.hom_kst = hom_generic(kst, g);
  const double log_n = std::log(static_cast<double>(std::max<std::size_t>(g.vertex_count(), 1)));
  const double el = static_cast<double>(l.edge_count());
  const double ek = static_cast<double>(s * t);
  r.log_lhs = (log_count(r.hom_l) - static_cast<double>(l.vertex_count()) * log_n) / el;
  r.log_rhs = (log_count(r.hom_kst) - static_cast<double>(s + t) * log_n) / ek;
  r.lhs = r.hom_l == 0 ? 0.0 : std::exp(r.log_lhs);
  r.rhs = r.hom_kst == 0 ? 0.0 : std::exp(r.log_rhs);
  if (r.hom_l == 0)
    r.holds = true;
  else if (r.hom_kst == 0)
    r.holds = false;
  else
    r.holds = r.log_lhs <= r.log_rhs + kNormingLogTolerance;
  return r;
}

}  // namespace subdiv
