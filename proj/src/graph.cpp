#include "subdiv/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "subdiv/errors.hpp"

namespace subdiv {

BitRows::BitRows(std::size_t rows, std::size_t cols)
    : words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

std::size_t BitRows::and_count(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += std::popcount(x[i] & y[i]);
  return total;
}

namespace {

std::size_t sorted_intersection_size(std::span<const Vertex> x, std::span<const Vertex> y) {
  std::size_t i = 0, j = 0, total = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++total;
      ++i;
      ++j;
    }
  }
  return total;
}

// CSR from per-vertex neighbour lists (sorted, deduplicated here).
void to_csr(std::vector<std::vector<Vertex>>& lists, std::vector<std::size_t>& offsets,
            std::vector<Vertex>& adj) {
  offsets.assign(lists.size() + 1, 0);
  for (std::size_t v = 0; v < lists.size(); ++v) {
    auto& l = lists[v];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    offsets[v + 1] = offsets[v] + l.size();
  }
  adj.clear();
  adj.reserve(offsets.back());
  for (auto& l : lists) adj.insert(adj.end(), l.begin(), l.end());
}

std::string describe_edge(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.first << ", " << e.second << ")";
  return os.str();
}

}  // namespace

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : n_(vertex_count) {
  std::vector<std::vector<Vertex>> lists(n_);
  for (const auto& e : edges) {
    if (e.first >= n_ || e.second >= n_)
      throw InputError("edge " + describe_edge(e) + " has an endpoint outside [0, " +
                       std::to_string(n_) + ")");
    if (e.first == e.second) throw InputError("edge " + describe_edge(e) + " is a self-loop");
    lists[e.first].push_back(e.second);
    lists[e.second].push_back(e.first);
  }
  to_csr(lists, offsets_, adj_);
  if (n_ <= kBitRowLimit) {
    rows_ = BitRows(n_, n_);
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex u : neighbours(v)) rows_.set(v, u);
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (has_bit_rows()) return rows_.test(u, v);
  auto nb = neighbours(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : degree(0);
  for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbours(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Subgraph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<std::int64_t> position(n_, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n_) throw InputError("induced: vertex " + std::to_string(keep[i]) + " out of range");
    if (position[keep[i]] >= 0) throw InputError("induced: vertex listed twice");
    position[keep[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Edge> sub;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Vertex u : neighbours(keep[i]))
      if (position[u] > static_cast<std::int64_t>(i))
        sub.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(position[u]));
  return {Graph(keep.size(), sub), std::vector<Vertex>(keep.begin(), keep.end())};
}

BipartiteGraph::BipartiteGraph(std::size_t a_count, std::size_t b_count, std::span<const Edge> edges)
    : count_{a_count, b_count} {
  std::vector<std::vector<Vertex>> lists_a(a_count), lists_b(b_count);
  for (const auto& e : edges) {
    if (e.first >= a_count || e.second >= b_count)
      throw InputError("bipartite edge " + describe_edge(e) + " out of range for sides " +
                       std::to_string(a_count) + "+" + std::to_string(b_count));
    lists_a[e.first].push_back(e.second);
    lists_b[e.second].push_back(e.first);
  }
  to_csr(lists_a, offsets_[0], adj_[0]);
  to_csr(lists_b, offsets_[1], adj_[1]);
  if (a_count <= kBitRowLimit && b_count <= kBitRowLimit) {
    rows_[0] = BitRows(a_count, b_count);
    rows_[1] = BitRows(b_count, a_count);
    for (Vertex a = 0; a < a_count; ++a)
      for (Vertex b : neighbours(Side::A, a)) {
        rows_[0].set(a, b);
        rows_[1].set(b, a);
      }
  }
}

bool BipartiteGraph::adjacent(Vertex a, Vertex b) const {
  if (has_bit_rows()) return (bit_row(Side::A, a)[b >> 6] >> (b & 63)) & 1U;
  auto nb = neighbours(Side::A, a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t BipartiteGraph::min_degree(Side s) const {
  const std::size_t n = side_count(s);
  std::size_t best = n == 0 ? 0 : degree(s, 0);
  for (Vertex v = 1; v < n; ++v) best = std::min(best, degree(s, v));
  return best;
}

std::size_t BipartiteGraph::max_degree(Side s) const {
  std::size_t best = 0;
  for (Vertex v = 0; v < side_count(s); ++v) best = std::max(best, degree(s, v));
  return best;
}

std::size_t BipartiteGraph::codegree(Side s, Vertex u, Vertex v) const {
  if (u == v)
    throw InputError("codegree is undefined for a vertex with itself (vertex " + std::to_string(u) +
                     "); ask for its degree instead");
  return codegree_or_degree(s, u, v);
}

std::size_t BipartiteGraph::codegree_or_degree(Side s, Vertex u, Vertex v) const {
  if (u >= side_count(s) || v >= side_count(s))
    throw InputError("codegree: vertex out of range on side " + std::string(side_name(s)));
  if (u == v) return degree(s, u);
  if (has_bit_rows()) return BitRows::and_count(bit_row(s, u), bit_row(s, v));
  return sorted_intersection_size(neighbours(s, u), neighbours(s, v));
}

std::vector<Vertex> BipartiteGraph::common_neighbours(Side s, Vertex u, Vertex v) const {
  auto x = neighbours(s, u);
  auto y = neighbours(s, v);
  std::vector<Vertex> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex a = 0; a < a_count(); ++a)
    for (Vertex b : neighbours(Side::A, a)) out.emplace_back(a, b);
  return out;
}

double BipartiteGraph::density() const {
  if (a_count() == 0 || b_count() == 0) return 0.0;
  return static_cast<double>(edge_count()) /
         (static_cast<double>(a_count()) * static_cast<double>(b_count()));
}

BipartiteGraph BipartiteGraph::swapped() const {
  std::vector<Edge> flipped;
  flipped.reserve(edge_count());
  for (const auto& [a, b] : edges()) flipped.emplace_back(b, a);
  return BipartiteGraph(b_count(), a_count(), flipped);
}

Graph BipartiteGraph::to_graph() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (const auto& [a, b] : edges()) out.emplace_back(a, global_index(Side::B, b));
  return Graph(a_count() + b_count(), out);
}

BipartiteSubgraph BipartiteGraph::induced(std::span<const Vertex> a_keep,
                                          std::span<const Vertex> b_keep) const {
  std::vector<std::int64_t> b_pos(b_count(), -1);
  for (std::size_t i = 0; i < b_keep.size(); ++i) {
    if (b_keep[i] >= b_count()) throw InputError("induced: B-vertex out of range");
    if (b_pos[b_keep[i]] >= 0) throw InputError("induced: B-vertex listed twice");
    b_pos[b_keep[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<char> a_seen(a_count(), 0);
  std::vector<Edge> sub;
  for (std::size_t i = 0; i < a_keep.size(); ++i) {
    if (a_keep[i] >= a_count()) throw InputError("induced: A-vertex out of range");
    if (a_seen[a_keep[i]]) throw InputError("induced: A-vertex listed twice");
    a_seen[a_keep[i]] = 1;
    for (Vertex b : neighbours(Side::A, a_keep[i]))
      if (b_pos[b] >= 0) sub.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(b_pos[b]));
  }
  return {BipartiteGraph(a_keep.size(), b_keep.size(), sub),
          std::vector<Vertex>(a_keep.begin(), a_keep.end()),
          std::vector<Vertex>(b_keep.begin(), b_keep.end())};
}

BipartiteSubgraph BipartiteGraph::restrict_a(std::span<const Vertex> a_keep) const {
  std::vector<Vertex> all_b(b_count());
  for (Vertex b = 0; b < b_count(); ++b) all_b[b] = b;
  return induced(a_keep, all_b);
}

BipartiteGraph build_bipartite(std::size_t a_count, std::size_t b_count, std::span<const Edge> edges) {
  return BipartiteGraph(a_count, b_count, edges);
}

std::size_t codegree(const BipartiteGraph& g, Side side, Vertex u, Vertex v) {
  return g.codegree(side, u, v);
}

WeightedGraph::WeightedGraph(std::size_t n) : n_(n) {
  if (n > kMaxVertices)
    throw ResourceError("weighted graph on " + std::to_string(n) + " vertices exceeds the dense limit " +
                        std::to_string(kMaxVertices));
  w_.assign(n * (n == 0 ? 0 : n - 1) / 2, 0);
}

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::span<const WeightedPair> pairs)
    : WeightedGraph(vertex_count) {
  std::vector<char> seen(w_.size(), 0);
  for (const auto& p : pairs) {
    if (p.u >= n_ || p.v >= n_) throw InputError("weighted pair out of range");
    if (p.u == p.v) throw InputError("weighted pair on the diagonal (" + std::to_string(p.u) + ")");
    const auto s = slot(std::min(p.u, p.v), std::max(p.u, p.v));
    if (seen[s]) throw InputError("weighted pair listed twice");
    seen[s] = 1;
    w_[s] = p.w;
  }
}

std::uint64_t WeightedGraph::total_weight() const {
  std::uint64_t total = 0;
  for (auto w : w_) total += w;
  return total;
}

unsigned __int128 WeightedGraph::sum_of_squares() const {
  unsigned __int128 total = 0;
  for (auto w : w_) total += static_cast<unsigned __int128>(static_cast<std::uint64_t>(w) * w);
  return total;
}

std::vector<Edge> WeightedGraph::support() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (w_[slot(u, v)] > 0) out.emplace_back(u, v);
  return out;
}

WeightedGraph WeightedGraph::restrict(std::span<const Vertex> keep) const {
  WeightedGraph out(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      out.w_[out.slot(static_cast<Vertex>(i), static_cast<Vertex>(j))] = weight(keep[i], keep[j]);
  return out;
}

WeightedGraph neighbourhood_graph(const BipartiteGraph& g, Side side) {
  const std::size_t n = g.side_count(side);
  WeightedGraph w(n);
  // Accumulate through the other side: each vertex there contributes 1 to
  // every pair of its neighbours. Cost Σ_b deg(b)^2.
  for (Vertex b = 0; b < g.side_count(other(side)); ++b) {
    auto nb = g.neighbours(other(side), b);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) ++w.w_[w.slot(nb[i], nb[j])];
  }
  return w;
}

}  // namespace subdiv
