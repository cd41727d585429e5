#include "subdiv/iso.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "subdiv/errors.hpp"
#include "subdiv/hom_count.hpp"

namespace subdiv {

namespace {

using Cells = std::vector<std::vector<Vertex>>;
using Perm = std::vector<Vertex>;

// Splits cells by neighbour counts into each splitter until stable. Sub-cells
// are ordered by count, so the result depends only on the graph and the
// incoming ordered partition.
void refine(const Graph& g, Cells& cells) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> cnt(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
      std::fill(cnt.begin(), cnt.end(), 0);
      for (Vertex u : cells[s])
        for (Vertex v : g.neighbours(u)) ++cnt[v];
      Cells next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        std::sort(cell.begin(), cell.end(), [&](Vertex a, Vertex b) {
          return cnt[a] != cnt[b] ? cnt[a] < cnt[b] : a < b;
        });
        std::size_t begin = 0;
        for (std::size_t i = 1; i <= cell.size(); ++i) {
          if (i < cell.size() && cnt[cell[i]] == cnt[cell[begin]]) continue;
          if (begin > 0 || i < cell.size()) changed = true;
          next.emplace_back(cell.begin() + begin, cell.begin() + i);
          begin = i;
        }
      }
      cells = std::move(next);
    }
  }
}

std::vector<std::uint64_t> certificate(const Graph& g, const std::vector<Vertex>& lab) {
  const std::size_t n = lab.size();
  std::vector<std::uint64_t> bits((n * (n - (n ? 1 : 0)) / 2 + 63) / 64, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k)
      if (g.adjacent(lab[i], lab[j])) bits[k >> 6] |= std::uint64_t{1} << (63 - (k & 63));
  return bits;
}

class CanonSearch {
 public:
  explicit CanonSearch(const Graph& g) : g_(g), n_(g.vertex_count()) {}

  CanonicalForm run() {
    Cells cells;
    if (n_) {
      cells.emplace_back(n_);
      std::iota(cells[0].begin(), cells[0].end(), 0);
    }
    refine(g_, cells);
    (void)descend(cells);
    return {n_, best_bits_, best_lab_};
  }

 private:
  static constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);
  static constexpr std::size_t kMaxStoredAutomorphisms = 512;

  // Returns the depth to resume at: when a leaf turns out equivalent to an
  // earlier one, the whole subtree below their common ancestor is a copy of
  // one already searched.
  std::size_t descend(const Cells& cells) {
    auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) return leaf(cells);
    const std::size_t depth = prefix_.size();
    const std::size_t ti = static_cast<std::size_t>(target - cells.begin());
    const std::vector<Vertex> choices = *target;
    std::vector<Vertex> explored;
    for (Vertex w : choices) {
      if (!explored.empty() && same_orbit_as_explored(w, explored)) continue;
      explored.push_back(w);
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != ti) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({w});
        std::vector<Vertex> rest;
        for (Vertex v : cells[i])
          if (v != w) rest.push_back(v);
        child.push_back(std::move(rest));
      }
      refine(g_, child);
      prefix_.push_back(w);
      const std::size_t resume = descend(child);
      prefix_.pop_back();
      if (resume != kNoJump && resume < depth) return resume;
    }
    return kNoJump;
  }

  // Orbits of the group generated by the known automorphisms that fix the
  // current prefix pointwise.
  bool same_orbit_as_explored(Vertex w, const std::vector<Vertex>& explored) {
    std::vector<Vertex> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Perm& p : automorphisms_) {
      if (!std::all_of(prefix_.begin(), prefix_.end(), [&](Vertex v) { return p[v] == v; })) continue;
      for (Vertex v = 0; v < n_; ++v) parent[find(v)] = find(p[v]);
    }
    const Vertex root = find(w);
    return std::any_of(explored.begin(), explored.end(), [&](Vertex e) { return find(e) == root; });
  }

  std::size_t leaf(const Cells& cells) {
    std::vector<Vertex> lab;
    lab.reserve(n_);
    for (const auto& c : cells) lab.push_back(c[0]);
    auto bits = certificate(g_, lab);
    if (first_lab_.empty()) {
      first_bits_ = bits;
      first_lab_ = lab;
      first_path_ = prefix_;
      best_bits_ = std::move(bits);
      best_lab_ = std::move(lab);
      best_path_ = prefix_;
      return kNoJump;
    }
    if (bits == first_bits_) return record(first_lab_, lab, first_path_);
    if (bits == best_bits_) return record(best_lab_, lab, best_path_);
    if (bits > best_bits_) {
      best_bits_ = std::move(bits);
      best_lab_ = std::move(lab);
      best_path_ = prefix_;
    }
    return kNoJump;
  }

  // Equal certificates: position i of `earlier` -> position i of `lab` is an
  // automorphism mapping the earlier leaf's branch onto the current one.
  std::size_t record(const std::vector<Vertex>& earlier, const std::vector<Vertex>& lab,
                     const std::vector<Vertex>& earlier_path) {
    if (automorphisms_.size() < kMaxStoredAutomorphisms) {
      Perm p(n_);
      for (std::size_t i = 0; i < n_; ++i) p[earlier[i]] = lab[i];
      automorphisms_.push_back(std::move(p));
    }
    std::size_t common = 0;
    while (common < prefix_.size() && common < earlier_path.size() && prefix_[common] == earlier_path[common])
      ++common;
    return common;
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Vertex> prefix_;
  std::vector<Perm> automorphisms_;
  std::vector<std::uint64_t> first_bits_, best_bits_;
  std::vector<Vertex> first_lab_, best_lab_;
  std::vector<Vertex> first_path_, best_path_;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
  if (g.vertex_count() > kIsoVertexLimit)
    throw ResourceError("canonical form is limited to " + std::to_string(kIsoVertexLimit) + " vertices");
  return CanonSearch(g).run();
}

bool iso_check(const Graph& g1, const Graph& g2) {
  if (g1.vertex_count() > kIsoVertexLimit || g2.vertex_count() > kIsoVertexLimit)
    throw ResourceError("iso_check is limited to " + std::to_string(kIsoVertexLimit) + " vertices");
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
  auto degrees = [](const Graph& g) {
    std::vector<std::size_t> d(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) d[v] = g.degree(v);
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(g1) != degrees(g2)) return false;
  return canonical_form(g1) == canonical_form(g2);
}

BigCount automorphism_count(const Graph& g) {
  if (g.vertex_count() > Pattern::kMaxVertices)
    throw ResourceError("automorphism_count is limited to pattern-sized graphs");
  BigCount count = 0;
  for_each_injective_hom(g, g, [&](std::span<const Vertex>) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace subdiv
