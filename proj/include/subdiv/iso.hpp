#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subdiv/count.hpp"
#include "subdiv/graph.hpp"

namespace subdiv {

inline constexpr std::size_t kIsoVertexLimit = 64;

/// Canonical relabelling: two graphs are isomorphic iff their forms compare
/// equal. `labelling[i]` is the vertex placed at canonical position i.
struct CanonicalForm {
  std::size_t vertex_count = 0;
  /// Upper triangle of the relabelled adjacency matrix, row-major, packed.
  std::vector<std::uint64_t> bits;
  std::vector<Vertex> labelling;

  bool operator==(const CanonicalForm& o) const { return vertex_count == o.vertex_count && bits == o.bits; }
};

/// Individualization-refinement search (equitable colour refinement, then
/// branching on the first non-singleton cell) keeping the largest leaf
/// certificate, with orbit pruning from automorphisms found along the way.
/// ResourceError above kIsoVertexLimit vertices.
CanonicalForm canonical_form(const Graph& g);

bool iso_check(const Graph& g1, const Graph& g2);

/// |Aut(g)| by enumerating edge-preserving bijections. Intended for pattern
/// graphs (at most 16 vertices; ResourceError otherwise).
BigCount automorphism_count(const Graph& g);

}  // namespace subdiv
