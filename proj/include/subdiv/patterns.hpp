#pragma once

#include <string>
#include <variant>

#include "subdiv/graph.hpp"
#include "subdiv/hom_count.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

/// Pattern names understood by the command line:
///   Kt:<t>  Kst:<s>,<t>  Ht:<t> (subdivided K_t)  cycle:<n>  C<n>  path:<n>
///   star:<k>  cube  hypercube:<d>  heawood
///   KtUniform:<t>,<r>  CompleteRPartite:<t>,<r>  fano   (hypergraphs)
/// InputError for anything else or out-of-range parameters.
using NamedPattern = std::variant<Graph, Hypergraph>;

NamedPattern parse_pattern(const std::string& name);

/// Graph patterns are k-subdivided (k = 0 leaves them alone); hypergraphs
/// become their incidence graphs, which requires k = 1 or k = 0. The result
/// carries sides when the graph is bipartite: the incidence sides, or for
/// k >= 1 the 2-colouring that puts the original vertices on side 0.
Pattern realize_pattern(const NamedPattern& p, std::size_t k, const std::string& name);

}  // namespace subdiv
