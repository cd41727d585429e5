#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "subdiv/graph.hpp"

namespace subdiv {

/// Edge-list text format. Lines starting with '#' and blank lines are
/// ignored. The first remaining line is a header:
///   g <n>            general graph, then lines "u v" (0-based)
///   bip <|A|> <|B|>  bipartite graph, then lines "a b" (A-index, B-index)
/// Duplicate edges are merged. Malformed input raises InputError naming the
/// line.
using AnyGraph = std::variant<Graph, BipartiteGraph>;

AnyGraph read_graph(std::istream& in);
AnyGraph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);
void write_graph(std::ostream& out, const BipartiteGraph& g);

/// A bipartite graph as a general graph (A first), or the graph itself.
Graph as_graph(const AnyGraph& g);

/// The bipartite graph itself; a general graph must come with a proper
/// 2-colouring (colour 0 becomes A, in index order), else InputError.
BipartiteGraph as_bipartite(const AnyGraph& g);

}  // namespace subdiv
