#include "subdiv/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "subdiv/errors.hpp"
#include "subdiv/hom_count.hpp"

namespace subdiv {

namespace {

// Parses a non-negative integer token; rejects signs, junk and overflow.
std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("line " + std::to_string(line) + ": expected a non-negative integer, got '" + tok + "'");
  if (tok.size() > 9) throw InputError("line " + std::to_string(line) + ": number too large");
  return std::stoul(tok);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

AnyGraph read_graph(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  enum class Kind { kNone, kGeneral, kBipartite } kind = Kind::kNone;
  std::size_t n0 = 0, n1 = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') continue;
    const auto tok = tokens(raw);
    const std::string where = "line " + std::to_string(line) + ": ";
    if (kind == Kind::kNone) {
      if (tok[0] == "g" && tok.size() == 2) {
        kind = Kind::kGeneral;
        n0 = parse_index(tok[1], line);
      } else if (tok[0] == "bip" && tok.size() == 3) {
        kind = Kind::kBipartite;
        n0 = parse_index(tok[1], line);
        n1 = parse_index(tok[2], line);
      } else {
        throw InputError(where + "expected header 'g <n>' or 'bip <a> <b>'");
      }
      continue;
    }
    if (tok.size() != 2) throw InputError(where + "expected two vertex indices");
    const auto u = parse_index(tok[0], line), v = parse_index(tok[1], line);
    if (kind == Kind::kGeneral) {
      if (u >= n0 || v >= n0) throw InputError(where + "vertex out of range");
      if (u == v) throw InputError(where + "self-loop");
    } else if (u >= n0 || v >= n1) {
      throw InputError(where + "vertex out of range");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (kind == Kind::kNone) throw InputError("empty graph file: missing header");
  if (kind == Kind::kGeneral) return Graph(n0, edges);
  return BipartiteGraph(n0, n1, edges);
}

AnyGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "g " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "bip " << g.a_count() << ' ' << g.b_count() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

Graph as_graph(const AnyGraph& g) {
  if (const auto* b = std::get_if<BipartiteGraph>(&g)) return b->to_graph();
  return std::get<Graph>(g);
}

BipartiteGraph as_bipartite(const AnyGraph& g) {
  if (const auto* b = std::get_if<BipartiteGraph>(&g)) return *b;
  const Graph& h = std::get<Graph>(g);
  const auto colours = two_colouring(h);
  if (!colours) throw InputError("graph is not bipartite");
  std::vector<Vertex> index(h.vertex_count());
  std::size_t na = 0, nb = 0;
  for (Vertex v = 0; v < h.vertex_count(); ++v) index[v] = static_cast<Vertex>((*colours)[v] == 0 ? na++ : nb++);
  std::vector<Edge> e;
  for (auto [u, v] : h.edges()) {
    if ((*colours)[u] != 0) std::swap(u, v);
    e.emplace_back(index[u], index[v]);
  }
  return BipartiteGraph(na, nb, e);
}

}  // namespace subdiv
