#include "subdiv/patterns.hpp"

#include <vector>

#include "subdiv/errors.hpp"
#include "subdiv/named.hpp"
#include "subdiv/structure.hpp"

namespace subdiv {

namespace {

std::vector<std::size_t> parse_args(const std::string& name, const std::string& args, std::size_t expected) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= args.size()) {
    const auto comma = args.find(',', pos);
    const std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("pattern '" + name + "': bad parameter '" + tok + "'");
    out.push_back(std::stoul(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected)
    throw InputError("pattern '" + name + "' expects " + std::to_string(expected) + " parameter(s)");
  return out;
}

constexpr std::size_t kMaxPatternParameter = 4096;

}  // namespace

NamedPattern parse_pattern(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
  auto params = [&](std::size_t k) {
    if (colon == std::string::npos) throw InputError("pattern '" + name + "' needs parameters after ':'");
    auto p = parse_args(name, args, k);
    for (auto x : p)
      if (x > kMaxPatternParameter) throw ResourceError("pattern parameter too large in '" + name + "'");
    return p;
  };
  auto bare = [&] {
    if (colon != std::string::npos) throw InputError("pattern '" + head + "' takes no parameters");
  };

  if (head == "Kt") return family_kt(params(1)[0]);
  if (head == "Kst") {
    const auto p = params(2);
    return family_kst(p[0], p[1]);
  }
  if (head == "Ht") {
    const auto t = params(1)[0];
    if (t < 2) throw InputError("Ht needs t >= 2");
    return subdivided_clique(t);
  }
  if (head == "cycle") return named::cycle(params(1)[0]);
  if (head == "path") {
    const auto n = params(1)[0];
    if (n < 1) throw InputError("path needs at least one vertex");
    return named::path(n);
  }
  if (head == "star") {
    const auto k = params(1)[0];
    if (k < 1) throw InputError("star needs at least one leaf");
    return named::star(k);
  }
  if (head == "hypercube") return named::hypercube(params(1)[0]);
  if (head == "KtUniform") {
    const auto p = params(2);
    return family_kt_uniform(p[0], p[1]);
  }
  if (head == "CompleteRPartite") {
    const auto p = params(2);
    return family_complete_r_partite(p[0], p[1]);
  }
  if (head == "cube") {
    bare();
    return named::hypercube(3);
  }
  if (head == "heawood") {
    bare();
    return named::heawood().to_graph();
  }
  if (head == "fano") {
    bare();
    return fano_plane();
  }
  if (head.size() >= 2 && head[0] == 'C' && colon == std::string::npos &&
      head.find_first_not_of("0123456789", 1) == std::string::npos && head.size() <= 5)
    return named::cycle(std::stoul(head.substr(1)));
  throw InputError("unknown pattern '" + name + "'");
}

Pattern realize_pattern(const NamedPattern& p, std::size_t k, const std::string& name) {
  if (const auto* h = std::get_if<Hypergraph>(&p)) {
    if (k > 1) throw InputError("hypergraph patterns only support the incidence subdivision (k = 1)");
    const auto inc = incidence_subdivision(*h);
    std::vector<std::uint8_t> sides(inc.a_count() + inc.b_count(), 1);
    std::fill(sides.begin(), sides.begin() + static_cast<std::ptrdiff_t>(inc.a_count()), 0);
    return Pattern(inc.to_graph(), name, std::move(sides));
  }
  const Graph& g = std::get<Graph>(p);
  if (g.vertex_count() > 4096) throw ResourceError("pattern too large");
  const Graph out = k == 0 ? g : subdivide_k(as_multigraph(g), k).graph;
  return Pattern(out, name, two_colouring(out));
}

}  // namespace subdiv
