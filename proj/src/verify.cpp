#include "kfactor/verify.hpp"

#include <string>
#include <vector>

namespace kfactor {
namespace {

std::string describe(const Clique& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(c.vertices[i]);
  }
  return s + "}";
}

}  // namespace

Verdict verify_tiling(const PartiteGraph& g, std::span<const Clique> cliques) {
  std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    const auto& vs = cliques[k].vertices;
    if (vs.size() != static_cast<std::size_t>(g.parts()))
      return Verdict::reject("clique", describe(cliques[k]) + " does not have one vertex per part");
    std::vector<bool> part_seen(static_cast<std::size_t>(g.parts()), false);
    for (auto v : vs) {
      if (v < 0 || v >= g.vertex_count())
        return Verdict::reject("clique", describe(cliques[k]) + " has out-of-range vertex " + std::to_string(v));
      const auto part = static_cast<std::size_t>(v / g.part_size());
      if (part_seen[part])
        return Verdict::reject("clique", describe(cliques[k]) + " repeats part " + std::to_string(part));
      part_seen[part] = true;
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!g.adjacent(vs[i], vs[j]))
          return Verdict::reject("clique", describe(cliques[k]) + " misses edge " + std::to_string(vs[i]) + "-" +
                                               std::to_string(vs[j]));
    for (auto v : vs) {
      auto& o = owner[static_cast<std::size_t>(v)];
      if (o >= 0)
        return Verdict::reject("disjointness", "vertex " + std::to_string(v) + " lies in " +
                                                   describe(cliques[static_cast<std::size_t>(o)]) + " and " +
                                                   describe(cliques[k]));
      o = static_cast<int>(k);
    }
  }
  return Verdict::accept();
}

Verdict verify_factor(const PartiteGraph& g, std::span<const Clique> cliques) {
  if (auto v = verify_tiling(g, cliques); !v) return v;
  std::vector<bool> covered(static_cast<std::size_t>(g.vertex_count()), false);
  for (const auto& c : cliques)
    for (auto v : c.vertices) covered[static_cast<std::size_t>(v)] = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!covered[static_cast<std::size_t>(v)])
      return Verdict::reject("coverage", "vertex " + std::to_string(v) + " is not covered");
  return Verdict::accept();
}

}  // namespace kfactor
