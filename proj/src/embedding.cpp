#include "kfactor/embedding.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {

CoverResult cover_exceptional(const PartiteGraph& host, const PartiteGraph& round, const CoverInput& input,
                              const RandomSeed& seed) {
  if (host.parts() != round.parts() || host.part_size() != round.part_size())
    throw InvalidArgument("cover_exceptional: round graph and host differ in shape");
  if (!(input.mu > 0.0 && input.mu < 1.0)) throw InvalidArgument("cover_exceptional: mu must lie in (0, 1)");
  const int total = host.vertex_count();
  const int r = host.parts();

  VertexSet root_set(total);
  for (Vertex v : input.roots) {
    if (!host.contains(v)) throw InvalidArgument("cover_exceptional: unknown root " + std::to_string(v));
    if (root_set.contains(v)) throw InvalidArgument("cover_exceptional: root " + std::to_string(v) + " repeats");
    root_set.insert(v);
  }
  std::vector<int> owner(static_cast<std::size_t>(total), -1);
  for (std::size_t s = 0; s < input.quotas.size(); ++s)
    for (Vertex v : input.quotas[s]) {
      if (!host.contains(v)) throw InvalidArgument("cover_exceptional: unknown quota vertex " + std::to_string(v));
      if (root_set.contains(v)) throw InvalidArgument("cover_exceptional: quota set contains root " + std::to_string(v));
      if (owner[static_cast<std::size_t>(v)] != -1)
        throw InvalidArgument("cover_exceptional: quota sets overlap at " + std::to_string(v));
      owner[static_cast<std::size_t>(v)] = static_cast<int>(s);
    }

  CoverResult out;
  const std::size_t t = input.quotas.size();
  out.quota_used.assign(t, 0);
  std::vector<int> saturation(t);
  for (std::size_t s = 0; s < t; ++s) {
    const double bound = 4.0 * r * input.mu * static_cast<double>(input.quotas[s].size());
    out.quota_bound.push_back(bound + r - 2);
    saturation[s] = static_cast<int>(std::floor(bound + 1e-9));
  }
  if (input.roots.empty()) return out;

  const double ell_cap = input.mu * input.mu * total;
  if (static_cast<double>(input.roots.size()) > ell_cap)
    out.warnings.push_back("root count " + std::to_string(input.roots.size()) + " exceeds mu^2 N = " +
                           std::to_string(ell_cap));
  const double wanted_real = input.mu * std::pow(static_cast<double>(total), r - 1);
  const auto wanted = static_cast<std::size_t>(std::min(std::ceil(wanted_real), 1e18));

  VertexSet used(total);
  VertexSet pending = root_set;
  std::set<Clique> revealed;
  for (std::size_t i = 0; i < input.roots.size(); ++i) {
    const Vertex v = input.roots[i];
    pending.erase(v);

    CliqueFamily family;
    for (auto& c : rooted_cliques(host, v)) {
      bool inside = true;
      if (input.allowed)
        for (Vertex u : c.vertices)
          if (!input.allowed->contains(u)) inside = false;
      if (inside) family.push_back(std::move(c));
    }
    CounterRng rng(seed.derive(static_cast<std::uint64_t>(i)));
    rng.shuffle(std::span<Clique>(family));
    if (family.size() < wanted)
      out.warnings.push_back("root " + std::to_string(v) + ": " + std::to_string(family.size()) +
                             " rooted cliques available, fewer than mu N^(r-1) = " + std::to_string(wanted_real));
    const std::size_t take = std::min(wanted, family.size());
    out.candidates.push_back(take);

    VertexSet saturated(total);
    for (std::size_t s = 0; s < t; ++s)
      if (out.quota_used[s] >= saturation[s])
        for (Vertex u : input.quotas[s]) saturated.insert(u);

    std::size_t surviving = 0;
    const Clique* chosen = nullptr;
    for (std::size_t c = 0; c < take && chosen == nullptr; ++c) {
      const Clique& k = family[c];
      bool blocked = revealed.contains(k);
      for (Vertex u : k.vertices)
        if (u != v && (used.contains(u) || pending.contains(u) || saturated.contains(u))) blocked = true;
      if (blocked) continue;
      ++surviving;
      revealed.insert(k);
      bool present = true;
      for (std::size_t a = 0; a < k.vertices.size() && present; ++a)
        for (std::size_t b = a + 1; b < k.vertices.size() && present; ++b)
          present = round.adjacent(k.vertices[a], k.vertices[b]);
      if (present) chosen = &k;
    }
    out.inspected.push_back(surviving);
    if (chosen == nullptr)
      throw StageFailure("cover_exceptional: root " + std::to_string(v) + " has no present clique among " +
                         std::to_string(surviving) + " surviving of " + std::to_string(take) + " candidates");
    for (Vertex u : chosen->vertices) {
      used.insert(u);
      if (owner[static_cast<std::size_t>(u)] >= 0) ++out.quota_used[static_cast<std::size_t>(owner[static_cast<std::size_t>(u)])];
    }
    out.tiling.cliques.push_back(*chosen);
  }

  for (std::size_t s = 0; s < t; ++s)
    if (out.quota_used[s] > out.quota_bound[s] + 1e-9)
      throw std::logic_error("cover_exceptional: quota exceeded on set " + std::to_string(s));
  return out;
}

}  // namespace kfactor
