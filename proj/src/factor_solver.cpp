#include "kfactor/factor_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "kfactor/error.hpp"
#include "kfactor/exact_cover.hpp"

namespace kfactor {
namespace {

void check_rows(std::size_t rows, const SolverLimits& limits) {
  if (rows > limits.max_rows)
    throw GuardExceeded(std::to_string(rows) + " clique rows exceed the budget of " +
                        std::to_string(limits.max_rows) + "; use sampled mode or a smaller instance");
}

bool inside(const Clique& c, const VertexSet& set) {
  return std::all_of(c.vertices.begin(), c.vertices.end(), [&](Vertex v) { return set.contains(v); });
}

VertexSet all_vertices(const PartiteGraph& g) {
  VertexSet s(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) s.insert(v);
  return s;
}

// Counts exact covers of a vertex set by branching on its smallest member.
// Every cover of `rest` has exactly one clique through min(rest), so each
// cover is counted once.
class CoverCounter {
 public:
  CoverCounter(int universe, const CliqueFamily& cliques, const SolverLimits& limits)
      : cliques_(cliques), by_vertex_(cliques_by_vertex(universe, cliques)), limits_(limits) {}

  std::uint64_t count(const VertexSet& rest) {
    const Vertex v = rest.first();
    if (v < 0) return 1;
    if (auto it = memo_.find(rest); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    for (auto idx : by_vertex_[static_cast<std::size_t>(v)]) {
      const auto& c = cliques_[idx];
      if (!inside(c, rest)) continue;
      const auto sub = count(without(rest, c));
      if (total > UINT64_MAX - sub) throw GuardExceeded("factor count overflows 64 bits");
      total += sub;
    }
    if (memo_.size() >= limits_.max_memo_states)
      throw GuardExceeded("counting memo exceeded " + std::to_string(limits_.max_memo_states) + " states");
    memo_.emplace(rest, total);
    return total;
  }

  // Cliques through min(rest) with their completion counts.
  std::vector<std::pair<std::size_t, std::uint64_t>> options(const VertexSet& rest) {
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    const Vertex v = rest.first();
    if (v < 0) return out;
    for (auto idx : by_vertex_[static_cast<std::size_t>(v)]) {
      const auto& c = cliques_[idx];
      if (!inside(c, rest)) continue;
      if (auto w = count(without(rest, c)); w > 0) out.emplace_back(idx, w);
    }
    return out;
  }

  static VertexSet without(VertexSet rest, const Clique& c) {
    for (auto u : c.vertices) rest.erase(u);
    return rest;
  }

  const CliqueFamily& cliques() const { return cliques_; }

 private:
  const CliqueFamily& cliques_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  const SolverLimits& limits_;
  std::unordered_map<VertexSet, std::uint64_t, VertexSetHash> memo_;
};

// Sequential choice of the clique through min(rest), weighted by the number
// of completions; yields each cover of `rest` with equal probability.
std::vector<Clique> sample_cover(CoverCounter& counter, VertexSet rest, CounterRng& rng) {
  std::vector<Clique> out;
  while (!rest.empty()) {
    const auto opts = counter.options(rest);
    std::uint64_t total = 0;
    for (const auto& o : opts) total += o.second;
    auto pick = rng.below(total);
    for (const auto& [idx, weight] : opts) {
      if (pick < weight) {
        out.push_back(counter.cliques()[idx]);
        rest = CoverCounter::without(rest, counter.cliques()[idx]);
        break;
      }
      pick -= weight;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<Clique>> find_clique_cover(const PartiteGraph& g, const CliqueFamily& candidates,
                                                     const VertexSet& universe, const SolverLimits& limits) {
  std::vector<const Clique*> rows;
  for (const auto& c : candidates)
    if (inside(c, universe)) rows.push_back(&c);
  check_rows(rows.size(), limits);

  auto degree_sum = [&](const Clique& c) {
    int s = 0;
    for (auto v : c.vertices) s += g.degree(v);
    return s;
  };
  std::vector<int> sums(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) sums[i] = degree_sum(*rows[i]);
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    return *rows[a] < *rows[b];
  });

  std::vector<int> column(static_cast<std::size_t>(universe.universe()), -1);
  int columns = 0;
  universe.for_each([&](Vertex v) { column[static_cast<std::size_t>(v)] = columns++; });

  ExactCover dlx(columns);
  std::vector<int> cols;
  for (auto i : order) {
    cols.clear();
    for (auto v : rows[i]->vertices) cols.push_back(column[static_cast<std::size_t>(v)]);
    dlx.add_row(cols);
  }
  auto [status, picked] = dlx.find_one(limits.max_nodes);
  if (status == ExactCover::Status::budget_exceeded)
    throw GuardExceeded("exact cover search exceeded " + std::to_string(limits.max_nodes) + " nodes");
  if (status == ExactCover::Status::exhausted) return std::nullopt;
  std::vector<Clique> out;
  for (auto row : picked) out.push_back(*rows[order[static_cast<std::size_t>(row)]]);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Factor> find_factor(const PartiteGraph& g, const SolverLimits& limits) {
  if (g.part_size() == 0) return Factor{};
  const auto cliques = enumerate_kr(g, limits.max_rows);
  auto cover = find_clique_cover(g, cliques, all_vertices(g), limits);
  if (!cover) return std::nullopt;
  return Factor{std::move(*cover)};
}

std::uint64_t count_factors(const PartiteGraph& g, const SolverLimits& limits) {
  const auto cliques = enumerate_kr(g, limits.max_rows);
  check_rows(cliques.size(), limits);
  CoverCounter counter(g.vertex_count(), cliques, limits);
  return counter.count(all_vertices(g));
}

std::vector<Clique> max_disjoint_cliques(const CliqueFamily& candidates, int parts, const SolverLimits& limits) {
  check_rows(candidates.size(), limits);
  if (candidates.empty()) return {};
  int universe = 0;
  for (const auto& c : candidates)
    for (auto v : c.vertices) universe = std::max(universe, v + 1);

  // Branch on the vertices of the part touched by the fewest candidates:
  // every clique has exactly one vertex there.
  std::size_t pivot_part = 0;
  {
    std::size_t best = SIZE_MAX;
    for (std::size_t p = 0; p < static_cast<std::size_t>(parts); ++p) {
      std::vector<Vertex> seen;
      for (const auto& c : candidates) seen.push_back(c.vertices[p]);
      std::sort(seen.begin(), seen.end());
      const auto distinct = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
      if (distinct < best) {
        best = distinct;
        pivot_part = p;
      }
    }
  }
  std::vector<Vertex> pivots;
  for (const auto& c : candidates) pivots.push_back(c.vertices[pivot_part]);
  std::sort(pivots.begin(), pivots.end());
  pivots.erase(std::unique(pivots.begin(), pivots.end()), pivots.end());
  std::vector<std::vector<std::size_t>> by_pivot(pivots.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto pos = std::lower_bound(pivots.begin(), pivots.end(), candidates[i].vertices[pivot_part]) - pivots.begin();
    by_pivot[static_cast<std::size_t>(pos)].push_back(i);
  }

  VertexSet used(universe);
  auto free_clique = [&](std::size_t idx) {
    return std::none_of(candidates[idx].vertices.begin(), candidates[idx].vertices.end(),
                        [&](Vertex v) { return used.contains(v); });
  };

  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (free_clique(i)) {
      best.push_back(i);
      for (auto v : candidates[i].vertices) used.insert(v);
    }
  used = VertexSet(universe);

  // Upper bound: tiling size is at most the number of distinct vertices any
  // part can still contribute.
  std::size_t global_cap = SIZE_MAX;
  for (std::size_t p = 0; p < static_cast<std::size_t>(parts); ++p) {
    std::vector<Vertex> seen;
    for (const auto& c : candidates) seen.push_back(c.vertices[p]);
    std::sort(seen.begin(), seen.end());
    global_cap = std::min(global_cap, static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin()));
  }

  std::vector<std::size_t> current;
  std::uint64_t nodes = 0;
  auto search = [&](auto&& self, std::size_t t) -> void {
    if (best.size() == global_cap) return;
    if (limits.max_nodes != 0 && ++nodes > limits.max_nodes)
      throw GuardExceeded("tiling search exceeded " + std::to_string(limits.max_nodes) + " nodes");
    std::size_t reachable = 0;
    for (std::size_t u = t; u < pivots.size(); ++u)
      if (std::any_of(by_pivot[u].begin(), by_pivot[u].end(), free_clique)) ++reachable;
    if (current.size() + reachable <= best.size()) return;
    if (t == pivots.size()) {
      best = current;
      return;
    }
    for (auto idx : by_pivot[t]) {
      if (!free_clique(idx)) continue;
      for (auto v : candidates[idx].vertices) used.insert(v);
      current.push_back(idx);
      self(self, t + 1);
      current.pop_back();
      for (auto v : candidates[idx].vertices) used.erase(v);
    }
    self(self, t + 1);
  };
  search(search, 0);

  std::vector<Clique> out;
  for (auto idx : best) out.push_back(candidates[idx]);
  std::sort(out.begin(), out.end());
  return out;
}

Tiling max_tiling(const PartiteGraph& g, const SolverLimits& limits) {
  return Tiling{max_disjoint_cliques(enumerate_kr(g, limits.max_rows), g.parts(), limits)};
}

Factor sample_factor_uniform(const PartiteGraph& g, const RandomSeed& seed, const SolverLimits& limits) {
  const auto cliques = enumerate_kr(g, limits.max_rows);
  check_rows(cliques.size(), limits);
  CoverCounter counter(g.vertex_count(), cliques, limits);
  const auto rest = all_vertices(g);
  if (counter.count(rest) == 0) throw InvalidArgument("graph has no K_r-factor to sample");
  CounterRng rng(seed);
  return Factor{sample_cover(counter, rest, rng)};
}

SpreadEstimate estimate_spread(const PartiteGraph& g, int max_subset, SpreadMode mode, const RandomSeed& seed,
                               const SolverLimits& limits, int samples) {
  if (max_subset < 1) throw InvalidArgument("max_subset must be at least 1");
  const auto cliques = enumerate_kr(g, limits.max_rows);
  check_rows(cliques.size(), limits);
  CoverCounter counter(g.vertex_count(), cliques, limits);
  const auto everything = all_vertices(g);
  const auto total = counter.count(everything);
  if (total == 0) throw InvalidArgument("graph has no K_r-factor; spread is undefined");

  SpreadEstimate est;
  est.mode = mode;
  est.factor_count = total;
  est.by_size.assign(static_cast<std::size_t>(max_subset), 0.0);
  auto record = [&](std::size_t s, std::uint64_t completions) {
    const double ratio = static_cast<double>(completions) / static_cast<double>(total);
    const double q = s == 1 ? ratio : std::pow(ratio, 1.0 / static_cast<double>(s));
    est.by_size[s - 1] = std::max(est.by_size[s - 1], q);
    ++est.subsets_examined;
  };

  if (mode == SpreadMode::exact) {
    // Disjoint clique sets in increasing index order; a set with no
    // completion has no extension with one either.
    std::vector<std::size_t> chosen;
    auto walk = [&](auto&& self, std::size_t from, const VertexSet& rest) -> void {
      for (std::size_t i = from; i < cliques.size(); ++i) {
        if (!inside(cliques[i], rest)) continue;
        const auto next = CoverCounter::without(rest, cliques[i]);
        const auto completions = counter.count(next);
        if (completions == 0) continue;
        if (est.subsets_examined >= limits.max_subsets)
          throw GuardExceeded("exact spread visited more than " + std::to_string(limits.max_subsets) +
                              " subsets; use sampled mode");
        chosen.push_back(i);
        record(chosen.size(), completions);
        if (chosen.size() < static_cast<std::size_t>(max_subset)) self(self, i + 1, next);
        chosen.pop_back();
      }
    };
    walk(walk, 0, everything);
    return est;
  }

  CounterRng rng(seed);
  for (int t = 0; t < samples; ++t) {
    auto factor = sample_cover(counter, everything, rng);
    for (int s = 1; s <= max_subset && s <= static_cast<int>(factor.size()); ++s) {
      rng.shuffle(std::span(factor));
      auto rest = everything;
      for (int k = 0; k < s; ++k) rest = CoverCounter::without(rest, factor[static_cast<std::size_t>(k)]);
      record(static_cast<std::size_t>(s), counter.count(rest));
    }
  }
  return est;
}

}  // namespace kfactor
