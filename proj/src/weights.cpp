#include "kfactor/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_set>
#include <numeric>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {
namespace {

std::string describe(const Clique& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) s += (i ? ", " : "") + std::to_string(c.vertices[i]);
  return s + "}";
}


struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

// K_r-factors of the blow-up H of R, where vertex v becomes lambda(v) twins.
// Permuting twins maps factors to factors, so a factor of H is determined up
// to symmetry by how many of its cliques project onto each clique of R. The
// search state is the vector of uncovered twins per vertex of R; it branches
// on the vertex with the fewest usable cliques and remembers dead states.
class TwinSearch {
 public:
  TwinSearch(const PartiteGraph& reduced, std::span<const int> lambda, const SolverLimits& limits)
      : cliques_(enumerate_kr(reduced, limits.max_rows)),
        by_vertex_(cliques_by_vertex(reduced.vertex_count(), cliques_)),
        rest_(lambda.begin(), lambda.end()),
        taken_(cliques_.size(), 0),
        limits_(limits) {}

  std::optional<std::vector<int>> run() {
    if (!descend()) return std::nullopt;
    return taken_;
  }

  const Clique& clique(std::size_t i) const { return cliques_[i]; }

 private:
  bool usable(std::size_t idx) const {
    for (Vertex u : cliques_[idx].vertices)
      if (rest_[static_cast<std::size_t>(u)] == 0) return false;
    return true;
  }

  int headroom(std::size_t idx) const {
    int m = std::numeric_limits<int>::max();
    for (Vertex u : cliques_[idx].vertices) m = std::min(m, rest_[static_cast<std::size_t>(u)]);
    return m;
  }

  bool descend() {
    Vertex pick = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < rest_.size(); ++v) {
      if (rest_[v] == 0) continue;
      std::size_t options = 0;
      for (auto idx : by_vertex_[v]) options += usable(idx) ? 1 : 0;
      if (options == 0) return false;
      if (options < fewest) {
        fewest = options;
        pick = static_cast<Vertex>(v);
      }
    }
    if (pick < 0) return true;
    if (dead_.count(rest_)) return false;
    if (limits_.max_nodes != 0 && ++nodes_ > limits_.max_nodes)
      throw GuardExceeded("balance_weights: search exceeded " + std::to_string(limits_.max_nodes) + " nodes");

    std::vector<std::size_t> order;
    for (auto idx : by_vertex_[static_cast<std::size_t>(pick)])
      if (usable(idx)) order.push_back(idx);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return headroom(a) > headroom(b); });
    for (auto idx : order) {
      for (Vertex u : cliques_[idx].vertices) --rest_[static_cast<std::size_t>(u)];
      ++taken_[idx];
      if (descend()) return true;
      --taken_[idx];
      for (Vertex u : cliques_[idx].vertices) ++rest_[static_cast<std::size_t>(u)];
    }
    if (dead_.size() >= limits_.max_memo_states)
      throw GuardExceeded("balance_weights: more than " + std::to_string(limits_.max_memo_states) + " dead states");
    dead_.insert(rest_);
    return false;
  }

  CliqueFamily cliques_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  std::vector<int> rest_;
  std::vector<int> taken_;
  const SolverLimits& limits_;
  std::unordered_set<std::vector<int>, VectorHash> dead_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

int WeightAssignment::load(Vertex v) const {
  int total = 0;
  for (const auto& w : omega)
    if (w.clique.contains(v)) total += w.weight;
  return total;
}

WeightAssignment balance_weights(const PartiteGraph& reduced, std::span<const int> lambda, double gamma,
                                 const SolverLimits& limits) {
  const int r = reduced.parts();
  const int k = reduced.part_size();
  if (static_cast<int>(lambda.size()) != reduced.vertex_count())
    throw InvalidArgument("balance_weights: lambda needs one entry per reduced vertex");
  for (int x : lambda)
    if (x < 0) throw InvalidArgument("balance_weights: negative lambda");

  WeightAssignment out;
  out.lambda.assign(lambda.begin(), lambda.end());
  std::vector<int> sums(static_cast<std::size_t>(r), 0);
  for (Vertex v = 0; v < reduced.vertex_count(); ++v) sums[static_cast<std::size_t>(reduced.part_of(v))] += lambda[v];
  for (int i = 1; i < r; ++i)
    if (sums[static_cast<std::size_t>(i)] != sums[0])
      throw InvalidArgument("balance_weights: part sums differ (" + std::to_string(sums[0]) + " vs " +
                            std::to_string(sums[static_cast<std::size_t>(i)]) + " in part " + std::to_string(i) + ")");
  const int total = sums[0];
  out.blowup_part_size = total;
  out.min_star_degree = min_star_degree(reduced);
  out.degree_hypothesis = out.min_star_degree >= (1.0 - 1.0 / r + gamma / 2.0) * k - 1e-9;
  const double mean = static_cast<double>(total) / k;
  out.spread_hypothesis = std::all_of(lambda.begin(), lambda.end(), [&](int x) {
    return x >= (1.0 - gamma / 4.0) * mean - 1e-9 && x <= (1.0 + gamma / 4.0) * mean + 1e-9;
  });
  if (total == 0) return out;

  TwinSearch search(reduced, lambda, limits);
  const auto multiplicity = search.run();
  if (!multiplicity)
    throw StageFailure("balance_weights: the blow-up has no K_r-factor (min star degree " +
                       std::to_string(out.min_star_degree) + ", degree hypothesis " +
                       (out.degree_hypothesis ? "holds" : "fails") + ", spread hypothesis " +
                       (out.spread_hypothesis ? "holds" : "fails") + ")");
  for (std::size_t i = 0; i < multiplicity->size(); ++i)
    if ((*multiplicity)[i] > 0) out.omega.push_back({search.clique(i), (*multiplicity)[i]});

  for (Vertex v = 0; v < reduced.vertex_count(); ++v)
    if (out.load(v) != lambda[v])
      throw std::logic_error("balance_weights: projected load differs from lambda at " + std::to_string(v));
  return out;
}

Tiling balance_tuples(const PartiteGraph& round, const PartiteGraph& reduced, std::span<const VertexSet> available,
                      std::span<const WeightedClique> omega, const RandomSeed& seed, const SolverLimits& limits) {
  if (static_cast<int>(available.size()) != reduced.vertex_count())
    throw InvalidArgument("balance_tuples: need one available set per cluster");
  const int r = round.parts();
  Tiling out;
  VertexSet used(round.vertex_count());
  std::uint64_t index = 0;
  for (const auto& wk : omega) {
    if (wk.weight == 0) continue;
    if (wk.weight < 0) throw InvalidArgument("balance_tuples: negative omega");
    std::vector<VertexSet> subsets;
    for (int i = 0; i < r; ++i) {
      const Vertex cluster = wk.clique.vertices[static_cast<std::size_t>(i)];
      VertexSet s = available[static_cast<std::size_t>(cluster)] - used;
      s.restrict_to(round.part_begin(i), round.part_end(i));
      subsets.push_back(std::move(s));
    }
    auto candidates = enumerate_kr_induced(round, subsets);
    CounterRng rng(seed.derive(index++));
    rng.shuffle(std::span<Clique>(candidates));

    std::vector<Clique> picked;
    VertexSet local(round.vertex_count());
    for (const auto& c : candidates) {
      if (static_cast<int>(picked.size()) == wk.weight) break;
      if (std::any_of(c.vertices.begin(), c.vertices.end(), [&](Vertex u) { return local.contains(u); })) continue;
      for (Vertex u : c.vertices) local.insert(u);
      picked.push_back(c);
    }
    if (static_cast<int>(picked.size()) < wk.weight) {
      std::sort(candidates.begin(), candidates.end());
      picked = max_disjoint_cliques(candidates, r, limits);
      if (static_cast<int>(picked.size()) < wk.weight)
        throw StageFailure("balance_tuples: reduced clique " + describe(wk.clique) + " needs " +
                           std::to_string(wk.weight) + " disjoint cliques, only " + std::to_string(picked.size()) +
                           " exist among " + std::to_string(candidates.size()) + " present");
      picked.resize(static_cast<std::size_t>(wk.weight));
    }
    for (auto& c : picked) {
      for (Vertex u : c.vertices) used.insert(u);
      out.cliques.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace kfactor
