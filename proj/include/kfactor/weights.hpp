#pragma once

#include <span>
#include <vector>

#include "kfactor/factor_solver.hpp"

namespace kfactor {

struct WeightedClique {
  Clique clique;
  int weight = 0;
};

/// lambda over the vertices of a reduced graph R and a nonnegative integer
/// omega over K_r(R) (only positive entries are stored, lexicographic).
struct WeightAssignment {
  std::vector<int> lambda;
  std::vector<WeightedClique> omega;
  int blowup_part_size = 0;
  int min_star_degree = 0;
  bool degree_hypothesis = false;  ///< delta*(R) >= (1 - 1/r + gamma/2) k
  bool spread_hypothesis = false;  ///< lambda within (1 +- gamma/4) of its part mean

  /// Sum of omega(K) over the cliques K containing vertex v.
  [[nodiscard]] int load(Vertex v) const;
};

/// Solves sum_{K containing v} omega(K) = lambda(v): omega(K) counts the
/// cliques projecting onto K in a K_r-factor of the blow-up of R in which v
/// becomes lambda(v) twins. The factor is searched up to permutations of
/// twins, so the blow-up is never materialised. The hypotheses are evaluated
/// and reported; only equal part sums are required. Malformed lambda gives
/// InvalidArgument and a blow-up without a factor gives StageFailure.
/// The node and memo limits of `limits` apply.
[[nodiscard]] WeightAssignment balance_weights(const PartiteGraph& reduced, std::span<const int> lambda, double gamma,
                                               const SolverLimits& limits = {});

/// Removes omega(K) vertex-disjoint cliques of `round` per weighted clique K
/// of R, each inside the available vertices of K's clusters, greedily in a
/// seeded order with an exact maximum-packing fallback. `available[c]` holds
/// the usable vertices of cluster c (R's vertex id). Throws StageFailure
/// naming the clique of R that cannot be served.
[[nodiscard]] Tiling balance_tuples(const PartiteGraph& round, const PartiteGraph& reduced,
                                    std::span<const VertexSet> available, std::span<const WeightedClique> omega,
                                    const RandomSeed& seed, const SolverLimits& limits = {});

}  // namespace kfactor
