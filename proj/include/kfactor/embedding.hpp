#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfactor/factor_solver.hpp"

namespace kfactor {

struct CoverInput {
  std::vector<Vertex> roots;                ///< processed in this order
  double mu = 0.1;
  std::vector<std::vector<Vertex>> quotas;  ///< disjoint, root-free sets X_s
  std::optional<VertexSet> allowed;         ///< cliques must stay inside; none = all of V
};

struct CoverResult {
  Tiling tiling;                          ///< tiling.cliques[i] contains roots[i]
  std::vector<int> quota_used;            ///< |X_s meets V(tiling)|
  std::vector<double> quota_bound;        ///< 4 r mu |X_s| + r - 2
  std::vector<std::size_t> candidates;    ///< per root: size of the candidate set
  std::vector<std::size_t> inspected;     ///< per root: candidates whose presence was revealed
  std::vector<std::string> warnings;
};

/// Covers each root by a K_r of `round` that is rooted in `host`, stays in
/// `allowed`, avoids earlier cliques and later roots, and keeps every quota
/// set within 4 r mu |X_s| + r - 2.
///
/// For root v_i the candidate set is the first ceil(mu N^(r-1)) members of a
/// seeded shuffle of K_r(host, v_i) inside `allowed` (N = |V(host)|), clamped
/// to what exists with a warning; a warning is also issued when the number of
/// roots exceeds mu^2 N. X_s counts as saturated once it holds
/// floor(4 r mu |X_s|) used vertices. Candidates through used vertices, later
/// roots, saturated sets or already revealed cliques are discarded; the first
/// survivor present in `round` is taken.
///
/// Throws StageFailure naming the root when nothing survives and
/// InvalidArgument when roots repeat, quotas overlap or contain a root, or
/// `round` is not a spanning subgraph shape of `host`.
[[nodiscard]] CoverResult cover_exceptional(const PartiteGraph& host, const PartiteGraph& round,
                                            const CoverInput& input, const RandomSeed& seed);

}  // namespace kfactor
