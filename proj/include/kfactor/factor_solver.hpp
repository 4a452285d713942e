#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kfactor/clique.hpp"
#include "kfactor/partite_graph.hpp"
#include "kfactor/random.hpp"

namespace kfactor {

/// Budgets for the exact operations. Exceeding one throws GuardExceeded.
struct SolverLimits {
  std::size_t max_rows = 5'000'000;         ///< clique rows handed to a search
  std::uint64_t max_nodes = 0;              ///< search nodes, 0 = unlimited
  std::size_t max_memo_states = 4'000'000;  ///< counting memo entries
  std::size_t max_subsets = 2'000'000;      ///< clique subsets visited by exact spread
};

/// Vertex-disjoint cliques.
struct Tiling {
  std::vector<Clique> cliques;
  [[nodiscard]] std::size_t size() const noexcept { return cliques.size(); }
};

/// A tiling covering every vertex of its host.
struct Factor {
  std::vector<Clique> cliques;
  [[nodiscard]] std::size_t size() const noexcept { return cliques.size(); }
};

/// Some K_r-factor of g, or nullopt when none exists. Exact: exact cover over
/// vertex columns with clique rows, most-constrained column first.
[[nodiscard]] std::optional<Factor> find_factor(const PartiteGraph& g, const SolverLimits& limits = {});

/// Exact cover of `universe` by members of `candidates` (members leaving the
/// universe are ignored). Rows are tried by descending degree sum in `g`,
/// then lexicographically.
[[nodiscard]] std::optional<std::vector<Clique>> find_clique_cover(const PartiteGraph& g,
                                                                   const CliqueFamily& candidates,
                                                                   const VertexSet& universe,
                                                                   const SolverLimits& limits = {});

/// Number of distinct K_r-factors (unordered clique sets).
[[nodiscard]] std::uint64_t count_factors(const PartiteGraph& g, const SolverLimits& limits = {});

/// Maximum-cardinality K_r-tiling (branch and bound, greedy incumbent).
[[nodiscard]] Tiling max_tiling(const PartiteGraph& g, const SolverLimits& limits = {});

/// Maximum set of pairwise disjoint members of `candidates`, which must all
/// be transversal cliques of a graph with `parts` parts.
[[nodiscard]] std::vector<Clique> max_disjoint_cliques(const CliqueFamily& candidates, int parts,
                                                       const SolverLimits& limits = {});

/// Exactly uniform K_r-factor. Throws InvalidArgument when g has none.
[[nodiscard]] Factor sample_factor_uniform(const PartiteGraph& g, const RandomSeed& seed,
                                           const SolverLimits& limits = {});

enum class SpreadMode { exact, sampled };

/// For each size s = 1..max_subset, the largest observed
/// (|factors containing S| / |factors|)^(1/s) over clique sets S of size s,
/// under the uniform measure on K_r-factors.
struct SpreadEstimate {
  SpreadMode mode = SpreadMode::exact;
  std::vector<double> by_size;  ///< index s - 1
  std::uint64_t factor_count = 0;
  std::uint64_t subsets_examined = 0;
};

/// Sampled mode draws `samples` uniform factors and takes random s-subsets of
/// them; both modes evaluate each S exactly by counting completions.
[[nodiscard]] SpreadEstimate estimate_spread(const PartiteGraph& g, int max_subset, SpreadMode mode,
                                             const RandomSeed& seed, const SolverLimits& limits = {},
                                             int samples = 200);

}  // namespace kfactor
