#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "kfactor/factor_solver.hpp"
#include "kfactor/random.hpp"
#include "kfactor/verify.hpp"

namespace kfactor {

// Index convention: graphs are numbered 0..m-1. The block of part pair
// (i, j), i < j, holds indices c(i, j) .. c(i, j) + n - 1 where c(i, j) counts
// the blocks preceding (i, j) lexicographically, times n.

/// m = n * binom(r, 2) balanced r-partite graphs on shared parts.
class GraphFamily {
 public:
  GraphFamily() = default;
  /// Throws InvalidArgument unless every graph has shape (r, n) and there
  /// are exactly n * binom(r, 2) of them.
  GraphFamily(int r, int n, std::vector<PartiteGraph> graphs);

  static GraphFamily complete(int r, int n);
  /// Members drawn by gen_min_degree_instance(r, n, gamma, edge_keep, seed.derive(index)).
  static GraphFamily min_degree(int r, int n, double gamma, double edge_keep, const RandomSeed& seed);

  [[nodiscard]] int parts() const noexcept { return r_; }
  [[nodiscard]] int part_size() const noexcept { return n_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(graphs_.size()); }
  [[nodiscard]] const PartiteGraph& graph(int index) const { return graphs_.at(static_cast<std::size_t>(index)); }
  [[nodiscard]] const std::vector<PartiteGraph>& graphs() const noexcept { return graphs_; }

  /// c(i, j) for parts i < j.
  [[nodiscard]] int block_offset(int i, int j) const;
  /// The part pair (i, j) whose block holds `index`.
  [[nodiscard]] std::pair<int, int> block_of(int index) const;

  /// Union of all members.
  [[nodiscard]] PartiteGraph union_graph() const;

  /// Each member sparsified independently: graph t keeps edge {u, v} iff
  /// keyed_uniform(seed.derive(t), u * N + v) < p.
  [[nodiscard]] GraphFamily sparsify(double p, const RandomSeed& seed) const;

 private:
  int r_ = 0;
  int n_ = 0;
  std::vector<PartiteGraph> graphs_;
};

/// perm[i][s] is the local position pi_i(s) for the s-th vertex of part i.
struct PermutationBundle {
  std::vector<std::vector<int>> perm;

  static PermutationBundle identity(int r, int n);
  static PermutationBundle sample(int r, int n, const RandomSeed& seed);
  /// Every bundle of r permutations of [n], in lexicographic order of the
  /// concatenated permutations. Throws GuardExceeded beyond `limit` bundles.
  static std::vector<PermutationBundle> all(int r, int n, std::size_t limit = 100000);

  /// Throws InvalidArgument unless there are r bijections of [n].
  void validate(int r, int n) const;
};

/// Index of the graph that governs the pair {s, t}: with s in V_i, t in V_j
/// and i < j, it is c(i, j) + pi_i(s).
[[nodiscard]] int governing_index(const GraphFamily& family, const PermutationBundle& bundle, Vertex s, Vertex t);

/// B_pi together with what is needed to lift factors back to the family.
/// The family is referenced, not copied, and must outlive the value.
struct AuxiliaryGraph {
  PartiteGraph graph;
  const GraphFamily* family = nullptr;
  PermutationBundle bundle;
};

/// B_pi: s in V_i and t in V_j (i < j) are adjacent iff the governing graph
/// contains st. Throws InvalidArgument on a bundle/part mismatch.
[[nodiscard]] AuxiliaryGraph build_b_pi(const GraphFamily& family, const PermutationBundle& bundle);

/// Equals build_b_pi(family.sparsify(p, seed), bundle).graph but only draws
/// the governing edge slots.
[[nodiscard]] PartiteGraph build_b_pi_sparsified(const GraphFamily& family, const PermutationBundle& bundle,
                                                 double p, const RandomSeed& seed);

struct IndexedEdge {
  Edge edge;
  int index = 0;
  friend auto operator<=>(const IndexedEdge&, const IndexedEdge&) = default;
};

struct TransversalFactor {
  Factor factor;
  std::vector<IndexedEdge> assignment;  ///< sorted by edge
};

/// Assigns every clique edge its governing index. A lifted factor that fails
/// verify_transversal is an internal error (std::logic_error).
[[nodiscard]] TransversalFactor lift_factor(const AuxiliaryGraph& aux, const Factor& f);

/// Checks the factor on the union graph ("clique", "disjointness",
/// "coverage"), that the assignment lists exactly the clique edges
/// ("assignment"), that each edge lies in its graph ("membership"), and
/// that every index 0..m-1 is used exactly once ("index").
[[nodiscard]] Verdict verify_transversal(const GraphFamily& family, const TransversalFactor& tf);

struct BundleTrial {
  int trials = 0;
  int successes = 0;       ///< bundles with delta*(B_pi) >= (1 - 1/r + gamma/2) n
  double frequency = 0.0;
  int min_star_degree = 0; ///< smallest delta*(B_pi) observed
  int row_side_min = 0;    ///< smallest V_i-side degree observed, i < j
};

/// Samples `trials` bundles and records how often B_pi meets the halved
/// star-degree bound. Throws InvalidArgument naming the first member with
/// delta* < (1 - 1/r + gamma) n.
[[nodiscard]] BundleTrial bpi_min_degree_trial(const GraphFamily& family, double gamma, int trials,
                                               const RandomSeed& seed);

struct BalancedPartition {
  std::vector<std::vector<Vertex>> classes;  ///< sorted
  int attempts = 0;
  int worst_degree = 0;  ///< min over graphs, vertices and classes
};

/// The partition search of reduce_nonpartite without building the induced
/// family; same preconditions and errors.
[[nodiscard]] BalancedPartition find_balanced_partition(const std::vector<SimpleGraph>& members, int r, double gamma,
                                                        const RandomSeed& seed, int retries = 100);

struct NonpartiteReduction {
  std::vector<std::vector<Vertex>> partition;  ///< class j, sorted; new id j*n + position
  GraphFamily family;
  int attempts = 0;
  int worst_degree = 0;  ///< min over graphs, vertices and classes in the accepted partition
};

/// Samples balanced partitions of the shared vertex set until every member
/// has d(v, V_j) >= (1 - 1/r + gamma/2) N/r for all v and j, then returns the
/// induced partite family. Needs N divisible by r, (N/r) binom(r, 2) members
/// and delta(G_i) >= (1 - 1/r + gamma) N (InvalidArgument otherwise); throws
/// StageFailure with the worst degree seen after `retries` rejections.
[[nodiscard]] NonpartiteReduction reduce_nonpartite(const std::vector<SimpleGraph>& members, int r, double gamma,
                                                    const RandomSeed& seed, int retries = 100);

/// Direct exact cover over vertices and graph indices, for r = 3 and
/// n <= 4 only (GuardExceeded otherwise).
[[nodiscard]] std::optional<TransversalFactor> transversal_oracle(const GraphFamily& family);

/// Manifest `family r n m`, a `blocks` line listing i-j pairs in index
/// order, then `graph index path` lines (paths relative to the manifest).
void save_family(const std::filesystem::path& manifest, const GraphFamily& family);
/// Throws ParseError on malformed manifests or member files.
[[nodiscard]] GraphFamily load_family(const std::filesystem::path& manifest);

/// Clique lines followed by `edge u v -> index` lines.
void write_transversal(std::ostream& out, const TransversalFactor& tf);
[[nodiscard]] TransversalFactor read_transversal(std::istream& in);

}  // namespace kfactor
