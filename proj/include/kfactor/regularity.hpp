#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfactor/partite_graph.hpp"
#include "kfactor/random.hpp"

namespace kfactor {

/// Constants of the partitioned pipeline. validate() enforces
/// 0 < epsilon < d < 1, 0 < alpha < gamma, 0 < mu < 1 and k >= 1.
struct RegularityParams {
  double epsilon = 0.25;
  double d = 0.3;
  double gamma = 0.2;
  double alpha = 0.15;
  double mu = 0.1;
  int k = 1;

  void validate() const;
};

/// A host graph split into clusters V_ij (part i, index j), the exceptional
/// set B of unclustered vertices, and an optional reserved set W.
struct PartitionedInstance {
  PartiteGraph host;
  std::vector<std::vector<std::vector<Vertex>>> clusters;  ///< [part][j], sorted
  std::vector<Vertex> exceptional;                         ///< sorted
  std::optional<std::vector<Vertex>> reserved;
  RegularityParams params;

  [[nodiscard]] int parts() const noexcept { return host.parts(); }
  [[nodiscard]] int cluster_count() const noexcept { return params.k; }
  [[nodiscard]] const std::vector<Vertex>& cluster(int part, int j) const { return clusters.at(part).at(j); }

  /// Throws InvalidArgument when clusters leave their part, overlap, or
  /// together with B do not partition V, or W meets B.
  void validate() const;
};

/// Planted stand-in for a regularity partition: part i holds k clusters of
/// `cluster_size` followed by b_size / r exceptional vertices. Cluster-cluster
/// edges appear with probability d, edges at an exceptional vertex with
/// probability min(1, 1 - 1/r + params.gamma). Requires b_size divisible by r
/// and b_size <= r * k * cluster_size / 10.
[[nodiscard]] PartitionedInstance gen_super_regular_instance(int r, int k, int cluster_size, double d, int b_size,
                                                             const RandomSeed& seed, RegularityParams params = {});

[[nodiscard]] double pair_density(const PartiteGraph& g, std::span<const Vertex> x, std::span<const Vertex> y);

struct TuplePairDensity {
  int tuple = 0;
  int part_a = 0;
  int part_b = 0;
  double density = 0.0;
};

/// Densities of the pairs (V_aj, V_bj), a < b, inside each planted tuple j.
[[nodiscard]] std::vector<TuplePairDensity> tuple_densities(const PartitionedInstance& instance);

struct RegularityWitness {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  double density = 0.0;
};

struct RegularPairReport {
  double density = 0.0;
  bool regular = true;
  bool exhaustive = false;
  std::size_t subsets_checked = 0;
  std::optional<RegularityWitness> witness;
};

/// epsilon-regularity of (X, Y): |d(A, B) - d(X, Y)| < epsilon for every
/// A in X, B in Y with |A| >= epsilon |X| and |B| >= epsilon |Y|. Exhaustive
/// when both sides have at most 12 vertices; otherwise `samples` uniform
/// pairs are tried and a clean result only means "regular (sampled)".
/// X and Y must be nonempty, disjoint and each inside a single part.
[[nodiscard]] RegularPairReport check_regular_pair(const PartiteGraph& g, std::span<const Vertex> x,
                                                   std::span<const Vertex> y, double epsilon,
                                                   const RandomSeed& seed = {}, int samples = 200);

/// Shrinks equal-size clusters to ceil((1 - (r - 1) eps) m) vertices each,
/// keeping only vertices with degree >= (d - eps)|V_j| into every other
/// cluster, preferring the largest minimum degree. Throws InvalidArgument for
/// (r - 1) eps >= 1 and StageFailure when too few vertices qualify or the
/// kept clusters miss the (d - r eps) minimum degree.
[[nodiscard]] std::vector<std::vector<Vertex>> super_regularize(const PartiteGraph& g,
                                                                std::span<const std::vector<Vertex>> tuple,
                                                                double epsilon, double d);

/// Cluster graph R: vertex i * k + j stands for V_ij; V_aj V_bl is an edge
/// when the pair passes check_regular_pair and has density >= d.
[[nodiscard]] PartiteGraph build_reduced_graph(const PartitionedInstance& instance, double epsilon, double d,
                                               const RandomSeed& seed = {});

}  // namespace kfactor
