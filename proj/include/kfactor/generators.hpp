#pragma once

#include <cstdint>
#include <vector>

#include "kfactor/partite_graph.hpp"
#include "kfactor/random.hpp"

namespace kfactor {

/// Inputs of the sparsification threshold C * n^(-2/r) * (log n)^(1/binom(r,2)).
struct ThresholdParams {
  double C = 1.0;
  int r = 3;
  int n = 2;
  double gamma = 0.1;
};

struct ThresholdValue {
  double p = 0.0;
  bool clamped = false;  ///< the raw formula exceeded 1
};

/// Natural log; clamps to 1 and flags the clamp. Requires n >= 2.
[[nodiscard]] ThresholdValue threshold_p(const ThresholdParams& params);

/// Per-round probability p' with 1 - (1 - p')^rounds = 1 - (1 - p), i.e.
/// `rounds` independent p'-sparsifications union to one p-sparsification.
[[nodiscard]] double split_rounds(double p, int rounds);

/// G(p): keeps each edge independently with probability p. The decision for
/// edge {u, v} is the keyed draw at index u * N + v, so for a fixed seed the
/// kept sets are nested in p.
[[nodiscard]] PartiteGraph sparsify(const PartiteGraph& g, double p, const RandomSeed& seed);
[[nodiscard]] SimpleGraph sparsify(const SimpleGraph& g, double p, const RandomSeed& seed);

/// ceil((1 - 1/r + gamma) * n), the pair-degree floor of the min-degree hypothesis.
[[nodiscard]] int star_degree_floor(int r, int n, double gamma);

/// Balanced r-partite graph with min_star_degree >= star_degree_floor(r, n, gamma).
///
/// Starts complete; for each part pair, visits the n^2 cross pairs in random
/// order and deletes an edge unless that would push an endpoint's degree into
/// the other part below the floor, stopping once the kept fraction reaches
/// edge_keep or no further deletion is allowed.
[[nodiscard]] PartiteGraph gen_min_degree_instance(int r, int n, double gamma, double edge_keep,
                                                   const RandomSeed& seed);

/// Complete r-partite graph with every edge between one random vertex and one
/// random other part removed; that vertex is in no K_r, so no K_r-factor exists.
[[nodiscard]] PartiteGraph gen_no_factor_witness(int r, int n, const RandomSeed& seed);

/// Graph on N vertices with min degree >= ceil(min_fraction * N), built by the
/// same guarded random deletion as gen_min_degree_instance.
[[nodiscard]] SimpleGraph gen_min_degree_graph(int vertex_count, double min_fraction, double edge_keep,
                                               const RandomSeed& seed);

/// Uniform equipartition of [0, vertex_count) into r classes, each sorted.
[[nodiscard]] std::vector<std::vector<Vertex>> random_balanced_partition(int vertex_count, int r,
                                                                         const RandomSeed& seed);

}  // namespace kfactor
