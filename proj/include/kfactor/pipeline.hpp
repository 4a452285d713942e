#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfactor/embedding.hpp"
#include "kfactor/regularity.hpp"
#include "kfactor/weights.hpp"

namespace kfactor {

struct PipelineOptions {
  int w_retries = 100;
  bool super_regularize = false;  ///< shrink each tuple first, moving removed vertices into B
  SolverLimits limits;
};

/// Outcome of the reserved-set draw.
struct ReservedSelection {
  std::vector<Vertex> reserved;
  int attempts = 0;
  bool sizes_ok = false;          ///< |W meets V_ij| within (1/2 +- alpha) n/k
  bool root_degrees_ok = false;   ///< exceptional vertices see >= (1 - 1/r + gamma/4)|W meets V_i|
  int degree_shortfalls = 0;      ///< same inequality failing at non-exceptional vertices
  int halving_violations = 0;     ///< d(v, V_ij meets W) outside [1/4, 3/4] d(v, V_ij)
};

struct PipelineReport {
  bool success = false;
  std::string failure_stage;   ///< empty on success
  std::string failure_detail;
  int r = 0;
  int n = 0;
  int k = 0;
  double p = 0.0;
  double p_round = 0.0;
  int target = 0;              ///< floor(9n / 10k)
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
  std::optional<ReservedSelection> selection;
  std::vector<Vertex> exceptional;
  std::optional<CoverResult> cover;
  std::optional<WeightAssignment> weights;
  std::vector<int> residues;    ///< |V''_ij minus V(K_2)| after round 2, index i * k + j
  Tiling round1;
  Tiling round2;
  Tiling round3;
  bool exceptional_covered = false;
  bool verified = false;
  std::optional<Factor> factor;
};

/// Draws W by independent 1/2-thinning of V minus B until the cluster sizes
/// and the exceptional-vertex degrees into W meet their bounds; the halving
/// condition and the degree bound at cluster vertices are recorded only.
/// Throws StageFailure after `retries` rejected draws.
[[nodiscard]] ReservedSelection select_reserved(const PartitionedInstance& instance, const RandomSeed& seed,
                                                int retries);

/// The three-round construction: p' with (1 - p')^3 = 1 - p; round 1 covers
/// B by rooted cliques inside B and W; round 2 balances every cluster to
/// floor(9n / 10k) uncovered vertices; round 3 factors each balanced tuple.
/// Stage failures are reported, never thrown; InvalidArgument is thrown for
/// malformed instances or p outside [0, 1].
[[nodiscard]] PipelineReport run_pipeline(const PartitionedInstance& instance, double p, const RandomSeed& seed,
                                          const PipelineOptions& options = {});

/// Pretty-printed JSON with stable key order.
[[nodiscard]] std::string report_to_json(const PipelineReport& report);

[[nodiscard]] std::string instance_to_json(const PartitionedInstance& instance);
/// Throws ParseError on malformed documents.
[[nodiscard]] PartitionedInstance instance_from_json(const std::string& text);

}  // namespace kfactor
