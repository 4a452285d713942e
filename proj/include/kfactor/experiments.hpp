#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfactor/factor_solver.hpp"

namespace kfactor {

enum class SweepMode { threshold, transversal };

struct SweepConfig {
  SweepMode mode = SweepMode::threshold;
  int r = 3;
  std::vector<int> ns{30};
  double gamma = 0.2;
  std::vector<double> c_grid{0.1, 0.2, 0.5, 1, 2, 5, 10};
  int trials = 200;
  std::uint64_t seed = 1;
  double edge_keep = 0.5;  ///< generator density target, see gen_min_degree_instance
  int threads = 1;
  bool timing = false;     ///< record wall_ms; off keeps output byte-stable
  SolverLimits limits;

  /// Throws InvalidArgument on empty grids, trials < 1, threads < 1 or an
  /// invalid r, n, gamma combination.
  void validate() const;
};

struct SweepRow {
  SweepMode mode = SweepMode::threshold;
  int r = 0;
  int n = 0;
  double gamma = 0.0;
  double c = 0.0;
  double p = 0.0;
  bool clamped = false;
  int trials = 0;
  int successes = 0;
  int skipped = 0;  ///< trials stopped by a solver guard
  double success_rate = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

/// Trial t at size n draws its instance and its sparsification from seeds
/// that depend only on (seed, n, t), so every C on the grid sees the same
/// instances and nested edge sets.
[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// One threshold-sweep trial: instance from gen_min_degree_instance,
/// sparsified at p, decided by find_factor and checked by verify_factor.
[[nodiscard]] bool threshold_trial(const SweepConfig& config, int n, double p, int trial);
/// One transversal-sweep trial: family, bundle, B_pi(p), factor, lift and
/// verify_transversal against the sparsified family.
[[nodiscard]] bool transversal_trial(const SweepConfig& config, int n, double p, int trial);

[[nodiscard]] std::string mode_name(SweepMode mode);
/// The config as one JSON object, embedded in every output.
[[nodiscard]] std::string config_json(const SweepConfig& config);

/// `# config=<json>` line, then the header
/// mode,r,n,gamma,C,p,trials,successes,success_rate,seed,wall_ms.
/// A row with guarded trials prints `skipped` as its success_rate.
[[nodiscard]] std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows);
[[nodiscard]] std::string sweep_json(const SweepConfig& config, const std::vector<SweepRow>& rows);
/// Success rate against C on a log axis, one polyline per n.
[[nodiscard]] std::string sweep_svg(const SweepConfig& config, const std::vector<SweepRow>& rows);

struct JansonReport {
  double p = 0.0;
  std::size_t cliques = 0;
  double lambda = 0.0;
  double delta_bar = 0.0;
  double delta_bar_overlap = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double mc_mean = 0.0;
  double mc_variance = 0.0;
  struct Row {
    double a = 0.0;
    double bound = 0.0;       ///< exp(-a^2 lambda^2 / (2 Delta-bar))
    double empirical = 0.0;   ///< observed P[X <= (1 - a) lambda]
  };
  std::vector<Row> table;
};

/// Exact moments of K_r(G) at p plus a Monte Carlo estimate of the number of
/// surviving copies. Throws GuardExceeded when K_r(G) has more than
/// `max_cliques` members.
[[nodiscard]] JansonReport janson_report(const PartiteGraph& g, double p, int trials, const RandomSeed& seed,
                                         std::size_t max_cliques = 200000);
[[nodiscard]] std::string janson_json(const JansonReport& report);

}  // namespace kfactor
