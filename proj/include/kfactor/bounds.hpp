#pragma once

#include "kfactor/clique.hpp"

namespace kfactor {

enum class Tail { upper, lower };

/// Chernoff tail for a sum of independent Bernoullis with mean lambda:
/// P[X >= (1+a)lambda] <= exp(-a^2 lambda / 3) for 0 < a < 3/2 and
/// P[X <= (1-a)lambda] <= exp(-a^2 lambda / 2) for 0 < a < 1.
[[nodiscard]] double chernoff_bound(double lambda, double a, Tail tail);

/// Janson moments of a clique family under edge sparsification at p.
struct JansonMoments {
  double lambda = 0.0;     ///< E X = |F| p^binom(r,2)
  double delta_bar = 0.0;  ///< sum over ordered intersecting pairs, diagonal included
};

/// Exact moments. Each ordered pair of members sharing a vertex contributes
/// p^|E(F) u E(F')|, with the union of edge sets formed explicitly.
[[nodiscard]] JansonMoments janson_lambda_delta(const CliqueFamily& family, double p);

/// Same Delta-bar via the shared-vertex-count shortcut
/// p^(2 binom(r,2) - binom(s,2)); valid because members are cliques.
[[nodiscard]] double janson_delta_bar_by_overlap(const CliqueFamily& family, double p);

struct TailBoundInput {
  double lambda_exp = 0.0;
  double delta_bar = 0.0;
  double a = 0.0;
  double median_m = 0.0;
  double change_c = 1.0;
  double proof_r = 1.0;
};

/// exp(-a^2 lambda^2 / (2 Delta-bar)); requires 0 < a < 1 and Delta-bar > 0.
[[nodiscard]] double janson_lower_bound(const TailBoundInput& in);

/// min(1, 2 exp(-a^2 / (16 r c^2 M))) for the lower tail of a certifiable
/// permutation function with median M.
[[nodiscard]] double talagrand_bound(const TailBoundInput& in, double a);

/// Regularity constant after slicing to fractions >= eta: max(eps/eta, 2 eps).
[[nodiscard]] double slicing_epsilon(double epsilon, double eta);

/// d0 = d^r / ((2 + r) 2^r), the counting-lemma regularity requirement.
[[nodiscard]] double counting_lemma_d0(double d, int r);

/// Guaranteed copies (d0 m)^r of K_r in an (eps, d)-regular r-tuple of m-sets.
[[nodiscard]] double counting_lemma_copies(double d, int r, int m);

/// Super-regularity parameters (sqrt(eps), 1 - eps) implied by all degrees
/// >= (1 - eps) times the opposite side.
struct SuperRegularParams {
  double epsilon = 0.0;
  double d = 0.0;
};
[[nodiscard]] SuperRegularParams large_degree_super_regular(double epsilon);

/// Failure probability n^(-alpha C^binom(r,2) n / 16) of the standard
/// surviving-copies estimate for a family of alpha n^r copies of K_r.
[[nodiscard]] double standard_computation_failure(double alpha, double C, int r, int n);

}  // namespace kfactor
