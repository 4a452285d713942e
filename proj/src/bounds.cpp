#include "kfactor/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "kfactor/error.hpp"

namespace kfactor {
namespace {

double binom2(double r) { return r * (r - 1) / 2.0; }

// p^k with p^0 = 1 including p = 0.
double power(double p, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

}  // namespace

double chernoff_bound(double lambda, double a, Tail tail) {
  if (lambda < 0) throw InvalidArgument("expected value must be nonnegative");
  if (tail == Tail::upper) {
    if (!(a > 0 && a < 1.5)) throw InvalidArgument("upper Chernoff tail needs 0 < a < 3/2, got " + std::to_string(a));
    return std::exp(-a * a * lambda / 3.0);
  }
  if (!(a > 0 && a < 1)) throw InvalidArgument("lower Chernoff tail needs 0 < a < 1, got " + std::to_string(a));
  return std::exp(-a * a * lambda / 2.0);
}

JansonMoments janson_lambda_delta(const CliqueFamily& family, double p) {
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("probability outside [0, 1]");
  if (family.empty()) return {};
  const auto r = static_cast<int>(family.front().size());
  const int edges_per = r * (r - 1) / 2;
  JansonMoments out;
  out.lambda = static_cast<double>(family.size()) * power(p, edges_per);

  int universe = 0;
  for (const auto& c : family)
    for (auto v : c.vertices) universe = std::max(universe, v + 1);
  const auto by_vertex = cliques_by_vertex(universe, family);

  std::vector<std::size_t> partners;
  std::vector<std::pair<Vertex, Vertex>> edge_union;
  for (std::size_t a = 0; a < family.size(); ++a) {
    partners.clear();
    for (auto v : family[a].vertices) {
      const auto& list = by_vertex[static_cast<std::size_t>(v)];
      partners.insert(partners.end(), list.begin(), list.end());
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (auto b : partners) {
      edge_union.clear();
      for (const auto* c : {&family[a], &family[b]})
        for (std::size_t i = 0; i < c->size(); ++i)
          for (std::size_t j = i + 1; j < c->size(); ++j) edge_union.emplace_back(c->vertices[i], c->vertices[j]);
      std::sort(edge_union.begin(), edge_union.end());
      const auto distinct = std::unique(edge_union.begin(), edge_union.end()) - edge_union.begin();
      out.delta_bar += power(p, static_cast<int>(distinct));
    }
  }
  return out;
}

double janson_delta_bar_by_overlap(const CliqueFamily& family, double p) {
  double total = 0.0;
  for (const auto& a : family) {
    const auto r = static_cast<double>(a.size());
    for (const auto& b : family) {
      std::vector<Vertex> shared;
      std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      const auto s = static_cast<double>(shared.size());
      total += power(p, static_cast<int>(2 * binom2(r) - binom2(s)));
    }
  }
  return total;
}

double janson_lower_bound(const TailBoundInput& in) {
  if (!(in.a > 0 && in.a < 1)) throw InvalidArgument("Janson bound needs 0 < a < 1");
  if (!(in.delta_bar > 0)) throw InvalidArgument("Janson bound needs Delta-bar > 0");
  if (in.lambda_exp < 0) throw InvalidArgument("expected value must be nonnegative");
  return std::exp(-in.a * in.a * in.lambda_exp * in.lambda_exp / (2.0 * in.delta_bar));
}

double talagrand_bound(const TailBoundInput& in, double a) {
  if (!(in.median_m > 0)) throw InvalidArgument("median must be positive");
  if (!(in.change_c > 0)) throw InvalidArgument("change constant c must be positive");
  if (!(in.proof_r > 0)) throw InvalidArgument("certificate constant r must be positive");
  if (a < 0) throw InvalidArgument("deviation must be nonnegative");
  const double v = 2.0 * std::exp(-a * a / (16.0 * in.proof_r * in.change_c * in.change_c * in.median_m));
  return std::min(1.0, v);
}

double slicing_epsilon(double epsilon, double eta) {
  if (!(eta > epsilon)) throw InvalidArgument("slicing needs eta > epsilon");
  return std::max(epsilon / eta, 2 * epsilon);
}

double counting_lemma_d0(double d, int r) {
  return std::pow(d, r) / ((2.0 + r) * std::pow(2.0, r));
}

double counting_lemma_copies(double d, int r, int m) {
  return std::pow(counting_lemma_d0(d, r) * m, r);
}

SuperRegularParams large_degree_super_regular(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw InvalidArgument("need 0 < epsilon < 1");
  return {std::sqrt(epsilon), 1.0 - epsilon};
}

double standard_computation_failure(double alpha, double C, int r, int n) {
  const double exponent = alpha * std::pow(C, binom2(r)) * n / 16.0;
  return std::pow(static_cast<double>(n), -exponent);
}

}  // namespace kfactor
