#include <cmath>

#include "doctest.h"
#include "kfactor/bounds.hpp"
#include "kfactor/clique.hpp"
#include "kfactor/error.hpp"
#include "kfactor/generators.hpp"
#include "oracles.hpp"

using namespace kfactor;

TEST_CASE("enumerate K_r") {
  CHECK(enumerate_kr(PartiteGraph::complete(3, 1)).size() == 1);
  CHECK(enumerate_kr(PartiteGraph::complete(3, 2)).size() == 8);
  auto g = PartiteGraph::complete(3, 2);
  for (Vertex u = 0; u < 2; ++u)
    for (Vertex v = 2; v < 4; ++v) g.remove_edge(u, v);
  CHECK(enumerate_kr(g).empty());

  SUBCASE("matches the tuple oracle for r*n <= 18, in lexicographic order") {
    CounterRng rng(RandomSeed{7, 0});
    for (int trial = 0; trial < 200; ++trial) {
      const int r = 2 + static_cast<int>(rng.below(4));
      const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(18 / r)));
      PartiteGraph h(r, n);
      const double keep = 0.3 + 0.7 * rng.uniform();
      for (Vertex u = 0; u < h.vertex_count(); ++u)
        for (Vertex v = h.part_end(h.part_of(u)); v < h.vertex_count(); ++v)
          if (rng.bernoulli(keep)) h.add_edge(u, v);
      const auto got = enumerate_kr(h);
      const auto want = oracle::all_cliques(h);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].vertices == want[i]);
      for (Vertex v = 0; v < h.vertex_count(); ++v) {
        CliqueFamily filtered;
        for (const auto& c : got)
          if (c.contains(v)) filtered.push_back(c);
        CHECK(rooted_cliques(h, v) == filtered);
      }
    }
  }
}

TEST_CASE("rooted cliques") {
  const auto k222 = PartiteGraph::complete(3, 2);
  for (Vertex v = 0; v < 6; ++v) CHECK(rooted_cliques(k222, v).size() == 4);
  auto g = k222;
  for (Vertex u : {2, 3, 4, 5}) g.remove_edge(0, u);
  CHECK(rooted_cliques(g, 0).empty());
  for (Vertex v = 0; v < 3; ++v) CHECK(rooted_cliques(PartiteGraph::complete(3, 1), v).size() == 1);
  CHECK_THROWS_AS((void)rooted_cliques(k222, 6), InvalidArgument);
}

TEST_CASE("count K_r in induced subgraph") {
  const auto k222 = PartiteGraph::complete(3, 2);
  std::vector<std::vector<Vertex>> whole{{0, 1}, {2, 3}, {4, 5}};
  CHECK(count_kr_induced(k222, whole) == 8);
  std::vector<std::vector<Vertex>> with_empty{{0, 1}, {}, {4, 5}};
  CHECK(count_kr_induced(k222, with_empty) == 0);
  std::vector<std::vector<Vertex>> singles{{1}, {2}, {5}};
  CHECK(count_kr_induced(k222, singles) == 1);
  std::vector<std::vector<Vertex>> crossing{{0, 2}, {3}, {4}};
  CHECK_THROWS_AS((void)count_kr_induced(k222, crossing), InvalidArgument);
}

TEST_CASE("Chernoff bound") {
  CHECK(chernoff_bound(3, 1, Tail::upper) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(chernoff_bound(3, 1, Tail::upper) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK_THROWS_AS((void)chernoff_bound(2, 1, Tail::lower), InvalidArgument);
  CHECK_THROWS_AS((void)chernoff_bound(2, 1.5, Tail::upper), InvalidArgument);
  CHECK(chernoff_bound(0, 0.5, Tail::upper) == 1.0);
  CHECK(chernoff_bound(0, 0.5, Tail::lower) == 1.0);
  CHECK(chernoff_bound(8, 0.5, Tail::lower) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("Janson moments") {
  const auto k222 = PartiteGraph::complete(3, 2);
  const auto family = enumerate_kr(k222);
  SUBCASE("complete K_{2,2,2} at p = 1/2 is exact") {
    const auto m = janson_lambda_delta(family, 0.5);
    CHECK(m.lambda == 1.0);
    // Oracle: classify the 64 ordered pairs by shared vertices (3/2/1/0):
    // 8 p^3 + 24 p^5 + 24 p^6 over p = 1/2.
    const double p = 0.5;
    CHECK(m.delta_bar == 8 * p * p * p + 24 * std::pow(p, 5) + 24 * std::pow(p, 6));
    CHECK(m.delta_bar == 2.125);
    CHECK(janson_delta_bar_by_overlap(family, 0.5) == 2.125);
  }
  SUBCASE("single member") {
    CliqueFamily one{family.front()};
    const auto m = janson_lambda_delta(one, 0.3);
    CHECK(m.lambda == doctest::Approx(std::pow(0.3, 3)));
    CHECK(m.delta_bar == m.lambda);
  }
  SUBCASE("p = 0") {
    const auto m = janson_lambda_delta(family, 0.0);
    CHECK(m.lambda == 0.0);
    CHECK(m.delta_bar == 0.0);
  }
  SUBCASE("Delta-bar >= lambda, equality iff pairwise disjoint") {
    const auto g = gen_min_degree_instance(4, 4, 0.05, 0.6, RandomSeed{3, 3});
    const auto all = enumerate_kr(g);
    for (double p : {0.2, 0.5, 0.9}) {
      const auto m = janson_lambda_delta(all, p);
      CHECK(m.delta_bar > m.lambda);
      CHECK(m.delta_bar == doctest::Approx(janson_delta_bar_by_overlap(all, p)).epsilon(1e-12));
    }
    CliqueFamily disjoint{Clique{{0, 4, 8, 12}}, Clique{{1, 5, 9, 13}}};
    const auto k = janson_lambda_delta(disjoint, 0.7);
    CHECK(k.delta_bar == doctest::Approx(k.lambda).epsilon(1e-15));
  }
  SUBCASE("Monte Carlo surviving count has mean lambda") {
    const auto g = gen_min_degree_instance(3, 4, 0.1, 0.8, RandomSeed{5, 1});
    const auto all = enumerate_kr(g);
    const double p = 0.6;
    const auto m = janson_lambda_delta(all, p);
    const int trials = 10000;
    double sum = 0;
    double sum_sq = 0;
    for (int t = 0; t < trials; ++t) {
      const auto h = sparsify(g, p, RandomSeed{31, static_cast<std::uint64_t>(t)});
      double alive = 0;
      for (const auto& c : all) alive += is_transversal_clique(h, c) ? 1 : 0;
      sum += alive;
      sum_sq += alive * alive;
    }
    const double mean = sum / trials;
    // Vertex-disjoint members are independent, so
    // Var X = Delta-bar - (ordered vertex-sharing pairs) * p^(2 binom(r,2)).
    double sharing = 0;
    for (const auto& a : all)
      for (const auto& b : all) sharing += a.intersects(b) ? 1 : 0;
    const double var = m.delta_bar - sharing * std::pow(p, 6);
    CHECK(std::abs(mean - m.lambda) <= 3 * std::sqrt(var / trials));
    CHECK(sum_sq / trials - mean * mean == doctest::Approx(var).epsilon(0.1));
  }
}

TEST_CASE("Janson lower-tail bound") {
  TailBoundInput in;
  in.lambda_exp = 1.0;
  in.delta_bar = 2.125;
  in.a = 0.5;
  CHECK(janson_lower_bound(in) == doctest::Approx(std::exp(-1.0 / 17)).epsilon(1e-15));
  in.a = 1e-9;
  CHECK(janson_lower_bound(in) == doctest::Approx(1.0));
  in.a = 0.5;
  in.delta_bar = 0;
  CHECK_THROWS_AS((void)janson_lower_bound(in), InvalidArgument);
  in.delta_bar = 1;
  in.a = 1.0;
  CHECK_THROWS_AS((void)janson_lower_bound(in), InvalidArgument);
}

TEST_CASE("Talagrand-type bound") {
  TailBoundInput in;
  in.median_m = 50;
  in.change_c = 1;
  in.proof_r = 1;
  CHECK(talagrand_bound(in, 0) == 1.0);
  const double n = 400;
  in.median_m = n;
  CHECK(talagrand_bound(in, n / 2) == doctest::Approx(2 * std::exp(-n / 64)));
  SUBCASE("gamma-deviation of the B_pi degree claim") {
    const double gamma = 0.2;
    for (double M : {100.0, 400.0, 1000.0}) {
      in.median_m = M;
      const double bound = talagrand_bound(in, gamma * M / 4);
      CHECK(bound == doctest::Approx(std::min(1.0, 2 * std::exp(-gamma * gamma * M / 256))));
      // With M >= n/4 this is at most 2 exp(-(gamma/32)^2 n).
      const double nn = 4 * M;
      CHECK(bound <= 2 * std::exp(-(gamma / 32) * (gamma / 32) * nn) + 1e-15);
    }
  }
  in.median_m = 0;
  CHECK_THROWS_AS((void)talagrand_bound(in, 1), InvalidArgument);
  in.median_m = 1;
  in.change_c = 0;
  CHECK_THROWS_AS((void)talagrand_bound(in, 1), InvalidArgument);
  in.change_c = 1;
  in.proof_r = -1;
  CHECK_THROWS_AS((void)talagrand_bound(in, 1), InvalidArgument);
}

TEST_CASE("regularity bookkeeping") {
  CHECK(slicing_epsilon(0.1, 0.5) == doctest::Approx(0.2));
  CHECK(slicing_epsilon(0.01, 0.2) == doctest::Approx(0.05));
  CHECK_THROWS_AS((void)slicing_epsilon(0.3, 0.2), InvalidArgument);
  CHECK(counting_lemma_d0(0.5, 3) == doctest::Approx(0.125 / 40));
  CHECK(counting_lemma_copies(1.0, 2, 16) == doctest::Approx(1.0));
  const auto sr = large_degree_super_regular(0.04);
  CHECK(sr.epsilon == doctest::Approx(0.2));
  CHECK(sr.d == doctest::Approx(0.96));
  CHECK(standard_computation_failure(0.5, 2, 3, 100) == doctest::Approx(std::pow(100.0, -0.5 * 8 * 100 / 16)));
}
