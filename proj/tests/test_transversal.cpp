#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "kfactor/error.hpp"
#include "kfactor/generators.hpp"
#include "kfactor/transversal.hpp"
#include "oracles.hpp"

using namespace kfactor;

namespace {

// Governing index recomputed from scratch: the block rank is found by
// walking the part pairs in lexicographic order.
int expected_index(int r, int n, const PermutationBundle& b, Vertex s, Vertex t) {
  if (s > t) std::swap(s, t);
  const int i = s / n, j = t / n;
  int rank = 0;
  for (int a = 0; a < r; ++a)
    for (int c = a + 1; c < r; ++c) {
      if (a == i && c == j) return rank * n + b.perm[static_cast<std::size_t>(i)][static_cast<std::size_t>(s % n)];
      ++rank;
    }
  return -1;
}

GraphFamily random_family(int r, int n, double keep, std::uint64_t seed) {
  std::vector<PartiteGraph> gs;
  for (int t = 0; t < n * r * (r - 1) / 2; ++t)
    gs.push_back(sparsify(PartiteGraph::complete(r, n), keep, RandomSeed{seed, static_cast<std::uint64_t>(t)}));
  return GraphFamily(r, n, std::move(gs));
}

}  // namespace

TEST_CASE("graph family blocks") {
  const auto f = GraphFamily::complete(3, 2);
  CHECK(f.size() == 6);
  CHECK(f.block_offset(0, 1) == 0);
  CHECK(f.block_offset(0, 2) == 2);
  CHECK(f.block_offset(1, 2) == 4);
  CHECK(f.block_of(3) == std::pair{0, 2});
  CHECK(f.block_of(5) == std::pair{1, 2});
  const auto f4 = GraphFamily::complete(4, 1);
  CHECK(f4.block_offset(1, 2) == 3);
  CHECK(f4.block_offset(2, 3) == 5);
  CHECK_THROWS_AS(GraphFamily(3, 2, std::vector<PartiteGraph>(5, PartiteGraph::complete(3, 2))), InvalidArgument);
  CHECK_THROWS_AS(GraphFamily(3, 2, std::vector<PartiteGraph>(6, PartiteGraph::complete(3, 3))), InvalidArgument);
}

TEST_CASE("build_b_pi") {
  SUBCASE("complete family") {
    const auto f = GraphFamily::complete(3, 3);
    CHECK(build_b_pi(f, PermutationBundle::sample(3, 3, RandomSeed{1, 1})).graph == PartiteGraph::complete(3, 3));
  }
  SUBCASE("n = 1 uses one graph per block") {
    const auto f = random_family(3, 1, 0.5, 11);
    const auto b = build_b_pi(f, PermutationBundle::identity(3, 1)).graph;
    CHECK(b.adjacent(0, 1) == f.graph(0).adjacent(0, 1));
    CHECK(b.adjacent(0, 2) == f.graph(1).adjacent(0, 2));
    CHECK(b.adjacent(1, 2) == f.graph(2).adjacent(1, 2));
  }
  SUBCASE("flipping pi_1 swaps the governing graphs") {
    std::vector<PartiteGraph> gs(6, PartiteGraph(3, 2));
    gs[0].add_edge(0, 2);
    gs[0].add_edge(0, 3);
    gs[1].add_edge(1, 2);
    const GraphFamily f(3, 2, gs);
    auto bundle = PermutationBundle::identity(3, 2);
    const auto id = build_b_pi(f, bundle).graph;
    CHECK(id.edges() == std::vector<Edge>{{0, 2}, {0, 3}, {1, 2}});
    bundle.perm[0] = {1, 0};
    CHECK(build_b_pi(f, bundle).graph.edge_count() == 0);
  }
  SUBCASE("edge rule and row degrees over every bundle") {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto f = random_family(3, 3, 0.6, 100 + s);
      for (const auto& bundle : PermutationBundle::all(3, 3)) {
        const auto b = build_b_pi(f, bundle).graph;
        for (Vertex u = 0; u < 9; ++u)
          for (Vertex v = u + 1; v < 9; ++v) {
            if (u / 3 == v / 3) continue;
            const int idx = expected_index(3, 3, bundle, u, v);
            REQUIRE(idx == governing_index(f, bundle, u, v));
            CHECK(b.adjacent(u, v) == f.graph(idx).adjacent(u, v));
          }
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j)
            for (Vertex u = 3 * i; u < 3 * i + 3; ++u)
              CHECK(b.degree_into(u, j) == f.graph(expected_index(3, 3, bundle, u, 3 * j)).degree_into(u, j));
      }
    }
  }
  SUBCASE("sparsified construction matches sparsifying every member") {
    const auto f = random_family(3, 4, 0.8, 7);
    const auto bundle = PermutationBundle::sample(3, 4, RandomSeed{7, 7});
    for (double p : {0.0, 0.3, 0.7, 1.0})
      CHECK(build_b_pi_sparsified(f, bundle, p, RandomSeed{9, 9}) == build_b_pi(f.sparsify(p, RandomSeed{9, 9}), bundle).graph);
  }
  SUBCASE("bundle mismatch") {
    const auto f = GraphFamily::complete(3, 2);
    CHECK_THROWS_AS((void)build_b_pi(f, PermutationBundle::identity(3, 3)), InvalidArgument);
    PermutationBundle bad{{{0, 0}, {0, 1}, {1, 0}}};
    CHECK_THROWS_AS((void)build_b_pi(f, bad), InvalidArgument);
  }
  CHECK(PermutationBundle::all(3, 2).size() == 8);
  CHECK_THROWS_AS((void)PermutationBundle::all(3, 6, 1000), GuardExceeded);
}

TEST_CASE("lift_factor and verify_transversal") {
  auto indices_are_all = [](const TransversalFactor& tf, int m) {
    std::vector<int> got;
    for (const auto& ie : tf.assignment) got.push_back(ie.index);
    std::sort(got.begin(), got.end());
    std::vector<int> want(static_cast<std::size_t>(m));
    std::iota(want.begin(), want.end(), 0);
    return got == want;
  };

  const auto single = GraphFamily::complete(3, 1);
  const auto aux1 = build_b_pi(single, PermutationBundle::identity(3, 1));
  const auto tf1 = lift_factor(aux1, *find_factor(aux1.graph));
  CHECK(tf1.assignment == std::vector<IndexedEdge>{{{0, 1}, 0}, {{0, 2}, 1}, {{1, 2}, 2}});

  const auto f = GraphFamily::complete(3, 3);
  const auto aux = build_b_pi(f, PermutationBundle::sample(3, 3, RandomSeed{2, 0}));
  const auto tf = lift_factor(aux, *find_factor(aux.graph));
  CHECK(verify_transversal(f, tf));
  CHECK(indices_are_all(tf, 9));

  auto dup = tf;
  dup.assignment[1].index = dup.assignment[0].index;
  CHECK(verify_transversal(f, dup).reason == "index");
  std::vector<PartiteGraph> gs(f.graphs());
  const auto e0 = tf.assignment[0];
  gs[static_cast<std::size_t>(e0.index)].remove_edge(e0.edge.u, e0.edge.v);
  CHECK(verify_transversal(GraphFamily(3, 3, gs), tf).reason == "membership");
  auto missing = tf;
  missing.assignment.pop_back();
  CHECK(verify_transversal(f, missing).reason == "assignment");
  auto short_factor = tf;
  short_factor.factor.cliques.pop_back();
  CHECK(verify_transversal(f, short_factor).reason == "coverage");

  SUBCASE("random dense families") {
    int lifted = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto fam = GraphFamily::min_degree(3, 9, 0.2, 0.5, RandomSeed{s, 4});
      const auto a = build_b_pi(fam, PermutationBundle::sample(3, 9, RandomSeed{s, 5}));
      const auto fac = find_factor(a.graph);
      if (!fac) continue;
      const auto t = lift_factor(a, *fac);
      CHECK(verify_transversal(fam, t));
      CHECK(indices_are_all(t, 27));
      ++lifted;
    }
    CHECK(lifted == 10);
  }

  SUBCASE("certificate round trip") {
    std::stringstream ss;
    write_transversal(ss, tf);
    const auto back = read_transversal(ss);
    CHECK(back.factor.cliques == tf.factor.cliques);
    CHECK(back.assignment == tf.assignment);
    std::stringstream bad("0 3 6\nedge 0 3 => 1\n");
    CHECK_THROWS_AS((void)read_transversal(bad), ParseError);
  }
}

TEST_CASE("bpi_min_degree_trial") {
  const auto full = bpi_min_degree_trial(GraphFamily::complete(3, 4), 0.2, 10, RandomSeed{});
  CHECK(full.frequency == 1.0);
  CHECK(full.min_star_degree == 4);

  const auto fam = GraphFamily::min_degree(3, 30, 0.2, 0.5, RandomSeed{3, 3});
  const auto res = bpi_min_degree_trial(fam, 0.2, 20, RandomSeed{3, 4});
  CHECK(res.row_side_min >= star_degree_floor(3, 30, 0.2));
  CHECK(res.trials == 20);
  CHECK(res.successes <= 20);
  CHECK(res.frequency == doctest::Approx(res.successes / 20.0));

  std::vector<PartiteGraph> gs(fam.graphs());
  gs[5].remove_edge(0, gs[5].neighbours_in(0, 1).first());
  for (Vertex v : gs[5].neighbours_in(0, 1).to_vector()) gs[5].remove_edge(0, v);
  CHECK_THROWS_WITH_AS((void)bpi_min_degree_trial(GraphFamily(3, 30, gs), 0.2, 5, RandomSeed{}),
                       doctest::Contains("member 5"), InvalidArgument);
}

TEST_CASE("reduce_nonpartite") {
  const std::vector<SimpleGraph> complete(30, SimpleGraph::complete(30));
  const auto red = reduce_nonpartite(complete, 3, 0.1, RandomSeed{1, 1});
  CHECK(red.attempts == 1);
  CHECK(red.family.union_graph() == PartiteGraph::complete(3, 10));
  CHECK_THROWS_AS((void)reduce_nonpartite(std::vector<SimpleGraph>(3, SimpleGraph::complete(7)), 3, 0.2, RandomSeed{}),
                  InvalidArgument);
  CHECK_THROWS_AS((void)reduce_nonpartite(std::vector<SimpleGraph>(2, SimpleGraph::complete(6)), 3, 0.2, RandomSeed{}),
                  InvalidArgument);

  SUBCASE("dense members, N = 300") {
    std::vector<SimpleGraph> members;
    for (int t = 0; t < 300; ++t)
      members.push_back(gen_min_degree_graph(300, 1.0 - 1.0 / 3 + 0.2, 0.95, RandomSeed{5, static_cast<std::uint64_t>(t)}));
    int quick = 0;
    const int seeds = 100;
    for (std::uint64_t s = 0; s < seeds; ++s)
      if (find_balanced_partition(members, 3, 0.2, RandomSeed{s, 2}).attempts <= 3) ++quick;
    CHECK(quick >= 99);
    for (std::uint64_t s = 0; s < 2; ++s) {
      const auto out = reduce_nonpartite(members, 3, 0.2, RandomSeed{s, 2});
      CHECK(out.partition == find_balanced_partition(members, 3, 0.2, RandomSeed{s, 2}).classes);
      const double need = (1.0 - 1.0 / 3 + 0.1) * 100;
      CHECK(out.worst_degree >= need - 1e-9);
      for (const auto& g : out.family.graphs()) CHECK(oracle::min_star_degree(g) >= need - 1e-9);
      for (int t = 0; t < 300; t += 37)
        for (const auto& e : out.family.graph(t).edges()) {
          const Vertex a = out.partition[static_cast<std::size_t>(e.u / 100)][static_cast<std::size_t>(e.u % 100)];
          const Vertex b = out.partition[static_cast<std::size_t>(e.v / 100)][static_cast<std::size_t>(e.v % 100)];
          REQUIRE(members[static_cast<std::size_t>(t)].adjacent(a, b));
        }
    }
  }
}

TEST_CASE("transversal_oracle") {
  const auto tf = transversal_oracle(GraphFamily::complete(3, 2));
  REQUIRE(tf.has_value());
  CHECK(verify_transversal(GraphFamily::complete(3, 2), *tf));

  std::vector<PartiteGraph> gs(6, PartiteGraph::complete(3, 2));
  gs[4] = PartiteGraph(3, 2);
  CHECK_FALSE(transversal_oracle(GraphFamily(3, 2, gs)).has_value());
  CHECK_THROWS_AS((void)transversal_oracle(GraphFamily::complete(3, 5)), GuardExceeded);
  CHECK_THROWS_AS((void)transversal_oracle(GraphFamily::complete(4, 1)), GuardExceeded);

  SUBCASE("agrees with exhaustive bundles at n = 2") {
    int with_solution = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto fam = random_family(3, 2, 0.75, 300 + s);
      const auto direct = transversal_oracle(fam);
      if (direct) CHECK(verify_transversal(fam, *direct));
      bool via_bundle = false;
      for (const auto& bundle : PermutationBundle::all(3, 2)) {
        const auto aux = build_b_pi(fam, bundle);
        const auto fac = find_factor(aux.graph);
        if (!fac) continue;
        via_bundle = true;
        CHECK(verify_transversal(fam, lift_factor(aux, *fac)));
      }
      if (via_bundle) {
        CHECK(direct.has_value());
        ++with_solution;
      }
    }
    CHECK(with_solution > 0);
  }
}

TEST_CASE("family files") {
  const auto dir = std::filesystem::temp_directory_path() / "kfactor_family_test";
  std::filesystem::create_directories(dir);
  const auto fam = random_family(3, 3, 0.6, 42);
  save_family(dir / "fam.txt", fam);
  const auto back = load_family(dir / "fam.txt");
  CHECK(back.graphs() == fam.graphs());
  {
    std::ofstream bad(dir / "bad.txt");
    bad << "family 3 3 9\nblocks 0-2 0-1 1-2\n";
  }
  CHECK_THROWS_AS((void)load_family(dir / "bad.txt"), ParseError);
  {
    std::ofstream missing(dir / "missing.txt");
    missing << "family 3 3 9\n";
  }
  CHECK_THROWS_AS((void)load_family(dir / "missing.txt"), ParseError);
  std::filesystem::remove_all(dir);
}
