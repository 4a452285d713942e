#include "kfactor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability outside [0, 1]: " + std::to_string(p));
}

// Keeps the floor exact when (1 - 1/r + gamma) * n lands on an integer up to
// rounding, e.g. gamma = 1/r.
int ceil_tolerant(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

}  // namespace

ThresholdValue threshold_p(const ThresholdParams& params) {
  if (params.n < 2) throw InvalidArgument("threshold_p requires n >= 2");
  if (params.r < 2) throw InvalidArgument("threshold_p requires r >= 2");
  if (params.C < 0) throw InvalidArgument("threshold constant C must be nonnegative");
  const double n = params.n;
  const double pairs = params.r * (params.r - 1) / 2.0;
  const double raw = params.C * std::pow(n, -2.0 / params.r) * std::pow(std::log(n), 1.0 / pairs);
  if (raw > 1.0) return {1.0, true};
  return {raw, false};
}

double split_rounds(double p, int rounds) {
  check_probability(p);
  if (rounds < 1) throw InvalidArgument("rounds must be at least 1");
  if (rounds == 1) return p;
  return -std::expm1(std::log1p(-p) / rounds);
}

PartiteGraph sparsify(const PartiteGraph& g, double p, const RandomSeed& seed) {
  check_probability(p);
  PartiteGraph out(g.parts(), g.part_size());
  const auto total = static_cast<std::uint64_t>(g.vertex_count());
  for (const auto& e : g.edges())
    if (keyed_uniform(seed, static_cast<std::uint64_t>(e.u) * total + static_cast<std::uint64_t>(e.v)) < p)
      out.add_edge(e.u, e.v);
  return out;
}

SimpleGraph sparsify(const SimpleGraph& g, double p, const RandomSeed& seed) {
  check_probability(p);
  SimpleGraph out(g.vertex_count());
  const auto total = static_cast<std::uint64_t>(g.vertex_count());
  for (const auto& e : g.edges())
    if (keyed_uniform(seed, static_cast<std::uint64_t>(e.u) * total + static_cast<std::uint64_t>(e.v)) < p)
      out.add_edge(e.u, e.v);
  return out;
}

int star_degree_floor(int r, int n, double gamma) {
  return ceil_tolerant((1.0 - 1.0 / r + gamma) * n);
}

PartiteGraph gen_min_degree_instance(int r, int n, double gamma, double edge_keep, const RandomSeed& seed) {
  if (r < 2 || n < 1) throw InvalidArgument("gen_min_degree_instance requires r >= 2 and n >= 1");
  check_probability(edge_keep);
  const int floor = star_degree_floor(r, n, gamma);
  if (gamma < 0 || floor > n)
    throw InvalidArgument("infeasible gamma " + std::to_string(gamma) + ": degree floor " +
                          std::to_string(floor) + " exceeds part size " + std::to_string(n));

  auto g = PartiteGraph::complete(r, n);
  const auto cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const auto target = static_cast<std::size_t>(std::llround((1.0 - edge_keep) * static_cast<double>(cells)));
  std::vector<std::uint32_t> order(cells);
  std::vector<int> deg_i(static_cast<std::size_t>(n));
  std::vector<int> deg_j(static_cast<std::size_t>(n));
  std::uint64_t pair_index = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j, ++pair_index) {
      if (target == 0) continue;
      std::iota(order.begin(), order.end(), 0U);
      CounterRng rng(seed.derive(pair_index));
      rng.shuffle(std::span(order));
      std::fill(deg_i.begin(), deg_i.end(), n);
      std::fill(deg_j.begin(), deg_j.end(), n);
      std::size_t removed = 0;
      for (auto cell : order) {
        if (removed == target) break;
        const auto a = static_cast<int>(cell / static_cast<std::uint32_t>(n));
        const auto b = static_cast<int>(cell % static_cast<std::uint32_t>(n));
        if (deg_i[static_cast<std::size_t>(a)] <= floor || deg_j[static_cast<std::size_t>(b)] <= floor) continue;
        g.remove_edge(g.part_begin(i) + a, g.part_begin(j) + b);
        --deg_i[static_cast<std::size_t>(a)];
        --deg_j[static_cast<std::size_t>(b)];
        ++removed;
      }
    }
  }
  return g;
}

PartiteGraph gen_no_factor_witness(int r, int n, const RandomSeed& seed) {
  if (r < 3 || n < 1) throw InvalidArgument("gen_no_factor_witness requires r >= 3 and n >= 1");
  auto g = PartiteGraph::complete(r, n);
  CounterRng rng(seed);
  const auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.vertex_count())));
  auto other = static_cast<int>(rng.below(static_cast<std::uint64_t>(r - 1)));
  if (other >= g.part_of(v)) ++other;
  for (Vertex u = g.part_begin(other); u < g.part_end(other); ++u) g.remove_edge(v, u);
  return g;
}

SimpleGraph gen_min_degree_graph(int vertex_count, double min_fraction, double edge_keep, const RandomSeed& seed) {
  check_probability(edge_keep);
  const int floor = ceil_tolerant(min_fraction * vertex_count);
  if (floor > vertex_count - 1 || min_fraction < 0)
    throw InvalidArgument("infeasible minimum degree fraction " + std::to_string(min_fraction));
  auto g = SimpleGraph::complete(vertex_count);
  std::vector<Edge> order = g.edges();
  CounterRng rng(seed);
  rng.shuffle(std::span(order));
  const auto target = static_cast<std::size_t>(std::llround((1.0 - edge_keep) * static_cast<double>(order.size())));
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), vertex_count - 1);
  std::size_t removed = 0;
  for (const auto& e : order) {
    if (removed == target) break;
    auto& du = deg[static_cast<std::size_t>(e.u)];
    auto& dv = deg[static_cast<std::size_t>(e.v)];
    if (du <= floor || dv <= floor) continue;
    g.remove_edge(e.u, e.v);
    --du;
    --dv;
    ++removed;
  }
  return g;
}

std::vector<std::vector<Vertex>> random_balanced_partition(int vertex_count, int r, const RandomSeed& seed) {
  if (r < 1 || vertex_count < 0 || vertex_count % r != 0)
    throw InvalidArgument("vertex count " + std::to_string(vertex_count) + " not divisible by " +
                          std::to_string(r));
  std::vector<Vertex> order(static_cast<std::size_t>(vertex_count));
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(seed);
  rng.shuffle(std::span(order));
  const auto size = static_cast<std::size_t>(vertex_count / r);
  std::vector<std::vector<Vertex>> classes(static_cast<std::size_t>(r));
  for (std::size_t c = 0; c < classes.size(); ++c) {
    classes[c].assign(order.begin() + static_cast<std::ptrdiff_t>(c * size),
                      order.begin() + static_cast<std::ptrdiff_t>((c + 1) * size));
    std::sort(classes[c].begin(), classes[c].end());
  }
  return classes;
}

}  // namespace kfactor
