#include "kfactor/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kfactor/error.hpp"

namespace kfactor {
namespace {

int ceil_tolerant(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

int single_part(const PartiteGraph& g, std::span<const Vertex> set, const char* name) {
  if (set.empty()) throw InvalidArgument(std::string("regular pair: ") + name + " is empty");
  const int part = g.part_of(set.front());
  for (Vertex v : set) {
    if (!g.contains(v)) throw InvalidArgument("regular pair: unknown vertex " + std::to_string(v));
    if (g.part_of(v) != part) throw InvalidArgument(std::string("regular pair: ") + name + " spans several parts");
  }
  return part;
}

std::size_t edges_between(const PartiteGraph& g, std::span<const Vertex> x, const VertexSet& y) {
  std::size_t e = 0;
  for (Vertex v : x) e += static_cast<std::size_t>(g.neighbours(v).intersection_count(y));
  return e;
}

VertexSet to_set(int universe, std::span<const Vertex> vs) {
  VertexSet s(universe);
  for (Vertex v : vs) s.insert(v);
  return s;
}

}  // namespace

void RegularityParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("d must lie in (0, 1)");
  if (!(epsilon < d)) throw InvalidArgument("epsilon must be smaller than d");
  if (!(alpha > 0.0 && alpha < gamma)) throw InvalidArgument("alpha must lie in (0, gamma)");
  if (!(mu > 0.0 && mu < 1.0)) throw InvalidArgument("mu must lie in (0, 1)");
  if (k < 1) throw InvalidArgument("cluster count k must be positive");
}

void PartitionedInstance::validate() const {
  params.validate();
  const int r = host.parts();
  if (static_cast<int>(clusters.size()) != r) throw InvalidArgument("instance needs one cluster list per part");
  VertexSet seen(host.vertex_count());
  auto claim = [&](Vertex v, const std::string& where) {
    if (!host.contains(v)) throw InvalidArgument(where + ": unknown vertex " + std::to_string(v));
    if (seen.contains(v)) throw InvalidArgument(where + ": vertex " + std::to_string(v) + " listed twice");
    seen.insert(v);
  };
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(clusters[i].size()) != params.k)
      throw InvalidArgument("part " + std::to_string(i) + " does not have k clusters");
    for (int j = 0; j < params.k; ++j)
      for (Vertex v : clusters[i][j]) {
        claim(v, "cluster V_" + std::to_string(i) + "," + std::to_string(j));
        if (host.part_of(v) != i)
          throw InvalidArgument("vertex " + std::to_string(v) + " lies outside the part of its cluster");
      }
  }
  for (Vertex v : exceptional) claim(v, "exceptional set");
  if (seen.count() != host.vertex_count()) throw InvalidArgument("clusters and exceptional set do not cover V");
  if (reserved) {
    const auto b = to_set(host.vertex_count(), exceptional);
    for (Vertex v : *reserved) {
      if (!host.contains(v)) throw InvalidArgument("reserved set: unknown vertex " + std::to_string(v));
      if (b.contains(v)) throw InvalidArgument("reserved set meets the exceptional set at " + std::to_string(v));
    }
  }
}

PartitionedInstance gen_super_regular_instance(int r, int k, int cluster_size, double d, int b_size,
                                               const RandomSeed& seed, RegularityParams params) {
  if (r < 2 || k < 1 || cluster_size < 1 || b_size < 0)
    throw InvalidArgument("planted instance needs r >= 2, k >= 1, cluster_size >= 1, b_size >= 0");
  if (!(d > 0.0 && d <= 1.0)) throw InvalidArgument("planted density must lie in (0, 1]");
  if (b_size % r != 0) throw InvalidArgument("b_size must be divisible by r to keep the parts balanced");
  if (10 * b_size > r * k * cluster_size) throw InvalidArgument("b_size exceeds r * k * cluster_size / 10");
  params.k = k;
  params.validate();

  const int per_part_b = b_size / r;
  const int n = k * cluster_size + per_part_b;
  PartitionedInstance inst;
  inst.host = PartiteGraph(r, n);
  inst.params = params;
  inst.clusters.assign(static_cast<std::size_t>(r), {});
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < k; ++j) {
      std::vector<Vertex> c(static_cast<std::size_t>(cluster_size));
      std::iota(c.begin(), c.end(), inst.host.part_begin(i) + j * cluster_size);
      inst.clusters[i].push_back(std::move(c));
    }
    for (int b = 0; b < per_part_b; ++b) inst.exceptional.push_back(inst.host.part_begin(i) + k * cluster_size + b);
  }
  std::sort(inst.exceptional.begin(), inst.exceptional.end());

  const double attach = std::min(1.0, 1.0 - 1.0 / r + params.gamma);
  auto is_exceptional = [&](Vertex v) { return v - inst.host.part_begin(inst.host.part_of(v)) >= k * cluster_size; };
  const auto total = static_cast<std::uint64_t>(inst.host.vertex_count());
  for (Vertex u = 0; u < inst.host.vertex_count(); ++u)
    for (Vertex v = inst.host.part_end(inst.host.part_of(u)); v < inst.host.vertex_count(); ++v) {
      const double q = (is_exceptional(u) || is_exceptional(v)) ? attach : d;
      if (keyed_uniform(seed, static_cast<std::uint64_t>(u) * total + static_cast<std::uint64_t>(v)) < q)
        inst.host.add_edge(u, v);
    }
  return inst;
}

double pair_density(const PartiteGraph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  if (x.empty() || y.empty()) return 0.0;
  const auto ys = to_set(g.vertex_count(), y);
  return static_cast<double>(edges_between(g, x, ys)) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

std::vector<TuplePairDensity> tuple_densities(const PartitionedInstance& instance) {
  std::vector<TuplePairDensity> out;
  for (int j = 0; j < instance.cluster_count(); ++j)
    for (int a = 0; a < instance.parts(); ++a)
      for (int b = a + 1; b < instance.parts(); ++b)
        out.push_back({j, a, b, pair_density(instance.host, instance.cluster(a, j), instance.cluster(b, j))});
  return out;
}

RegularPairReport check_regular_pair(const PartiteGraph& g, std::span<const Vertex> x, std::span<const Vertex> y,
                                     double epsilon, const RandomSeed& seed, int samples) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  const int px = single_part(g, x, "X");
  const int py = single_part(g, y, "Y");
  const auto xs = to_set(g.vertex_count(), x);
  const auto ys = to_set(g.vertex_count(), y);
  if (xs.intersects(ys)) throw InvalidArgument("regular pair: X and Y overlap");
  if (px == py) throw InvalidArgument("regular pair: X and Y lie in the same part");
  if (xs.count() != static_cast<int>(x.size()) || ys.count() != static_cast<int>(y.size()))
    throw InvalidArgument("regular pair: repeated vertex");

  RegularPairReport rep;
  rep.density = pair_density(g, x, y);
  const int nx = static_cast<int>(x.size());
  const int ny = static_cast<int>(y.size());
  const int min_a = std::max(1, ceil_tolerant(epsilon * nx));
  const int min_b = std::max(1, ceil_tolerant(epsilon * ny));
  auto violates = [&](double dens) { return std::abs(dens - rep.density) >= epsilon; };

  if (nx <= 12 && ny <= 12) {
    rep.exhaustive = true;
    std::vector<std::pair<int, Vertex>> counts(static_cast<std::size_t>(nx));
    for (std::uint32_t mask = 1; mask < (1U << ny); ++mask) {
      const int bsize = std::popcount(mask);
      if (bsize < min_b) continue;
      VertexSet bs(g.vertex_count());
      for (int t = 0; t < ny; ++t)
        if (mask >> t & 1U) bs.insert(y[static_cast<std::size_t>(t)]);
      for (int s = 0; s < nx; ++s)
        counts[static_cast<std::size_t>(s)] = {g.neighbours(x[static_cast<std::size_t>(s)]).intersection_count(bs),
                                               x[static_cast<std::size_t>(s)]};
      std::sort(counts.begin(), counts.end());
      long low = 0, high = 0;
      for (int a = 1; a <= nx; ++a) {
        low += counts[static_cast<std::size_t>(a - 1)].first;
        high += counts[static_cast<std::size_t>(nx - a)].first;
        if (a < min_a) continue;
        rep.subsets_checked += 2;
        const double denom = static_cast<double>(a) * bsize;
        for (bool top : {true, false}) {
          const double dens = static_cast<double>(top ? high : low) / denom;
          if (!violates(dens)) continue;
          RegularityWitness w;
          for (int s = 0; s < a; ++s)
            w.a.push_back(counts[static_cast<std::size_t>(top ? nx - 1 - s : s)].second);
          std::sort(w.a.begin(), w.a.end());
          w.b = bs.to_vector();
          w.density = dens;
          rep.regular = false;
          rep.witness = std::move(w);
          return rep;
        }
      }
    }
    return rep;
  }

  CounterRng rng(seed);
  std::vector<Vertex> xa(x.begin(), x.end());
  std::vector<Vertex> yb(y.begin(), y.end());
  for (int t = 0; t < samples; ++t) {
    const int a = min_a + static_cast<int>(rng.below(static_cast<std::uint64_t>(nx - min_a + 1)));
    const int b = min_b + static_cast<int>(rng.below(static_cast<std::uint64_t>(ny - min_b + 1)));
    rng.shuffle(std::span<Vertex>(xa));
    rng.shuffle(std::span<Vertex>(yb));
    std::span<const Vertex> as(xa.data(), static_cast<std::size_t>(a));
    std::span<const Vertex> bs(yb.data(), static_cast<std::size_t>(b));
    const double dens = pair_density(g, as, bs);
    ++rep.subsets_checked;
    if (violates(dens)) {
      RegularityWitness w{{as.begin(), as.end()}, {bs.begin(), bs.end()}, dens};
      std::sort(w.a.begin(), w.a.end());
      std::sort(w.b.begin(), w.b.end());
      rep.regular = false;
      rep.witness = std::move(w);
      return rep;
    }
  }
  return rep;
}

std::vector<std::vector<Vertex>> super_regularize(const PartiteGraph& g, std::span<const std::vector<Vertex>> tuple,
                                                  double epsilon, double d) {
  const int r = static_cast<int>(tuple.size());
  if (r < 2) throw InvalidArgument("super_regularize needs at least two clusters");
  if (!(epsilon > 0.0) || (r - 1) * epsilon >= 1.0)
    throw InvalidArgument("super_regularize needs 0 < (r - 1) * epsilon < 1");
  const int m = static_cast<int>(tuple.front().size());
  for (const auto& c : tuple)
    if (static_cast<int>(c.size()) != m) throw InvalidArgument("super_regularize needs equal cluster sizes");
  const int keep = ceil_tolerant((1.0 - (r - 1) * epsilon) * m);

  std::vector<VertexSet> sets;
  for (const auto& c : tuple) sets.push_back(to_set(g.vertex_count(), c));

  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    std::vector<std::pair<double, Vertex>> good;
    for (Vertex v : tuple[static_cast<std::size_t>(i)]) {
      double worst = 1.0;
      for (int j = 0; j < r; ++j) {
        if (j == i) continue;
        const double frac = static_cast<double>(g.neighbours(v).intersection_count(sets[static_cast<std::size_t>(j)])) / m;
        worst = std::min(worst, frac);
      }
      if (worst >= d - epsilon - 1e-12) good.emplace_back(-worst, v);
    }
    if (static_cast<int>(good.size()) < keep)
      throw StageFailure("super_regularize: cluster " + std::to_string(i) + " has " + std::to_string(good.size()) +
                         " vertices of degree >= (d - eps)|V_j|, needs " + std::to_string(keep));
    std::sort(good.begin(), good.end());
    for (int s = 0; s < keep; ++s) out[static_cast<std::size_t>(i)].push_back(good[static_cast<std::size_t>(s)].second);
    std::sort(out[static_cast<std::size_t>(i)].begin(), out[static_cast<std::size_t>(i)].end());
  }

  const double floor = (d - r * epsilon) * keep;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const auto target = to_set(g.vertex_count(), out[static_cast<std::size_t>(j)]);
      for (Vertex v : out[static_cast<std::size_t>(i)])
        if (g.neighbours(v).intersection_count(target) < floor - 1e-9)
          throw StageFailure("super_regularize: vertex " + std::to_string(v) + " has degree below (d - r eps) * " +
                             std::to_string(keep) + " into cluster " + std::to_string(j));
    }
  }
  return out;
}

PartiteGraph build_reduced_graph(const PartitionedInstance& instance, double epsilon, double d,
                                 const RandomSeed& seed) {
  const int r = instance.parts();
  const int k = instance.cluster_count();
  PartiteGraph reduced(r, k);
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int ja = 0; ja < k; ++ja)
        for (int jb = 0; jb < k; ++jb) {
          const auto& x = instance.cluster(a, ja);
          const auto& y = instance.cluster(b, jb);
          if (x.empty() || y.empty()) continue;
          const auto pair_seed = seed.derive(static_cast<std::uint64_t>(((a * r + b) * k + ja) * k + jb));
          const auto rep = check_regular_pair(instance.host, x, y, epsilon, pair_seed);
          if (rep.regular && rep.density >= d) reduced.add_edge(a * k + ja, b * k + jb);
        }
  return reduced;
}

}  // namespace kfactor
