#include "kfactor/transversal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kfactor/error.hpp"
#include "kfactor/exact_cover.hpp"
#include "kfactor/generators.hpp"

namespace kfactor {
namespace {

int pair_rank(int r, int i, int j) {
  // Number of pairs (s, t), s < t, preceding (i, j) lexicographically.
  return i * (2 * r - i - 1) / 2 + (j - i - 1);
}

}  // namespace

GraphFamily::GraphFamily(int r, int n, std::vector<PartiteGraph> graphs) : r_(r), n_(n), graphs_(std::move(graphs)) {
  if (r < 2 || n < 1) throw InvalidArgument("graph family needs r >= 2 and n >= 1");
  const int m = n * r * (r - 1) / 2;
  if (static_cast<int>(graphs_.size()) != m)
    throw InvalidArgument("graph family needs n * binom(r, 2) = " + std::to_string(m) + " graphs, got " +
                          std::to_string(graphs_.size()));
  for (std::size_t t = 0; t < graphs_.size(); ++t)
    if (graphs_[t].parts() != r || graphs_[t].part_size() != n)
      throw InvalidArgument("family member " + std::to_string(t) + " has different parts");
}

GraphFamily GraphFamily::complete(int r, int n) {
  return GraphFamily(r, n, std::vector<PartiteGraph>(static_cast<std::size_t>(n * r * (r - 1) / 2),
                                                     PartiteGraph::complete(r, n)));
}

GraphFamily GraphFamily::min_degree(int r, int n, double gamma, double edge_keep, const RandomSeed& seed) {
  std::vector<PartiteGraph> graphs;
  const int m = n * r * (r - 1) / 2;
  for (int t = 0; t < m; ++t)
    graphs.push_back(gen_min_degree_instance(r, n, gamma, edge_keep, seed.derive(static_cast<std::uint64_t>(t))));
  return GraphFamily(r, n, std::move(graphs));
}

int GraphFamily::block_offset(int i, int j) const {
  if (i < 0 || j >= r_ || i >= j) throw InvalidArgument("block_offset needs parts i < j");
  return pair_rank(r_, i, j) * n_;
}

std::pair<int, int> GraphFamily::block_of(int index) const {
  if (index < 0 || index >= size()) throw InvalidArgument("graph index out of range: " + std::to_string(index));
  const int rank = index / n_;
  for (int i = 0; i < r_; ++i)
    for (int j = i + 1; j < r_; ++j)
      if (pair_rank(r_, i, j) == rank) return {i, j};
  throw std::logic_error("block_of: unreachable");
}

PartiteGraph GraphFamily::union_graph() const {
  PartiteGraph out(r_, n_);
  for (const auto& g : graphs_)
    for (const auto& e : g.edges()) out.add_edge(e.u, e.v);
  return out;
}

GraphFamily GraphFamily::sparsify(double p, const RandomSeed& seed) const {
  std::vector<PartiteGraph> out;
  out.reserve(graphs_.size());
  for (std::size_t t = 0; t < graphs_.size(); ++t) out.push_back(kfactor::sparsify(graphs_[t], p, seed.derive(t)));
  return GraphFamily(r_, n_, std::move(out));
}

PermutationBundle PermutationBundle::identity(int r, int n) {
  PermutationBundle b;
  for (int i = 0; i < r; ++i) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    b.perm.push_back(std::move(p));
  }
  return b;
}

PermutationBundle PermutationBundle::sample(int r, int n, const RandomSeed& seed) {
  auto b = identity(r, n);
  for (int i = 0; i < r; ++i) {
    CounterRng rng(seed.derive(static_cast<std::uint64_t>(i)));
    rng.shuffle(std::span<int>(b.perm[static_cast<std::size_t>(i)]));
  }
  return b;
}

std::vector<PermutationBundle> PermutationBundle::all(int r, int n, std::size_t limit) {
  double count = 1;
  for (int i = 0; i < r; ++i)
    for (int f = 2; f <= n; ++f) count *= f;
  if (count > static_cast<double>(limit))
    throw GuardExceeded("PermutationBundle::all: " + std::to_string(count) + " bundles exceed the limit");
  std::vector<PermutationBundle> out;
  auto b = identity(r, n);
  while (true) {
    out.push_back(b);
    int i = r - 1;
    while (i >= 0 && !std::next_permutation(b.perm[static_cast<std::size_t>(i)].begin(),
                                            b.perm[static_cast<std::size_t>(i)].end()))
      --i;
    if (i < 0) break;
  }
  return out;
}

void PermutationBundle::validate(int r, int n) const {
  if (static_cast<int>(perm.size()) != r) throw InvalidArgument("bundle needs one permutation per part");
  for (const auto& p : perm) {
    if (static_cast<int>(p.size()) != n) throw InvalidArgument("bundle permutation has the wrong length");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int x : p) {
      if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) throw InvalidArgument("bundle entry is not a bijection");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  }
}

int governing_index(const GraphFamily& family, const PermutationBundle& bundle, Vertex s, Vertex t) {
  const int n = family.part_size();
  if (s > t) std::swap(s, t);
  const int i = s / n;
  const int j = t / n;
  return family.block_offset(i, j) + bundle.perm[static_cast<std::size_t>(i)][static_cast<std::size_t>(s - i * n)];
}

AuxiliaryGraph build_b_pi(const GraphFamily& family, const PermutationBundle& bundle) {
  const int r = family.parts();
  const int n = family.part_size();
  bundle.validate(r, n);
  AuxiliaryGraph aux{PartiteGraph(r, n), &family, bundle};
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (Vertex s = i * n; s < (i + 1) * n; ++s) {
        const auto& g = family.graph(governing_index(family, bundle, s, j * n));
        g.neighbours_in(s, j).for_each([&](Vertex t) { aux.graph.add_edge(s, t); });
      }
  return aux;
}

PartiteGraph build_b_pi_sparsified(const GraphFamily& family, const PermutationBundle& bundle, double p,
                                   const RandomSeed& seed) {
  const int r = family.parts();
  const int n = family.part_size();
  bundle.validate(r, n);
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability outside [0, 1]");
  PartiteGraph out(r, n);
  const auto total = static_cast<std::uint64_t>(r * n);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (Vertex s = i * n; s < (i + 1) * n; ++s) {
        const int index = governing_index(family, bundle, s, j * n);
        const auto slot_seed = seed.derive(static_cast<std::uint64_t>(index));
        family.graph(index).neighbours_in(s, j).for_each([&](Vertex t) {
          if (keyed_uniform(slot_seed, static_cast<std::uint64_t>(s) * total + static_cast<std::uint64_t>(t)) < p)
            out.add_edge(s, t);
        });
      }
  return out;
}

TransversalFactor lift_factor(const AuxiliaryGraph& aux, const Factor& f) {
  if (aux.family == nullptr) throw InvalidArgument("lift_factor: auxiliary graph without family");
  TransversalFactor tf;
  tf.factor = f;
  for (const auto& c : f.cliques)
    for (std::size_t a = 0; a < c.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
        const Vertex u = std::min(c.vertices[a], c.vertices[b]);
        const Vertex v = std::max(c.vertices[a], c.vertices[b]);
        tf.assignment.push_back({Edge{u, v}, governing_index(*aux.family, aux.bundle, u, v)});
      }
  std::sort(tf.assignment.begin(), tf.assignment.end());
  const auto verdict = verify_transversal(*aux.family, tf);
  if (!verdict) throw std::logic_error("lift_factor produced an invalid transversal factor: " + verdict.reason + " " +
                                       verdict.detail);
  return tf;
}

BundleTrial bpi_min_degree_trial(const GraphFamily& family, double gamma, int trials, const RandomSeed& seed) {
  const int r = family.parts();
  const int n = family.part_size();
  const int floor = star_degree_floor(r, n, gamma);
  for (int t = 0; t < family.size(); ++t) {
    const int got = min_star_degree(family.graph(t));
    if (got < floor)
      throw InvalidArgument("family member " + std::to_string(t) + " has min star degree " + std::to_string(got) +
                            " < " + std::to_string(floor));
  }
  if (trials < 1) throw InvalidArgument("bpi_min_degree_trial needs trials >= 1");
  const double bound = (1.0 - 1.0 / r + gamma / 2.0) * n;
  BundleTrial out;
  out.trials = trials;
  out.min_star_degree = n;
  out.row_side_min = n;
  for (int t = 0; t < trials; ++t) {
    const auto aux = build_b_pi(family, PermutationBundle::sample(r, n, seed.derive(static_cast<std::uint64_t>(t))));
    const int d = min_star_degree(aux.graph);
    out.min_star_degree = std::min(out.min_star_degree, d);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (Vertex s = i * n; s < (i + 1) * n; ++s) out.row_side_min = std::min(out.row_side_min, aux.graph.degree_into(s, j));
    if (d >= bound - 1e-9) ++out.successes;
  }
  out.frequency = static_cast<double>(out.successes) / trials;
  return out;
}

BalancedPartition find_balanced_partition(const std::vector<SimpleGraph>& members, int r, double gamma,
                                          const RandomSeed& seed, int retries) {
  if (r < 2) throw InvalidArgument("reduce_nonpartite needs r >= 2");
  if (members.empty()) throw InvalidArgument("reduce_nonpartite needs members");
  const int total = members.front().vertex_count();
  if (total % r != 0) throw InvalidArgument("vertex count must be divisible by r");
  const int n = total / r;
  const int m = n * r * (r - 1) / 2;
  if (static_cast<int>(members.size()) != m)
    throw InvalidArgument("reduce_nonpartite needs (N/r) binom(r, 2) = " + std::to_string(m) + " members");
  const double need_min = (1.0 - 1.0 / r + gamma) * total;
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (members[t].vertex_count() != total) throw InvalidArgument("members differ in vertex count");
    if (members[t].min_degree() < need_min - 1e-9)
      throw InvalidArgument("member " + std::to_string(t) + " has min degree " +
                            std::to_string(members[t].min_degree()) + " below (1 - 1/r + gamma) N");
  }
  const double need = (1.0 - 1.0 / r + gamma / 2.0) * n;
  int worst_seen = total;
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto partition = random_balanced_partition(total, r, seed.derive(static_cast<std::uint64_t>(attempt)));
    std::vector<VertexSet> classes;
    for (const auto& cls : partition) {
      VertexSet s(total);
      for (Vertex v : cls) s.insert(v);
      classes.push_back(std::move(s));
    }
    int worst = total;
    for (const auto& g : members)
      for (Vertex v = 0; v < total; ++v)
        for (const auto& cls : classes) worst = std::min(worst, g.neighbours(v).intersection_count(cls));
    worst_seen = std::min(worst_seen, worst);
    if (worst >= need - 1e-9) return {std::move(partition), attempt + 1, worst};
  }
  throw StageFailure("reduce_nonpartite: no admissible partition in " + std::to_string(retries) +
                     " draws; worst class degree seen " + std::to_string(worst_seen) + ", need " +
                     std::to_string(need));
}

NonpartiteReduction reduce_nonpartite(const std::vector<SimpleGraph>& members, int r, double gamma,
                                      const RandomSeed& seed, int retries) {
  auto found = find_balanced_partition(members, r, gamma, seed, retries);
  const int total = members.front().vertex_count();
  const int n = total / r;
  std::vector<Vertex> relabel(static_cast<std::size_t>(total));
  for (int j = 0; j < r; ++j)
    for (int pos = 0; pos < n; ++pos)
      relabel[static_cast<std::size_t>(found.classes[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)])] =
          j * n + pos;
  std::vector<PartiteGraph> induced;
  for (const auto& g : members) {
    PartiteGraph h(r, n);
    for (const auto& e : g.edges()) {
      const Vertex a = relabel[static_cast<std::size_t>(e.u)];
      const Vertex b = relabel[static_cast<std::size_t>(e.v)];
      if (a / n != b / n) h.add_edge(a, b);
    }
    induced.push_back(std::move(h));
  }
  return {std::move(found.classes), GraphFamily(r, n, std::move(induced)), found.attempts, found.worst_degree};
}

std::optional<TransversalFactor> transversal_oracle(const GraphFamily& family) {
  const int r = family.parts();
  const int n = family.part_size();
  if (r != 3 || n > 4) throw GuardExceeded("transversal_oracle handles r = 3 and n <= 4 only");
  const int m = family.size();
  const int vertices = r * n;

  struct Row {
    Clique clique;
    int x, y, z;
  };
  std::vector<Row> rows;
  ExactCover dlx(vertices + m);
  auto holders = [&](Vertex u, Vertex v) {
    std::vector<int> out;
    for (int t = 0; t < m; ++t)
      if (family.graph(t).adjacent(u, v)) out.push_back(t);
    return out;
  };
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = n; b < 2 * n; ++b)
      for (Vertex c = 2 * n; c < 3 * n; ++c) {
        const auto ab = holders(a, b);
        const auto ac = holders(a, c);
        const auto bc = holders(b, c);
        for (int x : ab)
          for (int y : ac)
            for (int z : bc) {
              if (x == y || x == z || y == z) continue;
              const std::vector<int> cols{a, b, c, vertices + x, vertices + y, vertices + z};
              dlx.add_row(cols);
              rows.push_back({Clique{{a, b, c}}, x, y, z});
            }
      }
  const auto [status, chosen] = dlx.find_one();
  if (status != ExactCover::Status::found) return std::nullopt;
  TransversalFactor tf;
  for (int idx : chosen) {
    const auto& row = rows[static_cast<std::size_t>(idx)];
    tf.factor.cliques.push_back(row.clique);
    const auto& v = row.clique.vertices;
    tf.assignment.push_back({Edge{v[0], v[1]}, row.x});
    tf.assignment.push_back({Edge{v[0], v[2]}, row.y});
    tf.assignment.push_back({Edge{v[1], v[2]}, row.z});
  }
  std::sort(tf.factor.cliques.begin(), tf.factor.cliques.end());
  std::sort(tf.assignment.begin(), tf.assignment.end());
  return tf;
}

}  // namespace kfactor
