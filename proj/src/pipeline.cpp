#include "kfactor/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "json.hpp"
#include "kfactor/error.hpp"
#include "kfactor/generators.hpp"
#include "kfactor/verify.hpp"

namespace kfactor {
namespace {

using Json = nlohmann::ordered_json;

VertexSet to_set(int universe, const std::vector<Vertex>& vs) {
  VertexSet s(universe);
  for (Vertex v : vs) s.insert(v);
  return s;
}

std::string cluster_name(int part, int j) { return "V_" + std::to_string(part) + "," + std::to_string(j); }

// G[X_1, ..., X_r] relabelled onto a fresh balanced graph; map[local] = global.
std::pair<PartiteGraph, std::vector<Vertex>> induced(const PartiteGraph& g, const std::vector<std::vector<Vertex>>& xs) {
  const int r = static_cast<int>(xs.size());
  const int m = static_cast<int>(xs.front().size());
  PartiteGraph out(r, m);
  std::vector<Vertex> map;
  for (const auto& x : xs) map.insert(map.end(), x.begin(), x.end());
  for (Vertex a = 0; a < out.vertex_count(); ++a)
    for (Vertex b = out.part_end(out.part_of(a)); b < out.vertex_count(); ++b)
      if (g.adjacent(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)])) out.add_edge(a, b);
  return {std::move(out), std::move(map)};
}

Json cliques_json(const std::vector<Clique>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(c.vertices);
  return arr;
}

}  // namespace

ReservedSelection select_reserved(const PartitionedInstance& instance, const RandomSeed& seed, int retries) {
  const auto& g = instance.host;
  const int r = g.parts();
  const int k = instance.cluster_count();
  const auto& prm = instance.params;
  const double per_cluster = static_cast<double>(g.part_size()) / k;
  const auto b_set = to_set(g.vertex_count(), instance.exceptional);
  std::vector<VertexSet> cluster_sets;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) cluster_sets.push_back(to_set(g.vertex_count(), instance.cluster(i, j)));

  ReservedSelection sel;
  for (int attempt = 0; attempt < retries; ++attempt) {
    CounterRng rng(seed.derive(static_cast<std::uint64_t>(attempt)));
    VertexSet w(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (!b_set.contains(v) && rng.bernoulli(0.5)) w.insert(v);

    sel = ReservedSelection{};
    sel.attempts = attempt + 1;
    sel.sizes_ok = std::all_of(cluster_sets.begin(), cluster_sets.end(), [&](const VertexSet& c) {
      const int inside = c.intersection_count(w);
      return inside >= (0.5 - prm.alpha) * per_cluster - 1e-9 && inside <= (0.5 + prm.alpha) * per_cluster + 1e-9;
    });
    sel.root_degrees_ok = true;
    std::vector<int> w_in_part(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) w_in_part[static_cast<std::size_t>(i)] = w.count_range(g.part_begin(i), g.part_end(i));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const auto wn = g.neighbours(v) & w;
      for (int i = 0; i < r; ++i) {
        if (i == g.part_of(v)) continue;
        const double need = (1.0 - 1.0 / r + prm.gamma / 4.0) * w_in_part[static_cast<std::size_t>(i)];
        if (wn.count_range(g.part_begin(i), g.part_end(i)) + 1e-9 >= need) continue;
        if (b_set.contains(v))
          sel.root_degrees_ok = false;
        else
          ++sel.degree_shortfalls;
      }
      for (const auto& c : cluster_sets) {
        if (c.first() >= 0 && g.part_of(c.first()) == g.part_of(v)) continue;
        const int full = g.neighbours(v).intersection_count(c);
        if (full == 0 || full < prm.epsilon * c.count()) continue;
        const int half = wn.intersection_count(c);
        if (half < 0.25 * full - 1e-9 || half > 0.75 * full + 1e-9) ++sel.halving_violations;
      }
    }
    if (sel.sizes_ok && sel.root_degrees_ok) {
      sel.reserved = w.to_vector();
      return sel;
    }
  }
  throw StageFailure("w-selection: no admissible reserved set in " + std::to_string(retries) + " draws");
}

PipelineReport run_pipeline(const PartitionedInstance& instance, double p, const RandomSeed& seed,
                            const PipelineOptions& options) {
  instance.validate();
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("run_pipeline: p outside [0, 1]");
  PartitionedInstance inst = instance;
  const PartiteGraph& host = inst.host;
  const int r = host.parts();
  const int k = inst.cluster_count();
  const int total = host.vertex_count();

  PipelineReport rep;
  rep.r = r;
  rep.n = host.part_size();
  rep.k = k;
  rep.p = p;
  rep.p_round = split_rounds(p, 3);
  rep.target = (9 * rep.n) / (10 * k);
  rep.seed = seed.seed;

  std::string stage = "super-regularize";
  try {
    if (options.super_regularize) {
      for (int j = 0; j < k; ++j) {
        std::vector<std::vector<Vertex>> tuple;
        for (int i = 0; i < r; ++i) tuple.push_back(inst.cluster(i, j));
        const auto shrunk = super_regularize(host, tuple, inst.params.epsilon, inst.params.d);
        for (int i = 0; i < r; ++i) {
          const auto keep = to_set(total, shrunk[static_cast<std::size_t>(i)]);
          for (Vertex v : tuple[static_cast<std::size_t>(i)])
            if (!keep.contains(v)) inst.exceptional.push_back(v);
          inst.clusters[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = shrunk[static_cast<std::size_t>(i)];
        }
      }
      std::sort(inst.exceptional.begin(), inst.exceptional.end());
    }
    rep.exceptional = inst.exceptional;

    const auto g1 = sparsify(host, rep.p_round, seed.derive(1));
    const auto g2 = sparsify(host, rep.p_round, seed.derive(2));
    const auto g3 = sparsify(host, rep.p_round, seed.derive(3));

    stage = "w-selection";
    rep.selection = select_reserved(inst, seed.derive(10), options.w_retries);
    if (rep.selection->halving_violations > 0)
      rep.warnings.push_back("reserved set: " + std::to_string(rep.selection->halving_violations) +
                             " vertex-cluster pairs miss the 1/2 +- 1/4 degree split");
    const auto w = to_set(total, rep.selection->reserved);
    const auto b = to_set(total, inst.exceptional);

    stage = "round1-cover";
    CoverInput cover;
    cover.roots = inst.exceptional;
    cover.mu = inst.params.mu;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < k; ++j) cover.quotas.push_back(inst.cluster(i, j));
    cover.allowed = w | b;
    rep.cover = cover_exceptional(host, g1, cover, seed.derive(11));
    for (const auto& msg : rep.cover->warnings) rep.warnings.push_back(msg);
    rep.round1 = rep.cover->tiling;
    VertexSet used1(total);
    for (const auto& c : rep.round1.cliques)
      for (Vertex v : c.vertices) used1.insert(v);
    rep.exceptional_covered = std::all_of(inst.exceptional.begin(), inst.exceptional.end(),
                                          [&](Vertex v) { return used1.contains(v); });

    stage = "round2-weights";
    std::vector<VertexSet> residual;
    std::vector<int> lambda;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < k; ++j) {
        residual.push_back(to_set(total, inst.cluster(i, j)) - used1);
        const int excess = residual.back().count() - rep.target;
        if (excess < 0)
          throw StageFailure("cluster " + cluster_name(i, j) + " keeps " + std::to_string(residual.back().count()) +
                             " uncovered vertices, below the target " + std::to_string(rep.target));
        lambda.push_back(excess);
      }
    const auto reduced = build_reduced_graph(inst, inst.params.epsilon, inst.params.d, seed.derive(12));
    rep.weights = balance_weights(reduced, lambda, inst.params.gamma, options.limits);
    if (!rep.weights->degree_hypothesis)
      rep.warnings.push_back("reduced graph min star degree " + std::to_string(rep.weights->min_star_degree) +
                             " is below (1 - 1/r + gamma/2) k");
    if (!rep.weights->spread_hypothesis) rep.warnings.push_back("cluster excesses are not within (1 +- gamma/4) of their mean");

    stage = "round2-tuples";
    std::vector<VertexSet> available;
    for (const auto& s : residual) available.push_back(s & w);
    rep.round2 = balance_tuples(g2, reduced, available, rep.weights->omega, seed.derive(13), options.limits);
    VertexSet used2(total);
    for (const auto& c : rep.round2.cliques)
      for (Vertex v : c.vertices) used2.insert(v);
    std::vector<std::vector<Vertex>> balanced;
    for (std::size_t c = 0; c < residual.size(); ++c) {
      balanced.push_back((residual[c] - used2).to_vector());
      rep.residues.push_back(static_cast<int>(balanced.back().size()));
    }
    for (std::size_t c = 0; c < residual.size(); ++c)
      if (rep.residues[c] != rep.target)
        throw StageFailure("cluster " + cluster_name(static_cast<int>(c) / k, static_cast<int>(c) % k) + " has " +
                           std::to_string(rep.residues[c]) + " vertices left after balancing, expected " +
                           std::to_string(rep.target));

    stage = "round3-factor";
    for (int j = 0; j < k; ++j) {
      std::vector<std::vector<Vertex>> tuple;
      for (int i = 0; i < r; ++i) tuple.push_back(balanced[static_cast<std::size_t>(i * k + j)]);
      if (rep.target == 0) continue;
      const auto [sub, map] = induced(g3, tuple);
      const auto f = find_factor(sub, options.limits);
      if (!f) throw StageFailure("tuple " + std::to_string(j) + " has no K_r-factor in the third round");
      for (const auto& c : f->cliques) {
        Clique lifted;
        for (Vertex v : c.vertices) lifted.vertices.push_back(map[static_cast<std::size_t>(v)]);
        std::sort(lifted.vertices.begin(), lifted.vertices.end());
        rep.round3.cliques.push_back(std::move(lifted));
      }
    }

    stage = "verify";
    std::vector<Clique> all = rep.round1.cliques;
    all.insert(all.end(), rep.round2.cliques.begin(), rep.round2.cliques.end());
    all.insert(all.end(), rep.round3.cliques.begin(), rep.round3.cliques.end());
    auto sprinkled = g1;
    for (const auto& e : g2.edges()) sprinkled.add_edge(e.u, e.v);
    for (const auto& e : g3.edges()) sprinkled.add_edge(e.u, e.v);
    const auto in_host = verify_factor(host, all);
    const auto in_sprinkled = verify_factor(sprinkled, all);
    if (!in_host || !in_sprinkled)
      throw StageFailure("union rejected: " + (in_host ? in_sprinkled.reason + " " + in_sprinkled.detail
                                                       : in_host.reason + " " + in_host.detail));
    rep.verified = true;
    std::sort(all.begin(), all.end());
    rep.factor = Factor{std::move(all)};
    rep.success = true;
  } catch (const StageFailure& e) {
    rep.failure_stage = stage;
    rep.failure_detail = e.what();
  } catch (const GuardExceeded& e) {
    rep.failure_stage = stage;
    rep.failure_detail = std::string("guard exceeded: ") + e.what();
  }
  return rep;
}

std::string report_to_json(const PipelineReport& rep) {
  Json j;
  j["success"] = rep.success;
  j["failure_stage"] = rep.failure_stage;
  j["failure_detail"] = rep.failure_detail;
  j["r"] = rep.r;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["p"] = rep.p;
  j["p_round"] = rep.p_round;
  j["target"] = rep.target;
  j["seed"] = rep.seed;
  j["warnings"] = rep.warnings;
  j["exceptional"] = rep.exceptional;
  if (rep.selection) {
    const auto& s = *rep.selection;
    j["reserved"] = {{"size", s.reserved.size()},
                     {"attempts", s.attempts},
                     {"sizes_ok", s.sizes_ok},
                     {"root_degrees_ok", s.root_degrees_ok},
                     {"degree_shortfalls", s.degree_shortfalls},
                     {"halving_violations", s.halving_violations}};
  }
  Json stages = Json::array();
  if (rep.cover) {
    Json st;
    st["stage"] = "round1-cover";
    st["cliques"] = cliques_json(rep.round1.cliques);
    st["exceptional_covered"] = rep.exceptional_covered;
    st["quota_used"] = rep.cover->quota_used;
    st["quota_bound"] = rep.cover->quota_bound;
    st["candidates"] = rep.cover->candidates;
    st["inspected"] = rep.cover->inspected;
    stages.push_back(std::move(st));
  }
  if (rep.weights) {
    Json st;
    st["stage"] = "round2-weights";
    st["lambda"] = rep.weights->lambda;
    Json omega = Json::array();
    for (const auto& wk : rep.weights->omega) omega.push_back({{"clique", wk.clique.vertices}, {"weight", wk.weight}});
    st["omega"] = std::move(omega);
    st["min_star_degree"] = rep.weights->min_star_degree;
    st["degree_hypothesis"] = rep.weights->degree_hypothesis;
    st["spread_hypothesis"] = rep.weights->spread_hypothesis;
    stages.push_back(std::move(st));
  }
  if (!rep.residues.empty()) {
    Json st;
    st["stage"] = "round2-tuples";
    st["cliques"] = cliques_json(rep.round2.cliques);
    st["residues"] = rep.residues;
    stages.push_back(std::move(st));
  }
  if (!rep.round3.cliques.empty()) {
    Json st;
    st["stage"] = "round3-factor";
    st["cliques"] = cliques_json(rep.round3.cliques);
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  j["verified"] = rep.verified;
  j["factor_size"] = rep.factor ? rep.factor->size() : 0;
  return j.dump(2) + "\n";
}

std::string instance_to_json(const PartitionedInstance& inst) {
  Json j;
  j["r"] = inst.host.parts();
  j["n"] = inst.host.part_size();
  Json edges = Json::array();
  for (const auto& e : inst.host.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  j["clusters"] = inst.clusters;
  j["exceptional"] = inst.exceptional;
  if (inst.reserved) j["reserved"] = *inst.reserved;
  const auto& p = inst.params;
  j["params"] = {{"epsilon", p.epsilon}, {"d", p.d},   {"gamma", p.gamma},
                 {"alpha", p.alpha},     {"mu", p.mu}, {"k", p.k}};
  return j.dump() + "\n";
}

PartitionedInstance instance_from_json(const std::string& text) {
  try {
    const auto j = Json::parse(text);
    PartitionedInstance inst;
    const int r = j.at("r").get<int>();
    const int n = j.at("n").get<int>();
    if (r < 2 || n < 1) throw ParseError("instance: need r >= 2 and n >= 1");
    inst.host = PartiteGraph(r, n);
    for (const auto& e : j.at("edges")) inst.host.add_edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    inst.clusters = j.at("clusters").get<std::vector<std::vector<std::vector<Vertex>>>>();
    inst.exceptional = j.at("exceptional").get<std::vector<Vertex>>();
    if (j.contains("reserved")) inst.reserved = j.at("reserved").get<std::vector<Vertex>>();
    const auto& p = j.at("params");
    inst.params.epsilon = p.at("epsilon").get<double>();
    inst.params.d = p.at("d").get<double>();
    inst.params.gamma = p.at("gamma").get<double>();
    inst.params.alpha = p.at("alpha").get<double>();
    inst.params.mu = p.at("mu").get<double>();
    inst.params.k = p.at("k").get<int>();
    for (auto& part : inst.clusters)
      for (auto& c : part) std::sort(c.begin(), c.end());
    std::sort(inst.exceptional.begin(), inst.exceptional.end());
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

}  // namespace kfactor
