#include "kfactor/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <thread>

#include "json.hpp"
#include "kfactor/bounds.hpp"
#include "kfactor/error.hpp"
#include "kfactor/generators.hpp"
#include "kfactor/transversal.hpp"
#include "kfactor/verify.hpp"

namespace kfactor {
namespace {

using Json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

RandomSeed trial_seed(const SweepConfig& config, int n, int trial) {
  return RandomSeed{config.seed, 0}.derive(static_cast<std::uint64_t>(n)).derive(static_cast<std::uint64_t>(trial));
}

// Slot t holds the outcome of trial t, with -1 marking a guarded trial.
std::vector<int> run_trials(int trials, int threads, const std::function<bool(int)>& body) {
  std::vector<int> out(static_cast<std::size_t>(trials), 0);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      try {
        out[static_cast<std::size_t>(t)] = body(t) ? 1 : 0;
      } catch (const GuardExceeded&) {
        out[static_cast<std::size_t>(t)] = -1;
      }
    }
  };
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
  pool.clear();
  return out;
}

}  // namespace

void SweepConfig::validate() const {
  if (ns.empty()) throw InvalidArgument("sweep needs at least one n");
  if (c_grid.empty()) throw InvalidArgument("sweep needs a non-empty C grid");
  if (trials < 1) throw InvalidArgument("sweep needs trials >= 1");
  if (threads < 1) throw InvalidArgument("sweep needs threads >= 1");
  if (r < 3) throw InvalidArgument("sweep needs r >= 3");
  if (!(gamma > 0.0 && gamma <= 1.0 / r + 1e-12)) throw InvalidArgument("gamma must lie in (0, 1/r]");
  if (!(edge_keep >= 0.0 && edge_keep <= 1.0)) throw InvalidArgument("edge_keep must lie in [0, 1]");
  for (int n : ns)
    if (n < 2) throw InvalidArgument("sweep needs every n >= 2");
  for (double c : c_grid)
    if (!(c > 0.0)) throw InvalidArgument("C values must be positive");
}

bool threshold_trial(const SweepConfig& config, int n, double p, int trial) {
  const auto base = trial_seed(config, n, trial);
  const auto host = gen_min_degree_instance(config.r, n, config.gamma, config.edge_keep, base.derive(0));
  const auto sparse = sparsify(host, p, base.derive(1));
  const auto f = find_factor(sparse, config.limits);
  return f.has_value() && static_cast<bool>(verify_factor(sparse, f->cliques));
}

bool transversal_trial(const SweepConfig& config, int n, double p, int trial) {
  const auto base = trial_seed(config, n, trial);
  const auto family = GraphFamily::min_degree(config.r, n, config.gamma, config.edge_keep, base.derive(0));
  const auto bundle = PermutationBundle::sample(config.r, n, base.derive(2));
  const auto b_pi = build_b_pi_sparsified(family, bundle, p, base.derive(1));
  const auto f = find_factor(b_pi, config.limits);
  if (!f) return false;
  const auto sparse_family = family.sparsify(p, base.derive(1));
  const AuxiliaryGraph aux{b_pi, &sparse_family, bundle};
  return static_cast<bool>(verify_transversal(sparse_family, lift_factor(aux, *f)));
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  for (int n : config.ns)
    for (double c : config.c_grid) {
      const auto start = std::chrono::steady_clock::now();
      SweepRow row;
      row.mode = config.mode;
      row.r = config.r;
      row.n = n;
      row.gamma = config.gamma;
      row.c = c;
      const auto tp = threshold_p({c, config.r, n, config.gamma});
      row.p = tp.p;
      row.clamped = tp.clamped;
      row.seed = config.seed;
      const auto outcome = run_trials(config.trials, config.threads, [&](int t) {
        return config.mode == SweepMode::threshold ? threshold_trial(config, n, row.p, t)
                                                   : transversal_trial(config, n, row.p, t);
      });
      for (int o : outcome) {
        if (o < 0)
          ++row.skipped;
        else {
          ++row.trials;
          row.successes += o;
        }
      }
      row.success_rate = row.trials > 0 ? static_cast<double>(row.successes) / row.trials : 0.0;
      if (config.timing)
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      rows.push_back(row);
    }
  return rows;
}

std::string mode_name(SweepMode mode) { return mode == SweepMode::threshold ? "threshold" : "transversal"; }

std::string config_json(const SweepConfig& config) {
  Json j;
  j["mode"] = mode_name(config.mode);
  j["r"] = config.r;
  j["n"] = config.ns;
  j["gamma"] = config.gamma;
  j["C"] = config.c_grid;
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  j["edge_keep"] = config.edge_keep;
  j["max_rows"] = config.limits.max_rows;
  j["max_nodes"] = config.limits.max_nodes;
  return j.dump();
}

std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows) {
  std::string out = "# config=" + config_json(config) + "\n";
  out += "mode,r,n,gamma,C,p,trials,successes,success_rate,seed,wall_ms\n";
  for (const auto& row : rows) {
    out += mode_name(row.mode) + "," + std::to_string(row.r) + "," + std::to_string(row.n) + "," + num(row.gamma) +
           "," + num(row.c) + "," + num(row.p) + "," + std::to_string(row.trials) + "," +
           std::to_string(row.successes) + "," + (row.skipped > 0 ? std::string("skipped") : num(row.success_rate)) +
           "," + std::to_string(row.seed) + "," + num(std::round(row.wall_ms)) + "\n";
  }
  return out;
}

std::string sweep_json(const SweepConfig& config, const std::vector<SweepRow>& rows) {
  Json j;
  j["config"] = Json::parse(config_json(config));
  Json arr = Json::array();
  for (const auto& row : rows)
    arr.push_back({{"mode", mode_name(row.mode)},
                   {"r", row.r},
                   {"n", row.n},
                   {"gamma", row.gamma},
                   {"C", row.c},
                   {"p", row.p},
                   {"clamped", row.clamped},
                   {"trials", row.trials},
                   {"successes", row.successes},
                   {"skipped", row.skipped},
                   {"success_rate", row.success_rate},
                   {"seed", row.seed},
                   {"wall_ms", std::round(row.wall_ms)}});
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string sweep_svg(const SweepConfig& config, const std::vector<SweepRow>& rows) {
  const double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
  double cmin = rows.empty() ? 1 : rows.front().c, cmax = cmin;
  for (const auto& row : rows) {
    cmin = std::min(cmin, row.c);
    cmax = std::max(cmax, row.c);
  }
  const double lo = std::log10(cmin), hi = std::log10(cmax) > lo ? std::log10(cmax) : lo + 1;
  auto x_of = [&](double c) { return left + (std::log10(c) - lo) / (hi - lo) * (width - left - right); };
  auto y_of = [&](double rate) { return top + (1 - rate) * (height - top - bottom); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" font-family=\"sans-serif\" "
                  "font-size=\"12\">\n";
  s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(left) + "\" y=\"18\">" + mode_name(config.mode) + " sweep, r=" + std::to_string(config.r) +
       ", gamma=" + num(config.gamma) + ", trials=" + std::to_string(config.trials) + ", seed=" +
       std::to_string(config.seed) + "</text>\n";
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y_of(0)) + "\" x2=\"" + num(width - right) + "\" y2=\"" +
       num(y_of(0)) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y_of(0)) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y_of(1)) +
       "\" stroke=\"black\"/>\n";
  for (double rate : {0.0, 0.5, 1.0})
    s += "<text x=\"" + num(left - 30) + "\" y=\"" + num(y_of(rate) + 4) + "\">" + num(rate) + "</text>\n";
  for (double c : config.c_grid)
    s += "<text x=\"" + num(x_of(c) - 10) + "\" y=\"" + num(height - bottom + 18) + "\">" + num(c) + "</text>\n";
  s += "<text x=\"" + num(width / 2) + "\" y=\"" + num(height - 10) + "\">C (log scale)</text>\n";
  for (std::size_t k = 0; k < config.ns.size(); ++k) {
    std::string points;
    for (const auto& row : rows)
      if (row.n == config.ns[k]) points += num(x_of(row.c)) + "," + num(y_of(row.success_rate)) + " ";
    if (!points.empty()) points.pop_back();
    const char* colour = colours[k % 6];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"2\" points=\"" + points +
         "\"/>\n";
    s += "<text x=\"" + num(width - right - 60) + "\" y=\"" + num(top + 16.0 * static_cast<double>(k + 1)) +
         "\" fill=\"" + colour + "\">n=" + std::to_string(config.ns[k]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

JansonReport janson_report(const PartiteGraph& g, double p, int trials, const RandomSeed& seed,
                           std::size_t max_cliques) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability outside [0, 1]");
  if (trials < 1) throw InvalidArgument("janson report needs trials >= 1");
  const auto family = enumerate_kr(g, max_cliques);
  JansonReport rep;
  rep.p = p;
  rep.cliques = family.size();
  const auto moments = janson_lambda_delta(family, p);
  rep.lambda = moments.lambda;
  rep.delta_bar = moments.delta_bar;
  rep.delta_bar_overlap = family.size() <= 5000 ? janson_delta_bar_by_overlap(family, p) : std::nan("");
  rep.trials = trials;
  rep.seed = seed.seed;

  std::vector<double> counts;
  counts.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const auto sparse = sparsify(g, p, seed.derive(static_cast<std::uint64_t>(t)));
    std::size_t alive = 0;
    for (const auto& c : family) {
      bool ok = true;
      for (std::size_t a = 0; a < c.size() && ok; ++a)
        for (std::size_t b = a + 1; b < c.size() && ok; ++b) ok = sparse.adjacent(c.vertices[a], c.vertices[b]);
      alive += ok ? 1 : 0;
    }
    counts.push_back(static_cast<double>(alive));
  }
  double sum = 0;
  for (double x : counts) sum += x;
  rep.mc_mean = sum / trials;
  double sq = 0;
  for (double x : counts) sq += (x - rep.mc_mean) * (x - rep.mc_mean);
  rep.mc_variance = trials > 1 ? sq / (trials - 1) : 0.0;

  for (int step = 1; step <= 9; ++step) {
    JansonReport::Row row;
    row.a = step / 10.0;
    if (rep.delta_bar > 0) row.bound = janson_lower_bound({rep.lambda, rep.delta_bar, row.a});
    const double cut = (1 - row.a) * rep.lambda;
    row.empirical = static_cast<double>(std::count_if(counts.begin(), counts.end(), [&](double x) { return x <= cut; })) / trials;
    rep.table.push_back(row);
  }
  return rep;
}

std::string janson_json(const JansonReport& rep) {
  Json j;
  j["p"] = rep.p;
  j["cliques"] = rep.cliques;
  j["lambda"] = rep.lambda;
  j["delta_bar"] = rep.delta_bar;
  if (std::isnan(rep.delta_bar_overlap))
    j["delta_bar_overlap"] = nullptr;
  else
    j["delta_bar_overlap"] = rep.delta_bar_overlap;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["monte_carlo_mean"] = rep.mc_mean;
  j["monte_carlo_variance"] = rep.mc_variance;
  Json table = Json::array();
  for (const auto& row : rep.table) table.push_back({{"a", row.a}, {"bound", row.bound}, {"empirical", row.empirical}});
  j["bound"] = std::move(table);
  return j.dump(2) + "\n";
}

}  // namespace kfactor
