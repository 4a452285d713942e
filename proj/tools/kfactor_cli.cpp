#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kfactor/error.hpp"
#include "kfactor/experiments.hpp"
#include "kfactor/generators.hpp"
#include "kfactor/graph_io.hpp"
#include "kfactor/pipeline.hpp"
#include "kfactor/transversal.hpp"
#include "kfactor/verify.hpp"

namespace {

using namespace kfactor;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ParseError("cannot open " + out + " for writing");
  f << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Clique> load_cliques(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_cliques(in);
}

struct SweepArgs {
  SweepConfig config;
  std::string format = "csv";
  std::string out;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
  cmd->add_option("--r", a.config.r, "number of parts")->capture_default_str();
  cmd->add_option("--n", a.config.ns, "part sizes, one row block per value")->capture_default_str();
  cmd->add_option("--gamma", a.config.gamma, "star-degree slack")->capture_default_str();
  cmd->add_option("--C", a.config.c_grid, "threshold constants")->capture_default_str();
  cmd->add_option("--trials", a.config.trials, "trials per grid point")->capture_default_str();
  cmd->add_option("--seed", a.config.seed, "base seed")->capture_default_str();
  cmd->add_option("--edge-keep", a.config.edge_keep, "generator edge density target")->capture_default_str();
  cmd->add_option("--threads", a.config.threads, "worker threads per grid point")->capture_default_str();
  cmd->add_option("--max-rows", a.config.limits.max_rows, "solver clique-row guard")->capture_default_str();
  cmd->add_option("--max-nodes", a.config.limits.max_nodes, "solver node guard, 0 = none")->capture_default_str();
  cmd->add_flag("--timing", a.config.timing, "record wall_ms");
  cmd->add_option("--format", a.format, "csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  cmd->add_option("--out", a.out, "output file, stdout when omitted");
}

int run_sweep_cmd(const SweepArgs& a) {
  const auto rows = run_sweep(a.config);
  if (a.format == "json")
    emit(sweep_json(a.config, rows), a.out);
  else if (a.format == "svg")
    emit(sweep_svg(a.config, rows), a.out);
  else
    emit(sweep_csv(a.config, rows), a.out);
  return exit_ok;
}

struct PipelineArgs {
  std::string instance;
  int r = 3;
  int k = 2;
  int cluster_size = 30;
  double d = 0.6;
  int b_size = 3;
  double p = 1.0;
  std::uint64_t seed = 1;
  bool super_regularize = false;
  int w_retries = 100;
  std::string out;
};

int run_pipeline_cmd(const PipelineArgs& a) {
  const auto instance = a.instance.empty()
                            ? gen_super_regular_instance(a.r, a.k, a.cluster_size, a.d, a.b_size, RandomSeed{a.seed, 0})
                            : instance_from_json(slurp(a.instance));
  PipelineOptions options;
  options.super_regularize = a.super_regularize;
  options.w_retries = a.w_retries;
  const auto report = run_pipeline(instance, a.p, RandomSeed{a.seed, 1}, options);
  emit(report_to_json(report), a.out);
  if (!report.success) std::cerr << "pipeline failed at " << report.failure_stage << ": " << report.failure_detail << '\n';
  return report.success ? exit_ok : exit_failure;
}

struct JansonArgs {
  std::string graph;
  double p = 0.5;
  int trials = 10000;
  std::uint64_t seed = 1;
  std::size_t max_cliques = 200000;
  std::string out;
};

struct VerifyArgs {
  std::string graph;
  std::string cert;
  std::string family;
};

int run_verify_cmd(const VerifyArgs& a) {
  Verdict verdict;
  if (!a.family.empty()) {
    const auto family = load_family(a.family);
    std::ifstream in(a.cert);
    if (!in) throw ParseError("cannot open " + a.cert);
    verdict = verify_transversal(family, read_transversal(in));
  } else {
    if (a.graph.empty()) throw InvalidArgument("verify needs --graph or --family");
    verdict = verify_factor(load_graph(a.graph), load_cliques(a.cert));
  }
  if (verdict) {
    std::cout << "ok\n";
    return exit_ok;
  }
  std::cout << "violation " << verdict.reason << ": " << verdict.detail << '\n';
  return exit_failure;
}

struct SolveArgs {
  std::string graph;
  std::string family;
  std::uint64_t seed = 1;
  std::string out;
};

int run_solve_cmd(const SolveArgs& a) {
  std::ostringstream text;
  if (!a.family.empty()) {
    const auto family = load_family(a.family);
    const auto bundle = PermutationBundle::sample(family.parts(), family.part_size(), RandomSeed{a.seed, 0});
    const auto aux = build_b_pi(family, bundle);
    const auto f = find_factor(aux.graph);
    if (!f) {
      std::cerr << "no factor in the auxiliary graph for this bundle\n";
      return exit_failure;
    }
    write_transversal(text, lift_factor(aux, *f));
  } else {
    if (a.graph.empty()) throw InvalidArgument("solve needs --graph or --family");
    const auto f = find_factor(load_graph(a.graph));
    if (!f) {
      std::cerr << "no K_r-factor\n";
      return exit_failure;
    }
    write_cliques(text, f->cliques);
  }
  emit(text.str(), a.out);
  return exit_ok;
}

struct GenArgs {
  std::string kind = "min-degree";
  int r = 3;
  int n = 6;
  double gamma = 0.1;
  double edge_keep = 0.5;
  int k = 2;
  int cluster_size = 30;
  double d = 0.6;
  int b_size = 3;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen_cmd(const GenArgs& a) {
  const RandomSeed seed{a.seed, 0};
  if (a.kind == "planted") {
    emit(instance_to_json(gen_super_regular_instance(a.r, a.k, a.cluster_size, a.d, a.b_size, seed)), a.out);
    return exit_ok;
  }
  if (a.kind == "family") {
    if (a.out.empty() || a.out == "-") throw InvalidArgument("gen --kind family needs --out <manifest>");
    save_family(a.out, GraphFamily::min_degree(a.r, a.n, a.gamma, a.edge_keep, seed));
    return exit_ok;
  }
  std::ostringstream text;
  if (a.kind == "witness")
    write_graph(text, gen_no_factor_witness(a.r, a.n, seed));
  else if (a.kind == "complete")
    write_graph(text, PartiteGraph::complete(a.r, a.n));
  else
    write_graph(text, gen_min_degree_instance(a.r, a.n, a.gamma, a.edge_keep, seed));
  emit(text.str(), a.out);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K_r-factor experiments on balanced r-partite graphs"};
  app.require_subcommand(1);

  SweepArgs threshold_args;
  auto* threshold = app.add_subcommand("threshold-sweep", "success rate of find_factor on G(p) over a C grid");
  add_sweep_options(threshold, threshold_args);

  SweepArgs transversal_args;
  transversal_args.config.mode = SweepMode::transversal;
  auto* transversal =
      app.add_subcommand("transversal-sweep", "success rate of transversal factors via B_pi over a C grid");
  add_sweep_options(transversal, transversal_args);

  PipelineArgs pipeline_args;
  auto* pipeline = app.add_subcommand("pipeline-run", "run the three-round construction on a partitioned instance");
  pipeline->add_option("--instance", pipeline_args.instance, "instance JSON; a planted instance is drawn otherwise");
  pipeline->add_option("--r", pipeline_args.r)->capture_default_str();
  pipeline->add_option("--k", pipeline_args.k, "clusters per part")->capture_default_str();
  pipeline->add_option("--cluster-size", pipeline_args.cluster_size)->capture_default_str();
  pipeline->add_option("--d", pipeline_args.d, "cluster pair density")->capture_default_str();
  pipeline->add_option("--b-size", pipeline_args.b_size, "exceptional vertices")->capture_default_str();
  pipeline->add_option("--p", pipeline_args.p, "edge probability")->capture_default_str();
  pipeline->add_option("--seed", pipeline_args.seed)->capture_default_str();
  pipeline->add_option("--w-retries", pipeline_args.w_retries)->capture_default_str();
  pipeline->add_flag("--super-regularize", pipeline_args.super_regularize);
  pipeline->add_option("--out", pipeline_args.out, "report file, stdout when omitted");

  JansonArgs janson_args;
  auto* janson = app.add_subcommand("janson-report", "exact lambda and Delta-bar with a Monte Carlo check");
  janson->add_option("--graph", janson_args.graph, "graph file")->required();
  janson->add_option("--p", janson_args.p)->capture_default_str();
  janson->add_option("--trials", janson_args.trials)->capture_default_str();
  janson->add_option("--seed", janson_args.seed)->capture_default_str();
  janson->add_option("--max-cliques", janson_args.max_cliques)->capture_default_str();
  janson->add_option("--out", janson_args.out);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a factor or transversal certificate");
  verify->add_option("--graph", verify_args.graph, "graph file");
  verify->add_option("--cert", verify_args.cert, "certificate file")->required();
  verify->add_option("--family", verify_args.family, "family manifest, selects transversal checking");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "write a factor or transversal certificate");
  solve->add_option("--graph", solve_args.graph, "graph file");
  solve->add_option("--family", solve_args.family, "family manifest");
  solve->add_option("--seed", solve_args.seed, "bundle seed for families")->capture_default_str();
  solve->add_option("--out", solve_args.out);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "emit instance files");
  gen->add_option("--kind", gen_args.kind)
      ->check(CLI::IsMember({"min-degree", "witness", "complete", "planted", "family"}))
      ->capture_default_str();
  gen->add_option("--r", gen_args.r)->capture_default_str();
  gen->add_option("--n", gen_args.n)->capture_default_str();
  gen->add_option("--gamma", gen_args.gamma)->capture_default_str();
  gen->add_option("--edge-keep", gen_args.edge_keep)->capture_default_str();
  gen->add_option("--k", gen_args.k)->capture_default_str();
  gen->add_option("--cluster-size", gen_args.cluster_size)->capture_default_str();
  gen->add_option("--d", gen_args.d)->capture_default_str();
  gen->add_option("--b-size", gen_args.b_size)->capture_default_str();
  gen->add_option("--seed", gen_args.seed)->capture_default_str();
  gen->add_option("--out", gen_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*threshold) return run_sweep_cmd(threshold_args);
    if (*transversal) return run_sweep_cmd(transversal_args);
    if (*pipeline) return run_pipeline_cmd(pipeline_args);
    if (*janson) {
      const auto rep = janson_report(load_graph(janson_args.graph), janson_args.p, janson_args.trials,
                                     RandomSeed{janson_args.seed, 0}, janson_args.max_cliques);
      emit(janson_json(rep), janson_args.out);
      return exit_ok;
    }
    if (*verify) return run_verify_cmd(verify_args);
    if (*solve) return run_solve_cmd(solve_args);
    if (*gen) return run_gen_cmd(gen_args);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_usage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return exit_usage;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}
