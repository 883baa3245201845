// Command-line front end: lp, dual, solve, exact, gen, bench.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vbp/core.hpp"
#include "vbp/dual.hpp"
#include "vbp/exact.hpp"
#include "vbp/gen.hpp"
#include "vbp/harness.hpp"
#include "vbp/heur.hpp"
#include "vbp/relax.hpp"

using json = nlohmann::json;

namespace {

json assignment_json(const vbp::Packing& p) {
  json a = json::array();
  for (auto b : p.assignment) a.push_back(b == vbp::kUnassigned ? json(nullptr) : json(b));
  return a;
}

json fractional_loads(const vbp::Instance& inst, const vbp::FractionalSolution& sol) {
  json loads = json::array();
  for (std::size_t j = 0; j < sol.m; ++j) {
    json row = json::array();
    for (std::size_t k = 0; k < inst.dims(); ++k) {
      double load = 0.0;
      for (std::size_t i = 0; i < sol.n; ++i) load += inst.item(i)[k] * sol(i, j);
      row.push_back(load);
    }
    loads.push_back(row);
  }
  return loads;
}

int cmd_lp(const std::string& file) {
  const auto inst = vbp::read_vbp_file(file);
  const auto relax = vbp::min_feasible_bins(inst);
  const auto stats = vbp::support_stats(relax.solution);
  json out{{"n", inst.size()},
           {"d", inst.dims()},
           {"m_prime", relax.m_prime},
           {"lp_solves", relax.lp_solves},
           {"fractional_items", stats.fractional_items},
           {"integral_items", stats.integral_items},
           {"fractional_limit", inst.dims() * relax.m_prime},
           {"bin_loads", fractional_loads(inst, relax.solution)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_dual(const std::string& file) {
  const auto inst = vbp::read_vbp_file(file);
  const auto relax = vbp::min_feasible_bins(inst);
  const auto stats = vbp::dual_stats(relax.solution, inst.dims());
  json out{{"n", inst.size()},
           {"d", inst.dims()},
           {"m_prime", relax.m_prime},
           {"objective", stats.objective},
           {"per_bin_utility", stats.per_bin_utility},
           {"column_mean", stats.column_mean},
           {"column_rms", stats.column_rms},
           {"column_sigma", stats.column_sigma},
           {"objective_floor", inst.empty() ? json(nullptr) : json(stats.objective_floor)},
           {"floor_met", !inst.empty() && stats.objective >= stats.objective_floor}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_solve(const std::string& file, const std::string& algo_name, bool decreasing) {
  const auto inst = vbp::read_vbp_file(file);
  const auto algo = vbp::parse_algorithm(algo_name);
  vbp::HeurResult res;
  if (algo == vbp::Algorithm::FirstFit && decreasing) {
    res.packing = vbp::first_fit(inst, vbp::decreasing_max_order(inst));
    res.trace.rounds.push_back(
        {vbp::RoundKind::FirstFit, inst.size(), res.packing.bin_count, vbp::relaxation_bound(inst)});
  } else {
    res = vbp::run_algorithm(inst, algo);
  }
  const auto check = vbp::check_packing(inst, res.packing);
  json trace = json::array();
  for (const auto& r : res.trace.rounds)
    trace.push_back({{"case", std::string(vbp::to_string(r.kind))},
                     {"items_packed", r.items_packed},
                     {"bins_opened", r.bins_opened},
                     {"m_prime", r.m_prime}});
  json out{{"algorithm", algo_name},
           {"bins", res.packing.bin_count},
           {"valid", check.valid},
           {"assignment", assignment_json(res.packing)},
           {"trace", trace}};
  std::cout << out.dump(2) << '\n';
  return check.valid ? 0 : 1;
}

int cmd_exact(const std::string& file, std::uint64_t budget) {
  const auto inst = vbp::read_vbp_file(file);
  const auto res = vbp::brute_force_opt(inst, budget);
  json out{{"opt", res.opt},
           {"status", res.status == vbp::ExactStatus::Proved ? "proved" : "aborted"},
           {"nodes", res.nodes},
           {"assignment", assignment_json(res.packing)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_gen(const vbp::GenSpec& spec, const std::string& out_path) {
  const auto gen = vbp::generate(spec);
  vbp::write_vbp_file(out_path, gen.instance);
  if (gen.witness) {
    std::ofstream side(out_path + ".witness.json");
    side << json{{"m_upper", gen.witness->bin_count}, {"assignment", assignment_json(*gen.witness)}}
                .dump(2)
         << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& config_path, std::string out_path, std::size_t threads) {
  std::ifstream in(config_path);
  if (!in) throw vbp::Error("cannot open " + config_path);
  auto cfg = vbp::parse_suite_config(json::parse(in));
  if (threads) cfg.threads = threads;
  if (out_path.empty()) out_path = cfg.output_path.empty() ? "report.csv" : cfg.output_path;

  const auto report = vbp::run_suite(cfg);
  {
    std::ofstream csv(out_path);
    if (!csv) throw vbp::Error("cannot write " + out_path);
    vbp::write_csv(csv, report);
  }
  auto json_path = std::filesystem::path(out_path).replace_extension(".json");
  std::ofstream(json_path) << vbp::to_json(report).dump(2) << '\n';

  if (report.rows.empty()) {
    std::cout << "[]\n";
  } else {
    std::cout << vbp::to_json(vbp::summarize(report)).dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector bin packing toolkit"};
  app.require_subcommand(1);

  std::string file;
  auto* lp = app.add_subcommand("lp", "Least feasible LP bin count and support statistics");
  lp->add_option("file", file, "instance (.vbp)")->required();

  auto* dual = app.add_subcommand("dual", "Normalized-weight objective and per-bin utilities");
  dual->add_option("file", file, "instance (.vbp)")->required();

  std::string algo = "auto";
  bool decreasing = false;
  auto* solve = app.add_subcommand("solve", "Pack an instance");
  solve->add_option("file", file, "instance (.vbp)")->required();
  solve->add_option("--algo", algo, "auto|firstfit|greedylp|iterative")
      ->check(CLI::IsMember({"auto", "firstfit", "greedylp", "iterative"}));
  solve->add_flag("--decreasing", decreasing, "firstfit only: sort by largest component first");

  std::uint64_t budget = vbp::kDefaultNodeBudget;
  auto* exact = app.add_subcommand("exact", "Exact minimum bin count by branch and bound");
  exact->add_option("file", file, "instance (.vbp)")->required();
  exact->add_option("--budget", budget, "node budget");

  vbp::GenSpec spec;
  std::string kind = "uniform";
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  gen->add_option("--kind", kind, "uniform|knownopt|case2")
      ->check(CLI::IsMember({"uniform", "knownopt", "case2"}));
  gen->add_option("--n", spec.n, "items (uniform)");
  gen->add_option("--d", spec.d, "dimensions");
  gen->add_option("--m", spec.m, "bins (knownopt, case2)");
  gen->add_option("--k", spec.k, "regime multiplier (case2)");
  gen->add_option("--scale", spec.scale, "component or load ceiling in (0,1]");
  gen->add_option("--items-per-bin", spec.items_per_bin, "knownopt");
  gen->add_option("--seed", spec.seed, "PRNG seed");
  gen->add_option("-o,--output", out_path, "output .vbp")->required();

  std::string config;
  std::size_t threads = 0;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--config", config, "suite JSON")->required();
  bench->add_option("-o,--output", out_path, "report CSV (JSON written alongside)");
  bench->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*lp) return cmd_lp(file);
    if (*dual) return cmd_dual(file);
    if (*solve) return cmd_solve(file, algo, decreasing);
    if (*exact) return cmd_exact(file, budget);
    if (*gen) {
      spec.kind = vbp::parse_gen_kind(kind);
      if (spec.kind == vbp::GenKind::Case2Regime && spec.k == 0) spec.k = spec.m;
      return cmd_gen(spec, out_path);
    }
    if (*bench) return cmd_bench(config, out_path, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
