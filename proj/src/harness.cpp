#include "vbp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "vbp/dual.hpp"
#include "vbp/relax.hpp"

namespace vbp {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

using json = nlohmann::json;

FamilySpec parse_family(const json& j) {
  FamilySpec f;
  f.name = j.at("name").get<std::string>();
  f.spec.kind = parse_gen_kind(j.at("kind").get<std::string>());
  f.spec.n = j.value("n", std::size_t{0});
  f.spec.d = j.value("d", std::size_t{1});
  f.spec.m = j.value("m", std::size_t{0});
  f.spec.scale = j.value("scale", 1.0);
  f.spec.k = j.value("k", f.spec.m);
  f.spec.items_per_bin = j.value("items_per_bin", std::size_t{1});
  if (j.contains("seeds")) {
    f.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  } else {
    const auto count = j.value("seed_count", std::size_t{1});
    const auto start = j.value("seed_start", std::uint64_t{1});
    for (std::size_t s = 0; s < count; ++s) f.seeds.push_back(start + s);
  }
  return f;
}

// Shared by all algorithms run on one instance.
struct InstanceFacts {
  std::size_t m_prime = 0;
  std::optional<std::size_t> opt;
  std::optional<double> dual_objective;
  std::optional<double> objective_floor;
};

InstanceFacts instance_facts(const Instance& inst, const SuiteConfig& cfg) {
  InstanceFacts facts;
  const std::size_t bound = relaxation_bound(inst);
  facts.m_prime = bound;
  if (!inst.empty() && inst.size() * bound <= cfg.lp_var_limit) {
    const auto relax = min_feasible_bins(inst);
    facts.m_prime = relax.m_prime;
    const auto stats = dual_stats(relax.solution, inst.dims());
    facts.dual_objective = stats.objective;
    facts.objective_floor = stats.objective_floor;
  }
  if (inst.size() <= cfg.oracle_max_n) {
    const auto exact = brute_force_opt(inst, cfg.node_budget);
    if (exact.status == ExactStatus::Proved) facts.opt = exact.opt;
  }
  return facts;
}

struct Job {
  const FamilySpec* family;
  std::size_t ordinal;
  std::uint64_t seed;
};

std::vector<ReportRow> run_job(const Job& job, const SuiteConfig& cfg) {
  char id[32];
  std::snprintf(id, sizeof id, "%05zu", job.ordinal);
  const std::string instance_id = job.family->name + "/" + id;

  std::vector<ReportRow> rows;
  auto blank_row = [&](Algorithm algo) {
    ReportRow r;
    r.instance_id = instance_id;
    r.family = job.family->name;
    r.algorithm = std::string(to_string(algo));
    return r;
  };

  Instance inst;
  InstanceFacts facts;
  try {
    GenSpec spec = job.family->spec;
    spec.seed = job.seed;
    inst = generate(spec).instance;
    facts = instance_facts(inst, cfg);
  } catch (const std::exception& e) {
    for (auto algo : cfg.algorithms) {
      auto r = blank_row(algo);
      r.error = e.what();
      rows.push_back(std::move(r));
    }
    return rows;
  }

  for (auto algo : cfg.algorithms) {
    auto r = blank_row(algo);
    r.n = inst.size();
    r.d = inst.dims();
    r.m_prime = facts.m_prime;
    r.opt = facts.opt;
    r.dual_objective = facts.dual_objective;
    r.objective_floor = facts.objective_floor;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = run_algorithm(inst, algo);
      r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto check = check_packing(inst, res.packing);
      if (!check.valid) throw Error("invalid packing rejected");
      r.bins = res.packing.bin_count;
      r.case_trace = res.trace.summary();
      if (facts.m_prime > 0) r.ratio_vs_mprime = double(*r.bins) / double(facts.m_prime);
      if (facts.opt && *facts.opt > 0) r.ratio_vs_opt = double(*r.bins) / double(*facts.opt);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

template <typename T>
void put(std::ostream& out, const std::optional<T>& v) {
  if (!v) return;
  if constexpr (std::is_floating_point_v<T>)
    out << format_double(*v);
  else
    out << *v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

SuiteConfig parse_suite_config(const json& j) {
  SuiteConfig cfg;
  for (const auto& f : j.value("families", json::array())) cfg.families.push_back(parse_family(f));
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& a : j.at("algorithms")) cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
  }
  cfg.oracle_max_n = j.value("oracle_max_n", cfg.oracle_max_n);
  cfg.node_budget = j.value("node_budget", cfg.node_budget);
  cfg.lp_var_limit = j.value("lp_var_limit", cfg.lp_var_limit);
  cfg.threads = std::max<std::size_t>(1, j.value("threads", cfg.threads));
  cfg.output_path = j.value("output", std::string{});
  return cfg;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  std::vector<Job> jobs;
  for (const auto& f : cfg.families)
    for (std::size_t s = 0; s < f.seeds.size(); ++s) jobs.push_back({&f, s, f.seeds[s]});

  std::vector<std::vector<ReportRow>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = run_job(jobs[i], cfg);
  };
  const std::size_t nthreads = std::min(std::max<std::size_t>(1, cfg.threads), jobs.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  SuiteReport report;
  for (auto& rs : results)
    for (auto& r : rs) report.rows.push_back(std::move(r));
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.instance_id, a.algorithm) < std::tie(b.instance_id, b.algorithm);
  });
  return report;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{
      "instance_id",    "family",          "n",          "d",
      "algorithm",      "bins",            "m_prime",    "opt",
      "ratio_vs_opt",   "ratio_vs_mprime", "dual_objective", "objective_floor",
      "case_trace",     "wall_time"};
  return cols;
}

void write_csv(std::ostream& out, const SuiteReport& report) {
  const auto& cols = report_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& r : report.rows) {
    out << csv_escape(r.instance_id) << ',' << csv_escape(r.family) << ',' << r.n << ',' << r.d
        << ',' << r.algorithm << ',';
    put(out, r.bins);
    out << ',' << r.m_prime << ',';
    put(out, r.opt);
    out << ',';
    put(out, r.ratio_vs_opt);
    out << ',';
    put(out, r.ratio_vs_mprime);
    out << ',';
    put(out, r.dual_objective);
    out << ',';
    put(out, r.objective_floor);
    out << ',' << csv_escape(r.error.empty() ? r.case_trace : "error: " + r.error) << ','
        << format_double(r.wall_time) << '\n';
  }
}

json to_json(const SuiteReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"instance_id", r.instance_id},
                    {"family", r.family},
                    {"n", r.n},
                    {"d", r.d},
                    {"algorithm", r.algorithm},
                    {"bins", opt_json(r.bins)},
                    {"m_prime", r.m_prime},
                    {"opt", opt_json(r.opt)},
                    {"ratio_vs_opt", opt_json(r.ratio_vs_opt)},
                    {"ratio_vs_mprime", opt_json(r.ratio_vs_mprime)},
                    {"dual_objective", opt_json(r.dual_objective)},
                    {"objective_floor", opt_json(r.objective_floor)},
                    {"case_trace", r.case_trace},
                    {"wall_time", r.wall_time},
                    {"error", r.error.empty() ? json(nullptr) : json(r.error)}});
  }
  return {{"rows", rows}};
}

std::vector<SummaryRow> summarize(const SuiteReport& report) {
  if (report.rows.empty()) throw EmptyReport();

  struct Acc {
    SummaryRow row;
    std::size_t mprime_rows = 0;
    double mprime_sum = 0.0;
    std::size_t opt_rows = 0;
    double opt_sum = 0.0;
    double opt_max = 0.0;
    std::size_t floor_rows = 0;
    std::size_t floor_met = 0;
  };
  std::vector<Acc> accs;
  std::map<std::pair<std::string, std::string>, std::size_t> index;

  for (const auto& r : report.rows) {
    const auto key = std::make_pair(r.family, r.algorithm);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, accs.size()).first;
      Acc a;
      a.row.family = r.family;
      a.row.algorithm = r.algorithm;
      accs.push_back(a);
    }
    Acc& a = accs[it->second];
    ++a.row.rows;
    if (!r.error.empty()) {
      ++a.row.errors;
      continue;
    }
    if (r.ratio_vs_mprime) {
      ++a.mprime_rows;
      a.mprime_sum += *r.ratio_vs_mprime;
      a.row.max_ratio_vs_mprime = std::max(a.row.max_ratio_vs_mprime, *r.ratio_vs_mprime);
    }
    if (r.ratio_vs_opt) {
      ++a.opt_rows;
      a.opt_sum += *r.ratio_vs_opt;
      a.opt_max = std::max(a.opt_max, *r.ratio_vs_opt);
    }
    if (r.dual_objective && r.objective_floor) {
      ++a.floor_rows;
      if (*r.dual_objective >= *r.objective_floor) ++a.floor_met;
    }
  }

  std::vector<SummaryRow> out;
  for (auto& a : accs) {
    if (a.mprime_rows) a.row.mean_ratio_vs_mprime = a.mprime_sum / double(a.mprime_rows);
    if (a.opt_rows) {
      a.row.mean_ratio_vs_opt = a.opt_sum / double(a.opt_rows);
      a.row.max_ratio_vs_opt = a.opt_max;
    }
    if (a.floor_rows) a.row.floor_met_fraction = double(a.floor_met) / double(a.floor_rows);
    out.push_back(a.row);
  }
  return out;
}

json to_json(const std::vector<SummaryRow>& summary) {
  json out = json::array();
  for (const auto& s : summary) {
    out.push_back({{"family", s.family},
                   {"algorithm", s.algorithm},
                   {"rows", s.rows},
                   {"errors", s.errors},
                   {"mean_ratio_vs_mprime", s.mean_ratio_vs_mprime},
                   {"max_ratio_vs_mprime", s.max_ratio_vs_mprime},
                   {"mean_ratio_vs_opt", opt_json(s.mean_ratio_vs_opt)},
                   {"max_ratio_vs_opt", opt_json(s.max_ratio_vs_opt)},
                   {"floor_met_fraction", opt_json(s.floor_met_fraction)}});
  }
  return out;
}

}  // namespace vbp
