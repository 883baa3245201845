#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "vbp/exact.hpp"
#include "vbp/gen.hpp"
#include "vbp/heur.hpp"

namespace vbp {

class EmptyReport : public Error {
 public:
  EmptyReport() : Error("report has no rows") {}
};

struct FamilySpec {
  std::string name;
  GenSpec spec;  // spec.seed is ignored; seeds come from `seeds`
  std::vector<std::uint64_t> seeds;
};

struct SuiteConfig {
  std::vector<FamilySpec> families;
  std::vector<Algorithm> algorithms{Algorithm::Auto};
  std::size_t oracle_max_n = 10;  // exact OPT only for n <= this
  std::uint64_t node_budget = kDefaultNodeBudget;
  // Above this many LP columns (n * m') the suite skips the LP and reports the
  // certified m' without dual diagnostics.
  std::size_t lp_var_limit = 60000;
  std::size_t threads = 1;
  std::string output_path;
};

/// Reads the JSON suite description documented in README.md.
SuiteConfig parse_suite_config(const nlohmann::json& j);

struct ReportRow {
  std::string instance_id;
  std::string family;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string algorithm;
  std::optional<std::size_t> bins;
  std::size_t m_prime = 0;
  std::optional<std::size_t> opt;
  std::optional<double> ratio_vs_opt;
  std::optional<double> ratio_vs_mprime;
  std::optional<double> dual_objective;
  std::optional<double> objective_floor;
  std::string case_trace;
  double wall_time = 0.0;  // seconds
  std::string error;       // empty on success
};

struct SuiteReport {
  std::vector<ReportRow> rows;
};

/// Runs every algorithm on every (family, seed) instance. Packings are
/// re-checked before their numbers are recorded; failures of any kind end up
/// in the row's error instead of aborting the suite. Rows are sorted by
/// (instance_id, algorithm).
SuiteReport run_suite(const SuiteConfig& cfg);

/// Column names in CSV order.
const std::vector<std::string>& report_columns();

/// CSV with a header row. Errors are written into case_trace as "error: ...".
void write_csv(std::ostream& out, const SuiteReport& report);
nlohmann::json to_json(const SuiteReport& report);

struct SummaryRow {
  std::string family;
  std::string algorithm;
  std::size_t rows = 0;
  std::size_t errors = 0;
  double mean_ratio_vs_mprime = 0.0;
  double max_ratio_vs_mprime = 0.0;
  std::optional<double> mean_ratio_vs_opt;
  std::optional<double> max_ratio_vs_opt;
  /// Fraction of rows with dual objective >= objective floor, among rows with both.
  std::optional<double> floor_met_fraction;
};

/// Aggregates per (family, algorithm) in order of first appearance.
/// Throws EmptyReport on an empty report.
std::vector<SummaryRow> summarize(const SuiteReport& report);

nlohmann::json to_json(const std::vector<SummaryRow>& summary);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace vbp
