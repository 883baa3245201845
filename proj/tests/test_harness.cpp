#include <sstream>

#include "doctest.h"
#include "vbp/harness.hpp"

using namespace vbp;

namespace {

std::string strip_times(const std::string& csv) {
  // Drops the last column (wall_time) from every line.
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

SuiteConfig small_suite() {
  return parse_suite_config(nlohmann::json::parse(R"({
    "families": [
      {"name": "ko", "kind": "knownopt", "m": 2, "items_per_bin": 3, "d": 2, "seed_count": 3},
      {"name": "uni", "kind": "uniform", "n": 25, "d": 3, "scale": 0.4, "seeds": [4, 9]}
    ],
    "algorithms": ["auto", "firstfit", "greedylp", "iterative"]
  })"));
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = small_suite();
  REQUIRE(cfg.families.size() == 2);
  CHECK(cfg.families[0].spec.kind == GenKind::KnownOpt);
  CHECK(cfg.families[0].seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(cfg.families[1].seeds == std::vector<std::uint64_t>{4, 9});
  CHECK(cfg.families[1].spec.scale == 0.4);
  CHECK(cfg.algorithms.size() == 4);
  CHECK(cfg.oracle_max_n == 10);
  CHECK_THROWS_AS(parse_suite_config(nlohmann::json::parse(R"({"algorithms": ["nope"]})")), Error);
  CHECK_THROWS(parse_suite_config(nlohmann::json::parse(R"({"families": [{"name": "x"}]})")));
}

TEST_CASE("empty family list gives a header-only CSV") {
  const auto report = run_suite(SuiteConfig{});
  CHECK(report.rows.empty());
  std::ostringstream out;
  write_csv(out, report);
  CHECK(out.str() ==
        "instance_id,family,n,d,algorithm,bins,m_prime,opt,ratio_vs_opt,ratio_vs_mprime,"
        "dual_objective,objective_floor,case_trace,wall_time\n");
  CHECK_THROWS_AS(summarize(report), EmptyReport);
}

TEST_CASE("suite rows") {
  const auto report = run_suite(small_suite());
  REQUIRE(report.rows.size() == (3 + 2) * 4);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    CHECK((a.instance_id < b.instance_id || (a.instance_id == b.instance_id && a.algorithm < b.algorithm)));
  }
  CHECK(report.rows.front().instance_id == "ko/00000");
  for (const auto& r : report.rows) {
    CHECK(r.error.empty());
    REQUIRE(r.bins.has_value());
    CHECK(*r.bins >= r.m_prime);
    CHECK(r.dual_objective.has_value());
    CHECK(r.objective_floor.has_value());
    if (r.family == "ko") {
      // Six items: the oracle runs and the witness caps OPT at 2.
      REQUIRE(r.opt.has_value());
      CHECK(*r.opt <= 2);
      CHECK(*r.ratio_vs_opt >= 1.0);
    } else {
      CHECK_FALSE(r.opt.has_value());
    }
  }

  std::ostringstream a, b;
  write_csv(a, report);
  write_csv(b, run_suite(small_suite()));
  CHECK(strip_times(a.str()) == strip_times(b.str()));

  auto threaded = small_suite();
  threaded.threads = 3;
  std::ostringstream c;
  write_csv(c, run_suite(threaded));
  CHECK(strip_times(a.str()) == strip_times(c.str()));

  const auto j = to_json(report);
  CHECK(j.at("rows").size() == report.rows.size());
}

TEST_CASE("large instances skip the LP but keep m'") {
  auto cfg = small_suite();
  cfg.lp_var_limit = 10;
  for (const auto& r : run_suite(cfg).rows) {
    CHECK(r.error.empty());
    CHECK_FALSE(r.dual_objective.has_value());
    CHECK(r.m_prime >= 1);
  }
}

TEST_CASE("generator failures become error rows") {
  SuiteConfig cfg;
  FamilySpec bad;
  bad.name = "bad";
  bad.spec.kind = GenKind::Case2Regime;
  bad.spec.m = 3;
  bad.spec.k = 1;
  bad.spec.d = 2;
  bad.seeds = {1};
  cfg.families.push_back(bad);
  const auto report = run_suite(cfg);
  REQUIRE(report.rows.size() == 1);
  CHECK_FALSE(report.rows[0].error.empty());
  std::ostringstream out;
  write_csv(out, report);
  CHECK(out.str().find(",error: ") != std::string::npos);
  const auto s = summarize(report);
  REQUIRE(s.size() == 1);
  CHECK(s[0].errors == 1);
}

TEST_CASE("summarize") {
  auto row = [](std::string fam, double ratio, std::optional<double> vs_opt) {
    ReportRow r;
    r.instance_id = fam + "/x";
    r.family = fam;
    r.algorithm = "auto";
    r.bins = 3;
    r.m_prime = 2;
    r.ratio_vs_mprime = ratio;
    r.ratio_vs_opt = vs_opt;
    return r;
  };

  SuiteReport one{{row("a", 1.0, 1.0)}};
  auto s = summarize(one);
  REQUIRE(s.size() == 1);
  CHECK(s[0].mean_ratio_vs_mprime == 1.0);
  CHECK(*s[0].mean_ratio_vs_opt == 1.0);
  CHECK_FALSE(s[0].floor_met_fraction.has_value());

  SuiteReport two{{row("a", 1.0, std::nullopt), row("a", 1.5, std::nullopt), row("b", 2.0, 2.0)}};
  two.rows[0].dual_objective = 2.0;
  two.rows[0].objective_floor = 1.5;
  two.rows[1].dual_objective = 1.0;
  two.rows[1].objective_floor = 1.5;
  s = summarize(two);
  REQUIRE(s.size() == 2);
  CHECK(s[0].family == "a");
  CHECK(s[0].rows == 2);
  CHECK(s[0].mean_ratio_vs_mprime == doctest::Approx(1.25));
  CHECK(s[0].max_ratio_vs_mprime == 1.5);
  CHECK_FALSE(s[0].mean_ratio_vs_opt.has_value());
  CHECK(*s[0].floor_met_fraction == 0.5);
  CHECK(s[1].family == "b");
  CHECK(*s[1].max_ratio_vs_opt == 2.0);
  CHECK(to_json(s).size() == 2);
}

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.25) == "1.25");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
