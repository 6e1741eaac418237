#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hexsum/experiments.hpp"
#include "hexsum/fourier.hpp"

using namespace hexsum;

namespace {

std::string csv(const Report& r) {
  std::ostringstream out;
  r.write_csv(out);
  return out.str();
}

double number(const ReportRow& row, const std::string& key) { return std::get<double>(row.get(key)); }

const std::string kDataDir = HEXSUM_TEST_DATA;

}  // namespace

TEST_CASE("command names") {
  for (auto c : {Command::verify, Command::kernel, Command::bernstein, Command::approximate, Command::rates, Command::kfun}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_command("plot"), std::invalid_argument);
}

TEST_CASE("slope fit") {
  const auto fit = fit_slope({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.stderr_slope == doctest::Approx(0.0));
  CHECK_THROWS_AS(fit_slope({0, 1}, {0, 1}), std::invalid_argument);
}

TEST_CASE("configuration errors give exit code 2") {
  ExperimentConfig c;
  c.command = Command::bernstein;
  c.k_min = 5;
  c.k_max = 2;
  CHECK(run_experiment(c).exit_code == kExitConfig);
  c = {};
  c.command = Command::rates;
  c.k_min = 2;
  c.k_max = 4;
  const auto few = run_experiment(c);
  CHECK(few.exit_code == kExitConfig);
  REQUIRE_FALSE(few.messages.empty());
  CHECK(few.messages[0].find("at least 4") != std::string::npos);
  c = {};
  c.command = Command::kfun;
  c.k_min = 0;
  CHECK(run_experiment(c).exit_code == kExitConfig);
  c = {};
  c.command = Command::approximate;
  c.family = "unknown";
  CHECK(run_experiment(c).exit_code == kExitConfig);
}

TEST_CASE("verify passes and is deterministic") {
  ExperimentConfig c;
  c.command = Command::verify;
  std::vector<std::string> statuses;
  for (std::uint64_t seed : {0u, 1u, 2u, 3u, 4u}) {
    c.seed = seed;
    const auto res = run_experiment(c);
    CHECK(res.exit_code == kExitPass);
    std::string s;
    for (const auto& row : res.report.rows()) s += std::get<std::string>(row.get("check")) + "=" + std::get<std::string>(row.get("status")) + ";";
    statuses.push_back(s);
  }
  for (const auto& s : statuses) CHECK(s == statuses.front());
  c.seed = 3;
  CHECK(csv(run_experiment(c).report) == csv(run_experiment(c).report));
}

TEST_CASE("verify rejects a corrupted input file") {
  ExperimentConfig c;
  c.command = Command::verify;
  c.input_path = kDataDir + "/bad_index.json";
  const auto res = run_experiment(c);
  CHECK(res.exit_code == kExitConfig);
  REQUIRE_FALSE(res.messages.empty());
  CHECK(res.messages[0].find("(1,1,1)") != std::string::npos);
  c.input_path = kDataDir + "/small.json";
  CHECK(run_experiment(c).exit_code == kExitPass);
  c.input_path = kDataDir + "/does_not_exist.json";
  CHECK(run_experiment(c).exit_code == kExitConfig);
}

TEST_CASE("bernstein at r = 0 is identically one") {
  ExperimentConfig c;
  c.command = Command::bernstein;
  c.r = 0;
  c.k_min = 1;
  c.k_max = 3;
  const auto res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  const auto& rows = res.report.rows();
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(number(rows[i], "scaled") - 1.0) <= 1e-6);
  CHECK(std::get<std::string>(rows[3].get("experiment")) == "bernstein-summary");
  const std::string text = csv(res.report);
  CHECK(text.rfind("experiment,k,rho,r,I,scaled,grid_n", 0) == 0);
}

TEST_CASE("kernel experiment") {
  ExperimentConfig c;
  c.command = Command::kernel;
  c.k_min = 1;
  c.k_max = 3;
  const auto res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  CHECK(res.report.rows().size() == 3);
}

TEST_CASE("approximate experiment") {
  ExperimentConfig c;
  c.command = Command::approximate;
  c.family = "shell-decay:3";
  c.r = 2;
  c.k_min = 1;
  c.k_max = 4;
  const auto res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  CHECK(res.report.rows().size() == 4);
  c.p = kInfinity;
  c.r = 1;
  c.input_path = kDataDir + "/small.json";
  CHECK(run_experiment(c).exit_code == kExitPass);
}

TEST_CASE("rates on the analytic family") {
  ExperimentConfig c;
  c.command = Command::rates;
  c.k_min = 2;
  c.k_max = 8;
  for (int r = 1; r <= 3; ++r) {
    c.r = r;
    const auto res = run_experiment(c);
    CHECK(res.exit_code == kExitPass);
    const auto& summary = res.report.rows().back();
    CHECK(std::abs(number(summary, "slope") - r) <= 0.15);
  }
}

TEST_CASE("rates on low-degree polynomials are exact zero") {
  ExperimentConfig c;
  c.command = Command::rates;
  c.family = "polynomial:1";
  c.r = 2;
  c.k_min = 2;
  c.k_max = 6;
  const auto res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  CHECK(std::get<std::string>(res.report.rows().back().get("slope")) == "exact-zero");
}

TEST_CASE("rates on the shell-decay family match the brute-force oracle") {
  ExperimentConfig c;
  c.command = Command::rates;
  c.family = "shell-decay:3";
  c.r = 1;
  c.k_min = 2;
  c.k_max = 8;
  const auto res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  for (std::size_t i = 0; i + 1 < res.report.rows().size(); ++i) {
    const auto& row = res.report.rows()[i];
    CHECK(number(row, "deviation") == doctest::Approx(number(row, "oracle")).epsilon(1e-10));
  }
  CHECK(std::holds_alternative<double>(res.report.rows().back().get("slope")));
}

TEST_CASE("kfun experiment") {
  ExperimentConfig c;
  c.command = Command::kfun;
  c.k_min = 1;
  c.k_max = 6;
  c.n = 1;
  c.family = "polynomial:0";
  auto res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  for (std::size_t i = 0; i + 1 < res.report.rows().size(); ++i) CHECK(number(res.report.rows()[i], "upper") == 0.0);

  c.family = "basis:3,-1";
  c.n = 2;
  res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  for (std::size_t i = 0; i + 1 < res.report.rows().size(); ++i) {
    const auto& row = res.report.rows()[i];
    const double delta = number(row, "delta");
    CHECK(number(row, "upper") <= std::min(1.0, delta * delta * 6.0) * (1.0 + 1e-12));
  }

  c.family = "shell-decay:2";
  c.n = 1;
  res = run_experiment(c);
  CHECK(res.exit_code == kExitPass);
  const auto& summary = res.report.rows().back();
  CHECK(number(summary, "C_emp") <= number(summary, "C_apriori"));
}

TEST_CASE("reports are reproducible") {
  ExperimentConfig c;
  c.command = Command::kfun;
  c.family = "shell-decay:3";
  c.k_min = 1;
  c.k_max = 3;
  CHECK(csv(run_experiment(c).report) == csv(run_experiment(c).report));
}
