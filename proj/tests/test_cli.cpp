#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#include "bestchoice/asymptotic.hpp"
#include "bestchoice/exact.hpp"
#include "bestchoice/expint.hpp"
#include "subprocess.hpp"

using json = nlohmann::json;
using namespace bestchoice;
using testutil::run_command;
using testutil::split_csv_row;
using testutil::split_lines;

namespace {

const std::string kCli = BESTCHOICE_CLI_PATH;

testutil::CommandResult cli(const std::string& args) {
  return run_command(kCli + " " + args + " 2>/dev/null");
}

}  // namespace

TEST_CASE("alpha-beta output in every format") {
  const auto pretty = cli("alpha-beta");
  CHECK(pretty.exit_code == 0);
  const AlphaBeta& ab = find_alpha_beta();
  double a = 0.0, b = 0.0;
  REQUIRE(std::sscanf(pretty.output.c_str(), "%lf, %lf", &a, &b) == 2);
  CHECK(std::fabs(a - ab.alpha) < 1e-12);
  CHECK(std::fabs(b - ab.beta) < 1e-12);

  const auto as_json = cli("alpha-beta --format json");
  const json parsed = json::parse(as_json.output);
  CHECK(std::fabs(parsed["alpha"].get<double>() - ab.alpha) < 1e-12);
  CHECK(std::fabs(parsed["beta"].get<double>() - ab.beta) < 1e-12);

  const auto as_csv = cli("alpha-beta --format csv");
  const auto lines = split_lines(as_csv.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "alpha,beta");
}

TEST_CASE("exact subcommand emits the record schema") {
  const auto result = cli("exact --n 4 --theta 1 --r 1 --format json");
  CHECK(result.exit_code == 0);
  const json parsed = json::parse(result.output);
  CHECK(parsed["n"] == 4);
  CHECK(parsed["r"] == 1);
  CHECK(parsed["w"].get<double>() == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(parsed["p"].get<double>() == doctest::Approx(11.0 / 24.0).epsilon(1e-12));
  CHECK(parsed["method"] == "closed_form");

  const auto recurrence =
      cli("exact --n 4 --theta 1 --r 1 --method recurrence --format json");
  const json parsed_rec = json::parse(recurrence.output);
  CHECK(parsed_rec["method"] == "recurrence");
  CHECK(parsed_rec["w"].get<double>() == parsed["w"].get<double>());

  const auto fraction = cli("exact --n 3 --theta 1/2 --r 1 --format json");
  const json parsed_frac = json::parse(fraction.output);
  CHECK(parsed_frac["w_exact"] == "5/4");
  CHECK(parsed_frac["p_exact"] == "5/14");
}

TEST_CASE("exact and brute agree wherever both run") {
  for (const std::string theta : {"1/4", "3/4", "2/1"}) {
    const json exact = json::parse(
        cli("exact --n 6 --theta " + theta + " --r 2 --format json").output);
    const json brute = json::parse(
        cli("brute --n 6 --theta " + theta + " --r 2 --format json").output);
    CHECK(exact["p"].get<double>() ==
          doctest::Approx(brute["p"].get<double>()).epsilon(1e-12));
    CHECK(exact["w_exact"] == brute["w_exact"]);
    CHECK(exact["p_exact"] == brute["p_exact"]);
  }
}

TEST_CASE("exit codes") {
  CHECK(cli("unknown-subcommand").exit_code == 2);
  CHECK(cli("exact --n 4 --r 1").exit_code == 2);  // missing --theta
  CHECK(cli("exact --n 4 --theta 1 --r 1 --bogus").exit_code == 2);
  CHECK(cli("alpha-beta --format yaml").exit_code == 2);
  CHECK(cli("exact --n 4 --theta -1 --r 1").exit_code == 3);
  CHECK(cli("exact --n 4 --theta 0.5 --r 9").exit_code == 3);
  CHECK(cli("brute --n 11 --theta 0.5 --r 2").exit_code == 3);
  CHECK(cli("dp --n 9 --theta 0.5").exit_code == 3);
  CHECK(cli("curves --theta-max 1.5").exit_code == 3);
  CHECK(cli("policy --theta 1.2").exit_code == 3);
  CHECK(cli("--help").exit_code == 0);
}

TEST_CASE("simulate emits the full schema and is deterministic") {
  const std::string args = "simulate --n 10 --theta 0.8 --r 2 --samples 20000 "
                           "--seed 99 --workers 3";
  const auto first = cli(args);
  const auto second = cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  const json parsed = json::parse(first.output);
  for (const char* key : {"n", "theta", "r", "samples", "seed", "workers", "rng",
                          "mean", "std_error", "ci", "exact"}) {
    CAPTURE(key);
    CHECK(parsed.contains(key));
  }
  CHECK(parsed["rng"] == "mt19937_64");
  CHECK(parsed["ci"].size() == 2);
  const double exact = win_probability(GameConfig(10, 0.8), 2).win_probability;
  CHECK(parsed["exact"].get<double>() == doctest::Approx(exact).epsilon(1e-12));
  const double mean = parsed["mean"].get<double>();
  CHECK(std::fabs(mean - exact) < 5.0 * parsed["std_error"].get<double>());
}

TEST_CASE("curves CSV round-trips through re-evaluation") {
  const auto result = cli("curves --theta-min 0.05 --theta-max 0.95 --grid 19 --r-max 3");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(result.output);
  REQUIRE(lines.size() == 1 + 4 * 19);
  CHECK(lines[0] == "theta,r,p");
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_row(lines[i]);
    REQUIRE(fields.size() == 3);
    const double theta = std::stod(fields[0]);
    const int r = std::stoi(fields[1]);
    const double p = std::stod(fields[2]);
    CHECK(std::fabs(p_asym(r, theta) - p) < 1e-10 * (1.0 + std::fabs(p)));
  }
}

TEST_CASE("regime CSV sections match the solver") {
  const auto result = cli("regime --r-max 5");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(result.output);
  REQUIRE(lines.size() >= 13);
  CHECK(lines[0] == "r,theta_star,p_star");
  for (int r = 1; r <= 5; ++r) {
    const auto fields = split_csv_row(lines[static_cast<size_t>(r)]);
    REQUIRE(fields.size() == 3);
    const CriticalPoint cp = critical_point(r);
    CHECK(std::stoi(fields[0]) == r);
    CHECK(std::fabs(std::stod(fields[1]) - cp.theta_star) < 1e-11);
    CHECK(std::fabs(std::stod(fields[2]) - cp.p_star) < 1e-11);
  }
  CHECK(lines[6].empty());
  CHECK(lines[7] == "r,theta_low,theta_high,p_at_low");
  const auto row0 = split_csv_row(lines[8]);
  CHECK(row0[0] == "0");
  CHECK(std::stod(row0[1]) == 0.0);
  CHECK(std::stod(row0[3]) == 1.0);
}

TEST_CASE("xe1x CSV flags the maximum as its final row") {
  const auto result = cli("xe1x --x-max 2 --grid 100");
  CHECK(result.exit_code == 0);
  const auto lines = split_lines(result.output);
  REQUIRE(lines.size() == 102);
  CHECK(lines[0] == "x,f");
  const AlphaBeta& ab = find_alpha_beta();
  const auto last = split_csv_row(lines.back());
  CHECK(std::fabs(std::stod(last[0]) - ab.alpha) < 1e-11);
  CHECK(std::fabs(std::stod(last[1]) - ab.beta) < 1e-11);
  double best = 0.0;
  for (size_t i = 1; i < lines.size(); ++i) {
    best = std::max(best, std::stod(split_csv_row(lines[i])[1]));
  }
  CHECK(best == doctest::Approx(ab.beta).epsilon(1e-11));
}

TEST_CASE("policy pairs the prescription with the regime answer") {
  const json parsed = json::parse(cli("policy --theta 0.9 --format json").output);
  const AlphaBeta& ab = find_alpha_beta();
  CHECK(parsed["r_real"].get<double>() ==
        doctest::Approx(ab.alpha / 0.1).epsilon(1e-12));
  CHECK(parsed["success"].get<double>() == doctest::Approx(ab.beta).epsilon(1e-12));
  const StrategyOutcome regime = optimal_strategy_asym(0.9);
  CHECK(parsed["r_regime"] == regime.r);
  CHECK(parsed["p_regime"].get<double>() ==
        doctest::Approx(regime.win_probability).epsilon(1e-12));
}

TEST_CASE("optimal and dp agree through the CLI") {
  const json best = json::parse(cli("optimal --n 8 --theta 3/4 --format json").output);
  const json dp = json::parse(cli("dp --n 8 --theta 3/4 --format json").output);
  CHECK(dp["positional"] == true);
  CHECK(dp["value"].get<double>() ==
        doctest::Approx(best["p"].get<double>()).epsilon(1e-12));
  CHECK(best["r"] == optimal_r_finite(GameConfig(8, 0.75)).r);
}

TEST_CASE("trend reports the distance to 1/lambda") {
  const json parsed =
      json::parse(cli("trend --n 10000 --lambda 2 --theta 1.01 --format json").output);
  CHECK(parsed["r"] == 5000);
  CHECK(parsed["limit"].get<double>() == 0.5);
  CHECK(parsed["gap"].get<double>() < 0.01);
}

TEST_CASE("duality ties probability, constant, and payoff together") {
  const json parsed =
      json::parse(cli("duality --n 3 --theta 1/2 --r 1 --format json").output);
  CHECK(parsed["payoff"].get<double>() ==
        doctest::Approx(parsed["p"].get<double>() * parsed["constant"].get<double>())
            .epsilon(1e-12));
  CHECK(parsed["payoff_exact"] == "5/48");
}

TEST_CASE("--output writes the same bytes to a file") {
  const std::string path = "/tmp/bestchoice_cli_test_output.csv";
  std::remove(path.c_str());
  const auto direct = cli("regime --r-max 2");
  const auto redirected = cli("regime --r-max 2 --output " + path);
  CHECK(redirected.exit_code == 0);
  CHECK(redirected.output.empty());
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string contents;
  char buffer[4096];
  size_t got;
  while ((got = std::fread(buffer, 1, sizeof buffer, f)) > 0) contents.append(buffer, got);
  std::fclose(f);
  CHECK(contents == direct.output);
  std::remove(path.c_str());
}
