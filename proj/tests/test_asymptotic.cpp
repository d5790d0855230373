#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "bestchoice/asymptotic.hpp"
#include "bestchoice/errors.hpp"
#include "bestchoice/expint.hpp"
#include "oracles.hpp"

using namespace bestchoice;

TEST_CASE("limit curves at reference points") {
  const double e = std::exp(1.0);
  CHECK(p_asym(1, 1.0 - 1.0 / e) == doctest::Approx(1.0 / e).epsilon(1e-14));
  CHECK(p_asym(0, 0.25) == 0.75);
  CHECK(p_asym(2, 0.796812) == doctest::Approx(0.323805).epsilon(2e-6));
}

TEST_CASE("curve domain") {
  CHECK_THROWS_AS(p_asym(1, 1.0), std::domain_error);
  CHECK_THROWS_AS(p_asym(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(p_asym(-1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(p_asym_derivative(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(p_asym_derivative(2, 1.5), std::domain_error);
}

TEST_CASE("derivative closed form for the first curve") {
  for (double theta = 0.05; theta < 0.96; theta += 0.05) {
    CHECK(p_asym_derivative(1, theta) ==
          doctest::Approx(std::log(1.0 - theta) + 1.0).epsilon(1e-12));
  }
  CHECK(std::fabs(p_asym_derivative(1, 1.0 - 1.0 / std::exp(1.0))) < 1e-12);
  CHECK(std::fabs(p_asym_derivative(3, 0.860917)) < 1e-5);
}

TEST_CASE("derivative matches centered finite differences") {
  const double h = 1e-6;
  for (int r = 1; r <= 10; ++r) {
    for (double theta = 0.05; theta < 0.96; theta += 0.05) {
      const double numeric = (p_asym(r, theta + h) - p_asym(r, theta - h)) / (2.0 * h);
      CAPTURE(r);
      CAPTURE(theta);
      CHECK(std::fabs(numeric - p_asym_derivative(r, theta)) < 1e-6);
    }
  }
}

TEST_CASE("successive differences and derivatives share the envelope identity") {
  for (int r = 1; r <= 10; ++r) {
    for (double theta = 0.05; theta < 0.96; theta += 0.05) {
      const double difference = p_asym(r - 1, theta) - p_asym(r, theta);
      const double scaled = (1.0 - theta) / r * p_asym_derivative(r, theta);
      CAPTURE(r);
      CAPTURE(theta);
      CHECK(std::fabs(difference - scaled) < 1e-10);
    }
  }
}

TEST_CASE("critical points match high-precision references") {
  struct Row {
    int r;
    double theta_star;
    double p_star;
  };
  const Row rows[] = {
      {1, 0.63212055882855768, 0.36787944117144232},
      {2, 0.79681213002002005, 0.32380511894595743},
      {3, 0.8609169222603422, 0.30925593007884122},
      {4, 0.89445652025000092, 0.30211278386881421},
      {5, 0.91500853382926899, 0.29788312668624104},
  };
  for (const Row& row : rows) {
    const CriticalPoint cp = critical_point(row.r);
    CAPTURE(row.r);
    CHECK(std::fabs(cp.theta_star - row.theta_star) < 1e-9);
    CHECK(std::fabs(cp.p_star - row.p_star) < 1e-11);
    // Next to the maximum the two adjacent curves intersect.
    CHECK(std::fabs(p_asym(row.r - 1, cp.theta_star) - cp.p_star) < 1e-10);
    CHECK(std::fabs(p_asym_derivative(row.r, cp.theta_star)) < 1e-9);
  }
  CHECK(critical_point(1).theta_star ==
        doctest::Approx(1.0 - 1.0 / std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("regime table rows are contiguous and bracket the table values") {
  const RegimeTable table = regime_table(3);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].theta_low == 0.0);
  CHECK(table.rows[0].p_at_low == 1.0);
  CHECK(table.rows[0].theta_high == doctest::Approx(0.6321).epsilon(1e-4));
  CHECK(table.rows[1].theta_high == doctest::Approx(0.7968).epsilon(1e-4));
  CHECK(table.rows[2].theta_low == doctest::Approx(0.7968).epsilon(1e-4));
  CHECK(table.rows[2].theta_high == doctest::Approx(0.8609).epsilon(1e-4));
  CHECK(table.rows[3].theta_low == doctest::Approx(0.8609).epsilon(1e-4));
  CHECK(table.rows[3].theta_high == doctest::Approx(0.8945).epsilon(1e-4));
  for (size_t i = 0; i + 1 < table.rows.size(); ++i) {
    CHECK(table.rows[i].theta_high == table.rows[i + 1].theta_low);
    CHECK(table.rows[i].r == static_cast<int>(i));
  }
}

TEST_CASE("inside each regime its curve is strictly maximal") {
  const RegimeTable table = regime_table(4);
  for (const RegimeRow& row : table.rows) {
    const double lo = row.r == 0 ? 0.02 : row.theta_low;
    for (int k = 1; k <= 10; ++k) {
      const double theta = lo + (row.theta_high - lo) * k / 11.0;
      const double here = p_asym(row.r, theta);
      CAPTURE(row.r);
      CAPTURE(theta);
      if (row.r > 0) CHECK(here > p_asym(row.r - 1, theta));
      CHECK(here > p_asym(row.r + 1, theta));
    }
  }
}

TEST_CASE("the optimal envelope is decreasing") {
  double previous = 1.0;
  for (double theta = 0.05; theta < 0.96; theta += 0.05) {
    const double value = optimal_strategy_asym(theta).win_probability;
    CHECK(value < previous);
    previous = value;
  }
}

TEST_CASE("optimal strategy by regime lookup") {
  const StrategyOutcome at_half = optimal_strategy_asym(0.5);
  CHECK(at_half.r == 0);
  CHECK(at_half.win_probability == 0.5);

  const StrategyOutcome at_07 = optimal_strategy_asym(0.7);
  CHECK(at_07.r == 1);
  CHECK(at_07.win_probability ==
        doctest::Approx(0.3 * -std::log(0.3)).epsilon(1e-14));
  CHECK(at_07.win_probability == doctest::Approx(0.36119).epsilon(1e-4));

  CHECK(optimal_strategy_asym(0.83).r == 2);

  // An exact boundary hit belongs to the smaller index.
  const double boundary = critical_point(1).theta_star;
  CHECK(optimal_strategy_asym(boundary).r == 0);

  CHECK_THROWS_AS(optimal_strategy_asym(1.0), std::domain_error);
}

TEST_CASE("optimal strategy approaches the limiting constants") {
  const AlphaBeta& ab = find_alpha_beta();
  const StrategyOutcome at_099 = optimal_strategy_asym(0.99);
  CHECK(std::fabs(at_099.win_probability - ab.beta) < 0.02);
  CHECK(std::fabs(at_099.r - ab.alpha / 0.01) < 0.05 * ab.alpha / 0.01 + 1.0);

  const StrategyOutcome at_0999 = optimal_strategy_asym(0.999);
  CHECK(std::fabs(at_0999.win_probability - ab.beta) < 0.01);
  const double target = ab.alpha / 0.001;
  CHECK(std::fabs(at_0999.r - target) <= 0.05 * target);
}

TEST_CASE("integral approximation keeps its sandwich bound") {
  for (int r : {1, 2, 3, 5, 10, 20}) {
    for (double theta : {0.6, 0.8, 0.9}) {
      const double approx = p_integral_approx(r, theta);
      const double bound = 4.0 * (1.0 - theta) * std::pow(theta, r);
      CAPTURE(r);
      CAPTURE(theta);
      CHECK(std::fabs(p_asym(r, theta) - approx) < bound);
    }
  }
  CHECK(std::fabs(p_asym(1, 0.9) - p_integral_approx(1, 0.9)) < 0.36);
  CHECK(std::fabs(p_asym(20, 0.95) - p_integral_approx(20, 0.95)) <
        4.0 * 0.05 * std::pow(0.95, 20));
  CHECK(std::fabs(p_asym(50, 0.99) - p_integral_approx(50, 0.99)) <
        4.0 * 0.01 * std::pow(0.99, 50));
}

TEST_CASE("limiting objective") {
  const AlphaBeta& ab = find_alpha_beta();
  CHECK(limiting_objective(ab.alpha) == ab.beta);
  CHECK(limiting_objective(2.0) ==
        doctest::Approx(0.097801021416122239).epsilon(1e-12));
  CHECK(limiting_objective(1e-12) > 0.0);
  CHECK(limiting_objective(1e-12) < 1e-9);
  CHECK_THROWS_AS(limiting_objective(0.0), std::domain_error);
  // Identical implementation, bit for bit.
  for (double c : {0.1, 0.43, 1.7, 6.0}) {
    CHECK(limiting_objective(c) == objective_f(c));
  }
}

TEST_CASE("theta scaling limit") {
  CHECK(theta_scaling_limit(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  const double inv_e = 1.0 / std::exp(1.0);
  CHECK(std::fabs(theta_scaling_limit(0.999) - inv_e) < 2e-4);
  CHECK(std::fabs(theta_scaling_limit(0.9999) - inv_e) < 2e-5);
}

TEST_CASE("trend regime approaches 1/lambda") {
  CHECK(std::fabs(trend_probability(10000, 2.0, 1.01) - 0.5) < 0.01);
  CHECK(std::fabs(trend_probability(10000, 4.0, 1.05) - 0.25) < 0.01);
  CHECK_THROWS_AS(trend_probability(10000, 2.0, 0.9), std::domain_error);
  CHECK_THROWS_AS(trend_probability(10000, 2.0, 1.0), std::domain_error);

  // lambda = n prescribes r = 1; the result must match the plain formula.
  double tail = 0.0, power = 2.0;
  for (int i = 1; i <= 99; ++i) {
    tail += power / i;
    power *= 2.0;
  }
  const double direct = (2.0 - 1.0) * tail / (std::pow(2.0, 100) - 1.0);
  CHECK(trend_probability(100, 100.0, 2.0) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("almost-telescoping identity") {
  CHECK(telescoping_identity_check(20, 4.0, 1.1) < 1e-12);
  CHECK(telescoping_identity_check(12, 3.0, 0.5) < 1e-14);
  CHECK(telescoping_residual_exact(8, 2, Rational(2)) == 0);
  CHECK(telescoping_residual_exact(12, 3, Rational(1, 2)) == 0);
  CHECK_THROWS_AS(telescoping_identity_check(10, 3.0, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(telescoping_identity_check(12, 3.0, 1.0), std::domain_error);
}

TEST_CASE("finite-n probabilities converge to the limit curve") {
  const double limit = 0.32377516497364015;  // P_2 at theta = 0.8
  double previous = 1.0;
  for (int n : {10, 100, 1000, 10000}) {
    const double gap =
        std::fabs(win_probability(GameConfig(n, 0.8), 2).win_probability - limit);
    CAPTURE(n);
    // Monotone in exact arithmetic; the last steps sit at roundoff level.
    CHECK(gap <= previous + 1e-15);
    previous = gap;
  }
  CHECK(previous < 1e-8);
}

TEST_CASE("custom solver tolerance still lands on the same points") {
  const AsymptoticSolver coarse(1e-8);
  CHECK(std::fabs(coarse.critical_point(2).theta_star -
                  critical_point(2).theta_star) < 1e-7);
}

TEST_CASE("critical-point cache is safe under concurrent lookups") {
  const AsymptoticSolver solver;
  std::vector<std::vector<double>> seen(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&solver, &seen, t] {
      for (int r = 1; r <= 8; ++r) {
        seen[static_cast<size_t>(t)].push_back(solver.critical_point(r).theta_star);
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (int t = 1; t < 4; ++t) {
    CHECK(seen[static_cast<size_t>(t)] == seen[0]);
  }
}
