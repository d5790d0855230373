#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bestchoice/dp.hpp"
#include "bestchoice/exact.hpp"
#include "bestchoice/montecarlo.hpp"
#include "oracles.hpp"

using namespace bestchoice;

namespace {

double best_positional(const GameConfig& config) {
  double best = 0.0;
  for (int r = 0; r < config.n; ++r) {
    best = std::max(best, win_probability(config, r).win_probability);
  }
  return best;
}

Rational best_positional_exact(int n, const Rational& theta) {
  Rational best(0);
  for (int r = 0; r < n; ++r) {
    const Rational p = win_probability_exact(n, theta, r);
    if (p > best) best = p;
  }
  return best;
}

}  // namespace

TEST_CASE("small pools") {
  CHECK(dp_optimal_policy_exact(2, Rational(1, 2)).value == Rational(2, 3));
  CHECK(dp_optimal_policy(GameConfig(2, 0.5)).value ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(dp_optimal_policy(GameConfig(1, 0.3)).value == 1.0);
  CHECK(dp_optimal_policy_exact(1, Rational(9, 2)).value == 1);
}

TEST_CASE("optimum over all strategies equals the best positional value") {
  for (int n = 1; n <= 6; ++n) {
    for (double theta : {0.25, 0.5, 0.75, 1.0, 1.5}) {
      const DpResult dp = dp_optimal_policy(GameConfig(n, theta));
      CAPTURE(n);
      CAPTURE(theta);
      CHECK(dp.value ==
            doctest::Approx(best_positional(GameConfig(n, theta))).epsilon(1e-12));
      CHECK(dp.policy.positional_r.has_value());
    }
  }
}

TEST_CASE("optimum over all strategies equals the best positional value, exactly") {
  const Rational thetas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4),
                             Rational(1), Rational(3, 2)};
  for (int n = 1; n <= 6; ++n) {
    for (const Rational& theta : thetas) {
      const DpResultExact dp = dp_optimal_policy_exact(n, theta);
      CAPTURE(n);
      CHECK(dp.value == best_positional_exact(n, theta));
      CHECK(dp.policy.positional_r.has_value());
    }
  }
}

TEST_CASE("the value at n = 6, theta = 3/4 matches the positional scan") {
  const DpResult dp = dp_optimal_policy(GameConfig(6, 0.75));
  CHECK(dp.value ==
        doctest::Approx(best_positional(GameConfig(6, 0.75))).epsilon(1e-14));
}

TEST_CASE("policy never accepts below a relative maximum") {
  const DpResult dp = dp_optimal_policy(GameConfig(6, 0.5));
  for (const auto& [prefix, take] : dp.policy.accept) {
    if (prefix.back() != static_cast<int>(prefix.size())) {
      CHECK_FALSE(take);
    }
  }
}

TEST_CASE("policy walks like its positional threshold on every permutation") {
  const GameConfig config(5, 0.75);
  const DpResult dp = dp_optimal_policy(config);
  REQUIRE(dp.policy.positional_r.has_value());
  const int threshold = *dp.policy.positional_r;
  oracle::for_each_permutation(config.n, [&](const std::vector<int>& entries) {
    const Permutation pi(entries);
    const auto prefixes = prefix_flattenings(pi);
    std::optional<int> dp_accepts;
    for (int i = 1; i <= config.n; ++i) {
      const auto it = dp.policy.accept.find(prefixes[static_cast<size_t>(i) - 1].entries());
      REQUIRE(it != dp.policy.accept.end());
      if (it->second) {
        dp_accepts = i;
        break;
      }
    }
    const PlayResult positional = play_strategy(pi, threshold);
    CHECK(dp_accepts == positional.accepted_position);
  });
}

TEST_CASE("positional threshold realizes the optimal value") {
  for (double theta : {0.25, 1.0, 1.5}) {
    const GameConfig config(7, theta);
    const DpResult dp = dp_optimal_policy(config);
    REQUIRE(dp.policy.positional_r.has_value());
    CHECK(win_probability(config, *dp.policy.positional_r).win_probability ==
          doctest::Approx(dp.value).epsilon(1e-12));
  }
}

TEST_CASE("the cap refuses oversized pools") {
  CHECK_THROWS_AS(dp_optimal_policy(GameConfig(9, 0.5)), std::domain_error);
  CHECK_THROWS_AS(dp_optimal_policy_exact(9, Rational(1, 2)), std::domain_error);
  const DpResult dp = dp_optimal_policy(GameConfig(9, 0.5), 9);
  CHECK(dp.value ==
        doctest::Approx(best_positional(GameConfig(9, 0.5))).epsilon(1e-12));
}
