#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bestchoice/core.hpp"

namespace bestchoice {

// The tree of prefix flattenings holds sum_{i=1..n} i! nodes.
inline constexpr int kDefaultDpCap = 8;

// Optimal accept/continue decision for every prefix flattening, plus the
// positional threshold realizing the policy when one exists.
struct DpPolicy {
  std::map<std::vector<int>, bool> accept;
  std::optional<int> positional_r;
};

struct DpResult {
  double value;
  DpPolicy policy;
};

struct DpResultExact {
  Rational value;
  DpPolicy policy;
};

// Backward induction over all prefix flattenings, conditioning on the
// weighted interview distribution. The state is the full prefix, not a
// summary statistic, so the result is an optimum over ALL strategies;
// whether it collapses to a positional one is reported, not assumed.
DpResult dp_optimal_policy(const GameConfig& config, int cap = kDefaultDpCap);
DpResultExact dp_optimal_policy_exact(int n, const Rational& theta,
                                      int cap = kDefaultDpCap);

}  // namespace bestchoice
