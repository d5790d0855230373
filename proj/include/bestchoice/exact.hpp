#pragma once

#include "bestchoice/core.hpp"

namespace bestchoice {

// Full enumeration of S_n costs n!; anything larger must be requested
// explicitly through the cap argument.
inline constexpr int kDefaultEnumerationCap = 10;

// W_n(r): total weight of the r-winnable permutations of n.
struct WinnableWeight {
  int n;
  int r;
  double value;
};

struct WinnableWeightExact {
  int n;
  int r;
  Rational value;
};

// A rejection threshold r together with its win probability P_r(n, theta).
struct StrategyOutcome {
  int r;
  double win_probability;
};

// W_n(r) = (n-1) W_{n-1}(r) + r (n-2)! theta^{n-1}, grown iteratively from
// W_1(0) = 1, W_1(r>=1) = 0.
WinnableWeight w_recurrence(int n, int r, double theta);
WinnableWeightExact w_recurrence_exact(int n, int r, const Rational& theta);

// Closed form: (n-1)! for r = 0, (n-1)! r sum_{i=r}^{n-1} theta^i / i otherwise.
WinnableWeight w_closed_form(int n, int r, double theta);
WinnableWeightExact w_closed_form_exact(int n, int r, const Rational& theta);

// P_r(n, theta), factorial-free, stable for n up to 10^6 on either side of
// theta = 1. The theta = 1 case uses the classical harmonic form.
StrategyOutcome win_probability(const GameConfig& config, int r);
Rational win_probability_exact(int n, const Rational& theta, int r);

// Best threshold in [0, n-1]; ties break toward the smaller r.
StrategyOutcome optimal_r_finite(const GameConfig& config);

// Ground-truth oracle: literally enumerates S_n and sums the weights of the
// r-winnable permutations. The exact variant also re-derives the normalizer
// from the same sweep and refuses to answer if the two disagree.
WinnableWeight brute_force_win_weight(int n, int r, double theta,
                                      int cap = kDefaultEnumerationCap);
WinnableWeightExact brute_force_win_weight_exact(int n, int r, const Rational& theta,
                                                 int cap = kDefaultEnumerationCap);

// Expected discounted payoff of the same strategy played on the uniform
// distribution: win_probability * (theta + theta^2 + ... + theta^n) / n.
double rasmussen_pliska_payoff(const GameConfig& config, int r);
Rational rasmussen_pliska_payoff_exact(int n, const Rational& theta, int r);

}  // namespace bestchoice
