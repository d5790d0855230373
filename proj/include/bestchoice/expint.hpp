#pragma once

namespace bestchoice {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Argmax and max of F(x) = x E1(x): the limiting scaled rejection threshold
// and the limiting success probability of the weighted game as theta -> 1.
struct AlphaBeta {
  double alpha;
  double beta;
};

// The asymptotic prescription for a given theta < 1: reject alpha/(1-theta)
// candidates, succeed with probability beta.
struct AsymptoticPolicy {
  double r_real;
  double success;
};

// E1(x) = integral_x^inf e^{-t}/t dt for x > 0.
//
// x <= 1 uses the alternating series -gamma - ln x + sum (-1)^{k+1} x^k/(k k!);
// x > 1 the standard continued fraction e^{-x}/(x + 1/(1 + 1/(x + 2/(1 + ...))))
// evaluated by the modified Lentz forward algorithm (relative stop 1e-16).
// Relative accuracy ~1e-13 on [1e-8, 700]; x > 700 underflows to exactly 0.
double exp_integral_e1(double x);

// F(x) = x E1(x).
double objective_f(double x);

// Solves E1(x) = e^{-x} on [0.1, 1.0] (bracket signs asserted) to |dx| <= 1e-15
// and returns (alpha, beta = F(alpha)). Computed once and cached.
const AlphaBeta& find_alpha_beta();

AsymptoticPolicy asymptotic_policy(double theta);

namespace detail {
// The two branches, exposed so the seam around x = 1 can be cross-checked.
double e1_series(double x);
double e1_continued_fraction(double x);
}  // namespace detail

}  // namespace bestchoice
