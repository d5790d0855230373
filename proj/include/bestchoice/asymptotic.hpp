#pragma once

#include <mutex>
#include <vector>

#include "bestchoice/exact.hpp"
#include "bestchoice/rational.hpp"

namespace bestchoice {

// (theta*, P*) where curve P_{r-1} meets P_r; by the envelope identity this
// is simultaneously the maximum of P_r.
struct CriticalPoint {
  int r;
  double theta_star;
  double p_star;
};

struct RegimeRow {
  int r;
  double theta_low;
  double theta_high;
  double p_at_low;
};

struct RegimeTable {
  std::vector<RegimeRow> rows;
};

// Limit curve P_r(theta) = r (1-theta) sum_{i=r}^inf theta^i/i of the
// r-positional strategy as n -> inf, with P_0 = 1 - theta. Requires
// 0 < theta < 1.
double p_asym(int r, double theta);

// dP_r/dtheta = r (theta^{r-1} - sum_{i=r}^inf theta^i/i), r >= 1.
double p_asym_derivative(int r, double theta);

// Critical points are computed once per index and cached; the cache is a
// mutex-guarded map with idempotent inserts, safe for concurrent readers.
class AsymptoticSolver {
 public:
  explicit AsymptoticSolver(double root_tol = 1e-12);

  // Solves dP_r/dtheta = 0 on (theta*_{r-1}, 1) and checks the curve
  // intersection P_{r-1}(theta*) = P_r(theta*) to 1e-10.
  CriticalPoint critical_point(int r) const;

  // Rows r = 0..r_max with contiguous coverage; row r spans
  // [theta*_r, theta*_{r+1}] (theta*_0 = 0 by convention).
  RegimeTable regime_table(int r_max) const;

  // Locates the regime containing theta, extending the cached boundaries on
  // demand; exact boundary ties resolve to the smaller r.
  StrategyOutcome optimal_strategy_asym(double theta) const;

 private:
  double root_tol_;
  mutable std::mutex mutex_;
  mutable std::vector<CriticalPoint> cache_;  // cache_[k] holds r = k+1
};

// Shared solver at the default tolerance.
const AsymptoticSolver& default_asymptotic_solver();
CriticalPoint critical_point(int r);
RegimeTable regime_table(int r_max);
StrategyOutcome optimal_strategy_asym(double theta);

// Integral approximation r (1-theta) E1(r ln(1/theta)) of P_r; checks the
// sandwich bound |P_r - approx| < 4 (1-theta) theta^r before returning.
double p_integral_approx(int r, double theta);

// c E1(c): the limit objective whose maximum defines (alpha, beta).
double limiting_objective(double c);

// theta^{1/(1-theta)}, which approaches 1/e as theta -> 1.
double theta_scaling_limit(double theta);

// theta > 1 trend regime: success probability of rejecting floor(n/lambda)
// candidates; approaches 1/lambda as n grows.
double trend_probability(int n, double lambda, double theta);

// Both sides of the almost-telescoping identity
//   (1-theta) sum_{i=m}^{n-1} theta^i/i
//     = theta^m/m - theta^n/(n-1) - sum_{i=m+1}^{n-1} theta^i/(i(i-1)),
// m = n/lambda, evaluated independently; returns |lhs - rhs|.
double telescoping_identity_check(int n, double lambda, double theta);
Rational telescoping_residual_exact(int n, int lambda, const Rational& theta);

}  // namespace bestchoice
