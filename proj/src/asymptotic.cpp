#include "bestchoice/asymptotic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bestchoice/errors.hpp"
#include "bestchoice/expint.hpp"
#include "bestchoice/roots.hpp"

namespace bestchoice {

namespace {

void check_theta_open_unit(double theta) {
  if (!(theta > 0.0) || theta >= 1.0)
    throw std::domain_error("asymptotic curves require 0 < theta < 1");
}

// sum_{i=r}^inf theta^i / i for r >= 1.
//
// The identity tail = -ln(1-theta) - sum_{i<r} theta^i/i cancels
// catastrophically once the tail is tiny against the log, so switch to
// direct summation when the estimate theta^r/(r(1-theta)) drops below
// 1e-8 of -ln(1-theta).
double tail_sum(int r, double theta) {
  const double log_term = -std::log1p(-theta);
  const double estimate = std::exp(r * std::log(theta)) / (r * (1.0 - theta));
  if (estimate < 1e-8 * log_term) {
    double acc = 0.0;
    double power = std::exp(r * std::log(theta));
    if (power == 0.0) return 0.0;  // theta^r underflows; so does the tail
    for (long long i = r; i < r + 100000000LL; ++i) {
      const double term = power / static_cast<double>(i);
      acc += term;
      power *= theta;
      if (power / static_cast<double>(i + 1) < 1e-16 * acc) return acc;
    }
    throw convergence_error("tail summation stalled at r = " + std::to_string(r) +
                            ", theta = " + std::to_string(theta));
  }
  double partial = 0.0;
  double power = theta;
  for (int i = 1; i < r; ++i) {
    partial += power / i;
    power *= theta;
  }
  return log_term - partial;
}

}  // namespace

double p_asym(int r, double theta) {
  check_theta_open_unit(theta);
  if (r < 0) throw std::invalid_argument("curve index r must be >= 0");
  if (r == 0) return 1.0 - theta;
  return r * (1.0 - theta) * tail_sum(r, theta);
}

double p_asym_derivative(int r, double theta) {
  check_theta_open_unit(theta);
  if (r < 1) throw std::invalid_argument("derivative defined for r >= 1");
  return r * (std::pow(theta, r - 1) - tail_sum(r, theta));
}

AsymptoticSolver::AsymptoticSolver(double root_tol) : root_tol_(root_tol) {}

CriticalPoint AsymptoticSolver::critical_point(int r) const {
  if (r < 1) throw std::invalid_argument("critical points exist for r >= 1");
  std::lock_guard<std::mutex> lock(mutex_);
  while (static_cast<int>(cache_.size()) < r) {
    const int k = static_cast<int>(cache_.size()) + 1;
    // dP_k/dtheta is positive at the previous critical point (the curves
    // intersect there with P_{k-1} above P_k) and negative near 1.
    const double lo = (k == 1) ? 1e-6 : cache_.back().theta_star;
    const double hi = 1.0 - 1e-9;
    const RootResult root = find_root_bracketed(
        [k](double t) { return p_asym_derivative(k, t); }, lo, hi, root_tol_);
    const double p_low = p_asym(k - 1, root.x);
    const double p_here = p_asym(k, root.x);
    if (std::fabs(p_low - p_here) > 1e-10) {
      throw convergence_error(
          "curves " + std::to_string(k - 1) + " and " + std::to_string(k) +
          " fail to meet at the computed critical point theta = " +
          std::to_string(root.x));
    }
    cache_.push_back({k, root.x, p_here});
  }
  return cache_[static_cast<size_t>(r) - 1];
}

RegimeTable AsymptoticSolver::regime_table(int r_max) const {
  if (r_max < 1) throw std::invalid_argument("regime table requires r_max >= 1");
  RegimeTable table;
  table.rows.reserve(static_cast<size_t>(r_max) + 1);
  table.rows.push_back({0, 0.0, critical_point(1).theta_star, 1.0});
  for (int r = 1; r <= r_max; ++r) {
    const CriticalPoint low = critical_point(r);
    const CriticalPoint high = critical_point(r + 1);
    table.rows.push_back({r, low.theta_star, high.theta_star, low.p_star});
  }
  return table;
}

StrategyOutcome AsymptoticSolver::optimal_strategy_asym(double theta) const {
  check_theta_open_unit(theta);
  int r = 0;
  while (theta > critical_point(r + 1).theta_star) ++r;
  return {r, p_asym(r, theta)};
}

const AsymptoticSolver& default_asymptotic_solver() {
  static const AsymptoticSolver solver;
  return solver;
}

CriticalPoint critical_point(int r) {
  return default_asymptotic_solver().critical_point(r);
}

RegimeTable regime_table(int r_max) {
  return default_asymptotic_solver().regime_table(r_max);
}

StrategyOutcome optimal_strategy_asym(double theta) {
  return default_asymptotic_solver().optimal_strategy_asym(theta);
}

double p_integral_approx(int r, double theta) {
  check_theta_open_unit(theta);
  if (r < 1) throw std::invalid_argument("integral approximation requires r >= 1");
  // integral_r^inf theta^t/t dt = E1(r ln(1/theta)) under s = t ln(1/theta).
  const double approx = r * (1.0 - theta) * exp_integral_e1(r * std::log(1.0 / theta));
  const double exact = p_asym(r, theta);
  const double bound = 4.0 * (1.0 - theta) * std::pow(theta, r);
  if (!(std::fabs(exact - approx) < bound)) {
    throw convergence_error("integral approximation violated its sandwich bound at r = " +
                            std::to_string(r) + ", theta = " + std::to_string(theta));
  }
  return approx;
}

double limiting_objective(double c) {
  if (!(c > 0.0)) throw std::domain_error("limiting objective requires c > 0");
  return objective_f(c);
}

double theta_scaling_limit(double theta) {
  check_theta_open_unit(theta);
  return std::exp(std::log1p(theta - 1.0) / (1.0 - theta));
}

double trend_probability(int n, double lambda, double theta) {
  if (!(theta > 1.0))
    throw std::domain_error("trend regime requires theta > 1");
  if (!(lambda > 1.0)) throw std::invalid_argument("lambda must exceed 1");
  if (n < lambda) throw std::invalid_argument("need n >= lambda");
  const int r = static_cast<int>(std::floor(n / lambda));
  return win_probability(GameConfig(n, theta), r).win_probability;
}

double telescoping_identity_check(int n, double lambda, double theta) {
  if (!(theta > 0.0) || theta == 1.0)
    throw std::domain_error("identity requires positive theta != 1");
  const double m_real = n / lambda;
  const int m = static_cast<int>(std::llround(m_real));
  if (m < 1 || std::fabs(m_real - m) > 1e-9)
    throw std::invalid_argument("n/lambda must be an integer >= 1");

  double lhs = 0.0;
  double power = std::pow(theta, m);
  for (int i = m; i <= n - 1; ++i) {
    lhs += power / i;
    power *= theta;
  }
  lhs *= 1.0 - theta;

  double rhs = std::pow(theta, m) / m - std::pow(theta, n) / (n - 1);
  power = std::pow(theta, m + 1);
  for (int i = m + 1; i <= n - 1; ++i) {
    rhs -= power / (static_cast<double>(i) * (i - 1));
    power *= theta;
  }
  return std::fabs(lhs - rhs);
}

Rational telescoping_residual_exact(int n, int lambda, const Rational& theta) {
  if (theta <= 0 || theta == 1)
    throw std::domain_error("identity requires positive theta != 1");
  if (lambda < 1 || n % lambda != 0)
    throw std::invalid_argument("n/lambda must be an integer >= 1");
  const int m = n / lambda;

  Rational lhs(0);
  Rational power = rational_pow(theta, static_cast<unsigned>(m));
  for (int i = m; i <= n - 1; ++i) {
    lhs += power / i;
    power *= theta;
  }
  lhs *= Rational(1) - theta;

  Rational rhs = rational_pow(theta, static_cast<unsigned>(m)) / m -
                 rational_pow(theta, static_cast<unsigned>(n)) / (n - 1);
  power = rational_pow(theta, static_cast<unsigned>(m + 1));
  for (int i = m + 1; i <= n - 1; ++i) {
    rhs -= power / (static_cast<long>(i) * (i - 1));
    power *= theta;
  }
  return lhs - rhs;
}

}  // namespace bestchoice
