#include "bestchoice/expint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bestchoice/errors.hpp"
#include "bestchoice/roots.hpp"

namespace bestchoice {

namespace detail {

double e1_series(double x) {
  // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
  double sum = 0.0;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= 200; ++k) {
    term *= x / k;
    const double contribution = (k % 2 == 1 ? term : -term) / k;
    sum += contribution;
    if (std::fabs(contribution) < 1e-18 * std::fabs(sum)) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

double e1_continued_fraction(double x) {
  // e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))), in its even-contracted
  // form b_0 = x+1, a_i = -i^2, b_i = b_{i-1}+2, run through modified Lentz.
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  double h_prev = 0.0;
  for (int i = 1; i <= 1000000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    h_prev = h;
    h *= delta;
    if (std::fabs(delta - 1.0) <= 1e-16 || h == h_prev) {
      return h * std::exp(-x);
    }
  }
  throw convergence_error("continued fraction for E1 failed to converge at x = " +
                          std::to_string(x));
}

}  // namespace detail

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("E1 requires x > 0");
  if (x > 700.0) return 0.0;  // underflows binary64
  return x <= 1.0 ? detail::e1_series(x) : detail::e1_continued_fraction(x);
}

double objective_f(double x) {
  return x * exp_integral_e1(x);
}

const AlphaBeta& find_alpha_beta() {
  static const AlphaBeta cached = [] {
    const auto g = [](double x) { return exp_integral_e1(x) - std::exp(-x); };
    if (!(g(0.1) > 0.0) || !(g(1.0) < 0.0)) {
      throw convergence_error(
          "E1(x) - e^{-x} lost its sign change on [0.1, 1.0]; E1 is broken");
    }
    const RootResult root = find_root_bracketed(g, 0.1, 1.0, 1e-15);
    return AlphaBeta{root.x, objective_f(root.x)};
  }();
  return cached;
}

AsymptoticPolicy asymptotic_policy(double theta) {
  if (!(theta > 0.0) || theta >= 1.0)
    throw std::domain_error("asymptotic policy requires 0 < theta < 1");
  const AlphaBeta& ab = find_alpha_beta();
  return {ab.alpha / (1.0 - theta), ab.beta};
}

}  // namespace bestchoice
