#include "bestchoice/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bestchoice {

namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("pool size must be >= 1");
}

void check_r_nonneg(int r) {
  if (r < 0) throw std::invalid_argument("threshold r must be >= 0");
}

double check_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::range_error(std::string(what) + " overflows binary64; use the exact path");
  return v;
}

}  // namespace

WinnableWeight w_recurrence(int n, int r, double theta) {
  check_n(n);
  check_r_nonneg(r);
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  if (r >= n) return {n, r, 0.0};
  // W_k(r) stays 0 through k = r (no k-permutation is r-winnable there); the
  // inhomogeneous term only starts counting once r fits below position k.
  double w = (r == 0) ? 1.0 : 0.0;  // W_1
  double factorial = 1.0;           // (k-2)! while building W_k
  double power = theta;             // theta^{k-1}
  for (int k = 2; k <= n; ++k) {
    w = (k <= r) ? 0.0 : (k - 1) * w + r * factorial * power;
    factorial *= k - 1;
    power *= theta;
  }
  return {n, r, check_finite(w, "W_n(r)")};
}

WinnableWeightExact w_recurrence_exact(int n, int r, const Rational& theta) {
  check_n(n);
  check_r_nonneg(r);
  if (theta <= 0) throw std::domain_error("theta must be positive");
  if (r >= n) return {n, r, Rational(0)};
  Rational w = (r == 0) ? Rational(1) : Rational(0);
  Rational factorial(1);
  Rational power = theta;
  for (int k = 2; k <= n; ++k) {
    w = (k <= r) ? Rational(0) : Rational(k - 1) * w + Rational(r) * factorial * power;
    factorial *= k - 1;
    power *= theta;
  }
  return {n, r, w};
}

WinnableWeight w_closed_form(int n, int r, double theta) {
  check_n(n);
  check_r_nonneg(r);
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  if (r >= n) return {n, r, 0.0};
  double factorial = 1.0;
  for (int k = 2; k < n; ++k) factorial *= k;
  check_finite(factorial, "(n-1)!");
  if (r == 0) return {n, r, factorial};
  double sum = 0.0;
  double power = std::pow(theta, r);
  for (int i = r; i <= n - 1; ++i) {
    sum += power / i;
    power *= theta;
  }
  return {n, r, check_finite(factorial * r * sum, "W_n(r)")};
}

WinnableWeightExact w_closed_form_exact(int n, int r, const Rational& theta) {
  check_n(n);
  check_r_nonneg(r);
  if (theta <= 0) throw std::domain_error("theta must be positive");
  if (r >= n) return {n, r, Rational(0)};
  const Rational factorial{big_factorial(static_cast<unsigned>(n - 1))};
  if (r == 0) return {n, r, factorial};
  Rational sum(0);
  Rational power = rational_pow(theta, static_cast<unsigned>(r));
  for (int i = r; i <= n - 1; ++i) {
    sum += power / i;
    power *= theta;
  }
  return {n, r, factorial * r * sum};
}

StrategyOutcome win_probability(const GameConfig& config, int r) {
  const int n = config.n;
  const double theta = config.theta;
  if (r < 0 || r >= n)
    throw std::invalid_argument("threshold r must be in [0, n-1]");
  if (n == 1) return {0, 1.0};  // a single candidate always wins

  double p;
  if (theta == 1.0) {
    if (r == 0) {
      p = 1.0 / n;
    } else {
      double tail = 0.0;
      for (int i = n - 1; i >= r; --i) tail += 1.0 / i;
      p = r * tail / n;
    }
  } else if (theta < 1.0) {
    const double log_theta = std::log(theta);
    const double denom = -std::expm1(n * log_theta);  // 1 - theta^n
    if (r == 0) {
      p = (1.0 - theta) / denom;
    } else {
      double tail = 0.0;
      for (int i = r; i <= n - 1; ++i) {
        const double term = std::exp(i * log_theta) / i;
        tail += term;
        if (term < 1e-18 * tail * (1.0 - theta)) break;
      }
      p = r * (1.0 - theta) * tail / denom;
    }
  } else {
    // theta > 1: every power is taken relative to theta^n so that nothing
    // overflows even when theta^n itself would.
    const double log_theta = std::log(theta);
    const double denom = -std::expm1(-n * log_theta);  // 1 - theta^{-n}
    if (r == 0) {
      p = (theta - 1.0) * std::exp(-n * log_theta) / denom;
    } else {
      double tail = 0.0;  // sum theta^{i-n}/i, largest terms first
      for (int i = n - 1; i >= r; --i) {
        const double term = std::exp((i - n) * log_theta) / i;
        tail += term;
        if (term < 1e-18 * tail * (theta - 1.0)) break;
      }
      p = r * (theta - 1.0) * tail / denom;
    }
  }
  return {r, std::clamp(p, 0.0, 1.0)};
}

Rational win_probability_exact(int n, const Rational& theta, int r) {
  check_n(n);
  if (theta <= 0) throw std::domain_error("theta must be positive");
  if (r < 0 || r >= n)
    throw std::invalid_argument("threshold r must be in [0, n-1]");
  // The factorials cancel: P_r = r sum_{i=r}^{n-1} theta^i/i / sum_k theta^k,
  // and 1/sum_k theta^k when r = 0. Holds verbatim at theta = 1.
  Rational denom(0);
  Rational power(1);
  for (int k = 0; k < n; ++k) {
    denom += power;
    power *= theta;
  }
  if (r == 0) return Rational(1) / denom;
  Rational tail(0);
  Rational p = rational_pow(theta, static_cast<unsigned>(r));
  for (int i = r; i <= n - 1; ++i) {
    tail += p / i;
    p *= theta;
  }
  return Rational(r) * tail / denom;
}

StrategyOutcome optimal_r_finite(const GameConfig& config) {
  const int n = config.n;
  const double theta = config.theta;

  StrategyOutcome best = win_probability(config, 0);
  if (n == 1) return best;

  // Shared running tail over i = r..n-1; scanning r downward costs O(n) total.
  const double log_theta = std::log(theta);
  double scale;
  if (theta == 1.0) {
    scale = 1.0 / n;
  } else if (theta < 1.0) {
    scale = (1.0 - theta) / -std::expm1(n * log_theta);
  } else {
    scale = (theta - 1.0) / -std::expm1(-n * log_theta);
  }
  double tail = 0.0;
  for (int r = n - 1; r >= 1; --r) {
    double term;
    if (theta == 1.0) {
      term = 1.0 / r;
    } else if (theta < 1.0) {
      term = std::exp(r * log_theta) / r;
    } else {
      term = std::exp((r - n) * log_theta) / r;
    }
    tail += term;
    const double p = std::clamp(r * scale * tail, 0.0, 1.0);
    if (p > best.win_probability ||
        (p == best.win_probability && r < best.r)) {
      best = {r, p};
    }
  }
  return best;
}

namespace {

// Shared enumeration driver over S_n. Calls visit(cost, winnable) per
// permutation, with winnability taken against the fixed threshold r.
template <typename Visit>
void enumerate_sn(int n, int r, Visit&& visit) {
  std::vector<int> entries(static_cast<size_t>(n));
  std::iota(entries.begin(), entries.end(), 1);
  do {
    int best = 0;
    int last = 0, prev = 0;
    for (int i = 0; i < n; ++i) {
      if (entries[i] > best) {
        best = entries[i];
        prev = last;
        last = i + 1;
      }
    }
    const bool winnable = prev <= r && r < last;
    visit(last - 1, winnable);  // cost = pi^{-1}(n) - 1
  } while (std::next_permutation(entries.begin(), entries.end()));
}

void check_cap(int n, int cap) {
  if (n > cap)
    throw std::domain_error("enumeration of S_n refused: n = " + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap));
}

}  // namespace

WinnableWeight brute_force_win_weight(int n, int r, double theta, int cap) {
  check_n(n);
  check_r_nonneg(r);
  check_cap(n, cap);
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  std::vector<double> powers(static_cast<size_t>(n));
  powers[0] = 1.0;
  for (int c = 1; c < n; ++c) powers[c] = powers[c - 1] * theta;
  double sum = 0.0;
  enumerate_sn(n, r, [&](int cost, bool winnable) {
    if (winnable) sum += powers[cost];
  });
  return {n, r, sum};
}

WinnableWeightExact brute_force_win_weight_exact(int n, int r, const Rational& theta,
                                                 int cap) {
  check_n(n);
  check_r_nonneg(r);
  check_cap(n, cap);
  if (theta <= 0) throw std::domain_error("theta must be positive");
  std::vector<Rational> powers(static_cast<size_t>(n));
  powers[0] = 1;
  for (int c = 1; c < n; ++c) powers[c] = powers[c - 1] * theta;
  Rational win(0), total(0);
  enumerate_sn(n, r, [&](int cost, bool winnable) {
    total += powers[cost];
    if (winnable) win += powers[cost];
  });
  if (total != normalizer_exact(n, theta))
    throw std::logic_error("enumerated weight total disagrees with the normalizer");
  return {n, r, win};
}

double rasmussen_pliska_payoff(const GameConfig& config, int r) {
  const double p = win_probability(config, r).win_probability;
  double constant;
  if (config.theta == 1.0) {
    constant = 1.0;
  } else {
    // (theta + ... + theta^n)/n = theta (1 - theta^n) / (n (1 - theta))
    constant = config.theta * -std::expm1(config.n * std::log(config.theta)) /
               (config.n * (1.0 - config.theta));
  }
  if (!std::isfinite(constant))
    throw std::range_error("duality constant overflows binary64");
  return p * constant;
}

Rational rasmussen_pliska_payoff_exact(int n, const Rational& theta, int r) {
  Rational constant(0);
  Rational power = theta;
  for (int k = 1; k <= n; ++k) {
    constant += power;
    power *= theta;
  }
  constant /= n;
  return win_probability_exact(n, theta, r) * constant;
}

}  // namespace bestchoice
