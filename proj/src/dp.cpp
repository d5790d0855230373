#include "bestchoice/dp.hpp"

#include <stdexcept>
#include <string>

namespace bestchoice {

namespace {

// Child prefix flattening obtained when the next candidate has relative
// rank j among the i+1 seen so far.
std::vector<int> bump(const std::vector<int>& prefix, int j) {
  std::vector<int> child;
  child.reserve(prefix.size() + 1);
  for (int e : prefix) child.push_back(e >= j ? e + 1 : e);
  child.push_back(j);
  return child;
}

// V(q) = total weight, over all extensions of the prefix q, achieved by
// optimal play from q onward. Accepting at a relative maximum of length i
// collects exactly the extensions that put the best candidate at position i:
// C(n-1, i-1) (n-i)! of them, each of weight theta^{i-1}.
template <typename Value>
class Induction {
 public:
  Induction(int n, std::vector<Value> accept_weight, DpPolicy* policy)
      : n_(n), accept_weight_(std::move(accept_weight)), policy_(policy) {}

  Value visit(const std::vector<int>& prefix) {
    const int i = static_cast<int>(prefix.size());
    const bool relative_max = prefix.back() == i;
    const Value accept = relative_max ? accept_weight_[i] : Value(0);
    Value cont(0);
    if (i < n_) {
      for (int j = 1; j <= i + 1; ++j) cont += visit(bump(prefix, j));
    }
    const bool take = accept > cont;
    policy_->accept.emplace(prefix, take);
    return take ? accept : cont;
  }

 private:
  int n_;
  std::vector<Value> accept_weight_;
  DpPolicy* policy_;
};

std::vector<double> accept_weights(int n, double theta) {
  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
  double binomial = 1.0;   // C(n-1, i-1)
  double factorial = 1.0;  // (n-i)!
  for (int k = 2; k <= n - 1; ++k) factorial *= k;
  double power = 1.0;      // theta^{i-1}
  for (int i = 1; i <= n; ++i) {
    w[i] = binomial * factorial * power;
    binomial = binomial * (n - i) / i;
    if (i < n) factorial /= (n - i);
    power *= theta;
  }
  return w;
}

std::vector<Rational> accept_weights(int n, const Rational& theta) {
  std::vector<Rational> w(static_cast<size_t>(n) + 1, Rational(0));
  Rational power(1);
  for (int i = 1; i <= n; ++i) {
    BigInt count;
    mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(n - 1),
                 static_cast<unsigned long>(i - 1));
    count *= big_factorial(static_cast<unsigned>(n - i));
    w[i] = Rational(count) * power;
    power *= theta;
  }
  return w;
}

// The policy is positional iff the decision at relative maxima is uniform
// per prefix length and the accepting lengths form a suffix {r*+1, ..., n}.
std::optional<int> positional_threshold(const DpPolicy& policy, int n) {
  std::vector<int> decision(static_cast<size_t>(n) + 1, -1);
  for (const auto& [prefix, take] : policy.accept) {
    const int i = static_cast<int>(prefix.size());
    if (prefix.back() != i) {
      if (take) return std::nullopt;  // accepting a non-maximum is never optimal
      continue;
    }
    if (decision[i] == -1) {
      decision[i] = take ? 1 : 0;
    } else if (decision[i] != (take ? 1 : 0)) {
      return std::nullopt;
    }
  }
  int threshold = 0;
  while (threshold < n && decision[threshold + 1] == 0) ++threshold;
  for (int i = threshold + 1; i <= n; ++i) {
    if (decision[i] != 1) return std::nullopt;
  }
  return threshold;
}

void check_dp_cap(int n, int cap) {
  if (n < 1) throw std::invalid_argument("pool size must be >= 1");
  if (n > cap)
    throw std::domain_error("prefix tree refused: n = " + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap));
}

}  // namespace

DpResult dp_optimal_policy(const GameConfig& config, int cap) {
  check_dp_cap(config.n, cap);
  DpResult result;
  Induction<double> induction(config.n, accept_weights(config.n, config.theta),
                              &result.policy);
  const double root = induction.visit({1});
  result.value = root / normalizer(config);
  result.policy.positional_r = positional_threshold(result.policy, config.n);
  return result;
}

DpResultExact dp_optimal_policy_exact(int n, const Rational& theta, int cap) {
  check_dp_cap(n, cap);
  if (theta <= 0) throw std::domain_error("theta must be positive");
  DpResultExact result;
  Induction<Rational> induction(n, accept_weights(n, theta), &result.policy);
  const Rational root = induction.visit({1});
  result.value = root / normalizer_exact(n, theta);
  result.policy.positional_r = positional_threshold(result.policy, n);
  return result;
}

}  // namespace bestchoice
