#include "bestchoice/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bestchoice {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  const int n = static_cast<int>(entries_.size());
  if (n < 1) throw std::invalid_argument("permutation must be nonempty");
  std::vector<char> seen(static_cast<size_t>(n), 0);
  max_position_ = 0;
  for (int i = 0; i < n; ++i) {
    const int v = entries_[i];
    if (v < 1 || v > n || seen[v - 1])
      throw std::invalid_argument("entries are not a bijection on {1..n}");
    seen[v - 1] = 1;
    if (v == n) max_position_ = i + 1;
  }
}

GameConfig::GameConfig(int n_, double theta_) : n(n_), theta(theta_) {
  if (n < 1) throw std::invalid_argument("pool size must be >= 1");
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::domain_error("theta must be a positive real");
}

Permutation flatten(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size());
  if (n < 1) throw std::invalid_argument("flatten requires a nonempty sequence");
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&seq](int a, int b) { return seq[a] < seq[b]; });
  std::vector<int> ranks(static_cast<size_t>(n));
  for (int rank = 1; rank <= n; ++rank) {
    const int idx = order[rank - 1];
    if (rank > 1 && seq[idx] == seq[order[rank - 2]])
      throw std::invalid_argument("flatten requires distinct elements");
    ranks[idx] = rank;
  }
  return Permutation(std::move(ranks));
}

std::vector<Permutation> prefix_flattenings(const Permutation& pi) {
  std::vector<Permutation> result;
  result.reserve(static_cast<size_t>(pi.size()));
  std::vector<int> prefix;
  prefix.reserve(static_cast<size_t>(pi.size()));
  for (int i = 1; i <= pi.size(); ++i) {
    prefix.push_back(pi.at(i));
    result.push_back(flatten(prefix));
  }
  return result;
}

std::vector<int> left_to_right_maxima(const Permutation& pi) {
  std::vector<int> positions;
  int best = 0;
  for (int i = 1; i <= pi.size(); ++i) {
    if (pi.at(i) > best) {
      best = pi.at(i);
      positions.push_back(i);
    }
  }
  return positions;
}

int cost_statistic(const Permutation& pi) {
  return pi.position_of_max() - 1;
}

bool is_r_winnable(const Permutation& pi, int r) {
  if (r < 0 || r > pi.size())
    throw std::invalid_argument("threshold r must be in [0, n]");
  const std::vector<int> maxima = left_to_right_maxima(pi);
  const int last = maxima.back();  // == pi.position_of_max()
  const int prev = maxima.size() >= 2 ? maxima[maxima.size() - 2] : 0;
  return prev <= r && r < last;
}

double weight(const Permutation& pi, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  return std::pow(theta, cost_statistic(pi));
}

Rational weight_exact(const Permutation& pi, const Rational& theta) {
  if (theta <= 0) throw std::domain_error("theta must be positive");
  return rational_pow(theta, static_cast<unsigned>(cost_statistic(pi)));
}

double normalizer(const GameConfig& config) {
  double factorial = 1.0;
  for (int k = 2; k < config.n; ++k) factorial *= k;
  double geometric;
  if (config.theta == 1.0) {
    geometric = config.n;
  } else {
    geometric = 0.0;
    double power = 1.0;
    for (int k = 0; k < config.n; ++k) {
      geometric += power;
      if (k + 1 == config.n) break;
      power *= config.theta;
      if (power < 1e-25 * geometric) break;  // remaining tail is negligible
      if (!std::isfinite(power)) {
        geometric = power;  // the sum genuinely overflows
        break;
      }
    }
  }
  const double result = factorial * geometric;
  if (!std::isfinite(result))
    throw std::range_error("normalizer overflows binary64; use the exact path");
  return result;
}

Rational normalizer_exact(int n, const Rational& theta) {
  if (n < 1) throw std::invalid_argument("pool size must be >= 1");
  if (theta <= 0) throw std::domain_error("theta must be positive");
  Rational geometric(0);
  Rational power(1);
  for (int k = 0; k < n; ++k) {
    geometric += power;
    power *= theta;
  }
  return Rational(big_factorial(static_cast<unsigned>(n - 1))) * geometric;
}

Permutation parse_permutation(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty permutation literal");

  std::vector<int> entries;
  if (text.find(',') != std::string_view::npos) {
    size_t start = 0;
    while (start <= text.size()) {
      size_t comma = text.find(',', start);
      std::string token(text.substr(start, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - start));
      try {
        size_t used = 0;
        int v = std::stoi(token, &used);
        while (used < token.size() &&
               std::isspace(static_cast<unsigned char>(token[used])))
          ++used;
        if (used != token.size()) throw std::invalid_argument(token);
        entries.push_back(v);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad permutation entry: '" + token + "'");
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    // Digit shorthand, one character per value.
    if (text.size() > 9)
      throw std::invalid_argument("digit shorthand only covers n <= 9");
    for (char c : text) {
      if (c < '1' || c > '9')
        throw std::invalid_argument("digit shorthand allows digits 1-9 only");
      entries.push_back(c - '0');
    }
  }
  return Permutation(std::move(entries));
}

std::string format_permutation(const Permutation& pi) {
  std::string out;
  for (int i = 1; i <= pi.size(); ++i) {
    if (i > 1) out.push_back(',');
    out += std::to_string(pi.at(i));
  }
  return out;
}

}  // namespace bestchoice
