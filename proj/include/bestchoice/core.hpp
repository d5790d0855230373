#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bestchoice/rational.hpp"

namespace bestchoice {

// An interview order in one-line notation: entries are a bijection on
// {1..n}, where entry i is the true rank of the i-th candidate (n = best).
class Permutation {
 public:
  explicit Permutation(std::vector<int> entries);

  int size() const { return static_cast<int>(entries_.size()); }

  // Value at a 1-indexed position.
  int at(int position) const { return entries_[position - 1]; }

  // 1-indexed position of the maximum value n.
  int position_of_max() const { return max_position_; }

  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const Permutation& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<int> entries_;
  int max_position_;
};

// Pool size n and the weight parameter theta. theta == 1 is the uniform
// (classical) model and several consumers branch on it explicitly.
struct GameConfig {
  int n;
  double theta;

  GameConfig(int n, double theta);
};

// The unique permutation of {1..len} with the same relative order as seq.
Permutation flatten(const std::vector<int>& seq);

// (pi|_1, ..., pi|_n): what the player has seen after each interview.
std::vector<Permutation> prefix_flattenings(const Permutation& pi);

// 1-indexed positions of entries exceeding everything to their left.
// Position 1 is always included; the last one holds the value n.
std::vector<int> left_to_right_maxima(const Permutation& pi);

// Number of interviews wasted before the best candidate: pi^{-1}(n) - 1.
int cost_statistic(const Permutation& pi);

// True iff the r-positional strategy (reject positions 1..r, then accept
// the next left-to-right maximum) hires the best candidate on pi.
bool is_r_winnable(const Permutation& pi, int r);

// Unnormalized weight theta^{c(pi)} of pi in the interview distribution.
double weight(const Permutation& pi, double theta);
Rational weight_exact(const Permutation& pi, const Rational& theta);

// Total weight over all permutations: (n-1)! * (1 + theta + ... + theta^{n-1}).
double normalizer(const GameConfig& config);
Rational normalizer_exact(int n, const Rational& theta);

// "2,5,1,6,3,7,4"; the single-digit shorthand "2516374" is accepted for n <= 9.
Permutation parse_permutation(std::string_view text);
std::string format_permutation(const Permutation& pi);

}  // namespace bestchoice
