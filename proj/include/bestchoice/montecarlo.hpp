#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bestchoice/core.hpp"

namespace bestchoice {

// Generator recorded in simulation metadata; any claim of determinism is
// relative to this choice.
inline constexpr const char* kRngName = "mt19937_64";

struct SampleConfig {
  GameConfig game;
  std::uint64_t num_samples;
  std::uint64_t seed;
  int workers = 1;
};

struct Estimate {
  double mean;
  double std_error;
  double ci_low;
  double ci_high;
  std::uint64_t n;
};

struct PlayResult {
  bool won;
  std::optional<int> accepted_position;  // 1-indexed
};

struct PositionHistogram {
  std::vector<std::uint64_t> counts;  // counts[p-1] = times pi^{-1}(n) == p
  double chi_square;
  double p_value;
};

// Independent stream for (seed, worker_index); same inputs, same stream.
std::mt19937_64 make_stream(std::uint64_t seed, int worker_index);

// Exact two-step sampler for the weighted distribution: draw the position of
// the best candidate from its truncated-geometric marginal by inverse CDF,
// then shuffle the remaining values uniformly. No rejection, no MCMC.
Permutation sample_permutation(const GameConfig& game, std::mt19937_64& rng);

// Plays the r-positional strategy through the player's view: walks the
// prefix flattenings and accepts the first position past r whose relative
// rank is maximal. Absolute ranks are only consulted to adjudicate the win.
PlayResult play_strategy(const Permutation& pi, int r);

// Win-rate estimate with a normal-approximation 95% interval. Workers
// partition the sample count; each owns the stream (seed, worker_index), so
// results are reproducible for a fixed (seed, workers) pair.
Estimate estimate_win_probability(const SampleConfig& config, int r);

// Histogram of the sampled position of the best candidate, with a chi-square
// test against the truncated-geometric marginal.
PositionHistogram empirical_position_histogram(const SampleConfig& config);

// Upper tail Q(dof/2, x/2) of the chi-square distribution.
double chi_square_p_value(double statistic, int dof);

}  // namespace bestchoice
