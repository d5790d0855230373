#include "bestchoice/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "bestchoice/errors.hpp"

namespace bestchoice {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Unbiased bounded draw; rejection keeps the modulo from skewing anything.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// CDF of the position of the best candidate: (theta^p - 1)/(theta^n - 1),
// written so neither power can overflow.
double position_cdf(int p, int n, double log_theta) {
  if (log_theta < 0.0) {
    return std::expm1(p * log_theta) / std::expm1(n * log_theta);
  }
  return std::exp((p - n) * log_theta) * std::expm1(-p * log_theta) /
         std::expm1(-n * log_theta);
}

int draw_best_position(const GameConfig& game, std::mt19937_64& rng) {
  const int n = game.n;
  if (game.theta == 1.0) {
    return 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  }
  const double u = uniform_unit(rng);
  const double log_theta = std::log(game.theta);
  int lo = 1, hi = n;  // smallest p with CDF(p) >= u
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (position_cdf(mid, n, log_theta) >= u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

struct WorkerSlice {
  std::uint64_t count;
  int index;
};

std::vector<WorkerSlice> partition_samples(std::uint64_t total, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  std::vector<WorkerSlice> slices;
  const std::uint64_t base = total / static_cast<std::uint64_t>(workers);
  const std::uint64_t remainder = total % static_cast<std::uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    slices.push_back({base + (static_cast<std::uint64_t>(w) < remainder ? 1 : 0), w});
  }
  return slices;
}

// Runs fn(worker_index, sample_count) on each slice, threaded when asked for.
template <typename Fn>
void run_workers(const std::vector<WorkerSlice>& slices, Fn&& fn) {
  if (slices.size() == 1) {
    fn(slices[0].index, slices[0].count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(slices.size());
  for (const WorkerSlice& slice : slices) {
    threads.emplace_back([&fn, slice] { fn(slice.index, slice.count); });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, int worker_index) {
  std::seed_seq sequence{static_cast<std::uint32_t>(seed),
                         static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(worker_index)};
  return std::mt19937_64(sequence);
}

Permutation sample_permutation(const GameConfig& game, std::mt19937_64& rng) {
  const int n = game.n;
  const int best_position = draw_best_position(game, rng);

  // Values 1..n-1 in uniform random order around the pinned maximum.
  std::vector<int> rest(static_cast<size_t>(n) - 1);
  for (int v = 1; v < n; ++v) rest[v - 1] = v;
  for (int i = n - 2; i > 0; --i) {
    const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(rest[i], rest[j]);
  }

  std::vector<int> entries(static_cast<size_t>(n));
  int next = 0;
  for (int pos = 1; pos <= n; ++pos) {
    entries[pos - 1] = (pos == best_position) ? n : rest[next++];
  }
  return Permutation(std::move(entries));
}

PlayResult play_strategy(const Permutation& pi, int r) {
  const int n = pi.size();
  if (r < 0 || r > n) throw std::invalid_argument("threshold r must be in [0, n]");
  int prefix_max = 0;
  for (int i = 1; i <= n; ++i) {
    const bool relative_max = pi.at(i) > prefix_max;
    if (relative_max) prefix_max = pi.at(i);
    if (i > r && relative_max) {
      return {pi.at(i) == n, i};
    }
  }
  return {false, std::nullopt};
}

Estimate estimate_win_probability(const SampleConfig& config, int r) {
  if (config.num_samples < 1) throw std::invalid_argument("need at least one sample");
  const auto slices = partition_samples(config.num_samples, config.workers);
  std::vector<std::uint64_t> wins(slices.size(), 0);
  run_workers(slices, [&](int index, std::uint64_t count) {
    std::mt19937_64 rng = make_stream(config.seed, index);
    std::uint64_t local = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      const Permutation pi = sample_permutation(config.game, rng);
      if (play_strategy(pi, r).won) ++local;
    }
    wins[static_cast<size_t>(index)] = local;
  });
  std::uint64_t total_wins = 0;
  for (std::uint64_t w : wins) total_wins += w;

  const double n = static_cast<double>(config.num_samples);
  const double mean = static_cast<double>(total_wins) / n;
  const double std_error = std::sqrt(mean * (1.0 - mean) / n);
  return {mean, std_error, mean - kZ95 * std_error, mean + kZ95 * std_error,
          config.num_samples};
}

PositionHistogram empirical_position_histogram(const SampleConfig& config) {
  if (config.num_samples < 1) throw std::invalid_argument("need at least one sample");
  const int n = config.game.n;
  const auto slices = partition_samples(config.num_samples, config.workers);
  std::vector<std::vector<std::uint64_t>> local_counts(
      slices.size(), std::vector<std::uint64_t>(static_cast<size_t>(n), 0));
  run_workers(slices, [&](int index, std::uint64_t count) {
    std::mt19937_64 rng = make_stream(config.seed, index);
    auto& counts = local_counts[static_cast<size_t>(index)];
    for (std::uint64_t s = 0; s < count; ++s) {
      ++counts[static_cast<size_t>(draw_best_position(config.game, rng)) - 1];
    }
  });

  PositionHistogram histogram;
  histogram.counts.assign(static_cast<size_t>(n), 0);
  for (const auto& counts : local_counts) {
    for (int p = 0; p < n; ++p) histogram.counts[p] += counts[p];
  }

  // Chi-square against the truncated geometric marginal.
  const double theta = config.game.theta;
  double geometric_total;
  if (theta == 1.0) {
    geometric_total = n;
  } else {
    geometric_total = -std::expm1(n * std::log(theta)) / (1.0 - theta);
  }
  double statistic = 0.0;
  double power = 1.0;
  for (int p = 1; p <= n; ++p) {
    const double expected =
        static_cast<double>(config.num_samples) * power / geometric_total;
    const double diff = static_cast<double>(histogram.counts[p - 1]) - expected;
    statistic += diff * diff / expected;
    power *= theta;
  }
  histogram.chi_square = statistic;
  histogram.p_value = chi_square_p_value(statistic, n - 1);
  return histogram;
}

namespace {

// Regularized incomplete gamma, series branch: P(a, x) for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw convergence_error("incomplete gamma series failed to converge");
}

// Continued-fraction branch: Q(a, x) for x >= a + 1 (modified Lentz).
double gamma_q_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw convergence_error("incomplete gamma continued fraction failed to converge");
}

}  // namespace

double chi_square_p_value(double statistic, int dof) {
  if (statistic < 0.0 || dof < 1)
    throw std::invalid_argument("chi-square needs statistic >= 0 and dof >= 1");
  const double a = 0.5 * dof;
  const double x = 0.5 * statistic;
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

}  // namespace bestchoice
