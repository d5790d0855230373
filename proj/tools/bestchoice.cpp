// Command-line front end: every subcommand is a thin adapter over the
// library, plus CSV/JSON formatting at fixed precisions (12 significant
// digits for CSV and tables, 15 for JSON).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bestchoice/asymptotic.hpp"
#include "bestchoice/core.hpp"
#include "bestchoice/dp.hpp"
#include "bestchoice/errors.hpp"
#include "bestchoice/exact.hpp"
#include "bestchoice/expint.hpp"
#include "bestchoice/montecarlo.hpp"

namespace {

using namespace bestchoice;

enum class Format { kCsv, kJson, kPretty };

std::string fmt(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

std::string csv_num(double value) { return fmt(value, 12); }
std::string json_num(double value) { return fmt(value, 15); }

// Flat JSON object emitted in insertion order.
class JsonObject {
 public:
  void add_number(const std::string& key, double value) {
    add_raw(key, json_num(value));
  }
  void add_int(const std::string& key, long long value) {
    add_raw(key, std::to_string(value));
  }
  void add_uint(const std::string& key, std::uint64_t value) {
    add_raw(key, std::to_string(value));
  }
  void add_bool(const std::string& key, bool value) {
    add_raw(key, value ? "true" : "false");
  }
  void add_string(const std::string& key, const std::string& value) {
    add_raw(key, "\"" + value + "\"");
  }
  void add_raw(const std::string& key, const std::string& raw) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + key + "\":" + raw;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

// theta accepted as a decimal or a fraction literal "p/q"; the fraction form
// switches the exact-arithmetic columns on where a subcommand supports them.
struct ThetaArg {
  double value = 0.0;
  bool exact = false;
  Rational rational;
};

ThetaArg parse_theta(const std::string& text) {
  ThetaArg theta;
  theta.rational = parse_rational(text);
  theta.value = theta.rational.get_d();
  theta.exact = text.find('/') != std::string::npos;
  if (theta.rational <= 0) throw std::domain_error("theta must be positive");
  return theta;
}

struct GlobalOptions {
  std::string format;
  std::string output_path;
  double tol = 1e-12;
  bool tol_given = false;
};

Format resolve_format(const GlobalOptions& global, Format fallback) {
  if (global.format == "csv") return Format::kCsv;
  if (global.format == "json") return Format::kJson;
  if (global.format == "pretty") return Format::kPretty;
  return fallback;
}

const AsymptoticSolver& solver_for(const GlobalOptions& global) {
  static std::optional<AsymptoticSolver> custom;
  if (global.tol_given) {
    if (!custom) custom.emplace(global.tol);
    return *custom;
  }
  return default_asymptotic_solver();
}

void emit_result_record(std::ostream& out, Format format, const GameConfig& game,
                        int r, double w, double p, const std::string& method,
                        const ThetaArg& theta, const Rational* w_exact,
                        const Rational* p_exact) {
  if (format == Format::kJson) {
    JsonObject json;
    json.add_int("n", game.n);
    json.add_number("theta", game.theta);
    json.add_int("r", r);
    json.add_number("w", w);
    json.add_number("p", p);
    json.add_string("method", method);
    if (theta.exact && w_exact != nullptr) json.add_string("w_exact", to_string(*w_exact));
    if (theta.exact && p_exact != nullptr) json.add_string("p_exact", to_string(*p_exact));
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "n,theta,r,w,p,method\n"
        << game.n << "," << csv_num(game.theta) << "," << r << "," << csv_num(w)
        << "," << csv_num(p) << "," << method << "\n";
  } else {
    out << "n      = " << game.n << "\n"
        << "theta  = " << csv_num(game.theta) << "\n"
        << "r      = " << r << "\n"
        << "W_n(r) = " << csv_num(w) << "\n"
        << "P_r    = " << csv_num(p) << "\n"
        << "method = " << method << "\n";
    if (theta.exact && w_exact != nullptr)
      out << "W_n(r) exact = " << to_string(*w_exact) << "\n";
    if (theta.exact && p_exact != nullptr)
      out << "P_r exact    = " << to_string(*p_exact) << "\n";
  }
}

// ---- subcommand handlers ----

struct ExactArgs {
  int n = 0;
  std::string theta;
  int r = 0;
  std::string method = "closed";
};

void run_exact(const ExactArgs& args, const GlobalOptions& global, std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const GameConfig game(args.n, theta.value);
  const bool recurrence = args.method == "recurrence";
  const double w = recurrence ? w_recurrence(args.n, args.r, theta.value).value
                              : w_closed_form(args.n, args.r, theta.value).value;
  const double p = win_probability(game, args.r).win_probability;
  Rational w_exact, p_exact;
  if (theta.exact) {
    w_exact = recurrence ? w_recurrence_exact(args.n, args.r, theta.rational).value
                         : w_closed_form_exact(args.n, args.r, theta.rational).value;
    p_exact = win_probability_exact(args.n, theta.rational, args.r);
  }
  emit_result_record(out, resolve_format(global, Format::kPretty), game, args.r, w, p,
                     recurrence ? "recurrence" : "closed_form", theta, &w_exact,
                     &p_exact);
}

struct OptimalArgs {
  int n = 0;
  std::string theta;
};

void run_optimal(const OptimalArgs& args, const GlobalOptions& global,
                 std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const GameConfig game(args.n, theta.value);
  const StrategyOutcome best = optimal_r_finite(game);
  const Format format = resolve_format(global, Format::kPretty);
  if (format == Format::kJson) {
    JsonObject json;
    json.add_int("n", game.n);
    json.add_number("theta", game.theta);
    json.add_int("r", best.r);
    json.add_number("p", best.win_probability);
    json.add_string("method", "closed_form");
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "n,theta,r,p\n"
        << game.n << "," << csv_num(game.theta) << "," << best.r << ","
        << csv_num(best.win_probability) << "\n";
  } else {
    out << "optimal r = " << best.r << "\n"
        << "P_r       = " << csv_num(best.win_probability) << "\n";
  }
}

struct BruteArgs {
  int n = 0;
  std::string theta;
  int r = 0;
  int cap = kDefaultEnumerationCap;
};

void run_brute(const BruteArgs& args, const GlobalOptions& global, std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const GameConfig game(args.n, theta.value);
  const double w = brute_force_win_weight(args.n, args.r, theta.value, args.cap).value;
  const double p = w / normalizer(game);
  Rational w_exact, p_exact;
  if (theta.exact) {
    w_exact = brute_force_win_weight_exact(args.n, args.r, theta.rational, args.cap).value;
    p_exact = w_exact / normalizer_exact(args.n, theta.rational);
  }
  emit_result_record(out, resolve_format(global, Format::kPretty), game, args.r, w, p,
                     "brute_force", theta, &w_exact, &p_exact);
}

struct DpArgs {
  int n = 0;
  std::string theta;
  int cap = kDefaultDpCap;
};

void run_dp(const DpArgs& args, const GlobalOptions& global, std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const GameConfig game(args.n, theta.value);
  const DpResult dp = dp_optimal_policy(game, args.cap);
  std::optional<Rational> value_exact;
  if (theta.exact) {
    value_exact = dp_optimal_policy_exact(args.n, theta.rational, args.cap).value;
  }
  const Format format = resolve_format(global, Format::kPretty);
  const bool positional = dp.policy.positional_r.has_value();
  if (format == Format::kJson) {
    JsonObject json;
    json.add_int("n", game.n);
    json.add_number("theta", game.theta);
    json.add_number("value", dp.value);
    json.add_number("p", dp.value);
    json.add_bool("positional", positional);
    if (positional) json.add_int("r", *dp.policy.positional_r);
    json.add_string("method", "dp");
    if (value_exact) json.add_string("value_exact", to_string(*value_exact));
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "n,theta,value,positional,r\n"
        << game.n << "," << csv_num(game.theta) << "," << csv_num(dp.value) << ","
        << (positional ? "true" : "false") << ","
        << (positional ? std::to_string(*dp.policy.positional_r) : "") << "\n";
  } else {
    out << "optimal value over all strategies = " << csv_num(dp.value) << "\n"
        << "policy is positional              = " << (positional ? "yes" : "no")
        << "\n";
    if (positional) out << "positional threshold r            = "
                        << *dp.policy.positional_r << "\n";
    if (value_exact) out << "value exact                       = "
                         << to_string(*value_exact) << "\n";
  }
}

struct CurvesArgs {
  double theta_min = 0.02;
  double theta_max = 0.98;
  int grid = 49;
  int r_max = 5;
};

void run_curves(const CurvesArgs& args, const GlobalOptions& global,
                std::ostream& out) {
  if (!(args.theta_min > 0.0) || !(args.theta_max < 1.0) ||
      args.theta_min > args.theta_max)
    throw std::domain_error("need 0 < theta-min <= theta-max < 1");
  if (args.grid < 1) throw std::domain_error("grid must have at least one point");
  if (args.r_max < 0) throw std::domain_error("r-max must be >= 0");

  const auto theta_at = [&](int j) {
    if (args.grid == 1) return args.theta_min;
    return args.theta_min + (args.theta_max - args.theta_min) * j / (args.grid - 1);
  };
  const Format format = resolve_format(global, Format::kCsv);
  if (format == Format::kJson) {
    out << "{\"curves\":[";
    bool first = true;
    for (int r = 0; r <= args.r_max; ++r) {
      for (int j = 0; j < args.grid; ++j) {
        JsonObject json;
        json.add_number("theta", theta_at(j));
        json.add_int("r", r);
        json.add_number("p", p_asym(r, theta_at(j)));
        out << (first ? "" : ",") << json.str();
        first = false;
      }
    }
    out << "]}\n";
  } else {
    out << "theta,r,p\n";
    for (int r = 0; r <= args.r_max; ++r) {
      for (int j = 0; j < args.grid; ++j) {
        const double theta = theta_at(j);
        out << csv_num(theta) << "," << r << "," << csv_num(p_asym(r, theta))
            << "\n";
      }
    }
  }
}

struct RegimeArgs {
  int r_max = 5;
};

void run_regime(const RegimeArgs& args, const GlobalOptions& global,
                std::ostream& out) {
  const AsymptoticSolver& solver = solver_for(global);
  const RegimeTable table = solver.regime_table(args.r_max);
  std::vector<CriticalPoint> points;
  for (int r = 1; r <= args.r_max; ++r) points.push_back(solver.critical_point(r));

  const Format format = resolve_format(global, Format::kCsv);
  if (format == Format::kJson) {
    out << "{\"critical_points\":[";
    for (size_t i = 0; i < points.size(); ++i) {
      JsonObject json;
      json.add_int("r", points[i].r);
      json.add_number("theta_star", points[i].theta_star);
      json.add_number("p_star", points[i].p_star);
      out << (i > 0 ? "," : "") << json.str();
    }
    out << "],\"regime\":[";
    for (size_t i = 0; i < table.rows.size(); ++i) {
      JsonObject json;
      json.add_int("r", table.rows[i].r);
      json.add_number("theta_low", table.rows[i].theta_low);
      json.add_number("theta_high", table.rows[i].theta_high);
      json.add_number("p_at_low", table.rows[i].p_at_low);
      out << (i > 0 ? "," : "") << json.str();
    }
    out << "]}\n";
  } else if (format == Format::kCsv) {
    out << "r,theta_star,p_star\n";
    for (const CriticalPoint& cp : points) {
      out << cp.r << "," << csv_num(cp.theta_star) << "," << csv_num(cp.p_star)
          << "\n";
    }
    out << "\nr,theta_low,theta_high,p_at_low\n";
    for (const RegimeRow& row : table.rows) {
      out << row.r << "," << csv_num(row.theta_low) << ","
          << csv_num(row.theta_high) << "," << csv_num(row.p_at_low) << "\n";
    }
  } else {
    out << "critical points (curve r meets curve r-1 at its maximum):\n";
    for (const CriticalPoint& cp : points) {
      out << "  r=" << cp.r << "  theta*=" << csv_num(cp.theta_star)
          << "  P*=" << csv_num(cp.p_star) << "\n";
    }
    out << "optimal regimes:\n";
    for (const RegimeRow& row : table.rows) {
      out << "  r=" << row.r << "  theta in [" << csv_num(row.theta_low) << ", "
          << csv_num(row.theta_high) << "]  P(low)=" << csv_num(row.p_at_low)
          << "\n";
    }
  }
}

void run_alpha_beta(const GlobalOptions& global, std::ostream& out) {
  const AlphaBeta& ab = find_alpha_beta();
  const Format format = resolve_format(global, Format::kPretty);
  if (format == Format::kJson) {
    JsonObject json;
    json.add_number("alpha", ab.alpha);
    json.add_number("beta", ab.beta);
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "alpha,beta\n" << csv_num(ab.alpha) << "," << csv_num(ab.beta) << "\n";
  } else {
    out << json_num(ab.alpha) << ", " << json_num(ab.beta) << "\n";
  }
}

struct Xe1xArgs {
  double x_max = 2.0;
  int grid = 200;
};

void run_xe1x(const Xe1xArgs& args, const GlobalOptions& global, std::ostream& out) {
  if (!(args.x_max > 0.0)) throw std::domain_error("x-max must be positive");
  if (args.grid < 1) throw std::domain_error("grid must have at least one point");
  const AlphaBeta& ab = find_alpha_beta();
  const Format format = resolve_format(global, Format::kCsv);
  if (format == Format::kJson) {
    out << "{\"points\":[";
    for (int i = 1; i <= args.grid; ++i) {
      const double x = args.x_max * i / args.grid;
      JsonObject json;
      json.add_number("x", x);
      json.add_number("f", objective_f(x));
      out << (i > 1 ? "," : "") << json.str();
    }
    out << "],\"alpha\":" << json_num(ab.alpha) << ",\"beta\":" << json_num(ab.beta)
        << "}\n";
  } else {
    out << "x,f\n";
    for (int i = 1; i <= args.grid; ++i) {
      const double x = args.x_max * i / args.grid;
      out << csv_num(x) << "," << csv_num(objective_f(x)) << "\n";
    }
    // The maximum itself, flagged as the final row.
    out << csv_num(ab.alpha) << "," << csv_num(ab.beta) << "\n";
  }
}

struct PolicyArgs {
  std::string theta;
};

void run_policy(const PolicyArgs& args, const GlobalOptions& global,
                std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const AsymptoticPolicy prescription = asymptotic_policy(theta.value);
  const StrategyOutcome regime = solver_for(global).optimal_strategy_asym(theta.value);
  const Format format = resolve_format(global, Format::kPretty);
  if (format == Format::kJson) {
    JsonObject json;
    json.add_number("theta", theta.value);
    json.add_number("r_real", prescription.r_real);
    json.add_number("success", prescription.success);
    json.add_int("r_regime", regime.r);
    json.add_number("p_regime", regime.win_probability);
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "theta,r_real,success,r_regime,p_regime\n"
        << csv_num(theta.value) << "," << csv_num(prescription.r_real) << ","
        << csv_num(prescription.success) << "," << regime.r << ","
        << csv_num(regime.win_probability) << "\n";
  } else {
    out << "limit prescription: reject alpha/(1-theta) = "
        << csv_num(prescription.r_real)
        << " candidates, success = " << csv_num(prescription.success) << "\n"
        << "regime answer:      r = " << regime.r
        << ", P_r(theta) = " << csv_num(regime.win_probability) << "\n";
  }
}

struct SimulateArgs {
  int n = 0;
  std::string theta;
  int r = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

void run_simulate(const SimulateArgs& args, const GlobalOptions& global,
                  std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const SampleConfig config{GameConfig(args.n, theta.value), args.samples,
                            args.seed, args.workers};
  const Estimate estimate = estimate_win_probability(config, args.r);
  const double exact =
      args.r < args.n ? win_probability(config.game, args.r).win_probability : 0.0;
  const Format format = resolve_format(global, Format::kJson);
  if (format == Format::kCsv) {
    out << "n,theta,r,samples,seed,workers,rng,mean,std_error,ci_low,ci_high,exact\n"
        << args.n << "," << csv_num(theta.value) << "," << args.r << ","
        << args.samples << "," << args.seed << "," << args.workers << ","
        << kRngName << "," << csv_num(estimate.mean) << ","
        << csv_num(estimate.std_error) << "," << csv_num(estimate.ci_low) << ","
        << csv_num(estimate.ci_high) << "," << csv_num(exact) << "\n";
  } else if (format == Format::kPretty) {
    out << "mean      = " << csv_num(estimate.mean) << "\n"
        << "std error = " << csv_num(estimate.std_error) << "\n"
        << "95% CI    = [" << csv_num(estimate.ci_low) << ", "
        << csv_num(estimate.ci_high) << "]\n"
        << "exact     = " << csv_num(exact) << "\n"
        << "rng       = " << kRngName << " (seed " << args.seed << ", "
        << args.workers << " workers)\n";
  } else {
    JsonObject json;
    json.add_int("n", args.n);
    json.add_number("theta", theta.value);
    json.add_int("r", args.r);
    json.add_uint("samples", args.samples);
    json.add_uint("seed", args.seed);
    json.add_int("workers", args.workers);
    json.add_string("rng", kRngName);
    json.add_number("mean", estimate.mean);
    json.add_number("std_error", estimate.std_error);
    json.add_raw("ci", "[" + json_num(estimate.ci_low) + "," +
                           json_num(estimate.ci_high) + "]");
    json.add_number("exact", exact);
    out << json.str() << "\n";
  }
}

struct TrendArgs {
  int n = 0;
  double lambda = 0.0;
  std::string theta;
};

void run_trend(const TrendArgs& args, const GlobalOptions& global,
               std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const double p = trend_probability(args.n, args.lambda, theta.value);
  const double limit = 1.0 / args.lambda;
  const int r = static_cast<int>(args.n / args.lambda);
  const Format format = resolve_format(global, Format::kPretty);
  if (format == Format::kJson) {
    JsonObject json;
    json.add_int("n", args.n);
    json.add_number("lambda", args.lambda);
    json.add_number("theta", theta.value);
    json.add_int("r", r);
    json.add_number("p", p);
    json.add_number("limit", limit);
    json.add_number("gap", std::fabs(p - limit));
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "n,lambda,theta,r,p,limit,gap\n"
        << args.n << "," << csv_num(args.lambda) << "," << csv_num(theta.value)
        << "," << r << "," << csv_num(p) << "," << csv_num(limit) << ","
        << csv_num(std::fabs(p - limit)) << "\n";
  } else {
    out << "r = floor(n/lambda) = " << r << "\n"
        << "P_r(n, theta)       = " << csv_num(p) << "\n"
        << "1/lambda            = " << csv_num(limit) << "\n"
        << "gap                 = " << csv_num(std::fabs(p - limit)) << "\n";
  }
}

struct DualityArgs {
  int n = 0;
  std::string theta;
  int r = 0;
};

void run_duality(const DualityArgs& args, const GlobalOptions& global,
                 std::ostream& out) {
  const ThetaArg theta = parse_theta(args.theta);
  const GameConfig game(args.n, theta.value);
  const double p = win_probability(game, args.r).win_probability;
  const double payoff = rasmussen_pliska_payoff(game, args.r);
  const double constant = p > 0.0 ? payoff / p : 0.0;
  std::optional<Rational> payoff_exact;
  if (theta.exact) {
    payoff_exact = rasmussen_pliska_payoff_exact(args.n, theta.rational, args.r);
  }
  const Format format = resolve_format(global, Format::kPretty);
  if (format == Format::kJson) {
    JsonObject json;
    json.add_int("n", args.n);
    json.add_number("theta", theta.value);
    json.add_int("r", args.r);
    json.add_number("p", p);
    json.add_number("constant", constant);
    json.add_number("payoff", payoff);
    if (payoff_exact) json.add_string("payoff_exact", to_string(*payoff_exact));
    out << json.str() << "\n";
  } else if (format == Format::kCsv) {
    out << "n,theta,r,p,constant,payoff\n"
        << args.n << "," << csv_num(theta.value) << "," << args.r << ","
        << csv_num(p) << "," << csv_num(constant) << "," << csv_num(payoff)
        << "\n";
  } else {
    out << "P_r(n, theta)              = " << csv_num(p) << "\n"
        << "(theta + ... + theta^n)/n  = " << csv_num(constant) << "\n"
        << "dual expected payoff       = " << csv_num(payoff) << "\n";
    if (payoff_exact) out << "dual payoff exact          = "
                          << to_string(*payoff_exact) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted game of best choice: exact solver, asymptotics, simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}));
  app.add_option("--output", global.output_path, "write to a file instead of stdout");
  app.add_option("--tol", global.tol, "override solver tolerances")
      ->check(CLI::PositiveNumber);

  ExactArgs exact_args;
  CLI::App* exact_cmd = app.add_subcommand("exact", "P_r(n, theta) and W_n(r)");
  exact_cmd->add_option("--n", exact_args.n, "pool size")->required();
  exact_cmd->add_option("--theta", exact_args.theta, "weight parameter")->required();
  exact_cmd->add_option("--r", exact_args.r, "rejection threshold")->required();
  exact_cmd->add_option("--method", exact_args.method, "closed or recurrence")
      ->check(CLI::IsMember({"closed", "recurrence"}));

  OptimalArgs optimal_args;
  CLI::App* optimal_cmd = app.add_subcommand("optimal", "best finite-n threshold");
  optimal_cmd->add_option("--n", optimal_args.n, "pool size")->required();
  optimal_cmd->add_option("--theta", optimal_args.theta, "weight parameter")->required();

  BruteArgs brute_args;
  CLI::App* brute_cmd = app.add_subcommand("brute", "enumeration oracle for W_n(r)");
  brute_cmd->add_option("--n", brute_args.n, "pool size")->required();
  brute_cmd->add_option("--theta", brute_args.theta, "weight parameter")->required();
  brute_cmd->add_option("--r", brute_args.r, "rejection threshold")->required();
  brute_cmd->add_option("--cap", brute_args.cap, "enumeration cap");

  DpArgs dp_args;
  CLI::App* dp_cmd = app.add_subcommand("dp", "optimum over all strategies");
  dp_cmd->add_option("--n", dp_args.n, "pool size")->required();
  dp_cmd->add_option("--theta", dp_args.theta, "weight parameter")->required();
  dp_cmd->add_option("--cap", dp_args.cap, "prefix-tree cap");

  CurvesArgs curves_args;
  CLI::App* curves_cmd = app.add_subcommand("curves", "limit curves P_r(theta) as CSV");
  curves_cmd->add_option("--theta-min", curves_args.theta_min, "grid start");
  curves_cmd->add_option("--theta-max", curves_args.theta_max, "grid end");
  curves_cmd->add_option("--grid", curves_args.grid, "number of grid points");
  curves_cmd->add_option("--r-max", curves_args.r_max, "largest curve index");

  RegimeArgs regime_args;
  CLI::App* regime_cmd =
      app.add_subcommand("regime", "critical points and optimal regimes");
  regime_cmd->add_option("--r-max", regime_args.r_max, "largest curve index");

  CLI::App* alpha_cmd = app.add_subcommand("alpha-beta", "limiting constants");

  Xe1xArgs xe1x_args;
  CLI::App* xe1x_cmd = app.add_subcommand("xe1x", "x E1(x) over a grid as CSV");
  xe1x_cmd->add_option("--x-max", xe1x_args.x_max, "grid end");
  xe1x_cmd->add_option("--grid", xe1x_args.grid, "number of grid points");

  PolicyArgs policy_args;
  CLI::App* policy_cmd =
      app.add_subcommand("policy", "limit prescription next to the regime answer");
  policy_cmd->add_option("--theta", policy_args.theta, "weight parameter")->required();

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate");
  simulate_cmd->add_option("--n", simulate_args.n, "pool size")->required();
  simulate_cmd->add_option("--theta", simulate_args.theta, "weight parameter")->required();
  simulate_cmd->add_option("--r", simulate_args.r, "rejection threshold")->required();
  simulate_cmd->add_option("--samples", simulate_args.samples, "sample count")->required();
  simulate_cmd->add_option("--seed", simulate_args.seed, "RNG seed")->required();
  simulate_cmd->add_option("--workers", simulate_args.workers, "worker count");

  TrendArgs trend_args;
  CLI::App* trend_cmd = app.add_subcommand("trend", "theta > 1 regime vs 1/lambda");
  trend_cmd->add_option("--n", trend_args.n, "pool size")->required();
  trend_cmd->add_option("--lambda", trend_args.lambda, "rejection fraction divisor")
      ->required();
  trend_cmd->add_option("--theta", trend_args.theta, "weight parameter")->required();

  DualityArgs duality_args;
  CLI::App* duality_cmd =
      app.add_subcommand("duality", "dual expected payoff on the uniform model");
  duality_cmd->add_option("--n", duality_args.n, "pool size")->required();
  duality_cmd->add_option("--theta", duality_args.theta, "weight parameter")->required();
  duality_cmd->add_option("--r", duality_args.r, "rejection threshold")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!global.output_path.empty()) {
    file.open(global.output_path);
    if (!file) {
      std::cerr << "error: cannot open " << global.output_path << "\n";
      return 2;
    }
    out = &file;
  }
  global.tol_given = app.count("--tol") > 0;

  try {
    if (app.got_subcommand(exact_cmd)) run_exact(exact_args, global, *out);
    else if (app.got_subcommand(optimal_cmd)) run_optimal(optimal_args, global, *out);
    else if (app.got_subcommand(brute_cmd)) run_brute(brute_args, global, *out);
    else if (app.got_subcommand(dp_cmd)) run_dp(dp_args, global, *out);
    else if (app.got_subcommand(curves_cmd)) run_curves(curves_args, global, *out);
    else if (app.got_subcommand(regime_cmd)) run_regime(regime_args, global, *out);
    else if (app.got_subcommand(alpha_cmd)) run_alpha_beta(global, *out);
    else if (app.got_subcommand(xe1x_cmd)) run_xe1x(xe1x_args, global, *out);
    else if (app.got_subcommand(policy_cmd)) run_policy(policy_args, global, *out);
    else if (app.got_subcommand(simulate_cmd)) run_simulate(simulate_args, global, *out);
    else if (app.got_subcommand(trend_cmd)) run_trend(trend_args, global, *out);
    else if (app.got_subcommand(duality_cmd)) run_duality(duality_args, global, *out);
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
