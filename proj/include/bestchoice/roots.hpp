#pragma once

#include <functional>

namespace bestchoice {

struct RootResult {
  double x;
  double fx;
  int iterations;
};

// Bracketing root finder: bisection alternated with secant steps, so the
// bracket provably shrinks while converged secant steps land early.
// Requires f(lo) and f(hi) of opposite sign; throws convergence_error
// with bracket diagnostics otherwise.
RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double xtol);

}  // namespace bestchoice
