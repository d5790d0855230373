#include "bestchoice/roots.hpp"

#include <cmath>
#include <string>

#include "bestchoice/errors.hpp"

namespace bestchoice {

RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double xtol) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw convergence_error("no sign change on bracket [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]: f(lo) = " +
                            std::to_string(fa) + ", f(hi) = " + std::to_string(fb));
  }

  int iterations = 0;
  double fx = fa;
  bool try_secant = false;
  while (b - a > xtol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // interval no longer splittable
    double x = mid;
    if (try_secant && fb != fa) {
      const double s = b - fb * (b - a) / (fb - fa);
      if (s > a && s < b) x = s;
    }
    try_secant = !try_secant;
    fx = f(x);
    ++iterations;
    if (fx == 0.0) return {x, 0.0, iterations};
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (iterations > 400) {
      throw convergence_error("root finder exceeded 400 iterations on [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  return {std::fabs(fa) <= std::fabs(fb) ? a : b, std::fabs(fa) <= std::fabs(fb) ? fa : fb,
          iterations};
}

}  // namespace bestchoice
