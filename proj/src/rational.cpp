#include "bestchoice/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bestchoice {

BigInt big_factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational acc = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) result *= acc;
    acc *= acc;
    e >>= 1u;
  }
  return result;
}

namespace {

BigInt parse_big_int(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  BigInt value;
  if (mpz_set_str(value.get_mpz_t(), std::string(text).c_str(), 10) != 0) {
    throw std::invalid_argument("bad integer literal: " + std::string(text));
  }
  return value;
}

BigInt pow10(long e) {
  BigInt value;
  mpz_ui_pow_ui(value.get_mpz_t(), 10u, static_cast<unsigned long>(e));
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_big_int(text.substr(0, slash));
    BigInt den = parse_big_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal form: [sign] digits [. digits] [e[sign]digits]
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string exp_text(text.substr(e + 1));
    if (exp_text.empty()) throw std::invalid_argument("bad exponent");
    try {
      exponent = std::stol(exp_text);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent: " + exp_text);
    }
  }

  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad decimal literal");
      seen_point = true;
    } else {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    }
  }
  BigInt m = parse_big_int(digits);
  long net = exponent - frac_digits;
  Rational q(m);
  if (net > 0) {
    q *= Rational(pow10(net));
  } else if (net < 0) {
    q /= Rational(pow10(-net));
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

}  // namespace bestchoice
