#include "jtlab/rational.hpp"

#include <cmath>
#include <limits>

#include "jtlab/errors.hpp"

namespace jtlab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n{std::string(num), 10}, d{std::string(den), 10};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    out = Rational(n, d);
    out.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    mpz_class digits{std::string(whole.empty() ? "0" : whole) + std::string(frac), 10};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(digits, scale);
    out.canonicalize();
  } else {
    if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(text) + "'");
    out = Rational(mpz_class{std::string(s), 10});
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("from_double: non-finite value");
  return Rational(x);
}

double to_double_down(const Rational& q) {
  double d = q.get_d();
  while (Rational(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double to_double_up(const Rational& q) {
  double d = q.get_d();
  while (Rational(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

double sqrt_down(const Rational& q) {
  if (sgn(q) < 0) throw std::domain_error("sqrt_down: negative argument");
  double d = std::sqrt(q.get_d());
  while (d > 0 && Rational(d) * Rational(d) > q) d = std::nextafter(d, 0.0);
  return d;
}

double sqrt_up(const Rational& q) {
  if (sgn(q) < 0) throw std::domain_error("sqrt_up: negative argument");
  double d = std::sqrt(q.get_d());
  while (Rational(d) * Rational(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace jtlab
