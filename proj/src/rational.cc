#include "einstein_barrier/rational.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace einstein_barrier {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Integer pow10(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    Integer ez = parse_integer(exp_text);
    if (!ez.fits_slong_p() || abs(ez) > 10000) throw std::invalid_argument("exponent out of range");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("empty number");
  if (!int_part.empty() && !all_digits(int_part)) throw std::invalid_argument("malformed decimal");
  if (!frac_part.empty() && !all_digits(frac_part)) throw std::invalid_argument("malformed decimal");

  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer mantissa(digits.empty() ? std::string("0") : digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  Rational q = scale >= 0 ? make_rational(mantissa, pow10(static_cast<unsigned>(scale)))
                          : Rational(mantissa * pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    if (!all_digits(den_text)) throw std::invalid_argument("malformed denominator");
    return make_rational(num, Integer(std::string(den_text), 10));
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) {
  // mpq_get_d truncates; correct to nearest by comparing the two candidates.
  double d = mpq_get_d(q.get_mpq_t());
  if (!std::isfinite(d)) return d;
  double up = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
  Rational dq(d), uq(up);
  return abs(uq - q) < abs(dq - q) ? up : d;
}

std::string to_decimal_string(const Rational& q, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, to_double(q));
  return buf;
}

Rational pow(const Rational& q, unsigned e) {
  Rational r(1);
  Rational b = q;
  while (e > 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

}  // namespace einstein_barrier
