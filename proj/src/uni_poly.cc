#include "einstein_barrier/uni_poly.h"

#include <sstream>
#include <stdexcept>

namespace einstein_barrier {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::x() { return monomial(1, 1); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

Rational UniPoly::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double UniPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::compose_affine(const Rational& a, const Rational& b) const {
  UniPoly inner({b, a});
  UniPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return {};
  Integer lcm_den(1);
  for (const auto& c : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(coeffs_.size());
  Integer content(0);
  for (const auto& c : coeffs_) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
  }
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (const auto& v : ints) out.emplace_back(Integer(v / content));
  return UniPoly(std::move(out));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> r(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

UniPoly operator-(UniPoly a) {
  for (auto& v : a.coeffs_) v = -v;
  return a;
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly r = constant(1);
  UniPoly b = *this;
  while (e > 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1) && i > 0;
    if (!unit) {
      os << einstein_barrier::to_string(mag);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Rational> rem = a.coefficients();
  std::vector<Rational> quo(static_cast<size_t>(a.degree() - b.degree()) + 1, Rational(0));
  const Rational lead = b.leading();
  const auto& bc = b.coefficients();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    Rational f = rem[static_cast<size_t>(i + b.degree())] / lead;
    quo[static_cast<size_t>(i)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[static_cast<size_t>(i + j)] -= f * bc[static_cast<size_t>(j)];
  }
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.primitive();
  UniPoly y = b.primitive();
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly square_free_part(const UniPoly& p) {
  if (p.degree() < 1) return p.primitive();
  UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).first.primitive();
}

Rational RationalFunction::operator()(const Rational& x) const {
  Rational d = den(x);
  if (d == 0) throw std::domain_error("rational function pole at " + to_string(x));
  return num(x) / d;
}

RationalFunction RationalFunction::derivative() const {
  return {num.derivative() * den - num * den.derivative(), den * den};
}

}  // namespace einstein_barrier
