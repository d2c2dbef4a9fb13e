#include "fm/polynomial.hpp"

#include <algorithm>

#include "fm/error.hpp"

namespace fm {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

std::optional<std::pair<std::size_t, Rational>> Poly::lowest_term() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return std::make_pair(i, c_[i]);
  }
  return std::nullopt;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw PoleError("polynomial division by zero");
  Poly rem = *this;
  std::vector<Rational> quot(std::max(0, degree() - divisor.degree() + 1));
  const Rational& lead = divisor.c_.back();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    const std::size_t shift = static_cast<std::size_t>(rem.degree() - divisor.degree());
    const Rational factor = rem.c_.back() / lead;
    quot[shift] = factor;
    rem -= monomial(factor, shift) * divisor;
  }
  return {Poly(std::move(quot)), rem};
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const bool negative = c_[i] < 0;
    const Rational mag = negative ? Rational(-c_[i]) : c_[i];
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = mag == 1 && i > 0;
    if (!unit) out += fm::to_string(mag);
    if (i > 0) {
      if (!unit) out += " ";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Poly interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw DomainError("interpolation needs matching, nonempty node and value lists");
  }
  Poly result;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Poly basis = Poly::constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == i) continue;
      if (x[i] == x[j]) throw DomainError("interpolation nodes must be distinct");
      basis *= Poly(std::vector<Rational>{Rational(-x[j]), Rational(1)});
      denom *= x[i] - x[j];
    }
    result += basis * Rational(y[i] / denom);
  }
  return result;
}

}  // namespace fm
