#pragma once

// Dense univariate polynomials over exact rationals.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fm/rational.hpp"

namespace fm {

class Poly {
 public:
  Poly() = default;
  // Coefficients in increasing degree; trailing zeros are trimmed.
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  // Zero beyond the stored degree.
  Rational coeff(std::size_t i) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  Poly derivative() const;

  // Lowest-degree nonzero coefficient, if any.
  std::optional<std::pair<std::size_t, Rational>> lowest_term() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Euclidean division by a nonzero divisor: {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

  // e.g. "2/3 + p - 4 p^3" in variable `var`.
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// The unique polynomial of degree < x.size() through (x_i, y_i); nodes distinct.
Poly interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y);

}  // namespace fm
