#pragma once

// Translation surfaces x^3 = f(x^1) + g(x^2) in the Matsumoto space.
//
// Minimality reduces to lambda f'' + mu g'' = 0 with lambda, mu polynomial in
// r = f'^2, s = g'^2 and b^2. The polynomial is not typed in by hand: it is
// interpolated from the exact rational jet bracket, which for a translation
// jet equals 2 (lambda f'' + mu g''). In p = r + s, q = r - s one has
// lambda = K(p) - L(p) q and mu = K(p) + L(p) q, and a nonplanar solution
// needs (K/L)' = +-1.

#include <array>
#include <optional>
#include <utility>

#include "fm/graph_pde.hpp"
#include "fm/polynomial.hpp"
#include "fm/rational.hpp"

namespace fm {

struct TranslationPoint {
  double fp = 0.0, fpp = 0.0;
  double gp = 0.0, gpp = 0.0;

  double r() const { return fp * fp; }
  double s() const { return gp * gp; }
  double p() const { return r() + s(); }
  double q() const { return r() - s(); }
};

template <typename T>
std::pair<JetMatrix<T>, ImmersionJet2T<T>> translation_jets(const T& fp, const T& fpp,
                                                            const T& gp, const T& gpp) {
  return graph_jets(GraphPointT<T>{fp, gp, fpp, T(0), gpp});
}

// lambda(r, s, b^2) = sum c[i][j][k] r^i s^j (b^2)^k.
class LambdaPolynomial {
 public:
  static constexpr int kDegR = 3;
  static constexpr int kDegS = 3;
  static constexpr int kDegB2 = 2;
  using Coeffs =
      std::array<std::array<std::array<Rational, kDegB2 + 1>, kDegS + 1>, kDegR + 1>;

  explicit LambdaPolynomial(Coeffs c);

  const Coeffs& coeffs() const { return c_; }
  Rational operator()(const Rational& r, const Rational& s, const Rational& b2) const;
  double operator()(double r, double s, double b2) const;

 private:
  Coeffs c_;
  std::array<std::array<std::array<double, kDegB2 + 1>, kDegS + 1>, kDegR + 1> d_{};
};

// Built once from the jet bracket by tensor-product interpolation on integer
// slopes and b in {0, 1/10, 1/5}, then checked exactly at off-grid points.
const LambdaPolynomial& lambda_polynomial();

struct LambdaMu {
  double lambda;
  double mu;
};

LambdaMu lambda_mu(double r, double s, double b);
std::pair<Rational, Rational> lambda_mu_exact(const Rational& r, const Rational& s,
                                              const Rational& b2);

double translation_residual(const TranslationPoint& tp, double b);

struct KLPolys {
  Rational b2;
  Poly K;  // degree 3
  Poly L;  // degree 2
};

// Throws DomainError unless 0 <= b2 < 1/4.
KLPolys kl_polys(const Rational& b2);

// (K' L - K L') / L^2 at p. Throws PoleError if L(p) = 0.
Rational kl_ratio_derivative(const Rational& b2, const Rational& p);

// A closed form for K/L that has been proposed for this family; kept only so
// the report can say whether it agrees with the interpolated K/L.
Rational kl_ratio_closed_form_candidate(const Rational& b2, const Rational& p);

struct CompatibilityReport {
  Rational b2;
  KLPolys kl;
  // e21 = K'' L^3 - K L^2 L'' - 2 K' L' L^2 + 2 K L L'^2
  // e22 = -K'' K^2 L + K^3 L'' - 2 K' K^2 L' + 2 K'^2 K L - 2 K L^3
  Poly e21;
  Poly e22;
  bool both_vanish;  // both zero polynomials: nonplanar translation solutions not excluded
  bool ratio_is_p_plus_2;  // K = (p + 2) L
  // (log lambda/mu)_pp - (log lambda/mu)_qq times (K^2 - L^2 q^2)^2 equals
  // -2 (q^3 e21 + q e22) at the sampled (p, q).
  bool reduction_consistent;
  bool closed_form_candidate_matches;
};

CompatibilityReport compatibility_check(const Rational& b2);

}  // namespace fm
