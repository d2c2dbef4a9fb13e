#pragma once

// Test-side oracles. Nothing here calls the code under test except to build
// inputs; values are either closed forms worked out by hand/computer algebra
// or plain finite differences.

#include <cmath>
#include <random>

#include "fm/graph_pde.hpp"
#include "fm/jet.hpp"
#include "fm/rational.hpp"

namespace fm::testing {

inline double classical_minimal_operator(const GraphPoint& gp) {
  return (1 + gp.f2 * gp.f2) * gp.h11 - 2 * gp.f1 * gp.f2 * gp.h12 + (1 + gp.f1 * gp.f1) * gp.h22;
}

// Lambda of the translation equation from a computer-algebra expansion of
// the bracket: T (T - 2b^2)(1 + s) + 2 b^2 (T + 4 b^2) r with T = 2 + (2 + b^2) p.
inline Rational lambda_closed_form(const Rational& r, const Rational& s, const Rational& b2) {
  const Rational t = 2 + (2 + b2) * (r + s);
  return t * (t - 2 * b2) * (1 + s) + 2 * b2 * (t + 4 * b2) * r;
}

// Scherk's surface f = log(cos y / cos x) and its derivatives.
struct Scherk {
  static double f(double x, double y) { return std::log(std::cos(y) / std::cos(x)); }
  static GraphPoint point(double x, double y) {
    const double sx = 1.0 / std::cos(x), sy = 1.0 / std::cos(y);
    return {std::tan(x), -std::tan(y), sx * sx, 0.0, -sy * sy};
  }
};

inline ImmersionJet1 random_jet(std::mt19937_64& rng, double min_condition = 1e-3) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    ImmersionJet1 z;
    for (auto& row : z) {
      for (double& v : row) v = u(rng);
    }
    const Sym2 a = gram(z);
    const double tr = a.xx + a.yy;
    if (det(a) > min_condition * tr * tr) return z;
  }
}

inline ImmersionJet2 random_second_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ImmersionJet2 j2;
  for (auto& s : j2.second) s = Sym2{u(rng), u(rng), u(rng)};
  return j2;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  const double len = std::sqrt(dot(v, v));
  for (double& x : v) x /= len;
  return v;
}

// Random orthogonal matrix (rows orthonormal) by Gram-Schmidt.
inline Mat3 random_orthogonal(std::mt19937_64& rng) {
  Mat3 m;
  m[0] = random_unit(rng);
  Vec3 v = random_unit(rng);
  const double d = dot(v, m[0]);
  for (int i = 0; i < 3; ++i) v[i] -= d * m[0][i];
  const double len = std::sqrt(dot(v, v));
  for (double& x : v) x /= len;
  m[1] = v;
  m[2] = cross(m[0], m[1]);
  return m;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({1e-300, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

// Max deviation of the least-squares affine fit to x^2 over n equally spaced
// nodes on [0, 1] with n odd: residual u^2 - m, u = x - 1/2, m = mean(u^2).
inline double x_squared_fit_deviation(int n) {
  const double m = (n + 1.0) / (12.0 * (n - 1.0));
  return std::max(0.25 - m, m);
}

}  // namespace fm::testing
