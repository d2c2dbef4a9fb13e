#pragma once

// First and second jets of an immersion M^2 -> (R^3, F_b) with F_b the
// Matsumoto norm. The Busemann-Hausdorff area integrand is
//
//   F(z) = 2 C^3 / (2 C^2 + E),  C = sqrt(det A),  A = z^T z,
//   E = b^2 [A22 (z^3_1)^2 - 2 A12 z^3_1 z^3_2 + A11 (z^3_2)^2],
//
// and the surface is minimal where the Hessian of F contracted with the
// second jet and a transversal field vanishes.
//
// Index conventions: z[i][e] = d phi^i / d x^e (i ambient 0..2, e surface 0..1);
// flattened index of (i, e) is 2 i + e.

#include <array>
#include <cmath>
#include <optional>

#include "fm/dual.hpp"
#include "fm/error.hpp"
#include "fm/linalg.hpp"
#include "fm/rational.hpp"

namespace fm {

template <typename T>
using JetMatrix = std::array<std::array<T, 2>, 3>;
template <typename T>
using JetHessianT = std::array<std::array<T, 6>, 6>;

using ImmersionJet1 = JetMatrix<double>;
using JetGradient = JetMatrix<double>;
using JetHessian = JetHessianT<double>;

template <typename T>
struct Sym2T {
  T xx{};
  T xy{};
  T yy{};

  const T& operator()(int a, int b) const { return a == b ? (a == 0 ? xx : yy) : xy; }
};
using Sym2 = Sym2T<double>;

// Second derivatives d^2 phi^i / dx^e dx^h; symmetric by storage.
template <typename T>
struct ImmersionJet2T {
  std::array<Sym2T<T>, 3> second{};
};
using ImmersionJet2 = ImmersionJet2T<double>;

struct AreaJetScalars {
  Sym2 A;
  double C;
  double E;
  double F;
  double B() const { return E / (C * C); }
};

template <typename T>
Sym2T<T> gram(const JetMatrix<T>& z) {
  Sym2T<T> a;
  a.xx = z[0][0] * z[0][0] + z[1][0] * z[1][0] + z[2][0] * z[2][0];
  a.xy = z[0][0] * z[0][1] + z[1][0] * z[1][1] + z[2][0] * z[2][1];
  a.yy = z[0][1] * z[0][1] + z[1][1] * z[1][1] + z[2][1] * z[2][1];
  return a;
}

template <typename T>
T det(const Sym2T<T>& a) {
  return a.xx * a.yy - a.xy * a.xy;
}

// Throws DomainError when det A <= 1e-14 (trace A)^2.
template <typename T>
void require_nondegenerate(const Sym2T<T>& a) {
  const double d = value_of(det(a));
  const double tr = value_of(a.xx) + value_of(a.yy);
  if (!(d > 1e-14 * tr * tr)) {
    throw DomainError("degenerate immersion jet: det(A) is not positive");
  }
}

// Anisotropy scalar from the barred-index sum, b^2 det(A) A^{eh} z^3_e z^3_h.
template <typename T>
T e_scalar(const JetMatrix<T>& z, const T& b) {
  const Sym2T<T> a = gram(z);
  const T& p = z[2][0];
  const T& q = z[2][1];
  return b * b * (a.yy * p * p - T(2) * a.xy * p * q + a.xx * q * q);
}

template <typename T>
T area_integrand(const JetMatrix<T>& z, const T& b) {
  using std::sqrt;
  const Sym2T<T> a = gram(z);
  require_nondegenerate(a);
  const T x = det(a);
  const T c = sqrt(x);
  return T(2) * x * c / (T(2) * x + e_scalar(z, b));
}

AreaJetScalars jet_scalars(const ImmersionJet1& z, double b);

// Closed-form first and second derivatives of the building blocks
// X = C^2 = det A and E = b^2 (X - N^2), N = (z_1 x z_2)^3.
template <typename T>
JetMatrix<T> det_gram_grad(const JetMatrix<T>& z) {
  const Sym2T<T> a = gram(z);
  JetMatrix<T> g;
  for (int i = 0; i < 3; ++i) {
    g[i][0] = T(2) * (a.yy * z[i][0] - a.xy * z[i][1]);
    g[i][1] = T(2) * (a.xx * z[i][1] - a.xy * z[i][0]);
  }
  return g;
}

template <typename T>
JetHessianT<T> det_gram_hess(const JetMatrix<T>& z) {
  const Sym2T<T> a = gram(z);
  // dA_k / dz^i_e for k = xx, yy, xy.
  auto d_axx = [&](int i, int e) -> T { return e == 0 ? T(T(2) * z[i][0]) : T(0); };
  auto d_ayy = [&](int i, int e) -> T { return e == 1 ? T(T(2) * z[i][1]) : T(0); };
  auto d_axy = [&](int i, int e) -> T { return e == 0 ? z[i][1] : z[i][0]; };
  JetHessianT<T> h;
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      for (int j = 0; j < 3; ++j) {
        for (int n = 0; n < 2; ++n) {
          T v = d_ayy(j, n) * d_axx(i, e) + d_axx(j, n) * d_ayy(i, e) -
                T(2) * d_axy(j, n) * d_axy(i, e);
          if (i == j) {
            // d^2 A_ab / dz^i_e dz^i_n = delta_ae delta_bn + delta_be delta_an.
            const T d2xx = (e == 0 && n == 0) ? T(2) : T(0);
            const T d2yy = (e == 1 && n == 1) ? T(2) : T(0);
            const T d2xy = (e != n) ? T(1) : T(0);
            v += a.yy * d2xx + a.xx * d2yy - T(2) * a.xy * d2xy;
          }
          h[2 * i + e][2 * j + n] = v;
        }
      }
    }
  }
  return h;
}

template <typename T>
T normal_z(const JetMatrix<T>& z) {
  return z[0][0] * z[1][1] - z[1][0] * z[0][1];
}

template <typename T>
JetMatrix<T> e_grad(const JetMatrix<T>& z, const T& b) {
  JetMatrix<T> g = det_gram_grad(z);
  const T n = normal_z(z);
  const T b2 = b * b;
  JetMatrix<T> dn{};
  dn[0][0] = z[1][1];
  dn[1][1] = z[0][0];
  dn[1][0] = -z[0][1];
  dn[0][1] = -z[1][0];
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      const T updated = b2 * (g[i][e] - T(2) * n * dn[i][e]);
      g[i][e] = updated;
    }
  }
  return g;
}

template <typename T>
JetHessianT<T> e_hess(const JetMatrix<T>& z, const T& b) {
  JetHessianT<T> h = det_gram_hess(z);
  const T n = normal_z(z);
  const T b2 = b * b;
  std::array<T, 6> dn{};
  dn[0] = z[1][1];   // (0,0)
  dn[3] = z[0][0];   // (1,1)
  dn[2] = -z[0][1];  // (1,0)
  dn[1] = -z[1][0];  // (0,1)
  JetHessianT<T> d2n{};
  d2n[0][3] = d2n[3][0] = T(1);
  d2n[2][1] = d2n[1][2] = T(-1);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      const T updated = b2 * (h[r][c] - T(2) * dn[r] * dn[c] - T(2) * n * d2n[r][c]);
      h[r][c] = updated;
    }
  }
  return h;
}

// dF/dz from the closed-form chain rule through C and E.
JetGradient area_integrand_grad(const ImmersionJet1& z, double b);

// d^2F/dz dz assembled from dC, dE, d^2C^2, d^2E; symmetric by construction.
JetHessian area_integrand_hess(const ImmersionJet1& z, double b);

// Euclidean cross product of the two jet columns.
template <typename T>
Vec3T<T> default_transversal(const JetMatrix<T>& z) {
  return cross(Vec3T<T>{z[0][0], z[1][0], z[2][0]}, Vec3T<T>{z[0][1], z[1][1], z[2][1]});
}

// Throws DegenerateTransversalError when v is (numerically) tangent to the jet.
template <typename T>
void require_transversal(const JetMatrix<T>& z, const Vec3T<T>& v) {
  const Vec3T<T> n = default_transversal(z);
  const double triple = value_of(dot(n, v));
  const double scale = std::sqrt(value_of(dot(n, n)) * value_of(dot(v, v)));
  if (!(std::abs(triple) > 1e-12 * scale)) {
    throw DegenerateTransversalError("transversal field lies in the tangent plane of the jet");
  }
}

// sum_{i,e,j,h} d^2F/dz^i_e dz^j_h * d^2 phi^j/dx^e dx^h * v^i.
// Vanishes iff the immersion is minimal at this jet.
double mean_curvature_residual(const ImmersionJet1& z, const ImmersionJet2& j2, double b,
                               std::optional<Vec3> v = std::nullopt);

// Residual with the positive factor (2C^2 + E)^3 / C applied, expanded in
// X = C^2 so every term is rational in z:
//   (2X+3E)(2X+E) <d2X> - 2X(2X+E) <d2E> - (4X^2+12XE-3E^2)/(2X) <dX,dX>
//   + 4X <dE,dE> + (2X-3E)(<dX,dE> + <dE,dX>)
// where <d2Y> = d2Y[v, phi''] and <dY,dZ> = sum_e (dY_e . v)(dZ . phi''_e).
template <typename T>
T mce0_bracket(const JetMatrix<T>& z, const ImmersionJet2T<T>& j2, const T& b,
               const Vec3T<T>& v) {
  const Sym2T<T> a = gram(z);
  require_nondegenerate(a);
  require_transversal(z, v);

  const T x = det(a);
  const T e = e_scalar(z, b);
  const T d = T(2) * x + e;
  const JetMatrix<T> dx = det_gram_grad(z);
  const JetMatrix<T> de = e_grad(z, b);
  const JetHessianT<T> d2x = det_gram_hess(z);
  const JetHessianT<T> d2e = e_hess(z, b);

  T c_x2(0), c_e2(0);
  for (int i = 0; i < 3; ++i) {
    for (int e1 = 0; e1 < 2; ++e1) {
      for (int j = 0; j < 3; ++j) {
        for (int e2 = 0; e2 < 2; ++e2) {
          const T w = j2.second[j](e1, e2) * v[i];
          c_x2 += d2x[2 * i + e1][2 * j + e2] * w;
          c_e2 += d2e[2 * i + e1][2 * j + e2] * w;
        }
      }
    }
  }
  T xx(0), ee(0), xe(0);
  for (int e1 = 0; e1 < 2; ++e1) {
    T xv(0), ev(0), xp(0), ep(0);
    for (int i = 0; i < 3; ++i) {
      xv += dx[i][e1] * v[i];
      ev += de[i][e1] * v[i];
    }
    for (int j = 0; j < 3; ++j) {
      for (int e2 = 0; e2 < 2; ++e2) {
        xp += dx[j][e2] * j2.second[j](e1, e2);
        ep += de[j][e2] * j2.second[j](e1, e2);
      }
    }
    xx += xv * xp;
    ee += ev * ep;
    xe += xv * ep + ev * xp;
  }
  return (T(2) * x + T(3) * e) * d * c_x2 - T(2) * x * d * c_e2 -
         (T(4) * x * x + T(12) * x * e - T(3) * e * e) / (T(2) * x) * xx + T(4) * x * ee +
         (T(2) * x - T(3) * e) * xe;
}

template <typename T>
T mce0_bracket(const JetMatrix<T>& z, const ImmersionJet2T<T>& j2, const T& b) {
  return mce0_bracket(z, j2, b, default_transversal(z));
}

}  // namespace fm
