#pragma once

// Minimal-graph equations in the Matsumoto space (R^3, F_b).
//
// For a graph x^3 = f(x^1, x^2) over a plane whose frame m sends the
// vertical direction to k (last row of m), with W^2 = 1 + |grad f|^2,
// w = k3 - k1 f1 - k2 f2, S = (2 + b^2) W^2 - b^2 w^2 and
// g = (k1, k2) + (w / W^2) grad f, minimality is
//
//   sum_eh [ S (S - 2 b^2 w^2) (delta_eh - f_e f_h / W^2)
//          + 2 b^2 (S + 4 b^2 w^2) W^2 g_e g_h ] f_eh = 0.
//
// This bracket is the jet residual times the positive factor S^3 / (2 W^3).
// For the horizontal frame (k = e3) S reduces to T = 2 W^2 + b^2 (W^2 - 1).

#include <array>
#include <utility>

#include "fm/jet.hpp"
#include "fm/linalg.hpp"

namespace fm {

template <typename T>
struct GraphPointT {
  T f1{}, f2{};
  T h11{}, h12{}, h22{};

  T W2() const { return T(1) + f1 * f1 + f2 * f2; }
};
using GraphPoint = GraphPointT<double>;

class TiltedFrame {
 public:
  // Throws DomainError unless m m^T = I to 1e-12.
  explicit TiltedFrame(const Mat3& m);

  static TiltedFrame identity();
  // Some orthogonal frame whose last row is the unit vector k.
  static TiltedFrame with_last_row(const Vec3& k);

  const Mat3& m() const { return m_; }
  const Vec3& k() const { return k_; }

 private:
  Mat3 m_;
  Vec3 k_;
};

struct PdeCoefficients {
  double a11, a12, a22;
  double W2;
  double w;
  double Sb;  // 2C^2 + E on the tilted graph
  double Rb;  // 2b^2 (S + 4b^2 w^2) / (S (S - 2b^2 w^2))

  double quadratic_form(const Vec2& xi) const {
    return a11 * xi[0] * xi[0] + 2.0 * a12 * xi[0] * xi[1] + a22 * xi[1] * xi[1];
  }
};

template <typename T>
T tilted_residual_for_vertical(const GraphPointT<T>& gp, const Vec3& k, const T& b) {
  const T b2 = b * b;
  const T w2cap = gp.W2();
  const T w = T(k[2]) - T(k[0]) * gp.f1 - T(k[1]) * gp.f2;
  const T s = (T(2) + b2) * w2cap - b2 * w * w;
  const T g1 = T(k[0]) + w * gp.f1 / w2cap;
  const T g2 = T(k[1]) + w * gp.f2 / w2cap;
  const T h_form = gp.h11 + gp.h22 -
                   (gp.f1 * gp.f1 * gp.h11 + T(2) * gp.f1 * gp.f2 * gp.h12 +
                    gp.f2 * gp.f2 * gp.h22) /
                       w2cap;
  const T g_form = g1 * g1 * gp.h11 + T(2) * g1 * g2 * gp.h12 + g2 * g2 * gp.h22;
  return s * (s - T(2) * b2 * w * w) * h_form +
         T(2) * b2 * (s + T(4) * b2 * w * w) * w2cap * g_form;
}

// Minimal-graph operator over the horizontal plane; zero iff minimal.
template <typename T>
T graph_residual(const GraphPointT<T>& gp, const T& b) {
  return tilted_residual_for_vertical(gp, Vec3{0.0, 0.0, 1.0}, b);
}

double tilted_graph_residual(const GraphPoint& gp, const TiltedFrame& frame, double b);

// Coefficients after division by S (S - 2 b^2 w^2) > 0. Throws unless 0 <= b < 1/2.
PdeCoefficients ellipticity_coefficients(const GraphPoint& gp, const TiltedFrame& frame,
                                         double b);

struct BoundSamplerConfig {
  int angle_nodes = 256;
  int radius_nodes = 512;
  double t_max = 1e3;
  double t_min = 1e-3;  // smallest nonzero |t|; t = 0 is always sampled
};

struct BoundEstimate {
  double value;      // sample maximum of the mean-curvature-type ratio
  double at_radius;  // |t| of the maximizer
  long samples;
};

// Sample supremum over t in R^2 and xi in S^1 of
//   (a(t)[xi] - h(t)[xi]) / h(t)[xi],  h_eh = delta_eh - t_e t_h / W^2,
// i.e. R_b [W^2 |(k1,k2)| cos gamma + w |t| cos theta]^2 / (1 + |t|^2 sin^2 theta).
// A finite lower estimate of the constant C in h <= a <= (1 + C) h.
BoundEstimate mean_curvature_type_bound(const TiltedFrame& frame, double b,
                                        const BoundSamplerConfig& config = {});

// The same ratio at a single (t, xi).
double mean_curvature_type_ratio(const TiltedFrame& frame, double b, const Vec2& t,
                                 const Vec2& xi);

// Jets of x -> (x1, x2, f(x)) at a point.
template <typename T>
std::pair<JetMatrix<T>, ImmersionJet2T<T>> graph_jets(const GraphPointT<T>& gp) {
  JetMatrix<T> z{};
  z[0][0] = T(1);
  z[1][1] = T(1);
  z[2][0] = gp.f1;
  z[2][1] = gp.f2;
  ImmersionJet2T<T> j2{};
  j2.second[2] = Sym2T<T>{gp.h11, gp.h12, gp.h22};
  return {z, j2};
}

// Jets of x -> m (x1, x2, f(x))^T, i.e. z^i_e = m_ie + f_e m_i3.
std::pair<ImmersionJet1, ImmersionJet2> tilted_jets(const GraphPoint& gp,
                                                    const TiltedFrame& frame);

}  // namespace fm
