#include "fm/jet.hpp"

#include <cmath>

namespace fm {
namespace {

// Partial derivatives of F(C, E) = 2C^3 / (2C^2 + E).
struct AreaPartials {
  double f_c, f_e, f_cc, f_ce, f_ee;
};

AreaPartials area_partials(double c, double e) {
  const double c2 = c * c;
  const double d = 2.0 * c2 + e;
  const double d2 = d * d;
  const double d3 = d2 * d;
  return {
      (4.0 * c2 * c2 + 6.0 * c2 * e) / d2,
      -2.0 * c2 * c / d2,
      (12.0 * c * e * e - 8.0 * c2 * c * e) / d3,
      (4.0 * c2 * c2 - 6.0 * c2 * e) / d3,
      4.0 * c2 * c / d3,
  };
}

}  // namespace

AreaJetScalars jet_scalars(const ImmersionJet1& z, double b) {
  const Sym2 a = gram(z);
  require_nondegenerate(a);
  const double c = std::sqrt(det(a));
  const double e = e_scalar(z, b);
  return {a, c, e, 2.0 * c * c * c / (2.0 * c * c + e)};
}

JetGradient area_integrand_grad(const ImmersionJet1& z, double b) {
  const AreaJetScalars s = jet_scalars(z, b);
  const AreaPartials p = area_partials(s.C, s.E);
  const JetMatrix<double> dx = det_gram_grad(z);
  const JetMatrix<double> de = e_grad(z, b);
  JetGradient g;
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      const double dc = dx[i][e] / (2.0 * s.C);
      g[i][e] = p.f_c * dc + p.f_e * de[i][e];
    }
  }
  return g;
}

JetHessian area_integrand_hess(const ImmersionJet1& z, double b) {
  const AreaJetScalars s = jet_scalars(z, b);
  const AreaPartials p = area_partials(s.C, s.E);
  const JetMatrix<double> dx = det_gram_grad(z);
  const JetMatrix<double> de = e_grad(z, b);
  const JetHessian d2x = det_gram_hess(z);
  const JetHessian d2e = e_hess(z, b);

  std::array<double, 6> dc{};
  std::array<double, 6> dev{};
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      dc[2 * i + e] = dx[i][e] / (2.0 * s.C);
      dev[2 * i + e] = de[i][e];
    }
  }
  JetHessian h{};
  for (int r = 0; r < 6; ++r) {
    for (int c = r; c < 6; ++c) {
      // d^2 C = (d^2 C^2 - 2 dC dC) / (2C)
      const double d2c = (d2x[r][c] - 2.0 * dc[r] * dc[c]) / (2.0 * s.C);
      const double v = p.f_c * d2c + p.f_e * d2e[r][c] + p.f_cc * dc[r] * dc[c] +
                       p.f_ce * (dc[r] * dev[c] + dev[r] * dc[c]) + p.f_ee * dev[r] * dev[c];
      h[r][c] = v;
      h[c][r] = v;
    }
  }
  return h;
}

double mean_curvature_residual(const ImmersionJet1& z, const ImmersionJet2& j2, double b,
                               std::optional<Vec3> v) {
  const Vec3 field = v.value_or(default_transversal(z));
  require_transversal(z, field);
  const JetHessian h = area_integrand_hess(z, b);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int e1 = 0; e1 < 2; ++e1) {
      for (int j = 0; j < 3; ++j) {
        for (int e2 = 0; e2 < 2; ++e2) {
          sum += h[2 * i + e1][2 * j + e2] * j2.second[j](e1, e2) * field[i];
        }
      }
    }
  }
  return sum;
}

}  // namespace fm
