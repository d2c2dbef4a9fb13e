#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fm/graph_pde.hpp"
#include "fm/jet.hpp"
#include "fm/jet_check.hpp"
#include "oracles.hpp"

using namespace fm;
using fm::testing::random_jet;
using fm::testing::random_second_jet;

namespace {

ImmersionJet1 graph_z(double a, double c) { return graph_jets(GraphPoint{a, c, 0, 0, 0}).first; }

double hessian_of_c_contraction(const ImmersionJet1& z, const ImmersionJet2& j2, const Vec3& v) {
  // At b = 0 the integrand is C, so its Hessian is the b = 0 Hessian.
  const JetHessian h = area_integrand_hess(z, 0.0);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < 3; ++j)
        for (int n = 0; n < 2; ++n) sum += h[2 * i + e][2 * j + n] * j2.second[j](e, n) * v[i];
  return sum;
}

}  // namespace

TEST(Gram, Examples) {
  const Sym2 id = gram(ImmersionJet1{{{1, 0}, {0, 1}, {0, 0}}});
  EXPECT_EQ(id.xx, 1);
  EXPECT_EQ(id.xy, 0);
  EXPECT_EQ(id.yy, 1);
  const Sym2 g = gram(graph_z(0.7, -1.3));
  EXPECT_DOUBLE_EQ(g.xx, 1 + 0.49);
  EXPECT_DOUBLE_EQ(g.xy, 0.7 * -1.3);
  EXPECT_DOUBLE_EQ(g.yy, 1 + 1.69);
  const Sym2 s = gram(ImmersionJet1{{{2, 0}, {0, 1}, {0, 0}}});
  EXPECT_EQ(s.xx, 4);
  EXPECT_EQ(s.yy, 1);
}

TEST(EScalar, GraphAndTiltedForms) {
  const double b = 0.35;
  const GraphPoint gp{0.8, -0.6, 0, 0, 0};
  EXPECT_NEAR(e_scalar(graph_z(gp.f1, gp.f2), b), b * b * (gp.W2() - 1), 1e-15);
  EXPECT_EQ(e_scalar(ImmersionJet1{{{1, 2}, {3, 4}, {0, 0}}}, b), 0.0);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const TiltedFrame frame(fm::testing::random_orthogonal(rng));
    const auto [z, j2] = tilted_jets(gp, frame);
    const Vec3& k = frame.k();
    const double w = k[2] - k[0] * gp.f1 - k[1] * gp.f2;
    EXPECT_NEAR(e_scalar(z, b), b * b * (gp.W2() - w * w), 1e-13);
  }
}

TEST(EScalar, MatchesInverseGramForm) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const ImmersionJet1 z = random_jet(rng);
    const Sym2 a = gram(z);
    const double d = det(a);
    // det(A) A^{eh} = adj(A)
    const double p = z[2][0], q = z[2][1];
    const double expect = 0.3 * 0.3 * (a.yy * p * p - 2 * a.xy * p * q + a.xx * q * q);
    const double via_inverse =
        0.09 * d * ((a.yy / d) * p * p - 2 * (a.xy / d) * p * q + (a.xx / d) * q * q);
    EXPECT_NEAR(e_scalar(z, 0.3), via_inverse, 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST(AreaIntegrand, Examples) {
  for (double b : {0.0, 0.2, 0.45}) EXPECT_DOUBLE_EQ(area_integrand(graph_z(0, 0), b), 1.0);
  EXPECT_NEAR(area_integrand(graph_z(1, 0), 0.3), 4 * std::sqrt(2.0) / 4.09, 1e-14);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const ImmersionJet1 z = random_jet(rng);
    EXPECT_NEAR(area_integrand(z, 0.0), std::sqrt(det(gram(z))), 1e-15);
  }
  EXPECT_THROW(area_integrand(ImmersionJet1{{{1, 2}, {1, 2}, {1, 2}}}, 0.2), DomainError);
  EXPECT_THROW(area_integrand_grad(ImmersionJet1{{{1, 0}, {0, 0}, {0, 0}}}, 0.2), DomainError);
  EXPECT_THROW(area_integrand_hess(ImmersionJet1{{{0, 0}, {0, 0}, {0, 0}}}, 0.2), DomainError);
}

TEST(AreaIntegrand, ScalarsAndAccessor) {
  const AreaJetScalars s = jet_scalars(graph_z(1, 0), 0.3);
  EXPECT_NEAR(s.C, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.E, 0.09, 1e-15);
  EXPECT_NEAR(s.B(), 0.045, 1e-15);
  EXPECT_NEAR(s.F, 2 / (2 + s.B()) * s.C, 1e-15);
}

TEST(AreaIntegrandDerivatives, MatchDualAndDifferences) {
  std::mt19937_64 rng(2024);
  for (double b : {0.0, 0.2, 0.4}) {
    for (int t = 0; t < 200; ++t) {
      const DerivativeErrors e = derivative_errors(random_jet(rng), b);
      EXPECT_LE(e.grad_vs_dual, 1e-9);
      EXPECT_LE(e.hess_vs_dual, 1e-9);
      EXPECT_LE(e.grad_vs_fd, 1e-7);
      EXPECT_LE(e.hess_vs_fd, 1e-5);
    }
  }
}

TEST(AreaIntegrandDerivatives, EuclideanGradientIsThatOfC) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const ImmersionJet1 z = random_jet(rng);
    const JetGradient g = area_integrand_grad(z, 0.0);
    const double c = std::sqrt(det(gram(z)));
    const JetMatrix<double> dx = det_gram_grad(z);
    for (int i = 0; i < 3; ++i)
      for (int e = 0; e < 2; ++e) EXPECT_NEAR(g[i][e], dx[i][e] / (2 * c), 1e-13);
  }
}

TEST(AreaIntegrandDerivatives, FlatGraphGradient) {
  // At the identity Gram matrix dC/dz = z, so only the two tangent entries survive.
  const JetGradient g = area_integrand_grad(graph_z(0, 0), 0.3);
  const JetGradient fd = area_integrand_grad_fd(graph_z(0, 0), 0.3);
  const double expect[3][2] = {{1, 0}, {0, 1}, {0, 0}};
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e) {
      EXPECT_NEAR(g[i][e], expect[i][e], 1e-15);
      EXPECT_NEAR(fd[i][e], expect[i][e], 1e-9);
    }
}

// Golden matrix from symbolic differentiation at the flat graph jet, b = 0.4.
TEST(AreaIntegrandDerivatives, FlatGraphHessianGolden) {
  const JetHessian h = area_integrand_hess(graph_z(0, 0), 0.4);
  JetHessian expect{};
  expect[0][3] = expect[3][0] = 1;
  expect[1][2] = expect[2][1] = -1;
  expect[4][4] = expect[5][5] = 21.0 / 25;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) EXPECT_NEAR(h[r][c], expect[r][c], 1e-14) << r << "," << c;
}

TEST(AreaIntegrandDerivatives, HessianSymmetric) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const JetHessian h = area_integrand_hess(random_jet(rng), 0.3);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) EXPECT_EQ(h[r][c], h[c][r]);
  }
}

TEST(AreaIntegrandInvariance, ScalingRotationReparametrization) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 300; ++t) {
    const double b = 0.45 * (u(rng) + 1) / 2;
    const ImmersionJet1 z = random_jet(rng);
    const double f = area_integrand(z, b);

    const double lam = 0.1 + 3 * (u(rng) + 1);
    ImmersionJet1 zs = z;
    for (auto& row : zs)
      for (double& v : row) v *= lam;
    EXPECT_LE(fm::testing::rel_diff(area_integrand(zs, b), lam * lam * f), 1e-12);

    const double th = 3 * u(rng);
    ImmersionJet1 zr = z;
    for (int e = 0; e < 2; ++e) {
      zr[0][e] = std::cos(th) * z[0][e] - std::sin(th) * z[1][e];
      zr[1][e] = std::sin(th) * z[0][e] + std::cos(th) * z[1][e];
    }
    EXPECT_LE(fm::testing::rel_diff(area_integrand(zr, b), f), 1e-12);

    double s[2][2];
    do {
      for (auto& row : s)
        for (double& v : row) v = u(rng);
    } while (s[0][0] * s[1][1] - s[0][1] * s[1][0] < 0.1);
    const double det_s = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    ImmersionJet1 zp;
    for (int i = 0; i < 3; ++i)
      for (int e = 0; e < 2; ++e) zp[i][e] = z[i][0] * s[0][e] + z[i][1] * s[1][e];
    EXPECT_LE(fm::testing::rel_diff(area_integrand(zp, b), det_s * f), 1e-11);
  }
}

TEST(MeanCurvatureResidual, AffineImmersionVanishes) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const ImmersionJet1 z = random_jet(rng);
    EXPECT_EQ(mean_curvature_residual(z, ImmersionJet2{}, 0.3), 0.0);
    EXPECT_EQ(mce0_bracket(z, ImmersionJet2{}, 0.3), 0.0);
  }
}

TEST(MeanCurvatureResidual, ScherkIsMinimalAtBZero) {
  const auto [z, j2] = graph_jets(fm::testing::Scherk::point(0.3, 0.4));
  EXPECT_LE(std::abs(mean_curvature_residual(z, j2, 0.0)), 1e-9);
  EXPECT_LE(std::abs(mce0_bracket(z, j2, 0.0)), 1e-9);
  EXPECT_GT(std::abs(mean_curvature_residual(z, j2, 0.3)), 1e-3);
}

// Golden 96/25 from symbolic differentiation.
TEST(MeanCurvatureResidual, ParaboloidAtOrigin) {
  const auto [z, j2] = graph_jets(GraphPoint{0, 0, 2, 0, 2});
  const double r = mean_curvature_residual(z, j2, 0.2);
  EXPECT_GT(r, 0.0);
  EXPECT_NEAR(r, 96.0 / 25, 1e-13);
}

TEST(MeanCurvatureResidual, LinearInSecondJetAndField) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 100; ++t) {
    const ImmersionJet1 z = random_jet(rng);
    const ImmersionJet2 p = random_second_jet(rng), q = random_second_jet(rng);
    const double alpha = u(rng), beta = u(rng);
    ImmersionJet2 mix;
    for (int i = 0; i < 3; ++i) {
      mix.second[i] = Sym2{alpha * p.second[i].xx + beta * q.second[i].xx,
                           alpha * p.second[i].xy + beta * q.second[i].xy,
                           alpha * p.second[i].yy + beta * q.second[i].yy};
    }
    const Vec3 n = default_transversal(z);
    const double rp = mean_curvature_residual(z, p, 0.3, n);
    const double rq = mean_curvature_residual(z, q, 0.3, n);
    const double scale = std::abs(alpha * rp) + std::abs(beta * rq) + 1e-300;
    EXPECT_LE(std::abs(mean_curvature_residual(z, mix, 0.3, n) - (alpha * rp + beta * rq)),
              1e-12 * scale * 10);

    const Vec3 v1{n[0] + u(rng), n[1], n[2]};
    const Vec3 v2{n[0], n[1] + u(rng), n[2] * 2};
    const Vec3 vs{v1[0] + v2[0], v1[1] + v2[1], v1[2] + v2[2]};
    const double r1 = mean_curvature_residual(z, p, 0.3, v1);
    const double r2 = mean_curvature_residual(z, p, 0.3, v2);
    EXPECT_LE(std::abs(mean_curvature_residual(z, p, 0.3, vs) - (r1 + r2)),
              1e-11 * (std::abs(r1) + std::abs(r2) + 1e-300));
  }
}

TEST(MeanCurvatureResidual, TangentFieldRejected) {
  const ImmersionJet1 z{{{1, 0}, {0, 1}, {0.5, 0.2}}};
  const Vec3 tangent{1, 1, 0.7};
  EXPECT_THROW(mean_curvature_residual(z, ImmersionJet2{}, 0.2, tangent),
               DegenerateTransversalError);
  EXPECT_THROW(mce0_bracket(z, ImmersionJet2{}, 0.2, tangent), DegenerateTransversalError);
}

TEST(Mce0Bracket, PositiveMultipleOfResidual) {
  std::mt19937_64 rng(23);
  for (double b : {0.0, 0.15, 0.3, 0.45}) {
    for (int t = 0; t < 200; ++t) {
      const ImmersionJet1 z = random_jet(rng);
      const ImmersionJet2 j2 = random_second_jet(rng);
      const double res = mean_curvature_residual(z, j2, b);
      const double br = mce0_bracket(z, j2, b);
      const AreaJetScalars s = jet_scalars(z, b);
      const double d = 2 * s.C * s.C + s.E;
      // bracket = (2C^2 + E)^3 / C * residual
      EXPECT_GT(br / res, 0.0);
      EXPECT_NEAR(br / res, d * d * d / s.C, 1e-8 * d * d * d / s.C);
    }
  }
}

TEST(Mce0Bracket, EuclideanNormalization) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 50; ++t) {
    const ImmersionJet1 z = random_jet(rng);
    const ImmersionJet2 j2 = random_second_jet(rng);
    const Vec3 n = default_transversal(z);
    const double c = std::sqrt(det(gram(z)));
    // E = 0: (2C^2)^3 / C = 8 C^5
    const double expect = 8 * std::pow(c, 5) * hessian_of_c_contraction(z, j2, n);
    EXPECT_NEAR(mce0_bracket(z, j2, 0.0), expect, 1e-10 * (1 + std::abs(expect)));
  }
}

TEST(Mce0Bracket, ExactRationalEvaluation) {
  using Q = Rational;
  const auto [z, j2] = graph_jets(GraphPointT<Q>{Q(1, 2), Q(-2, 3), Q(3), Q(1, 5), Q(-1)});
  const Q br = mce0_bracket(z, j2, Q(3, 10));
  const double approx = mce0_bracket(graph_jets(GraphPoint{0.5, -2.0 / 3, 3, 0.2, -1}).first,
                                     graph_jets(GraphPoint{0.5, -2.0 / 3, 3, 0.2, -1}).second, 0.3);
  EXPECT_NEAR(br.get_d(), approx, 1e-12 * std::abs(approx));
}
