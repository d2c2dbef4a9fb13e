#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fm/graph_pde.hpp"
#include "oracles.hpp"

using namespace fm;
using fm::testing::classical_minimal_operator;

namespace {

GraphPoint random_point(std::mt19937_64& rng, double slope = 3.0) {
  std::uniform_real_distribution<double> s(-slope, slope), h(-1, 1);
  return {s(rng), s(rng), h(rng), h(rng), h(rng)};
}

double h_form(const GraphPoint& gp, const Vec2& xi) {
  const double tx = gp.f1 * xi[0] + gp.f2 * xi[1];
  return xi[0] * xi[0] + xi[1] * xi[1] - tx * tx / gp.W2();
}

}  // namespace

TEST(GraphResidual, Examples) {
  for (double b : {0.0, 0.2, 0.49}) EXPECT_EQ(graph_residual(GraphPoint{0.3, -2, 0, 0, 0}, b), 0.0);
  EXPECT_DOUBLE_EQ(graph_residual(GraphPoint{1, 0, 1, 0, 0}, 0.0), 8.0);
  EXPECT_LE(std::abs(graph_residual(fm::testing::Scherk::point(0.3, 0.4), 0.0)), 1e-9);
}

TEST(GraphResidual, EuclideanReduction) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 500; ++t) {
    const GraphPoint gp = random_point(rng);
    const double expect = 4 * gp.W2() * classical_minimal_operator(gp);
    EXPECT_LE(std::abs(graph_residual(gp, 0.0) - expect), 1e-12 * (std::abs(expect) + gp.W2() * gp.W2()));
  }
}

// Exact rational identity: for graph jets the jet bracket equals
// 2 W^2 times the graph operator. This fixes every coefficient of the
// operator, including the value of T = 2W^2 + b^2 (W^2 - 1).
TEST(GraphResidual, ExactlyProportionalToJetBracket) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  auto q = [&] {
    Rational v(num(rng), den(rng));
    v.canonicalize();
    return v;
  };
  for (int t = 0; t < 60; ++t) {
    const GraphPointT<Rational> gp{q(), q(), q(), q(), q()};
    Rational b(std::abs(num(rng)) % 5, 10);
    b.canonicalize();
    const auto [z, j2] = graph_jets(gp);
    const Rational lhs = mce0_bracket(z, j2, b);
    const Rational rhs = 2 * gp.W2() * graph_residual(gp, b);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(TiltedResidual, IdentityFrameMatchesGraph) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const GraphPoint gp = random_point(rng);
    for (double b : {0.0, 0.25, 0.45}) {
      EXPECT_EQ(tilted_graph_residual(gp, TiltedFrame::identity(), b), graph_residual(gp, b));
    }
  }
}

TEST(TiltedResidual, PlanesVanish) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    GraphPoint gp = random_point(rng);
    gp.h11 = gp.h12 = gp.h22 = 0;
    EXPECT_EQ(tilted_graph_residual(gp, TiltedFrame(fm::testing::random_orthogonal(rng)), 0.3), 0.0);
  }
}

TEST(TiltedResidual, PositiveMultipleOfJetBracket) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ub(0.0, 0.5);
  for (int t = 0; t < 500; ++t) {
    const GraphPoint gp = random_point(rng);
    const TiltedFrame frame(fm::testing::random_orthogonal(rng));
    const double b = ub(rng);
    const auto [z, j2] = tilted_jets(gp, frame);
    const double ratio = mce0_bracket(z, j2, b) / tilted_graph_residual(gp, frame, b);
    EXPECT_GT(ratio, 0.0);
    EXPECT_TRUE(std::isfinite(ratio));
    // bracket = 2 W^2 * operator, the same factor as for horizontal graphs
    EXPECT_NEAR(ratio, 2 * gp.W2(), 1e-7 * gp.W2());
  }
}

TEST(TiltedFrame, Validation) {
  EXPECT_THROW(TiltedFrame(Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1.0 + 1e-9}}), DomainError);
  EXPECT_THROW(TiltedFrame::with_last_row(Vec3{0, 0, 2}), DomainError);
  const TiltedFrame vertical_plane = TiltedFrame::with_last_row(Vec3{1, 0, 0});
  EXPECT_EQ(vertical_plane.k()[2], 0.0);
  const GraphPoint gp{0.2, 0.3, 1, 0, 1};
  EXPECT_TRUE(std::isfinite(tilted_graph_residual(gp, vertical_plane, 0.4)));
  EXPECT_TRUE(std::isfinite(ellipticity_coefficients(gp, vertical_plane, 0.4).a11));
}

TEST(Ellipticity, EuclideanCoefficientsAreClassical) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    const GraphPoint gp = random_point(rng);
    const PdeCoefficients c =
        ellipticity_coefficients(gp, TiltedFrame(fm::testing::random_orthogonal(rng)), 0.0);
    EXPECT_EQ(c.Rb, 0.0);
    EXPECT_DOUBLE_EQ(c.a11, 1 - gp.f1 * gp.f1 / gp.W2());
    EXPECT_DOUBLE_EQ(c.a12, -gp.f1 * gp.f2 / gp.W2());
    EXPECT_DOUBLE_EQ(c.a22, 1 - gp.f2 * gp.f2 / gp.W2());
  }
}

TEST(Ellipticity, FlatHorizontalIsIdentity) {
  for (double b : {0.0, 0.2, 0.45}) {
    const PdeCoefficients c = ellipticity_coefficients(GraphPoint{}, TiltedFrame::identity(), b);
    EXPECT_EQ(c.a11, 1.0);
    EXPECT_EQ(c.a12, 0.0);
    EXPECT_EQ(c.a22, 1.0);
    EXPECT_EQ(c.W2, 1.0);
    EXPECT_EQ(c.w, 1.0);
  }
}

TEST(Ellipticity, CoefficientsReproduceResidual) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 200; ++t) {
    const GraphPoint gp = random_point(rng);
    const TiltedFrame frame(fm::testing::random_orthogonal(rng));
    const double b = 0.37;
    const PdeCoefficients c = ellipticity_coefficients(gp, frame, b);
    const double divisor = c.Sb * (c.Sb - 2 * b * b * c.w * c.w);
    const double lhs = divisor * (c.a11 * gp.h11 + 2 * c.a12 * gp.h12 + c.a22 * gp.h22);
    const double rhs = tilted_graph_residual(gp, frame, b);
    EXPECT_NEAR(lhs, rhs, 1e-10 * (std::abs(rhs) + divisor));
  }
}

TEST(Ellipticity, LowerBoundAndDivisorOnRandomSamples) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ub(0.0, 0.5), ang(0, 2 * std::numbers::pi);
  for (int t = 0; t < 10000; ++t) {
    const GraphPoint gp = random_point(rng, 10.0);
    const TiltedFrame frame(fm::testing::random_orthogonal(rng));
    const double b = ub(rng);
    const PdeCoefficients c = ellipticity_coefficients(gp, frame, b);
    EXPECT_GT(c.Sb * (c.Sb - 2 * b * b * c.w * c.w), 0.0);
    const double a = ang(rng);
    const Vec2 xi{std::cos(a), std::sin(a)};
    ASSERT_GT(c.quadratic_form(xi), 1.0 / c.W2);
  }
}

TEST(Ellipticity, RejectsLargeB) {
  EXPECT_THROW(ellipticity_coefficients(GraphPoint{}, TiltedFrame::identity(), 0.5), DomainError);
  EXPECT_THROW(mean_curvature_type_bound(TiltedFrame::identity(), 0.5), DomainError);
}

TEST(MeanCurvatureTypeBound, ValueAtOrigin) {
  const Vec2 e1{1, 0};
  EXPECT_EQ(mean_curvature_type_ratio(TiltedFrame::identity(), 0.3, Vec2{0, 0}, e1), 0.0);

  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    const TiltedFrame frame(fm::testing::random_orthogonal(rng));
    const Vec3& k = frame.k();
    const double b = 0.3, b2 = b * b, w = k[2];
    const double s = 2 + b2 - b2 * w * w;
    const double rb0 = 2 * b2 * (s + 4 * b2 * w * w) / (s * (s - 2 * b2 * w * w));
    const double k12 = std::hypot(k[0], k[1]);
    const Vec2 along{k[0] / k12, k[1] / k12};
    EXPECT_NEAR(mean_curvature_type_ratio(frame, b, Vec2{0, 0}, along), rb0 * k12 * k12, 1e-14);
  }
}

TEST(MeanCurvatureTypeBound, StableUnderHorizonGrowth) {
  BoundSamplerConfig coarse;
  coarse.angle_nodes = 64;
  coarse.radius_nodes = 256;
  std::mt19937_64 rng(71);
  for (int t = 0; t < 4; ++t) {
    const TiltedFrame frame(fm::testing::random_orthogonal(rng));
    const BoundEstimate near = mean_curvature_type_bound(frame, 0.3, coarse);
    BoundSamplerConfig wide = coarse;
    wide.t_max = 1e4;
    const BoundEstimate far = mean_curvature_type_bound(frame, 0.3, wide);
    EXPECT_TRUE(std::isfinite(near.value));
    EXPECT_LT(std::abs(far.value - near.value), 0.01 * near.value);
  }
}

// h <= a <= (1 + C) h at the sampler's own nodes, with a taken from the
// coefficient routine rather than the ratio routine.
TEST(MeanCurvatureTypeBound, SandwichOnSampleNodes) {
  BoundSamplerConfig cfg;
  cfg.angle_nodes = 32;
  cfg.radius_nodes = 64;
  std::mt19937_64 rng(73);
  const TiltedFrame frame(fm::testing::random_orthogonal(rng));
  const double b = 0.4;
  const double cst = mean_curvature_type_bound(frame, b, cfg).value;
  const double step = 2 * std::numbers::pi / cfg.angle_nodes;
  for (int r = 0; r <= cfg.radius_nodes; ++r) {
    const double rho =
        r == 0 ? 0.0 : std::exp(std::log(cfg.t_min) + (r - 1.0) / (cfg.radius_nodes - 1) *
                                                          (std::log(cfg.t_max) - std::log(cfg.t_min)));
    for (int a = 0; a < cfg.angle_nodes; ++a) {
      const GraphPoint gp{rho * std::cos(a * step), rho * std::sin(a * step), 0, 0, 0};
      const PdeCoefficients c = ellipticity_coefficients(gp, frame, b);
      for (int x = 0; x < cfg.angle_nodes; ++x) {
        const Vec2 xi{std::cos(a * step + x * step), std::sin(a * step + x * step)};
        const double h = h_form(gp, xi);
        const double form = c.quadratic_form(xi);
        EXPECT_GE(form, h * (1 - 1e-12));
        EXPECT_LE(form, (1 + cst) * h * (1 + 1e-9));
      }
    }
  }
}
