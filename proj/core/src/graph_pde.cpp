#include "fm/graph_pde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fm/error.hpp"
#include "fm/metric.hpp"
#include "fm/parallel.hpp"

namespace fm {
namespace {

constexpr double kOrthoTol = 1e-12;

void require_bound_range(double b) {
  // Reuses the Matsumoto range check: 0 <= b < 1/2.
  (void)MetricParams(b, PhiFamily::kMatsumoto);
}

struct TiltScalars {
  double W2, w, S, Rb;
  Vec2 g;
};

TiltScalars tilt_scalars(double f1, double f2, const Vec3& k, double b) {
  const double b2 = b * b;
  const double W2 = 1.0 + f1 * f1 + f2 * f2;
  const double w = k[2] - k[0] * f1 - k[1] * f2;
  const double S = (2.0 + b2) * W2 - b2 * w * w;
  const double Rb = 2.0 * b2 * (S + 4.0 * b2 * w * w) / (S * (S - 2.0 * b2 * w * w));
  return {W2, w, S, Rb, {k[0] + w * f1 / W2, k[1] + w * f2 / W2}};
}

}  // namespace

TiltedFrame::TiltedFrame(const Mat3& m) : m_(m), k_(m[2]) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dot(m[i], m[j]) - target));
    }
  }
  if (!(worst <= kOrthoTol)) {
    throw DomainError("tilted frame is not orthogonal: max |m m^T - I| = " +
                      std::to_string(worst));
  }
}

TiltedFrame TiltedFrame::identity() {
  return TiltedFrame(Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

TiltedFrame TiltedFrame::with_last_row(const Vec3& k) {
  const double norm = std::sqrt(dot(k, k));
  if (!(std::abs(norm - 1.0) <= kOrthoTol)) {
    throw DomainError("frame row k must be a unit vector");
  }
  const Vec3 seed = std::abs(k[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const double along = dot(seed, k);
  Vec3 u1{seed[0] - along * k[0], seed[1] - along * k[1], seed[2] - along * k[2]};
  const double n1 = std::sqrt(dot(u1, u1));
  for (double& x : u1) x /= n1;
  const Vec3 u2 = cross(k, u1);
  return TiltedFrame(Mat3{u1, u2, k});
}

double tilted_graph_residual(const GraphPoint& gp, const TiltedFrame& frame, double b) {
  return tilted_residual_for_vertical(gp, frame.k(), b);
}

PdeCoefficients ellipticity_coefficients(const GraphPoint& gp, const TiltedFrame& frame,
                                         double b) {
  require_bound_range(b);
  const TiltScalars t = tilt_scalars(gp.f1, gp.f2, frame.k(), b);
  const double scale = t.Rb * t.W2;
  return {
      1.0 - gp.f1 * gp.f1 / t.W2 + scale * t.g[0] * t.g[0],
      -gp.f1 * gp.f2 / t.W2 + scale * t.g[0] * t.g[1],
      1.0 - gp.f2 * gp.f2 / t.W2 + scale * t.g[1] * t.g[1],
      t.W2,
      t.w,
      t.S,
      t.Rb,
  };
}

double mean_curvature_type_ratio(const TiltedFrame& frame, double b, const Vec2& t,
                                 const Vec2& xi) {
  require_bound_range(b);
  const TiltScalars s = tilt_scalars(t[0], t[1], frame.k(), b);
  const double gx = s.g[0] * xi[0] + s.g[1] * xi[1];
  const double tx = t[0] * xi[0] + t[1] * xi[1];
  const double h_form = xi[0] * xi[0] + xi[1] * xi[1] - tx * tx / s.W2;
  return s.Rb * s.W2 * gx * gx / h_form;
}

BoundEstimate mean_curvature_type_bound(const TiltedFrame& frame, double b,
                                        const BoundSamplerConfig& config) {
  require_bound_range(b);
  if (config.angle_nodes < 1 || config.radius_nodes < 1 || !(config.t_min > 0.0) ||
      !(config.t_max > config.t_min)) {
    throw DomainError("bound sampler needs positive node counts and 0 < t_min < t_max");
  }
  // Radius 0 plus log-spaced radii in [t_min, t_max].
  std::vector<double> radii(static_cast<std::size_t>(config.radius_nodes) + 1, 0.0);
  const double log_lo = std::log(config.t_min);
  const double log_hi = std::log(config.t_max);
  for (int i = 0; i < config.radius_nodes; ++i) {
    const double u = config.radius_nodes == 1 ? 1.0 : double(i) / (config.radius_nodes - 1);
    radii[static_cast<std::size_t>(i) + 1] = std::exp(log_lo + u * (log_hi - log_lo));
  }

  const int na = config.angle_nodes;
  const double step = 2.0 * std::numbers::pi / na;
  std::vector<double> best(radii.size(), 0.0);
  parallel_for(radii.size(), [&](std::size_t r) {
    const double rho = radii[r];
    double local = 0.0;
    for (int a = 0; a < na; ++a) {
      const double phi = a * step;
      const Vec2 t{rho * std::cos(phi), rho * std::sin(phi)};
      // xi is measured from the direction of t, so theta = 0 and pi are
      // always sampled (parallel and antiparallel xi).
      for (int c = 0; c < na; ++c) {
        const double psi = phi + c * step;
        local = std::max(local, mean_curvature_type_ratio(frame, b, t,
                                                          Vec2{std::cos(psi), std::sin(psi)}));
      }
    }
    best[r] = local;
  });

  BoundEstimate out{0.0, 0.0, static_cast<long>(radii.size()) * na * na};
  for (std::size_t r = 0; r < radii.size(); ++r) {
    if (best[r] > out.value) {
      out.value = best[r];
      out.at_radius = radii[r];
    }
  }
  return out;
}

std::pair<ImmersionJet1, ImmersionJet2> tilted_jets(const GraphPoint& gp,
                                                    const TiltedFrame& frame) {
  const Mat3& m = frame.m();
  ImmersionJet1 z{};
  ImmersionJet2 j2{};
  for (int i = 0; i < 3; ++i) {
    z[i][0] = m[i][0] + gp.f1 * m[i][2];
    z[i][1] = m[i][1] + gp.f2 * m[i][2];
    j2.second[i] = Sym2{gp.h11 * m[i][2], gp.h12 * m[i][2], gp.h22 * m[i][2]};
  }
  return {z, j2};
}

}  // namespace fm
