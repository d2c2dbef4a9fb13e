#pragma once

// Busemann-Hausdorff volume factor f(b) of an (alpha, beta)-metric:
// dV_BH = f(b) dV_alpha with
//   f(b) = int_0^pi sin^{n-2} t dt / int_0^pi sin^{n-2} t / phi(b cos t)^n dt.

#include "fm/metric.hpp"

namespace fm {

enum class VolumeBranch { kBusemannHausdorff, kHolmesThompson };

// Gauss-Legendre node counts: start at `initial`, double up to `max`.
struct NodePolicy {
  int initial = 64;
  int max = 16384;
};

class VolumeFactorRequest {
 public:
  // Throws UnsupportedBranchError for Holmes-Thompson, DomainError for n < 2
  // or node counts that are not powers of two in [64, 16384].
  VolumeFactorRequest(MetricParams params, int n, NodePolicy policy = {},
                      VolumeBranch branch = VolumeBranch::kBusemannHausdorff);

  const MetricParams& params() const { return params_; }
  int dimension() const { return n_; }
  const NodePolicy& policy() const { return policy_; }

 private:
  MetricParams params_;
  int n_;
  NodePolicy policy_;
};

struct QuadratureEstimate {
  double value;
  double previous;  // estimate at half the node count
  int nodes;
};

// Node doubling until successive ratios agree to 1e-12 relative.
// Throws NonConvergenceError (history = last two estimates) past policy.max.
QuadratureEstimate bh_factor_quadrature_detailed(const VolumeFactorRequest& req);
double bh_factor_quadrature(const VolumeFactorRequest& req);

// 2 / (2 + b^2); the n = 2 Matsumoto closed form. Throws unless 0 <= b < 1/2.
double bh_factor_closed_matsumoto(double b);

}  // namespace fm
