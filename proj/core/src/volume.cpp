#include "fm/volume.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fm/quadrature.hpp"

namespace fm {
namespace {

constexpr double kRelTol = 1e-12;

bool is_admissible_node_count(int n) {
  return n >= 64 && n <= 16384 && (n & (n - 1)) == 0;
}

double ratio_at(const VolumeFactorRequest& req, int nodes) {
  const int n = req.dimension();
  const MetricParams& params = req.params();
  auto weight = [n](double t) { return n == 2 ? 1.0 : std::pow(std::sin(t), n - 2); };
  const double numerator = integrate(weight, 0.0, std::numbers::pi, nodes);
  const double denominator = integrate(
      [&](double t) {
        const double phi = phi_eval(params.family(), params.b() * std::cos(t));
        return weight(t) / std::pow(phi, n);
      },
      0.0, std::numbers::pi, nodes);
  return numerator / denominator;
}

}  // namespace

VolumeFactorRequest::VolumeFactorRequest(MetricParams params, int n, NodePolicy policy,
                                         VolumeBranch branch)
    : params_(params), n_(n), policy_(policy) {
  if (branch == VolumeBranch::kHolmesThompson) {
    throw UnsupportedBranchError("unsupported-branch: Holmes-Thompson volume is not implemented");
  }
  if (n < 2) {
    throw DomainError("volume factor needs dimension n >= 2, got " + std::to_string(n));
  }
  if (!is_admissible_node_count(policy.initial) || !is_admissible_node_count(policy.max) ||
      policy.initial > policy.max) {
    throw DomainError("quadrature node counts must be powers of two in [64, 16384]");
  }
}

QuadratureEstimate bh_factor_quadrature_detailed(const VolumeFactorRequest& req) {
  int nodes = req.policy().initial;
  double previous = ratio_at(req, nodes);
  double older = previous;
  while (nodes < req.policy().max) {
    nodes *= 2;
    const double current = ratio_at(req, nodes);
    if (std::abs(current - previous) <= kRelTol * std::abs(current)) {
      return {current, previous, nodes};
    }
    older = previous;
    previous = current;
  }
  throw NonConvergenceError("volume quadrature did not converge within " +
                                std::to_string(req.policy().max) + " nodes",
                            {older, previous});
}

double bh_factor_quadrature(const VolumeFactorRequest& req) {
  return bh_factor_quadrature_detailed(req).value;
}

double bh_factor_closed_matsumoto(double b) {
  const MetricParams checked(b, PhiFamily::kMatsumoto);
  return 2.0 / (2.0 + checked.b() * checked.b());
}

}  // namespace fm
