#pragma once

// Independent derivatives of the area integrand, used to validate the
// closed-form gradient and Hessian: forward-mode dual numbers applied to
// area_integrand itself, and central differences.

#include "fm/jet.hpp"

namespace fm {

JetGradient area_integrand_grad_dual(const ImmersionJet1& z, double b);
JetHessian area_integrand_hess_dual(const ImmersionJet1& z, double b);

// Central differences with step h * max(1, |z|_max); default 1e-6 for the gradient.
JetGradient area_integrand_grad_fd(const ImmersionJet1& z, double b, double h = 1e-6);
// Symmetric four-point differences of F at steps h and 2h, Richardson-combined.
JetHessian area_integrand_hess_fd(const ImmersionJet1& z, double b, double h = 2e-4);

struct DerivativeErrors {
  double grad_vs_dual = 0.0;
  double hess_vs_dual = 0.0;
  double grad_vs_fd = 0.0;
  double hess_vs_fd = 0.0;
};

// Max-entry errors relative to the largest entry of the reference.
DerivativeErrors derivative_errors(const ImmersionJet1& z, double b);

}  // namespace fm
