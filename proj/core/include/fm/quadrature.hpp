#pragma once

#include <functional>
#include <vector>

namespace fm {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule. Rules are cached; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

// Integral of f over [a, b] with the n-point rule mapped affinely.
double integrate(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace fm
