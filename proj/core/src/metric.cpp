#include "fm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fm {

std::string_view to_string(PhiFamily family) {
  switch (family) {
    case PhiFamily::kMatsumoto:
      return "matsumoto";
    case PhiFamily::kRanders:
      return "randers";
    case PhiFamily::kEuclidean:
      return "euclidean";
  }
  return "unknown";
}

PhiFamily parse_phi_family(std::string_view name) {
  if (name == "matsumoto") return PhiFamily::kMatsumoto;
  if (name == "randers") return PhiFamily::kRanders;
  if (name == "euclidean") return PhiFamily::kEuclidean;
  throw DomainError("unknown phi family '" + std::string(name) +
                    "' (expected matsumoto, randers or euclidean)");
}

Interval admissible_s(PhiFamily family) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (family) {
    case PhiFamily::kMatsumoto:
      return {-0.5, 0.5};
    case PhiFamily::kRanders:
      return {-1.0, 1.0};
    case PhiFamily::kEuclidean:
      break;
  }
  return {-inf, inf};
}

MetricParams::MetricParams(double b, PhiFamily family) : b_(b), family_(family) {
  double upper = 0.0;
  switch (family) {
    case PhiFamily::kMatsumoto:
      upper = 0.5;
      break;
    case PhiFamily::kRanders:
      upper = 1.0;
      break;
    case PhiFamily::kEuclidean:
      upper = std::numeric_limits<double>::infinity();
      break;
  }
  if (!(b >= 0.0 && b < upper)) {
    throw DomainError("b = " + std::to_string(b) + " is outside [0, " + std::to_string(upper) +
                      ") for the " + std::string(to_string(family)) + " family");
  }
}

Mat3 fundamental_tensor(const MetricParams& params, const Vec3& y) {
  using Inner = Dual<double, 3>;
  using Outer = Dual<Inner, 3>;
  Vec3T<Outer> yd;
  for (int i = 0; i < 3; ++i) {
    yd[i] = Outer::variable(Inner::variable(y[i], i), i);
  }
  const Outer f = minkowski_norm(params, yd);
  const Outer half_f2 = Outer(0.5) * f * f;
  Mat3 g{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      g[i][j] = half_f2.grad[i].grad[j];
    }
  }
  return g;
}

Mat3 fundamental_tensor_fd(const MetricParams& params, const Vec3& y, double step) {
  if (step <= 0.0) {
    step = 1e-5 * std::max(1.0, std::sqrt(dot(y, y)));
  }
  auto energy = [&](Vec3 v) {
    const double f = minkowski_norm(params, v);
    return 0.5 * f * f;
  };
  auto shifted = [&](int i, double di, int j, double dj) {
    Vec3 v = y;
    v[i] += di;
    v[j] += dj;
    return energy(v);
  };
  Mat3 g{};
  const double h = step;
  const double e0 = energy(y);
  for (int i = 0; i < 3; ++i) {
    g[i][i] = (shifted(i, h, i, 0.0) - 2.0 * e0 + shifted(i, -h, i, 0.0)) / (h * h);
    for (int j = 0; j < i; ++j) {
      const double mixed = (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) +
                            shifted(i, -h, j, -h)) /
                           (4.0 * h * h);
      g[i][j] = mixed;
      g[j][i] = mixed;
    }
  }
  return g;
}

}  // namespace fm
