#pragma once

// (alpha, beta)-Minkowski norms on R^3 with alpha Euclidean and beta = b dx^3.

#include <cmath>
#include <string>
#include <string_view>

#include "fm/dual.hpp"
#include "fm/error.hpp"
#include "fm/linalg.hpp"

namespace fm {

enum class PhiFamily { kMatsumoto, kRanders, kEuclidean };

std::string_view to_string(PhiFamily family);
// Accepts "matsumoto", "randers", "euclidean" (case-sensitive).
PhiFamily parse_phi_family(std::string_view name);

// Open interval of admissible s = beta/alpha for phi(s).
struct Interval {
  double lo;
  double hi;
  bool contains(double s) const { return s > lo && s < hi; }
};

Interval admissible_s(PhiFamily family);

class MetricParams {
 public:
  // Throws DomainError unless 0 <= b < 1/2 (Matsumoto) or 0 <= b < 1 (Randers).
  MetricParams(double b, PhiFamily family);

  double b() const { return b_; }
  PhiFamily family() const { return family_; }
  // b = 0 collapses every family onto the Euclidean norm.
  bool euclidean_degeneration() const { return b_ == 0.0; }

 private:
  double b_;
  PhiFamily family_;
};

template <typename T>
T phi_eval(PhiFamily family, const T& s) {
  const Interval range = admissible_s(family);
  const double sv = value_of(s);
  if (!range.contains(sv)) {
    throw DomainError("phi(s) for " + std::string(to_string(family)) + " requires s in (" +
                      std::to_string(range.lo) + ", " + std::to_string(range.hi) +
                      "), got " + std::to_string(sv));
  }
  switch (family) {
    case PhiFamily::kMatsumoto:
      return T(1) / (T(1) - s);
    case PhiFamily::kRanders:
      return T(1) + s;
    case PhiFamily::kEuclidean:
      break;
  }
  return T(1);
}

// F(y) = alpha * phi(beta / alpha); for Matsumoto alpha^2 / (alpha - beta).
template <typename T>
T minkowski_norm(const MetricParams& params, const Vec3T<T>& y) {
  using std::sqrt;
  const T alpha2 = dot(y, y);
  if (value_of(alpha2) == 0.0) {
    throw DomainError("Minkowski norm is defined on nonzero vectors only");
  }
  const T alpha = sqrt(alpha2);
  const T beta = T(params.b()) * y[2];
  if (params.family() == PhiFamily::kMatsumoto) {
    return alpha2 / (alpha - beta);
  }
  return alpha * phi_eval(params.family(), beta / alpha);
}

// g_ij = 1/2 d^2 F^2 / dy^i dy^j by nested dual numbers.
Mat3 fundamental_tensor(const MetricParams& params, const Vec3& y);

// Same quantity by nested central differences, step h = 1e-5 * max(1, |y|) unless given.
Mat3 fundamental_tensor_fd(const MetricParams& params, const Vec3& y, double step = 0.0);

}  // namespace fm
