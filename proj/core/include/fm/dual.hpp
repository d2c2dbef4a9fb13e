#pragma once

// Forward-mode dual numbers with N tangent directions. Nesting
// (Dual<Dual<double, N>, N>) yields exact second derivatives.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace fm {

template <typename T, int N = 1>
struct Dual {
  static_assert(N >= 1);

  T value{};
  std::array<T, N> grad{};

  constexpr Dual() = default;
  template <typename S, typename = std::enable_if_t<std::is_arithmetic_v<S>>>
  constexpr Dual(S v) : value(T(v)) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(const T& v) : value(v) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(T v, std::array<T, N> g) : value(std::move(v)), grad(std::move(g)) {}

  // Independent variable seeded in direction k.
  static Dual variable(T v, int k) {
    Dual d(std::move(v), {});
    d.grad[static_cast<std::size_t>(k)] = T(1);
    return d;
  }

  Dual& operator+=(const Dual& o) {
    value += o.value;
    for (int k = 0; k < N; ++k) grad[k] += o.grad[k];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    for (int k = 0; k < N; ++k) grad[k] -= o.grad[k];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int k = 0; k < N; ++k) grad[k] = grad[k] * o.value + value * o.grad[k];
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const T inv = T(1) / o.value;
    for (int k = 0; k < N; ++k) grad[k] = (grad[k] - value * inv * o.grad[k]) * inv;
    value *= inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(Dual a) {
    a.value = -a.value;
    for (auto& g : a.grad) g = -g;
    return a;
  }
  friend Dual operator+(Dual a) { return a; }

  friend bool operator<(const Dual& a, const Dual& b) { return a.value < b.value; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.value > b.value; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.value <= b.value; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.value >= b.value; }
};

template <typename T>
struct is_dual : std::false_type {};
template <typename T, int N>
struct is_dual<Dual<T, N>> : std::true_type {};

// Innermost scalar value, used for branch decisions in templated code.
inline double value_of(double x) { return x; }
template <typename T, int N>
double value_of(const Dual<T, N>& x) {
  return value_of(x.value);
}

template <typename T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
  using std::sqrt;
  const T r = sqrt(x.value);
  const T half_inv = T(0.5) / r;
  Dual<T, N> out(r, {});
  for (int k = 0; k < N; ++k) out.grad[k] = x.grad[k] * half_inv;
  return out;
}

template <typename T, int N>
Dual<T, N> log(const Dual<T, N>& x) {
  using std::log;
  Dual<T, N> out(log(x.value), {});
  const T inv = T(1) / x.value;
  for (int k = 0; k < N; ++k) out.grad[k] = x.grad[k] * inv;
  return out;
}

template <typename T, int N>
Dual<T, N> cos(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  Dual<T, N> out(cos(x.value), {});
  const T ds = -sin(x.value);
  for (int k = 0; k < N; ++k) out.grad[k] = x.grad[k] * ds;
  return out;
}

template <typename T, int N>
Dual<T, N> abs(const Dual<T, N>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

}  // namespace fm
