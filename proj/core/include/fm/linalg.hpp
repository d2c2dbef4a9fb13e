#pragma once

#include <array>

namespace fm {

template <typename T>
using Vec3T = std::array<T, 3>;
template <typename T>
using Mat3T = std::array<std::array<T, 3>, 3>;

using Vec2 = std::array<double, 2>;
using Vec3 = Vec3T<double>;
using Mat3 = Mat3T<double>;

template <typename T>
T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename T>
Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace fm
