#pragma once

// Minimal fixed-size complex 2x2 and real 3-vector algebra.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace weylwalk {

using Complex = std::complex<double>;
using Spinor = std::array<Complex, 2>;
using Vec3 = std::array<double, 3>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

/// Reduces an angle onto the half-open interval [-pi, pi).
inline double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * pi);
  if (r >= pi) r -= 2.0 * pi;
  if (r < -pi) r += 2.0 * pi;
  return r;
}

/// Distance between two angles measured on the circle.
inline double angle_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * pi)); }

struct Mat2 {
  Complex m00{}, m01{}, m10{}, m11{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex det() const { return m00 * m11 - m01 * m10; }

  Mat2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }

  friend Mat2 operator*(Complex s, const Mat2& x) { return {s * x.m00, s * x.m01, s * x.m10, s * x.m11}; }

  friend Spinor operator*(const Mat2& x, const Spinor& v) {
    return {x.m00 * v[0] + x.m01 * v[1], x.m10 * v[0] + x.m11 * v[1]};
  }
};

/// Largest entrywise modulus of x - y.
inline double max_abs_diff(const Mat2& x, const Mat2& y) {
  return std::max({std::abs(x.m00 - y.m00), std::abs(x.m01 - y.m01), std::abs(x.m10 - y.m10),
                   std::abs(x.m11 - y.m11)});
}

inline double max_abs_diff(const Spinor& x, const Spinor& y) {
  return std::max(std::abs(x[0] - y[0]), std::abs(x[1] - y[1]));
}

/// The Hermitian matrix sigma . n built from the Pauli matrices.
inline Mat2 sigma_dot(const Vec3& n) {
  return {Complex(n[2], 0.0), Complex(n[0], -n[1]), Complex(n[0], n[1]), Complex(-n[2], 0.0)};
}

inline double norm_sq(const Spinor& v) { return std::norm(v[0]) + std::norm(v[1]); }

/// <x|y> with the first argument conjugated.
inline Complex inner(const Spinor& x, const Spinor& y) { return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]; }

inline double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

inline double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }

inline Vec3 cross(const Vec3& x, const Vec3& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

inline Vec3 operator*(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }

inline Vec3 operator+(const Vec3& x, const Vec3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }

inline Vec3 operator-(const Vec3& x, const Vec3& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }

inline double max_abs_diff(const Vec3& x, const Vec3& y) {
  return std::max({std::abs(x[0] - y[0]), std::abs(x[1] - y[1]), std::abs(x[2] - y[2])});
}

}  // namespace weylwalk
