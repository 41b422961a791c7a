#pragma once

// The map k -> q(k) from the walk's Brillouin zone into three-dimensional
// momentum space. For an SU(2) coin with Cayley-Klein parameters
// (u, theta, phi) the image is a closed planar orbit with normal e3, polar
// angle gamma measured from the perihelion direction e1, and radius
// q = arccos(u cos(k + theta)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "weylwalk/coin.hpp"
#include "weylwalk/errors.hpp"
#include "weylwalk/linalg.hpp"

namespace weylwalk {

struct OrbitPoint {
  double k = 0.0;
  double q = 0.0;
  Vec3 q_hat{};
  Vec3 q_vec{};
  double gamma = 0.0;
};

struct OrbitFrame {
  Vec3 e1{};
  Vec3 e2{};
  Vec3 e3{};
};

namespace detail {

inline void require_open_u(const CayleyKlein& ck) {
  if (!(ck.u > 0.0 && ck.u < 1.0)) throw Error(ErrorKind::OutOfRange, "orbit operation needs u in (0, 1)");
}

inline void require_orbit_u(const CayleyKlein& ck) {
  if (!(ck.u >= 0.0 && ck.u < 1.0)) throw Error(ErrorKind::OutOfRange, "orbit operation needs u in [0, 1)");
}

/// u * sqrt(1/u^2 - cos^2(k + theta)) = sqrt(1 - u^2 cos^2(k + theta)); equals sin q(k).
inline double scaled_root(const CayleyKlein& ck, double k) {
  const double c = ck.u * std::cos(k + ck.theta);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

}  // namespace detail

inline double q_norm(const CayleyKlein& ck, double k) {
  return std::acos(std::clamp(ck.u * std::cos(k + ck.theta), -1.0, 1.0));
}

inline Vec3 q_hat_of_k(const CayleyKlein& ck, double k) {
  const double root = detail::scaled_root(ck, k);
  if (root < 1e-12) {
    throw Error(ErrorKind::DegenerateDirection, "orbit direction undefined (u = 1 at the perihelion)");
  }
  const double v = std::sqrt(std::max(0.0, 1.0 - ck.u * ck.u));
  return {-v * std::sin(k + ck.phi) / root, -v * std::cos(k + ck.phi) / root,
          -ck.u * std::sin(k + ck.theta) / root};
}

/// (cos gamma, sin gamma) of the orbit point at k.
inline std::pair<double, double> gamma_cos_sin(const CayleyKlein& ck, double k) {
  const double root = detail::scaled_root(ck, k);
  if (root < 1e-12) throw Error(ErrorKind::DegenerateDirection, "orbit angle undefined (u = 1 at the perihelion)");
  const double v = std::sqrt(std::max(0.0, 1.0 - ck.u * ck.u));
  return {v * std::cos(k + ck.theta) / root, -std::sin(k + ck.theta) / root};
}

inline double gamma_of_k(const CayleyKlein& ck, double k) {
  const auto [c, s] = gamma_cos_sin(ck, k);
  return wrap_angle(std::atan2(s, c));
}

inline OrbitPoint q_vec_of_k(const CayleyKlein& ck, double k) {
  OrbitPoint p;
  p.k = k;
  p.q = q_norm(ck, k);
  p.q_hat = q_hat_of_k(ck, k);
  p.q_vec = p.q * p.q_hat;
  p.gamma = gamma_of_k(ck, k);
  return p;
}

/// dq/dk = sin(k + theta) / sqrt(1/u^2 - cos^2(k + theta)).
inline double dq_dk(const CayleyKlein& ck, double k) {
  detail::require_open_u(ck);
  return ck.u * std::sin(k + ck.theta) / detail::scaled_root(ck, k);
}

inline OrbitFrame orbit_frame(const CayleyKlein& ck) {
  const double u = ck.u;
  const double v = std::sqrt(std::max(0.0, 1.0 - u * u));
  const double s = std::sin(ck.phi - ck.theta);
  const double c = std::cos(ck.phi - ck.theta);
  return {{-s, -c, 0.0}, {v * c, -v * s, u}, {-u * c, u * s, v}};
}

/// Inverse of gamma_of_k, reduced to [-pi, pi).
inline double k_of_gamma(const CayleyKlein& ck, double gamma) {
  const double u = ck.u;
  const double v = std::sqrt(std::max(0.0, 1.0 - u * u));
  // Both sin(k + theta) and cos(k + theta) share the positive factor
  // u / sqrt(1 - u^2 sin^2 gamma), which atan2 ignores.
  const double s = -v * std::sin(gamma);
  const double c = std::cos(gamma);
  return wrap_angle(std::atan2(s, c) - ck.theta);
}

/// Orbit radius from tan q = (sqrt(1 - u^2) / u) / cos gamma, with q in [0, pi/2)
/// for cos gamma > 0, (pi/2, pi) for cos gamma < 0 and pi/2 at cos gamma = 0.
inline double orbit_radius_polar(const CayleyKlein& ck, double gamma) {
  detail::require_orbit_u(ck);
  const double v = std::sqrt(1.0 - ck.u * ck.u);
  return std::atan2(v, ck.u * std::cos(gamma));
}

inline Vec3 orbit_point_polar(const CayleyKlein& ck, double q, double gamma) {
  if (q < 0.0) throw Error(ErrorKind::OutOfRange, "polar radius must be non-negative");
  const OrbitFrame f = orbit_frame(ck);
  return q * (std::cos(gamma) * f.e1 + std::sin(gamma) * f.e2);
}

/// J = |dk / dgamma| = sqrt(1 - u^2) / (1 - u^2 sin^2 gamma).
inline double jacobian(const CayleyKlein& ck, double gamma) {
  detail::require_orbit_u(ck);
  const double us = ck.u * std::sin(gamma);
  return std::sqrt(1.0 - ck.u * ck.u) / (1.0 - us * us);
}

/// N-point trapezoid rule for (1/2pi) * integral over [-pi, pi) of a periodic f.
template <typename F>
double periodic_mean(F&& f, std::size_t N) {
  double s = 0.0;
  for (std::size_t j = 0; j < N; ++j) s += f(-pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(N));
  return s / static_cast<double>(N);
}

inline constexpr std::size_t kDefaultQuadrature = 4096;

/// (1/2pi) int dk f(k), evaluated along the orbit as (1/2pi) int dgamma J(gamma) f(k(gamma)).
template <typename F>
double integrate_over_orbit(const CayleyKlein& ck, F&& f, std::size_t N = kDefaultQuadrature) {
  detail::require_orbit_u(ck);
  if (N < 64) throw Error(ErrorKind::GridTooSmall, "orbit quadrature needs N >= 64");
  return periodic_mean([&](double gamma) { return jacobian(ck, gamma) * f(k_of_gamma(ck, gamma)); }, N);
}

}  // namespace weylwalk
