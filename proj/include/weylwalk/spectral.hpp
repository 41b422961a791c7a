#pragma once

// Pauli-matrix exponential, helicity eigenstates of sigma . p, and the
// spectral form of the walk evolution in wave-number space.

#include <cmath>
#include <cstdint>
#include <utility>

#include "weylwalk/coin.hpp"
#include "weylwalk/errors.hpp"
#include "weylwalk/linalg.hpp"
#include "weylwalk/weylmap.hpp"

namespace weylwalk {

/// exp(-i sigma . q) = cos|q| I - i sin|q| (sigma . q_hat).
inline Mat2 pauli_exp(const Vec3& qvec) {
  const double q = norm(qvec);
  if (q == 0.0) return Mat2::identity();
  const Mat2 s = sigma_dot((1.0 / q) * qvec);
  const double c = std::cos(q);
  const Complex is{0.0, -std::sin(q)};
  return {c + is * s.m00, is * s.m01, is * s.m10, c + is * s.m11};
}

/// U(k) rebuilt as exp(-i sigma . q(k)) from the orbit map.
inline Mat2 reconstruct_Uk(const CayleyKlein& ck, double k) {
  detail::require_orbit_u(ck);
  return pauli_exp(q_vec_of_k(ck, k).q_vec);
}

/// Eigenstates psi_+ and psi_- of sigma . p_hat with eigenvalues +1 and -1.
struct SpinorPair {
  Spinor psi_plus{};
  Spinor psi_minus{};
  double theta_p = 0.0;
  double phi_p = 0.0;
};

inline constexpr double kUnitVectorTol = 1e-10;

inline void require_unit(const Vec3& p_hat) {
  if (std::abs(norm(p_hat) - 1.0) > kUnitVectorTol) throw Error(ErrorKind::NotUnit, "direction is not a unit vector");
}

inline SpinorPair helicity_eigenstates(const Vec3& p_hat) {
  require_unit(p_hat);
  SpinorPair out;
  const double rho = std::hypot(p_hat[0], p_hat[1]);
  out.theta_p = std::atan2(rho, p_hat[2]);
  // Azimuth is gauge at the poles.
  out.phi_p = std::abs(std::sin(out.theta_p)) < 1e-14 ? 0.0 : std::atan2(p_hat[1], p_hat[0]);
  const double ch = std::cos(0.5 * out.theta_p);
  const double sh = std::sin(0.5 * out.theta_p);
  const Complex e = std::polar(1.0, out.phi_p);
  out.psi_plus = {ch, sh * e};
  out.psi_minus = {-sh * std::conj(e), ch};
  return out;
}

struct SpectralWeights {
  Complex c_plus;
  Complex c_minus;
};

/// C_pm = psi_pm^dagger (alpha, beta)^T.
inline SpectralWeights decompose_qubit(const Qubit& qubit, const Vec3& p_hat) {
  const SpinorPair pair = helicity_eigenstates(p_hat);
  const Spinor phi0 = qubit.spinor();
  return {inner(pair.psi_plus, phi0), inner(pair.psi_minus, phi0)};
}

/// Closed-form (|C_+|^2, |C_-|^2) along the orbit at polar angle gamma.
inline std::pair<double, double> coeff_weights(const Qubit& qubit, const CayleyKlein& ck, double gamma) {
  detail::require_open_u(ck);
  const double u = ck.u;
  const Complex alpha = qubit.alpha(), beta = qubit.beta();
  const Complex z = alpha * std::conj(beta) * std::polar(1.0, -(ck.phi - ck.theta));
  const double brace = (std::norm(alpha) - std::norm(beta)) + (std::sqrt(1.0 - u * u) / u) * (z + std::conj(z)).real();
  // i (z - z*) is real.
  const double tilt = (I * (z - std::conj(z))).real();
  const double delta = 0.5 * brace * u * std::sin(gamma) - 0.5 * tilt * std::cos(gamma);
  return {0.5 + delta, 0.5 - delta};
}

/// e^{-i q n} C_+ psi_+ + e^{+i q n} C_- psi_-, evaluated at orbit point k.
inline Spinor evolve_spectral(const Qubit& qubit, const CayleyKlein& ck, double k, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be non-negative");
  const OrbitPoint pt = q_vec_of_k(ck, k);
  const SpinorPair pair = helicity_eigenstates(pt.q_hat);
  const Spinor phi0 = qubit.spinor();
  const Complex cp = inner(pair.psi_plus, phi0);
  const Complex cm = inner(pair.psi_minus, phi0);
  const double phase = std::fmod(pt.q * static_cast<double>(n), 2.0 * pi);
  const Complex ep = std::polar(1.0, -phase) * cp;
  const Complex em = std::polar(1.0, phase) * cm;
  return {ep * pair.psi_plus[0] + em * pair.psi_minus[0], ep * pair.psi_plus[1] + em * pair.psi_minus[1]};
}

}  // namespace weylwalk
