#pragma once

// Limit law for the pseudo-velocity X_n / n, its moments evaluated
// along the orbit angle gamma, and the finite-n convergence table.
//
// All integrals run over gamma with y = u sin(gamma): the gamma integrand is
// smooth and periodic while the y integrand has inverse square-root
// singularities at y = +-u.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "weylwalk/coin.hpp"
#include "weylwalk/errors.hpp"
#include "weylwalk/spectral.hpp"
#include "weylwalk/walk.hpp"
#include "weylwalk/weylmap.hpp"

namespace weylwalk {

/// mu(y; u) = sqrt(1 - u^2) / (pi (1 - y^2) sqrt(u^2 - y^2)) on |y| < u.
inline double konno_mu(double y, double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorKind::DegenerateCoin, "konno_mu needs u in (0, 1)");
  if (!(std::abs(y) < u)) throw Error(ErrorKind::OutOfSupport, "konno_mu is supported on |y| < u");
  return std::sqrt(1.0 - u * u) / (pi * (1.0 - y * y) * std::sqrt(u * u - y * y));
}

namespace detail {

inline void require_nondegenerate(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorKind::DegenerateCoin, "limit law needs |a| in (0, 1)");
}

/// Asymmetry coefficient written in Cayley-Klein parameters.
inline double asymmetry_cayley_klein(const Qubit& qubit, const CayleyKlein& ck) {
  const Complex z = qubit.alpha() * std::conj(qubit.beta()) * std::polar(1.0, -(ck.phi - ck.theta));
  return (std::norm(qubit.alpha()) - std::norm(qubit.beta())) +
         (std::sqrt(1.0 - ck.u * ck.u) / ck.u) * (z + std::conj(z)).real();
}

}  // namespace detail

inline constexpr double kAsymmetryAgreementTol = 1e-13;

/// Coefficient c in I(y) = 1 - c y:
/// (|alpha|^2 - |beta|^2) + (alpha beta* a b* + alpha* beta a* b) / |a|^2.
/// Cross-checked against the Cayley-Klein form.
inline double asymmetry_factor(const Qubit& qubit, const SpecialCoin& coin) {
  const double u = std::abs(coin.a());
  detail::require_nondegenerate(u);
  const Complex alpha = qubit.alpha(), beta = qubit.beta(), a = coin.a(), b = coin.b();
  const Complex cross = alpha * std::conj(beta) * a * std::conj(b) + std::conj(alpha) * beta * std::conj(a) * b;
  const double c = (std::norm(alpha) - std::norm(beta)) + cross.real() / std::norm(a);
  const double c_ck = detail::asymmetry_cayley_klein(qubit, to_cayley_klein(coin));
  if (std::abs(c - c_ck) > kAsymmetryAgreementTol * std::max(1.0, std::abs(c))) {
    throw Error(ErrorKind::NonUnitary, "asymmetry coefficient forms disagree");
  }
  return c;
}

struct KonnoLaw {
  double u;
  double c_asym;

  static KonnoLaw from(const Qubit& qubit, const SpecialCoin& coin) {
    return {std::abs(coin.a()), asymmetry_factor(qubit, coin)};
  }

  static KonnoLaw from(const Qubit& qubit, const UnitaryCoin& coin) { return from(qubit, strip_phase(coin).coin); }
};

/// nu(y) = mu(y; u) (1 - c y) on |y| < u, zero elsewhere.
inline double konno_nu(double y, const KonnoLaw& law) {
  if (!(std::abs(y) < law.u)) return 0.0;
  return konno_mu(y, law.u) * (1.0 - law.c_asym * y);
}

/// int nu(y) g(y) dy via y = u sin(gamma), J(gamma) dgamma / 2pi = mu(y) dy on a double cover.
template <typename G>
double integrate_against_nu(const KonnoLaw& law, G&& g, std::size_t N = kDefaultQuadrature) {
  detail::require_nondegenerate(law.u);
  const CayleyKlein ck{law.u, 0.0, 0.0};
  return periodic_mean(
      [&](double gamma) {
        const double y = law.u * std::sin(gamma);
        return jacobian(ck, gamma) * (1.0 - law.c_asym * y) * g(y);
      },
      N);
}

/// Limit of <(X_n / n)^r>: even r from mu alone, odd r as -c times the next even moment.
inline double limit_moment(int r, const KonnoLaw& law, std::size_t N = kDefaultQuadrature) {
  if (r < 0) throw Error(ErrorKind::OutOfRange, "moment order must be non-negative");
  detail::require_nondegenerate(law.u);
  const CayleyKlein ck{law.u, 0.0, 0.0};
  const int even = (r % 2 == 0) ? r : r + 1;
  const double m = periodic_mean(
      [&](double gamma) { return jacobian(ck, gamma) * std::pow(law.u * std::sin(gamma), even); }, N);
  return (r % 2 == 0) ? m : -law.c_asym * m;
}

/// The same limit computed directly in k from the helicity weights and dq/dk.
inline double limit_moment_k(int r, const Qubit& qubit, const CayleyKlein& ck, std::size_t N = kDefaultQuadrature) {
  if (r < 0) throw Error(ErrorKind::OutOfRange, "moment order must be non-negative");
  detail::require_nondegenerate(ck.u);
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return periodic_mean(
      [&](double k) {
        const auto [wp, wm] = coeff_weights(qubit, ck, gamma_of_k(ck, k));
        return (wp + sign * wm) * std::pow(dq_dk(ck, k), r);
      },
      N);
}

struct ConvergenceRow {
  std::int64_t n;
  int r;
  double finite;
  double limit;
  double gap;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Per r: gaps non-increasing in n up to the relative slack.
  std::vector<bool> monotone;
};

inline constexpr double kConvergenceSlack = 0.10;

/// <(X_n / n)^r> from the position-space walk against the limit law, for r = 0..r_max.
inline ConvergenceReport convergence_report(const UnitaryCoin& coin, const Qubit& qubit, int r_max,
                                            const std::vector<std::int64_t>& steps,
                                            std::size_t N = kDefaultQuadrature) {
  if (r_max < 0) throw Error(ErrorKind::OutOfRange, "r_max must be non-negative");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] <= 0 || (i > 0 && steps[i] < steps[i - 1])) {
      throw Error(ErrorKind::OutOfRange, "steps must be positive and sorted ascending");
    }
  }
  const KonnoLaw law = KonnoLaw::from(qubit, coin);
  std::vector<double> limits(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) limits[static_cast<std::size_t>(r)] = limit_moment(r, law, N);

  ConvergenceReport report;
  report.monotone.assign(static_cast<std::size_t>(r_max) + 1, true);
  std::vector<double> previous(static_cast<std::size_t>(r_max) + 1, -1.0);
  WaveField field = initial_field(qubit);
  for (std::int64_t n : steps) {
    while (field.steps < n) field = step_position(field, coin);
    const Distribution dist = distribution(field);
    for (int r = 0; r <= r_max; ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const double finite = moment(dist, r, 1.0 / static_cast<double>(n));
      const double gap = std::abs(finite - limits[ri]);
      if (previous[ri] >= 0.0 && gap > (1.0 + kConvergenceSlack) * previous[ri] + 1e-12) {
        report.monotone[ri] = false;
      }
      previous[ri] = gap;
      report.rows.push_back({n, r, finite, limits[ri], gap});
    }
  }
  return report;
}

}  // namespace weylwalk
