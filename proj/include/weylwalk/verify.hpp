#pragma once

// Seeded invariant suite over every module. Each check reports the largest
// observed error against a fixed tolerance; the suite passes iff every check
// does.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "weylwalk/coin.hpp"
#include "weylwalk/limitlaw.hpp"
#include "weylwalk/spectral.hpp"
#include "weylwalk/walk.hpp"
#include "weylwalk/weylmap.hpp"

namespace weylwalk {

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::int64_t samples = 0;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

using ExponentialMap = std::function<Mat2(const Vec3&)>;

struct VerifyOptions {
  std::uint64_t seed = 12345;
  /// Exponential used by the exponential-map check; swapped only to smoke-test the suite.
  ExponentialMap exponential = pauli_exp;
};

/// Literal (I - i sigma.q_hat tan q) cos q form of the exponential.
inline Mat2 pauli_exp_tan_form(const Vec3& qvec) {
  const double q = norm(qvec);
  if (q == 0.0) return Mat2::identity();
  const Mat2 s = sigma_dot((1.0 / q) * qvec);
  const Complex t{0.0, -std::tan(q)};
  return Complex(std::cos(q)) * Mat2{1.0 + t * s.m00, t * s.m01, t * s.m10, 1.0 + t * s.m11};
}

namespace detail {

/// Running maximum that treats NaN as an infinite error.
class MaxError {
 public:
  void add(double e) {
    ++samples_;
    if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
    worst_ = std::max(worst_, e);
  }
  double value() const { return worst_; }
  std::int64_t samples() const { return samples_; }

 private:
  double worst_ = 0.0;
  std::int64_t samples_ = 0;
};

class Suite {
 public:
  explicit Suite(std::uint64_t seed) : rng(seed) { report.seed = seed; }

  template <typename Body>
  void check(const std::string& name, double tolerance, Body&& body) {
    MaxError err;
    try {
      body(err);
    } catch (const Error&) {
      err.add(std::numeric_limits<double>::infinity());
    }
    report.checks.push_back({name, err.value(), tolerance, err.value() <= tolerance, err.samples()});
  }

  CayleyKlein random_ck(double u_lo = 0.05, double u_hi = 0.95) {
    std::uniform_real_distribution<double> uu(u_lo, u_hi);
    return {uu(rng), angle(), angle()};
  }

  CayleyKlein haar_ck() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return {std::sqrt(unit(rng)), angle(), angle()};
  }

  UnitaryCoin random_unitary() { return from_cayley_klein(haar_ck()).to_unitary().with_phase(angle()); }

  Qubit random_qubit() {
    std::normal_distribution<double> g;
    const Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return Qubit(a / n, b / n);
  }

  double angle() { return std::uniform_real_distribution<double>(-pi, pi)(rng); }

  Vec3 direction() {
    std::normal_distribution<double> g;
    const Vec3 v{g(rng), g(rng), g(rng)};
    return (1.0 / norm(v)) * v;
  }

  std::mt19937_64 rng;
  VerifyReport report;
};

/// Amplitudes from summing over all 2^n internal-state histories.
inline std::map<std::int64_t, Spinor> path_sum(const Qubit& qubit, const UnitaryCoin& coin, int n) {
  const Complex A[2][2] = {{coin.a(), coin.b()}, {coin.c(), coin.d()}};
  const Complex init[2] = {qubit.alpha(), qubit.beta()};
  std::map<std::int64_t, Spinor> out;
  for (int s0 = 0; s0 < 2; ++s0) {
    for (std::uint64_t hist = 0; hist < (std::uint64_t{1} << n); ++hist) {
      Complex amp = init[s0];
      int prev = s0;
      std::int64_t x = 0;
      for (int t = 0; t < n; ++t) {
        const int s = static_cast<int>((hist >> t) & 1U);
        amp *= A[s][prev];
        x += (s == 0) ? -1 : 1;
        prev = s;
      }
      out[x][static_cast<std::size_t>(prev)] += amp;
    }
  }
  return out;
}

inline double grid_k(int j, int N) { return -pi + 2.0 * pi * j / N; }

inline void coin_checks(Suite& s) {
  s.check("coin.strip_phase_round_trip", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 50; ++i) {
      const UnitaryCoin U = s.random_unitary();
      const auto [S, phase] = strip_phase(U);
      if (phase < -pi / 2 || phase >= pi / 2) e.add(std::numeric_limits<double>::infinity());
      e.add(max_abs_diff(std::polar(1.0, phase) * S.matrix(), U.matrix()));
    }
  });
  s.check("coin.cayley_klein_round_trip", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 200; ++i) {
      const CayleyKlein ck = s.random_ck(1e-3, 1.0 - 1e-3);
      const CayleyKlein back = to_cayley_klein(from_cayley_klein(ck));
      e.add(std::max({std::abs(back.u - ck.u), angle_distance(back.theta, ck.theta),
                      angle_distance(back.phi, ck.phi)}));
    }
  });
  s.check("coin.special_determinant", 1e-14, [&](MaxError& e) {
    for (int i = 0; i < 200; ++i) e.add(std::abs(from_cayley_klein(s.haar_ck()).matrix().det() - 1.0));
  });
}

inline void walk_checks(Suite& s) {
  s.check("walk.hadamard_two_steps", 1e-14, [&](MaxError& e) {
    const Distribution d = distribution(evolve_position(Qubit(1.0, 0.0), preset_coin(Preset::Hadamard), 2));
    e.add(std::abs(d.at(-2) - 0.25));
    e.add(std::abs(d.at(0) - 0.5));
    e.add(std::abs(d.at(2) - 0.25));
  });
  s.check("walk.norm_conservation", 1e-10, [&](MaxError& e) {
    for (int trial = 0; trial < 3; ++trial) {
      const UnitaryCoin coin = trial == 0 ? preset_coin(Preset::Hadamard) : s.random_unitary();
      WaveField f = initial_field(s.random_qubit());
      for (int n = 1; n <= 1000; ++n) {
        f = step_position(f, coin);
        e.add(std::abs(f.total_probability() - 1.0));
      }
    }
  });
  s.check("walk.support_and_parity", 0.0, [&](MaxError& e) {
    const UnitaryCoin coin = s.random_unitary();
    const WaveField f = evolve_position(s.random_qubit(), coin, 101);
    if (f.lo() != -101 || f.hi() != 101) e.add(std::numeric_limits<double>::infinity());
    for (std::int64_t x = -101; x <= 101; x += 2) e.add(norm_sq(f.at(x + 1)));
  });
  s.check("walk.path_sum_equivalence", 1e-12, [&](MaxError& e) {
    for (int trial = 0; trial < 3; ++trial) {
      const UnitaryCoin coin = trial == 0 ? preset_coin(Preset::Hadamard) : s.random_unitary();
      const Qubit q = s.random_qubit();
      for (int n : {1, 4, 8, 12}) {
        const WaveField f = evolve_position(q, coin, n);
        const auto oracle = path_sum(q, coin, n);
        for (std::int64_t x = -n; x <= n; ++x) {
          const auto it = oracle.find(x);
          e.add(max_abs_diff(f.at(x), it == oracle.end() ? Spinor{} : it->second));
        }
      }
    }
  });
  s.check("walk.kspace_path_equivalence", 1e-10, [&](MaxError& e) {
    for (int trial = 0; trial < 11; ++trial) {
      const UnitaryCoin coin = trial == 0 ? preset_coin(Preset::Hadamard) : s.random_unitary();
      const Qubit q = s.random_qubit();
      const WaveField direct = evolve_position(q, coin, 64);
      const WaveField via_k = kspectrum_to_position(evolve_kspace(q, coin, 64, 256), 64);
      for (std::int64_t x = -64; x <= 64; ++x) e.add(max_abs_diff(direct.at(x), via_k.at(x)));
    }
  });
  s.check("walk.kspace_first_moment", 1e-4, [&](MaxError& e) {
    const Qubit up(1.0, 0.0);
    const UnitaryCoin h = preset_coin(Preset::Hadamard);
    e.add(std::abs(moment_kspace(evolve_kspace(up, h, 32, 4096), 1) - moment_position(evolve_position(up, h, 32), 1)));
  });
  s.check("walk.kspace_second_moment", 1e-3, [&](MaxError& e) {
    const Qubit up(1.0, 0.0);
    const UnitaryCoin h = preset_coin(Preset::Hadamard);
    e.add(std::abs(moment_kspace(evolve_kspace(up, h, 32, 4096), 2) - moment_position(evolve_position(up, h, 32), 2)));
  });
  s.check("walk.classical_binomial", 0.0, [&](MaxError& e) {
    for (double q_left : {0.5, 1.0, 0.25}) {
      for (int n = 0; n <= 20; ++n) {
        const Distribution d = classical_distribution({0.5, q_left}, n);
        std::int64_t binom = 1;  // C(n, i) built incrementally
        for (int i = 0; i <= n; ++i) {
          const double exact = std::ldexp(static_cast<double>(binom), -n);
          e.add(std::abs(d.at(2 * i - n) - exact));
          binom = binom * (n - i) / (i + 1);
        }
      }
    }
  });
  s.check("walk.heat_kernel_limit", 0.01, [&](MaxError& e) {
    const int n = 400;
    const Distribution d = classical_distribution({0.5, 0.5}, n);
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::int64_t x = -n; x <= n; x += 2) {
      e.add(std::abs(d.at(x) * root_n / 2.0 - heat_kernel(1.0, static_cast<double>(x) / root_n)));
    }
  });
}

inline void weylmap_checks(Suite& s) {
  s.check("weylmap.planarity", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 20; ++i) {
      const CayleyKlein ck = s.random_ck();
      const Vec3 e3 = orbit_frame(ck).e3;
      for (int j = 0; j < 1024; ++j) e.add(std::abs(dot(q_vec_of_k(ck, grid_k(j, 1024)).q_vec, e3)));
    }
  });
  // tan q diverges where cos gamma = 0, so the residual is split at |cos gamma| = 1e-3.
  std::vector<std::pair<CayleyKlein, std::vector<OrbitPoint>>> orbits;
  for (int i = 0; i < 20; ++i) {
    const CayleyKlein ck = s.random_ck();
    std::vector<OrbitPoint> pts;
    for (int j = 0; j < 1024; ++j) pts.push_back(q_vec_of_k(ck, grid_k(j, 1024)));
    for (double g : {pi / 2, -pi / 2}) pts.push_back(q_vec_of_k(ck, k_of_gamma(ck, g)));
    orbits.emplace_back(ck, std::move(pts));
  }
  s.check("weylmap.orbit_equation", 1e-9, [&](MaxError& e) {
    for (const auto& [ck, pts] : orbits) {
      const double rhs = std::sqrt(1.0 - ck.u * ck.u) / ck.u;
      for (const OrbitPoint& p : pts) {
        if (std::abs(std::cos(p.gamma)) > 1e-3) e.add(std::abs(std::tan(p.q) * std::cos(p.gamma) - rhs));
      }
    }
  });
  s.check("weylmap.orbit_equation_near_pole", 2e-3, [&](MaxError& e) {
    for (const auto& [ck, pts] : orbits) {
      for (const OrbitPoint& p : pts) {
        if (std::abs(std::cos(p.gamma)) <= 1e-3) e.add(std::abs(p.q - pi / 2));
      }
    }
  });
  s.check("weylmap.circle_at_u_zero", 1e-12, [&](MaxError& e) {
    const CayleyKlein ck{0.0, s.angle(), s.angle()};
    for (int j = 0; j < 1024; ++j) e.add(std::abs(norm(q_vec_of_k(ck, grid_k(j, 1024)).q_vec) - pi / 2));
  });
  s.check("weylmap.radius_bounds", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 20; ++i) {
      const CayleyKlein ck = s.random_ck(0.0, 0.999);
      const double lo = std::acos(ck.u), hi = pi - lo;
      for (int j = 0; j < 1024; ++j) {
        const double q = q_norm(ck, grid_k(j, 1024));
        e.add(std::max({0.0, lo - q, q - hi}));
      }
    }
  });
  s.check("weylmap.gamma_round_trip", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 1000; ++i) {
      const CayleyKlein ck = s.random_ck();
      const double k = s.angle();
      e.add(angle_distance(k_of_gamma(ck, gamma_of_k(ck, k)), k));
    }
  });
  s.check("weylmap.jacobian_finite_difference", 1e-8, [&](MaxError& e) {
    const double h = 1e-5;
    for (int i = 0; i < 20; ++i) {
      const CayleyKlein ck = s.random_ck();
      for (int j = 0; j < 1000; ++j) {
        const double g = s.angle();
        const double J = jacobian(ck, g);
        if (!(J > 0.0)) e.add(std::numeric_limits<double>::infinity());
        const double dk = std::remainder(k_of_gamma(ck, g + h) - k_of_gamma(ck, g - h), 2.0 * pi);
        e.add(std::abs(J - std::abs(dk) / (2.0 * h)));
      }
    }
  });
  s.check("weylmap.change_of_variables", 1e-9, [&](MaxError& e) {
    std::normal_distribution<double> coef;
    for (int i = 0; i < 20; ++i) {
      const CayleyKlein ck = s.random_ck();
      const int deg = 1 + static_cast<int>(s.rng() % 8);
      std::vector<double> ca(static_cast<std::size_t>(deg) + 1), sa(ca.size());
      for (std::size_t m = 0; m < ca.size(); ++m) {
        ca[m] = coef(s.rng);
        sa[m] = coef(s.rng);
      }
      auto f = [&](double k) {
        double v = 0.0;
        for (std::size_t m = 0; m < ca.size(); ++m) {
          v += ca[m] * std::cos(static_cast<double>(m) * k) + sa[m] * std::sin(static_cast<double>(m) * k);
        }
        return v;
      };
      e.add(std::abs(integrate_over_orbit(ck, f) - periodic_mean(f, kDefaultQuadrature)));
    }
  });
}

inline void spectral_checks(Suite& s, const ExponentialMap& exponential) {
  s.check("spectral.exponential_map_identity", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 50; ++i) {
      const CayleyKlein ck = s.haar_ck();
      const UnitaryCoin coin = from_cayley_klein(ck).to_unitary();
      for (int j = 0; j < 256; ++j) {
        const double k = grid_k(j, 256);
        e.add(max_abs_diff(exponential(q_vec_of_k(ck, k).q_vec), build_Uk(coin, k)));
      }
    }
    // The orbit crosses q = pi/2 at k + theta = +-pi/2; sample those points exactly.
    for (int i = 0; i < 50; ++i) {
      const CayleyKlein ck = s.random_ck();
      const UnitaryCoin coin = from_cayley_klein(ck).to_unitary();
      for (double k : {pi / 2 - ck.theta, -pi / 2 - ck.theta}) {
        e.add(max_abs_diff(exponential(q_vec_of_k(ck, k).q_vec), build_Uk(coin, k)));
      }
    }
  });
  s.check("spectral.exponential_inverse", 1e-13, [&](MaxError& e) {
    std::uniform_real_distribution<double> len(0.0, 2.0 * pi);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 q = len(s.rng) * s.direction();
      e.add(max_abs_diff(pauli_exp(q) * pauli_exp(-1.0 * q), Mat2::identity()));
    }
  });
  s.check("spectral.helicity_eigenstates", 1e-12, [&](MaxError& e) {
    std::vector<Vec3> dirs;
    for (int i = 0; i < 500; ++i) dirs.push_back(s.direction());
    for (double eps : {1e-6, 1e-10, 1e-14}) {
      for (double z : {1.0, -1.0}) {
        const Vec3 v{eps, eps, z};
        dirs.push_back((1.0 / norm(v)) * v);
      }
    }
    for (const Vec3& p : dirs) {
      const SpinorPair pair = helicity_eigenstates(p);
      const Mat2 h = sigma_dot(p);
      e.add(max_abs_diff(h * pair.psi_plus, pair.psi_plus));
      e.add(max_abs_diff(h * pair.psi_minus, Spinor{-pair.psi_minus[0], -pair.psi_minus[1]}));
      e.add(std::abs(norm_sq(pair.psi_plus) - 1.0));
      e.add(std::abs(norm_sq(pair.psi_minus) - 1.0));
      e.add(std::abs(inner(pair.psi_plus, pair.psi_minus)));
    }
  });
  s.check("spectral.weights_closed_form", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 1000; ++i) {
      const Qubit q = s.random_qubit();
      const CayleyKlein ck = s.random_ck();
      const double g = s.angle();
      const auto [wp, wm] = coeff_weights(q, ck, g);
      const auto c = decompose_qubit(q, q_hat_of_k(ck, k_of_gamma(ck, g)));
      e.add(std::abs(wp - std::norm(c.c_plus)));
      e.add(std::abs(wm - std::norm(c.c_minus)));
    }
  });
  s.check("spectral.evolution_vs_matrix_power", 1e-10, [&](MaxError& e) {
    for (int trial = 0; trial < 3; ++trial) {
      const CayleyKlein ck = s.random_ck();
      const Qubit q = s.random_qubit();
      const UnitaryCoin coin = from_cayley_klein(ck).to_unitary();
      for (int j = 0; j < 64; ++j) {
        const double k = grid_k(j, 64);
        const Mat2 U = build_Uk(coin, k);
        Spinor v = q.spinor();
        for (int n = 1; n <= 1000; ++n) {
          v = U * v;
          if (n % 100 == 0) e.add(max_abs_diff(evolve_spectral(q, ck, k, n), v));
        }
      }
    }
  });
}

inline void limitlaw_checks(Suite& s) {
  const double sqrt_half = 1.0 / std::sqrt(2.0);
  s.check("limitlaw.asymmetry_forms_agree", 1e-13, [&](MaxError& e) {
    for (int i = 0; i < 200; ++i) {
      const Qubit q = s.random_qubit();
      const CayleyKlein ck = s.random_ck();
      e.add(std::abs(asymmetry_factor(q, from_cayley_klein(ck)) - asymmetry_cayley_klein(q, ck)));
    }
  });
  s.check("limitlaw.normalization", 1e-8, [&](MaxError& e) {
    for (int i = 0; i < 50; ++i) {
      const KonnoLaw law = KonnoLaw::from(s.random_qubit(), from_cayley_klein(s.random_ck()));
      e.add(std::abs(integrate_against_nu(law, [](double) { return 1.0; }) - 1.0));
    }
  });
  s.check("limitlaw.k_route_vs_gamma_route", 1e-8, [&](MaxError& e) {
    for (int i = 0; i < 20; ++i) {
      const Qubit q = s.random_qubit();
      const CayleyKlein ck = s.random_ck();
      const KonnoLaw law = KonnoLaw::from(q, from_cayley_klein(ck));
      for (int r = 0; r <= 6; ++r) e.add(std::abs(limit_moment_k(r, q, ck) - limit_moment(r, law)));
    }
  });
  s.check("limitlaw.symmetric_odd_moments_vanish", 1e-12, [&](MaxError& e) {
    const SpecialCoin h = strip_phase(preset_coin(Preset::Hadamard)).coin;
    const KonnoLaw law = KonnoLaw::from(Qubit(sqrt_half, Complex(0.0, sqrt_half)), h);
    e.add(std::abs(law.c_asym));
    for (int r : {1, 3, 5}) e.add(std::abs(limit_moment(r, law)));
  });
  s.check("limitlaw.hadamard_second_moment", 1e-8, [&](MaxError& e) {
    const KonnoLaw law = KonnoLaw::from(Qubit(1.0, 0.0), preset_coin(Preset::Hadamard));
    e.add(std::abs(limit_moment(2, law) - (1.0 - sqrt_half)));
  });
  s.check("limitlaw.global_phase_invariance", 1e-12, [&](MaxError& e) {
    for (int i = 0; i < 10; ++i) {
      const UnitaryCoin coin = from_cayley_klein(s.random_ck()).to_unitary();
      const UnitaryCoin phased = coin.with_phase(s.angle());
      const Qubit q = s.random_qubit();
      const KonnoLaw a = KonnoLaw::from(q, coin), b = KonnoLaw::from(q, phased);
      for (int r = 0; r <= 4; ++r) e.add(std::abs(limit_moment(r, a) - limit_moment(r, b)));
      const Distribution da = distribution(evolve_position(q, coin, 50));
      const Distribution db = distribution(evolve_position(q, phased, 50));
      for (std::int64_t x = -50; x <= 50; ++x) e.add(std::abs(da.at(x) - db.at(x)));
    }
  });
  // |<(X_n/n)^r> - limit| <= 5/n, reported as max n * gap against 5.
  s.check("limitlaw.weak_convergence", 5.0, [&](MaxError& e) {
    std::vector<std::int64_t> steps;
    for (int n = 100; n <= 1000; n += 100) steps.push_back(n);
    const UnitaryCoin h = preset_coin(Preset::Hadamard);
    for (const Qubit& q : {Qubit(1.0, 0.0), Qubit(sqrt_half, Complex(0.0, sqrt_half)), Qubit(0.0, 1.0)}) {
      for (const auto& row : convergence_report(h, q, 3, steps).rows) e.add(row.gap * static_cast<double>(row.n));
    }
  });
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyOptions& options = {}) {
  detail::Suite suite(options.seed);
  detail::coin_checks(suite);
  detail::walk_checks(suite);
  detail::weylmap_checks(suite);
  detail::spectral_checks(suite, options.exponential);
  detail::limitlaw_checks(suite);
  return suite.report;
}

}  // namespace weylwalk
