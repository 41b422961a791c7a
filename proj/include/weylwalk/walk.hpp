#pragma once

// Discrete-time quantum walk on Z: position-space stepping, wave-number
// space evolution, the exact inverse transform, distributions and moments.
// Also the classical random-turn chain and its heat-kernel limit.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "weylwalk/coin.hpp"
#include "weylwalk/errors.hpp"
#include "weylwalk/linalg.hpp"

namespace weylwalk {

/// Two-component amplitudes on the contiguous site window [origin, origin + size).
struct WaveField {
  std::int64_t origin = 0;
  std::vector<Spinor> amplitudes;
  std::int64_t steps = 0;

  std::int64_t lo() const { return origin; }
  std::int64_t hi() const { return origin + static_cast<std::int64_t>(amplitudes.size()) - 1; }

  /// Amplitude at site x, zero outside the window.
  Spinor at(std::int64_t x) const {
    if (x < lo() || x > hi()) return {};
    return amplitudes[static_cast<std::size_t>(x - origin)];
  }

  double total_probability() const {
    double s = 0.0;
    for (const auto& v : amplitudes) s += norm_sq(v);
    return s;
  }
};

/// Probabilities on the contiguous site window [origin, origin + size).
struct Distribution {
  std::int64_t origin = 0;
  std::vector<double> prob;

  std::int64_t lo() const { return origin; }
  std::int64_t hi() const { return origin + static_cast<std::int64_t>(prob.size()) - 1; }

  double at(std::int64_t x) const {
    if (x < lo() || x > hi()) return 0.0;
    return prob[static_cast<std::size_t>(x - origin)];
  }

  double total() const {
    double s = 0.0;
    for (double p : prob) s += p;
    return s;
  }
};

/// Psi_0(x) = delta(x) (alpha, beta)^T.
inline WaveField initial_field(const Qubit& qubit) { return {0, {qubit.spinor()}, 0}; }

/// One walk step: component 1 arrives from x+1, component 2 from x-1.
inline WaveField step_position(const WaveField& field, const UnitaryCoin& coin) {
  const Complex a = coin.a(), b = coin.b(), c = coin.c(), d = coin.d();
  WaveField next;
  next.origin = field.origin - 1;
  next.steps = field.steps + 1;
  next.amplitudes.assign(field.amplitudes.size() + 2, Spinor{});
  // Old site index i (x = origin + i) feeds new index i (x - 1) and i + 2 (x + 1).
  for (std::size_t i = 0; i < field.amplitudes.size(); ++i) {
    const Spinor& v = field.amplitudes[i];
    next.amplitudes[i][0] += a * v[0] + b * v[1];
    next.amplitudes[i + 2][1] += c * v[0] + d * v[1];
  }
  return next;
}

inline WaveField evolve_position(const Qubit& qubit, const UnitaryCoin& coin, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be non-negative");
  WaveField field = initial_field(qubit);
  for (std::int64_t s = 0; s < n; ++s) field = step_position(field, coin);
  return field;
}

/// U(k) = diag(e^{ik}, e^{-ik}) A.
inline Mat2 build_Uk(const UnitaryCoin& coin, double k) {
  const Complex up = std::polar(1.0, k);
  const Complex down = std::conj(up);
  return {up * coin.a(), up * coin.b(), down * coin.c(), down * coin.d()};
}

/// Wave-number samples k_j = -pi + 2 pi j / N.
struct KSpectrum {
  std::vector<Spinor> values;

  std::size_t size() const { return values.size(); }
  static double k_at(std::size_t j, std::size_t N) {
    return -pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(N);
  }
};

inline void require_grid(std::size_t N, std::int64_t n) {
  if (static_cast<std::int64_t>(N) < 2 * n + 2) {
    throw Error(ErrorKind::GridTooSmall, "grid size must be at least 2n + 2");
  }
}

inline KSpectrum evolve_kspace(const Qubit& qubit, const UnitaryCoin& coin, std::int64_t n, std::size_t N) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be non-negative");
  require_grid(N, n);
  KSpectrum spec;
  spec.values.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    const Mat2 U = build_Uk(coin, KSpectrum::k_at(j, N));
    Spinor v = qubit.spinor();
    for (std::int64_t s = 0; s < n; ++s) v = U * v;
    spec.values[j] = v;
  }
  return spec;
}

namespace detail {

/// Table of e^{2 pi i m / N}, m = 0..N-1, used for exact-index DFT phases.
inline std::vector<Complex> roots_of_unity(std::size_t N) {
  std::vector<Complex> w(N);
  for (std::size_t m = 0; m < N; ++m) {
    w[m] = std::polar(1.0, 2.0 * pi * static_cast<double>(m) / static_cast<double>(N));
  }
  return w;
}

inline std::size_t mod_index(std::int64_t v, std::size_t N) {
  const auto n = static_cast<std::int64_t>(N);
  return static_cast<std::size_t>(((v % n) + n) % n);
}

}  // namespace detail

/// Psi_n(x) = (1/N) sum_j e^{i k_j x} hat Psi_n(k_j) on [-n, n]; exact for N >= 2n + 2.
inline WaveField kspectrum_to_position(const KSpectrum& spec, std::int64_t n) {
  const std::size_t N = spec.size();
  require_grid(N, n);
  const auto w = detail::roots_of_unity(N);
  WaveField field;
  field.origin = -n;
  field.steps = n;
  field.amplitudes.resize(static_cast<std::size_t>(2 * n + 1));
  for (std::int64_t x = -n; x <= n; ++x) {
    // e^{i k_j x} = (-1)^x w^{j x}
    const double sign = (x % 2 == 0) ? 1.0 : -1.0;
    Spinor acc{};
    for (std::size_t j = 0; j < N; ++j) {
      const Complex e = w[detail::mod_index(static_cast<std::int64_t>(j) * x, N)];
      acc[0] += e * spec.values[j][0];
      acc[1] += e * spec.values[j][1];
    }
    const double scale = sign / static_cast<double>(N);
    field.amplitudes[static_cast<std::size_t>(x + n)] = {scale * acc[0], scale * acc[1]};
  }
  return field;
}

/// hat Psi(k_j) = sum_x Psi(x) e^{-i k_j x}.
inline KSpectrum position_to_kspectrum(const WaveField& field, std::size_t N) {
  const auto w = detail::roots_of_unity(N);
  KSpectrum spec;
  spec.values.assign(N, Spinor{});
  for (std::size_t j = 0; j < N; ++j) {
    Spinor acc{};
    for (std::int64_t x = field.lo(); x <= field.hi(); ++x) {
      const double sign = (x % 2 == 0) ? 1.0 : -1.0;
      const Complex e = sign * std::conj(w[detail::mod_index(static_cast<std::int64_t>(j) * x, N)]);
      const Spinor& v = field.amplitudes[static_cast<std::size_t>(x - field.origin)];
      acc[0] += e * v[0];
      acc[1] += e * v[1];
    }
    spec.values[j] = acc;
  }
  return spec;
}

inline Distribution distribution(const WaveField& field) {
  Distribution dist;
  dist.origin = field.origin;
  dist.prob.reserve(field.amplitudes.size());
  for (const auto& v : field.amplitudes) dist.prob.push_back(norm_sq(v));
  return dist;
}

/// sum_x x^r P(x), accumulated left to right.
inline double moment(const Distribution& dist, int r, double scale = 1.0) {
  double s = 0.0;
  for (std::size_t i = 0; i < dist.prob.size(); ++i) {
    const double x = static_cast<double>(dist.origin + static_cast<std::int64_t>(i)) * scale;
    s += std::pow(x, r) * dist.prob[i];
  }
  return s;
}

inline double moment_position(const WaveField& field, int r) {
  if (r < 0) throw Error(ErrorKind::OutOfRange, "moment order must be non-negative");
  return moment(distribution(field), r);
}

/// Validation path for sum_x x^r P(x) via (i d/dk)^r on the periodic k-grid,
/// using fourth-order centered differences. Supports r <= 2 only.
inline double moment_kspace(const KSpectrum& spec, int r) {
  if (r < 0 || r > 2) throw Error(ErrorKind::UnsupportedOrder, "k-space moments support r <= 2");
  const std::size_t N = spec.size();
  const double h = 2.0 * pi / static_cast<double>(N);
  auto at = [&](std::size_t j, std::int64_t off) -> const Spinor& {
    return spec.values[detail::mod_index(static_cast<std::int64_t>(j) + off, N)];
  };
  double s = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const Spinor& v = spec.values[j];
    Spinor dv{};
    for (int c = 0; c < 2; ++c) {
      const Complex m2 = at(j, -2)[c], m1 = at(j, -1)[c], p1 = at(j, 1)[c], p2 = at(j, 2)[c];
      if (r == 0) {
        dv[c] = v[c];
      } else if (r == 1) {
        dv[c] = I * (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
      } else {
        dv[c] = -(-m2 + 16.0 * m1 - 30.0 * v[c] + 16.0 * p1 - p2) / (12.0 * h * h);
      }
    }
    s += inner(v, dv).real();
  }
  return s / static_cast<double>(N);
}

// ---------------------------------------------------------------------------
// Classical random-turn model

template <typename T = double>
struct ClassicalTurnParams {
  T p_turn;
  T q_left;
};

/// Per-direction probabilities on [origin, origin + size): left (1) and right (2) movers.
template <typename T = double>
struct ClassicalTable {
  std::int64_t origin = 0;
  std::vector<T> left;
  std::vector<T> right;

  std::vector<T> total() const {
    std::vector<T> t(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) t[i] = left[i] + right[i];
    return t;
  }
};

/// Direct iteration of the transfer rule behind W(k)^n: turn with p_turn, then step.
template <typename T>
ClassicalTable<T> classical_evolve(const ClassicalTurnParams<T>& params, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be non-negative");
  const T zero = T(0);
  const T one = T(1);
  const T stay = one - params.p_turn;
  ClassicalTable<T> table{0, {params.q_left}, {one - params.q_left}};
  for (std::int64_t s = 0; s < n; ++s) {
    ClassicalTable<T> next{table.origin - 1, std::vector<T>(table.left.size() + 2, zero),
                           std::vector<T>(table.left.size() + 2, zero)};
    for (std::size_t i = 0; i < table.left.size(); ++i) {
      next.left[i] = next.left[i] + stay * table.left[i] + params.p_turn * table.right[i];
      next.right[i + 2] = next.right[i + 2] + params.p_turn * table.left[i] + stay * table.right[i];
    }
    table = std::move(next);
  }
  return table;
}

inline Distribution classical_distribution(const ClassicalTurnParams<double>& params, std::int64_t n) {
  if (!(params.p_turn >= 0.0 && params.p_turn <= 1.0 && params.q_left >= 0.0 && params.q_left <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "classical probabilities must lie in [0, 1]");
  }
  const auto table = classical_evolve(params, n);
  return {table.origin, table.total()};
}

/// (2 pi t)^{-1/2} exp(-x^2 / 2t).
inline double heat_kernel(double t, double x) {
  if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveTime, "heat kernel needs t > 0");
  return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * pi * t);
}

}  // namespace weylwalk
