#pragma once

// The 2x2 walk coin in its raw U(2), phase-stripped SU(2) and
// Cayley-Klein (u, theta, phi) forms, plus the initial qubit.

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "weylwalk/errors.hpp"
#include "weylwalk/linalg.hpp"

namespace weylwalk {

inline constexpr double kUnitarityTol = 1e-12;

/// A general unitary coin A = (a b; c d).
class UnitaryCoin {
 public:
  UnitaryCoin(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {
    const double col0 = std::norm(a) + std::norm(c) - 1.0;
    const double col1 = std::norm(b) + std::norm(d) - 1.0;
    const double cross = std::abs(a * std::conj(b) + c * std::conj(d));
    if (std::abs(col0) > kUnitarityTol || std::abs(col1) > kUnitarityTol || cross > kUnitarityTol) {
      throw Error(ErrorKind::NonUnitary, "coin columns are not orthonormal");
    }
  }

  explicit UnitaryCoin(const Mat2& m) : UnitaryCoin(m.m00, m.m01, m.m10, m.m11) {}

  Complex a() const { return m_.m00; }
  Complex b() const { return m_.m01; }
  Complex c() const { return m_.m10; }
  Complex d() const { return m_.m11; }
  const Mat2& matrix() const { return m_; }

  /// e^{i phase} * this.
  UnitaryCoin with_phase(double phase) const { return UnitaryCoin(std::polar(1.0, phase) * m_); }

 private:
  Mat2 m_;
};

/// An SU(2) coin (a b; -b* a*).
class SpecialCoin {
 public:
  SpecialCoin(Complex a, Complex b) : a_(a), b_(b) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kUnitarityTol) {
      throw Error(ErrorKind::NonUnitary, "|a|^2 + |b|^2 != 1");
    }
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return -std::conj(b_); }
  Complex d() const { return std::conj(a_); }

  Mat2 matrix() const { return {a(), b(), c(), d()}; }
  UnitaryCoin to_unitary() const { return UnitaryCoin(a(), b(), c(), d()); }

 private:
  Complex a_;
  Complex b_;
};

struct CayleyKlein {
  double u = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

class Qubit {
 public:
  Qubit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kUnitarityTol) {
      throw Error(ErrorKind::NotUnit, "|alpha|^2 + |beta|^2 != 1");
    }
  }

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Spinor spinor() const { return {alpha_, beta_}; }

 private:
  Complex alpha_;
  Complex beta_;
};

struct StrippedCoin {
  SpecialCoin coin;
  double phase;
};

/// Splits U = e^{i phase} S with S in SU(2) and phase in [-pi/2, pi/2).
inline StrippedCoin strip_phase(const UnitaryCoin& U) {
  // det U = e^{2i phase}; arg lies in (-pi, pi], so halve and move pi/2 to -pi/2.
  double phase = 0.5 * std::arg(U.matrix().det());
  if (phase >= 0.5 * pi) phase -= pi;
  const Complex unphase = std::polar(1.0, -phase);
  Complex a = unphase * U.a();
  Complex b = unphase * U.b();
  // Unitarity noise of up to 1e-12 in U would otherwise leak into the SU(2) check.
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  return {SpecialCoin(a, b), phase};
}

/// Angle in [-pi, pi).
inline double principal_arg(Complex z) { return wrap_angle(std::arg(z)); }

inline CayleyKlein to_cayley_klein(const SpecialCoin& S) {
  CayleyKlein ck;
  ck.u = std::min(1.0, std::abs(S.a()));
  ck.theta = S.a() == Complex{} ? 0.0 : principal_arg(S.a());
  ck.phi = S.b() == Complex{} ? 0.0 : principal_arg(S.b());
  return ck;
}

inline SpecialCoin from_cayley_klein(const CayleyKlein& ck) {
  if (!(ck.u >= 0.0 && ck.u <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "Cayley-Klein u must lie in [0, 1]");
  }
  const double v = std::sqrt(1.0 - ck.u * ck.u);
  return SpecialCoin(std::polar(ck.u, ck.theta), std::polar(v, ck.phi));
}

enum class Preset { Hadamard, Identity, Antidiagonal };

inline UnitaryCoin preset_coin(Preset p) {
  switch (p) {
    case Preset::Hadamard: {
      const double s = 1.0 / std::sqrt(2.0);
      return UnitaryCoin(s, s, s, -s);
    }
    case Preset::Identity:
      return UnitaryCoin(1.0, 0.0, 0.0, 1.0);
    case Preset::Antidiagonal:
      return UnitaryCoin(0.0, 1.0, -1.0, 0.0);
  }
  throw Error(ErrorKind::UnknownPreset, "unhandled preset");
}

inline UnitaryCoin preset_coin(std::string_view name) {
  if (name == "hadamard") return preset_coin(Preset::Hadamard);
  if (name == "identity") return preset_coin(Preset::Identity);
  if (name == "antidiagonal") return preset_coin(Preset::Antidiagonal);
  throw Error(ErrorKind::UnknownPreset, "unknown coin preset '" + std::string(name) + "'");
}

/// Cayley-Klein parameters of the SU(2) part of a general coin.
inline CayleyKlein cayley_klein_of(const UnitaryCoin& U) { return to_cayley_klein(strip_phase(U).coin); }

}  // namespace weylwalk
