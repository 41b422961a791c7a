#pragma once

#include <cmath>
#include <random>

#include "weylwalk/coin.hpp"

namespace weylwalk::testutil {

/// Cayley-Klein parameters with u drawn from [u_lo, u_hi] and uniform angles.
inline CayleyKlein random_ck(std::mt19937_64& rng, double u_lo = 0.05, double u_hi = 0.95) {
  std::uniform_real_distribution<double> uu(u_lo, u_hi);
  std::uniform_real_distribution<double> ang(-pi, pi);
  return {uu(rng), ang(rng), ang(rng)};
}

/// Haar-distributed SU(2) parameters: |a|^2 uniform on [0, 1].
inline CayleyKlein haar_ck(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> ang(-pi, pi);
  return {std::sqrt(unit(rng)), ang(rng), ang(rng)};
}

inline Qubit random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return Qubit(a / n, b / n);
}

/// e^{i phase} * SU(2) coin, covering all of U(2).
inline UnitaryCoin random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-pi, pi);
  return from_cayley_klein(haar_ck(rng)).to_unitary().with_phase(ang(rng));
}

}  // namespace weylwalk::testutil
