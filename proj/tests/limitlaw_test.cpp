#include "weylwalk/limitlaw.hpp"

#include <cmath>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace weylwalk;

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);
const SpecialCoin kStrippedHadamard(Complex(0, kSqrtHalf), Complex(0, kSqrtHalf));
const Qubit kUp(1.0, 0.0);
const Qubit kSymmetric(kSqrtHalf, Complex(0, kSqrtHalf));

/// Independent oracle: integral of y^r nu(y) directly in y with tanh-sinh,
/// which tolerates the inverse square-root endpoint singularities. The
/// density is written out here from the complement distance |xc| = u - |y|
/// so that u^2 - y^2 keeps full precision next to the endpoints.
double y_space_moment(int r, const KonnoLaw& law) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double u = law.u;
  auto integrand = [&](double y, double xc) {
    const double gap = std::abs(xc);
    const double mu = std::sqrt(1.0 - u * u) / (pi * (1.0 - y * y) * std::sqrt(gap * (2.0 * u - gap)));
    return std::pow(y, r) * mu * (1.0 - law.c_asym * y);
  };
  return integrator.integrate(integrand, -u, u);
}

}  // namespace

TEST(limitlaw, quadrature_oracle_second_moment) {
  // The value frozen in the walk acceptance checks: int y^2 mu(y; 1/sqrt2) dy = 1 - 1/sqrt2.
  EXPECT_NEAR(y_space_moment(2, {kSqrtHalf, 0.0}), 1.0 - kSqrtHalf, 1e-10);
  EXPECT_NEAR(y_space_moment(0, {kSqrtHalf, 0.0}), 1.0, 1e-10);
}

TEST(limitlaw, konno_mu) {
  EXPECT_NEAR(konno_mu(0.0, kSqrtHalf), 1.0 / pi, 1e-15);
  EXPECT_GT(konno_mu(kSqrtHalf - 1e-12, kSqrtHalf), 1e4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> yy(-0.69, 0.69);
  for (int i = 0; i < 100; ++i) {
    const double y = yy(rng);
    EXPECT_EQ(konno_mu(y, kSqrtHalf), konno_mu(-y, kSqrtHalf));
  }
  try {
    konno_mu(0.8, kSqrtHalf);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfSupport);
  }
}

TEST(limitlaw, asymmetry_factor_examples) {
  EXPECT_NEAR(asymmetry_factor(kUp, kStrippedHadamard), 1.0, 1e-15);
  EXPECT_NEAR(asymmetry_factor(kSymmetric, kStrippedHadamard), 0.0, 1e-15);
  EXPECT_NEAR(asymmetry_factor(Qubit(0.0, 1.0), kStrippedHadamard), -1.0, 1e-15);
  try {
    asymmetry_factor(kUp, SpecialCoin(1.0, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCoin);
  }
  EXPECT_THROW(asymmetry_factor(kUp, SpecialCoin(0.0, 1.0)), Error);
}

TEST(limitlaw, asymmetry_forms_agree) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Qubit q = testutil::random_qubit(rng);
    const CayleyKlein ck = testutil::random_ck(rng);
    const double c15 = asymmetry_factor(q, from_cayley_klein(ck));
    EXPECT_NEAR(c15, detail::asymmetry_cayley_klein(q, ck), 1e-13);
    // Positivity of the density needs |c| u <= 1.
    EXPECT_LE(std::abs(c15) * ck.u, 1.0 + 1e-12);
  }
}

TEST(limitlaw, konno_nu_support_and_symmetry) {
  const KonnoLaw law{kSqrtHalf, 0.4};
  EXPECT_EQ(konno_nu(kSqrtHalf, law), 0.0);
  EXPECT_EQ(konno_nu(-0.9, law), 0.0);
  const KonnoLaw sym{kSqrtHalf, 0.0};
  EXPECT_EQ(konno_nu(0.3, sym), konno_mu(0.3, kSqrtHalf));
  EXPECT_EQ(konno_nu(0.3, sym), konno_nu(-0.3, sym));
}

TEST(limitlaw, normalization_gamma_and_y_routes) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const KonnoLaw law = KonnoLaw::from(testutil::random_qubit(rng), from_cayley_klein(testutil::random_ck(rng)));
    EXPECT_NEAR(integrate_against_nu(law, [](double) { return 1.0; }), 1.0, 1e-8);
    EXPECT_NEAR(y_space_moment(0, law), 1.0, 1e-8);
    std::uniform_real_distribution<double> yy(-law.u, law.u);
    for (int j = 0; j < 20; ++j) EXPECT_GE(konno_nu(yy(rng), law), 0.0);
  }
}

TEST(limitlaw, limit_moment_examples) {
  const KonnoLaw h_up = KonnoLaw::from(kUp, kStrippedHadamard);
  EXPECT_NEAR(limit_moment(0, h_up), 1.0, 1e-10);
  EXPECT_NEAR(limit_moment(2, h_up), 1.0 - kSqrtHalf, 1e-8);
  EXPECT_NEAR(limit_moment(1, h_up), -(1.0 - kSqrtHalf), 1e-8);
  const KonnoLaw sym = KonnoLaw::from(kSymmetric, kStrippedHadamard);
  for (int r : {1, 3, 5, 7}) EXPECT_NEAR(limit_moment(r, sym), 0.0, 1e-12);
}

TEST(limitlaw, limit_moment_matches_y_space_oracle) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const KonnoLaw law = KonnoLaw::from(testutil::random_qubit(rng), from_cayley_klein(testutil::random_ck(rng)));
    for (int r = 0; r <= 6; ++r) EXPECT_NEAR(limit_moment(r, law), y_space_moment(r, law), 1e-8) << "r=" << r;
  }
}

TEST(limitlaw, k_route_examples) {
  const CayleyKlein hck = to_cayley_klein(kStrippedHadamard);
  EXPECT_NEAR(limit_moment_k(0, kUp, hck), 1.0, 1e-10);
  EXPECT_NEAR(limit_moment_k(1, kUp, hck), -(1.0 - kSqrtHalf), 1e-7);
}

TEST(limitlaw, k_route_matches_gamma_route) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Qubit q = testutil::random_qubit(rng);
    const CayleyKlein ck = testutil::random_ck(rng);
    const KonnoLaw law = KonnoLaw::from(q, from_cayley_klein(ck));
    for (int r = 0; r <= 6; ++r) EXPECT_NEAR(limit_moment_k(r, q, ck), limit_moment(r, law), 1e-8) << "r=" << r;
  }
}

TEST(limitlaw, convergence_report_hadamard_symmetric) {
  const UnitaryCoin h = preset_coin(Preset::Hadamard);
  const auto report = convergence_report(h, kSymmetric, 2, {100, 200, 400});
  ASSERT_EQ(report.rows.size(), 9u);
  for (const auto& row : report.rows) {
    if (row.r == 0) {
      EXPECT_NEAR(row.gap, 0.0, 1e-10);
    }
    if (row.r == 2) {
      EXPECT_NEAR(row.limit, 1.0 - kSqrtHalf, 1e-8);
    }
  }
  EXPECT_LE(report.rows.back().gap, 0.01);
  EXPECT_TRUE(report.monotone[2]);
}

TEST(limitlaw, convergence_report_first_moment_depends_on_qubit) {
  const UnitaryCoin h = preset_coin(Preset::Hadamard);
  const auto report = convergence_report(h, kUp, 1, {100, 200, 400, 800});
  std::vector<double> gaps;
  for (const auto& row : report.rows) {
    if (row.r == 1) {
      EXPECT_NEAR(row.limit, -(1.0 - kSqrtHalf), 1e-8);
      gaps.push_back(row.gap);
    }
  }
  EXPECT_LT(gaps.back(), gaps.front());
  EXPECT_TRUE(report.monotone[1]);
  EXPECT_THROW(convergence_report(h, kUp, 1, {200, 100}), Error);
}

TEST(limitlaw, weak_convergence_within_five_over_n) {
  const UnitaryCoin h = preset_coin(Preset::Hadamard);
  std::vector<std::int64_t> steps;
  for (int n = 100; n <= 1000; n += 100) steps.push_back(n);
  for (const Qubit& q : {kUp, kSymmetric, Qubit(0.0, 1.0)}) {
    const auto report = convergence_report(h, q, 3, steps);
    for (const auto& row : report.rows) EXPECT_LE(row.gap, 5.0 / static_cast<double>(row.n)) << row.n << " " << row.r;
  }
}

TEST(limitlaw, global_phase_invariance) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int i = 0; i < 20; ++i) {
    const UnitaryCoin coin = from_cayley_klein(testutil::random_ck(rng)).to_unitary();
    const UnitaryCoin phased = coin.with_phase(ang(rng));
    const Qubit q = testutil::random_qubit(rng);
    const KonnoLaw a = KonnoLaw::from(q, coin), b = KonnoLaw::from(q, phased);
    EXPECT_NEAR(a.u, b.u, 1e-12);
    EXPECT_NEAR(a.c_asym, b.c_asym, 1e-12);
    for (int r = 0; r <= 4; ++r) EXPECT_NEAR(limit_moment(r, a), limit_moment(r, b), 1e-12);
  }
}
