#include "weylwalk/weylmap.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace weylwalk;

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);
const CayleyKlein kHadamard{kSqrtHalf, pi / 2, pi / 2};

}  // namespace

TEST(weylmap, q_norm_examples) {
  std::mt19937_64 rng(1);
  const CayleyKlein ck = testutil::random_ck(rng);
  EXPECT_NEAR(q_norm(ck, -ck.theta), std::acos(ck.u), 1e-15);
  EXPECT_NEAR(q_norm({0.0, 0.3, 0.4}, 1.234), pi / 2, 1e-15);
  EXPECT_NEAR(q_norm(kHadamard, -pi / 2), pi / 4, 1e-15);
}

TEST(weylmap, q_hat_quarter_points) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    const double s = std::sin(ck.phi - ck.theta), c = std::cos(ck.phi - ck.theta);
    const double v = std::sqrt(1 - ck.u * ck.u);
    EXPECT_LT(max_abs_diff(q_hat_of_k(ck, -ck.theta), Vec3{-s, -c, 0.0}), 1e-12);
    EXPECT_LT(max_abs_diff(q_hat_of_k(ck, -pi / 2 - ck.theta), Vec3{v * c, -v * s, ck.u}), 1e-12);

    const OrbitPoint aph = q_vec_of_k(ck, -pi - ck.theta);
    EXPECT_LT(max_abs_diff(aph.q_vec, (pi - std::acos(ck.u)) * Vec3{s, c, 0.0}), 1e-12);
    const OrbitPoint quarter = q_vec_of_k(ck, pi / 2 - ck.theta);
    EXPECT_LT(max_abs_diff(quarter.q_vec, (pi / 2) * Vec3{-v * c, v * s, -ck.u}), 1e-12);
  }
}

TEST(weylmap, q_hat_unit_and_planar) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kk(-pi, pi);
  for (int i = 0; i < 20; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng, 0.0, 0.999);
    const OrbitFrame f = orbit_frame(ck);
    for (int j = 0; j < 200; ++j) {
      const OrbitPoint p = q_vec_of_k(ck, kk(rng));
      EXPECT_NEAR(norm(p.q_hat), 1.0, 1e-12);
      EXPECT_LT(max_abs_diff(p.q_vec, p.q * p.q_hat), 1e-12);
      EXPECT_LT(std::abs(dot(p.q_vec, f.e3)), 1e-12);
      EXPECT_GE(p.q, std::acos(ck.u) - 1e-12);
      EXPECT_LE(p.q, pi - std::acos(ck.u) + 1e-12);
    }
  }
}

TEST(weylmap, circle_when_u_is_zero) {
  const CayleyKlein ck{0.0, 0.4, -1.2};
  for (int j = 0; j < 64; ++j) {
    const double k = -pi + 2 * pi * j / 64;
    EXPECT_NEAR(norm(q_vec_of_k(ck, k).q_vec), pi / 2, 1e-12);
    EXPECT_NEAR(orbit_radius_polar(ck, k), pi / 2, 1e-12);
    EXPECT_NEAR(jacobian(ck, k), 1.0, 1e-15);
  }
  EXPECT_LT(max_abs_diff(orbit_frame(ck).e3, Vec3{0, 0, 1}), 1e-15);
}

TEST(weylmap, degenerate_direction_at_u_one) {
  const CayleyKlein ck{1.0, 0.5, 0.0};
  try {
    q_hat_of_k(ck, -0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateDirection);
  }
  EXPECT_THROW(q_vec_of_k(ck, -0.5), Error);
  EXPECT_THROW(jacobian(ck, 0.1), Error);
}

TEST(weylmap, dq_dk_matches_finite_difference_and_sign) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> kk(-pi, pi);
  for (int i = 0; i < 20; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    EXPECT_NEAR(dq_dk(ck, -ck.theta), 0.0, 1e-15);
    for (int j = 0; j < 100; ++j) {
      const double k = kk(rng);
      const double h = 1e-5;
      const double fd = (q_norm(ck, k + h) - q_norm(ck, k - h)) / (2 * h);
      EXPECT_NEAR(dq_dk(ck, k), fd, 1e-8);
      const double phase = wrap_angle(k + ck.theta);
      if (phase >= 0.0) {
        EXPECT_GE(dq_dk(ck, k), -1e-15);
      }
      if (phase <= 0.0) {
        EXPECT_LE(dq_dk(ck, k), 1e-15);
      }
    }
  }
}

TEST(weylmap, frame_is_right_handed_orthonormal) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng, 0.0, 1.0);
    const OrbitFrame f = orbit_frame(ck);
    EXPECT_NEAR(norm(f.e1), 1.0, 1e-12);
    EXPECT_NEAR(norm(f.e2), 1.0, 1e-12);
    EXPECT_NEAR(norm(f.e3), 1.0, 1e-12);
    EXPECT_NEAR(dot(f.e1, f.e2), 0.0, 1e-12);
    EXPECT_NEAR(dot(f.e1, f.e3), 0.0, 1e-12);
    EXPECT_NEAR(dot(f.e2, f.e3), 0.0, 1e-12);
    EXPECT_LT(max_abs_diff(cross(f.e1, f.e2), f.e3), 1e-12);
    if (ck.u < 1.0) {
      EXPECT_NEAR(dot(q_hat_of_k(ck, -ck.theta), f.e1), 1.0, 1e-12);
    }
  }
}

TEST(weylmap, gamma_quarter_points) {
  std::mt19937_64 rng(6);
  const CayleyKlein ck = testutil::random_ck(rng);
  EXPECT_NEAR(gamma_of_k(ck, -ck.theta), 0.0, 1e-14);
  EXPECT_NEAR(gamma_of_k(ck, -pi / 2 - ck.theta), pi / 2, 1e-14);
  EXPECT_NEAR(gamma_of_k(ck, pi / 2 - ck.theta), -pi / 2, 1e-14);
  EXPECT_LT(angle_distance(gamma_of_k(ck, -pi - ck.theta), -pi), 1e-14);
  EXPECT_LT(angle_distance(k_of_gamma(ck, 0.0), -ck.theta), 1e-14);
  EXPECT_LT(angle_distance(k_of_gamma(ck, -pi), -pi - ck.theta), 1e-14);
}

TEST(weylmap, gamma_round_trip_and_defining_relation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kk(-pi, pi);
  for (int i = 0; i < 1000; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    const double k = kk(rng);
    const double g = gamma_of_k(ck, k);
    EXPECT_GE(g, -pi);
    EXPECT_LT(g, pi);
    EXPECT_LT(angle_distance(k_of_gamma(ck, g), k), 1e-12);
    EXPECT_NEAR(std::cos(g), dot(q_hat_of_k(ck, k), orbit_frame(ck).e1), 1e-12);
  }
}

TEST(weylmap, polar_radius_matches_arccos_form) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> gg(-pi, pi);
  EXPECT_NEAR(orbit_radius_polar(kHadamard, 0.0), pi / 4, 1e-15);
  EXPECT_NEAR(orbit_radius_polar(kHadamard, pi / 2), pi / 2, 1e-15);
  EXPECT_NEAR(orbit_radius_polar(kHadamard, -pi / 2), pi / 2, 1e-15);
  for (int i = 0; i < 1000; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    const double g = gg(rng);
    const double q = orbit_radius_polar(ck, g);
    EXPECT_NEAR(q, q_norm(ck, k_of_gamma(ck, g)), 1e-10);
    if (std::abs(std::cos(g)) > 1e-3) {
      EXPECT_NEAR(std::tan(q) * std::cos(g) - std::sqrt(1 - ck.u * ck.u) / ck.u, 0.0, 1e-9);
    } else {
      EXPECT_NEAR(q, pi / 2, 2e-3);
    }
  }
}

TEST(weylmap, polar_point_matches_k_parameterisation) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> gg(-pi, pi);
  const CayleyKlein ck0 = testutil::random_ck(rng);
  const double qmin = std::acos(ck0.u);
  const double s = std::sin(ck0.phi - ck0.theta), c = std::cos(ck0.phi - ck0.theta);
  EXPECT_LT(max_abs_diff(orbit_point_polar(ck0, qmin, 0.0), -qmin * Vec3{s, c, 0.0}), 1e-15);
  EXPECT_EQ(norm(orbit_point_polar(ck0, 0.0, 1.0)), 0.0);
  for (int i = 0; i < 1000; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    const double g = gg(rng);
    const Vec3 polar = orbit_point_polar(ck, orbit_radius_polar(ck, g), g);
    EXPECT_LT(max_abs_diff(polar, q_vec_of_k(ck, k_of_gamma(ck, g)).q_vec), 1e-10);
  }
}

TEST(weylmap, jacobian_values_and_finite_difference) {
  EXPECT_NEAR(jacobian(kHadamard, pi / 2), std::sqrt(2.0), 1e-15);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> gg(-pi, pi);
  for (int i = 0; i < 20; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    for (int j = 0; j < 100; ++j) {
      const double g = gg(rng);
      const double h = 1e-5;
      const double dk = std::remainder(k_of_gamma(ck, g + h) - k_of_gamma(ck, g - h), 2 * pi);
      EXPECT_GT(jacobian(ck, g), 0.0);
      EXPECT_NEAR(jacobian(ck, g), std::abs(dk) / (2 * h), 1e-8);
    }
  }
}

TEST(weylmap, orbit_integration) {
  EXPECT_NEAR(integrate_over_orbit(kHadamard, [](double) { return 1.0; }), 1.0, 1e-10);
  EXPECT_NEAR(integrate_over_orbit(kHadamard, [](double k) { return std::cos(k); }), 0.0, 1e-10);
  const double direct = periodic_mean([](double k) { return std::pow(std::cos(k + pi / 2), 2); }, 4096);
  EXPECT_NEAR(integrate_over_orbit(kHadamard, [](double k) { return std::pow(std::cos(k + pi / 2), 2); }), direct,
              1e-10);
  EXPECT_NEAR(direct, 0.5, 1e-14);
  EXPECT_THROW(integrate_over_orbit(kHadamard, [](double) { return 1.0; }, 32), Error);
}

TEST(weylmap, change_of_variables_random_trig_polynomials) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> coef;
  std::uniform_int_distribution<int> deg(1, 8);
  for (int i = 0; i < 20; ++i) {
    const CayleyKlein ck = testutil::random_ck(rng);
    const int d = deg(rng);
    std::vector<double> ca(d + 1), sa(d + 1);
    for (int m = 0; m <= d; ++m) {
      ca[m] = coef(rng);
      sa[m] = coef(rng);
    }
    auto f = [&](double k) {
      double s = 0.0;
      for (int m = 0; m <= d; ++m) s += ca[m] * std::cos(m * k) + sa[m] * std::sin(m * k);
      return s;
    };
    EXPECT_NEAR(integrate_over_orbit(ck, f), periodic_mean(f, 4096), 1e-9);
    EXPECT_NEAR(periodic_mean(f, 4096), ca[0], 1e-12);
  }
}
