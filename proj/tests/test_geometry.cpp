#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/geometry.hpp"
#include "test_support.hpp"

using namespace bergman;

TEST_CASE("inner and norms") {
  Point z(2), w(2);
  z << Complex(0.3, 0.1), Complex(-0.2, 0.4);
  w << Complex(0.0, 0.5), Complex(0.1, 0.0);
  // <z,w> = sum z_k conj(w_k)
  const Complex expect = z[0] * std::conj(w[0]) + z[1] * std::conj(w[1]);
  CHECK(std::abs(inner(z, w) - expect) < 1e-15);
  CHECK(norm_sq(z) == doctest::Approx(0.09 + 0.01 + 0.04 + 0.16).epsilon(1e-15));
  CHECK(one_minus_norm_sq(z) == doctest::Approx(1.0 - norm_sq(z)).epsilon(1e-14));
}

TEST_CASE("one_minus_norm_sq is accurate at the boundary") {
  Point z(1);
  const double r = 1.0 - 1e-12;
  z << Complex(r, 0.0);
  CHECK(one_minus_norm_sq(z) == doctest::Approx((1.0 - r) * (1.0 + r)).epsilon(1e-10));
  CHECK(is_interior(z));
  z << Complex(1.0, 0.0);
  CHECK(!is_interior(z));
  CHECK_THROWS_AS(require_interior(z, "test"), std::domain_error);
}

TEST_CASE("Mobius map defining properties at random samples") {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      const Point a = testsup::ball_point(n, rng);
      const Point z = testsup::ball_point(n, rng);
      const MobiusMap phi(a);

      CHECK((phi(Point::Zero(n)) - a).norm() < 1e-12);
      CHECK(phi(a).norm() < 1e-12);
      CHECK((phi(phi(z)) - z).norm() < 1e-12);

      // 1 - |phi_a(z)|^2 = (1-|a|^2)(1-|z|^2)/|1-<z,a>|^2
      const double lhs = one_minus_norm_sq(phi(z));
      const double rhs = one_minus_norm_sq(a) * one_minus_norm_sq(z) /
                         std::norm(Complex(1.0, 0.0) - inner(z, a));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("phi_0 is minus the identity") {
  Point z(2);
  z << Complex(0.2, -0.3), Complex(0.0, 0.6);
  const MobiusMap phi(Point::Zero(2));
  CHECK((phi(z) + z).norm() < 1e-15);
}

TEST_CASE("Bergman distance: symmetry, identity, known value") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      const Point z = testsup::ball_point(n, rng);
      const Point w = testsup::ball_point(n, rng);
      CHECK(std::abs(bergman_distance(z, w) - bergman_distance(w, z)) < 1e-12);
      CHECK(bergman_distance(z, z) < 1e-12);
    }
  // beta(0, z) = artanh |z|
  Point z(1);
  z << Complex(0.5, 0.0);
  CHECK(bergman_distance(Point::Zero(1), z) == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
}

TEST_CASE("in_ball membership matches the distance") {
  std::mt19937_64 rng(11);
  const double gamma = 0.8;
  for (int trial = 0; trial < 200; ++trial) {
    const Point c = testsup::ball_point(2, rng);
    const Point w = testsup::ball_point(2, rng);
    CHECK(in_ball(w, c, gamma) == (bergman_distance(w, c) < gamma));
  }
}

TEST_CASE("v_alpha constant and densities") {
  // c_alpha = Gamma(n+alpha+1)/(n! Gamma(alpha+1))
  CHECK(v_alpha_constant(1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v_alpha_constant(1, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(v_alpha_constant(2, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(v_alpha_constant(3, 2.0) == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(v_alpha_constant(2, -2.0) == 1.0);  // extended-range convention

  Point z(2);
  z << Complex(0.6, 0.0), Complex(0.0, 0.0);
  const double om = one_minus_norm_sq(z);
  CHECK(density_v_alpha(z, 1.0) ==
        doctest::Approx(v_alpha_constant(2, 1.0) * om).epsilon(1e-14));
  CHECK(density_tau(z) == doctest::Approx(std::pow(om, -3.0)).epsilon(1e-13));
}

TEST_CASE("triangle inequality on random triples") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const Point a = testsup::ball_point(2, rng);
    const Point b = testsup::ball_point(2, rng);
    const Point c = testsup::ball_point(2, rng);
    CHECK(bergman_distance(a, c) <=
          bergman_distance(a, b) + bergman_distance(b, c) + 1e-10);
  }
}
