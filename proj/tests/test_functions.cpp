#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"
#include "bergman/oracles.hpp"
#include "bergman/quadrature.hpp"
#include "test_support.hpp"

using namespace bergman;

namespace {

std::vector<HoloFun> sample_family(int n) {
  std::vector<HoloFun> out;
  out.push_back(HoloFun::constant(Complex(2.0, -1.0), n));
  std::vector<int> e1(n, 0);
  e1[0] = 1;
  out.push_back(HoloFun::monomial(e1));
  std::vector<int> e2(n, 1);
  e2[0] = 2;
  out.push_back(HoloFun::monomial(e2));
  Point a = 0.6 * Point::Unit(n, 0);
  out.push_back(HoloFun::kernel_power(a, 3.0));
  out.push_back(HoloFun::atom(a, n + 3.5, 2.0, 0.0));
  out.push_back(HoloFun::combination(
      {{Complex(1.5, 0.0), out[1]}, {Complex(0.0, -2.0), out[3]}}));
  return out;
}

}  // namespace

TEST_CASE("closed-form gradients agree with central finite differences") {
  std::mt19937_64 rng(31);
  const double h = 1e-6;
  for (int n : {1, 2, 3})
    for (const HoloFun& f : sample_family(n))
      for (int trial = 0; trial < 10; ++trial) {
        const Point z = testsup::ball_point(n, rng, 0.9);
        const Point grad = f.gradient(z);
        for (int k = 0; k < n; ++k) {
          // holomorphic: the x_k central difference approximates df/dz_k
          Point zp = z, zm = z;
          zp[k] += h;
          zm[k] -= h;
          const Complex fd = (f.eval(zp) - f.eval(zm)) / (2.0 * h);
          const double scale = std::max(1.0, std::abs(grad[k]));
          CHECK(std::abs(fd - grad[k]) / scale < 1e-6);
        }
      }
}

TEST_CASE("radial derivative is z . grad and iterates correctly") {
  std::mt19937_64 rng(37);
  for (int n : {1, 2})
    for (const HoloFun& f : sample_family(n)) {
      const Point z = testsup::ball_point(n, rng, 0.8);
      const Point grad = f.gradient(z);
      Complex rf(0.0, 0.0);
      for (int k = 0; k < n; ++k) rf += z[k] * grad[k];
      CHECK(std::abs(f.radial_derivative(z, 1) - rf) < 1e-10 * (1.0 + std::abs(rf)));
      CHECK(std::abs(f.radial_derivative(z, 0) - f.eval(z)) < 1e-14);
    }
  // R^2 z1^3 = 9 z1^3
  const HoloFun m = HoloFun::monomial({3});
  Point z(1);
  z << Complex(0.4, 0.2);
  const Complex expect = 9.0 * std::pow(z[0], 3);
  CHECK(std::abs(m.radial_derivative(z, 2) - expect) < 1e-13);
}

TEST_CASE("invariant gradient identity vs direct pullback difference (n=1)") {
  std::mt19937_64 rng(41);
  const double h = 1e-6;
  for (const HoloFun& f : sample_family(1))
    for (int trial = 0; trial < 20; ++trial) {
      const Point z = testsup::ball_point(1, rng, 0.9);
      const MobiusMap phi(z);
      // |d(f o phi_z)/dw| at w = 0 by central differences
      Point wp(1), wm(1);
      wp << Complex(h, 0.0);
      wm << Complex(-h, 0.0);
      const Complex d = (f.eval(phi(wp)) - f.eval(phi(wm))) / (2.0 * h);
      CHECK(std::abs(f.invariant_gradient_norm(z) - std::abs(d)) <
            1e-6 * (1.0 + std::abs(d)));
    }
}

TEST_CASE("invariant gradient of z1 on the real axis (n=1)") {
  for (double x : {0.0, 0.3, 0.7, 0.95}) {
    Point z(1);
    z << Complex(x, 0.0);
    CHECK(HoloFun::monomial({1}).invariant_gradient_norm(z) ==
          doctest::Approx(1.0 - x * x).epsilon(1e-12));
  }
}

TEST_CASE("atom hypothesis gap and normalization oracle") {
  CHECK(atom_hypothesis_gap(1, 3.0, 2.0, 0.0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(atom_hypothesis_gap(2, 2.0, 1.0, 0.0) < 0.0);
  CHECK_THROWS(HoloFun::atom(0.5 * Point::Unit(1, 0), 1.0, 2.0, 0.0));

  // ||atom||_p^p = (1-|a|^2)^c J_{c,alpha}(|a|) with c = p b - (n+1+alpha)
  const int n = 1;
  const double p = 2.0, alpha = 0.0, b = 3.0, r = 0.5;
  const double c = p * b - (n + 1.0 + alpha);
  const Point a = r * Point::Unit(n, 0);
  const HoloFun atom = HoloFun::atom(a, b, p, alpha);
  const QuadRule rule = ball_rule(n, alpha, 48, 96, 42);
  const double norm_p =
      integrate(rule, [&](const Point& z) { return std::pow(std::abs(atom.eval(z)), p); })
          .value;
  const double exact = std::pow(1.0 - r * r, c) * oracles::j_function(c, alpha, n, r);
  CHECK(norm_p == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("lattice separation and covering") {
  std::mt19937_64 rng(43);
  for (int n : {1, 2}) {
    const double delta = 0.5, r_max = 0.95;
    const Lattice lat = build_lattice(n, delta, r_max, 42);
    REQUIRE(lat.centers.size() >= 4);
    CHECK(lat.dim == n);
    for (std::size_t i = 0; i < lat.centers.size(); ++i)
      for (std::size_t j = i + 1; j < lat.centers.size(); ++j)
        CHECK(bergman_distance(lat.centers[i], lat.centers[j]) >= delta - 1e-12);
    // every sampled point within |z| <= r_max is within 2 delta of a center
    for (int trial = 0; trial < 200; ++trial) {
      const Point z = testsup::ball_point(n, rng, r_max);
      double best = 1e300;
      for (const Point& c : lat.centers) best = std::min(best, bergman_distance(z, c));
      CHECK(best <= 2.0 * delta + 1e-9);
    }
  }
}

TEST_CASE("synthesize_atomic evaluates the finite series") {
  const Lattice lat = build_lattice(1, 0.6, 0.9, 42);
  const double b = 3.5, p = 2.0, alpha = 0.0;
  const std::vector<Complex> coeffs{Complex(1.0, 0.0), Complex(0.0, -0.5),
                                    Complex(0.25, 0.25)};
  REQUIRE(lat.centers.size() >= coeffs.size());
  const HoloFun f = synthesize_atomic(coeffs, lat, b, p, alpha);
  Point z(1);
  z << Complex(0.3, -0.2);
  Complex expect(0.0, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    expect += coeffs[k] * HoloFun::atom(lat.centers[k], b, p, alpha).eval(z);
  CHECK(std::abs(f.eval(z) - expect) < 1e-12 * (1.0 + std::abs(expect)));
}
