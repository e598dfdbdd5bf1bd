#include <doctest.h>

#include <cmath>
#include <vector>

#include "bergman/math_util.hpp"

using namespace bergman;

TEST_CASE("beta_function agrees with factorial identity") {
  // B(a,b) = (a-1)!(b-1)!/(a+b-1)! at integers
  CHECK(beta_function(3, 2) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(beta_function(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta_function(2.5, 1.0) == doctest::Approx(1.0 / 2.5).epsilon(1e-14));
  // symmetry
  CHECK(beta_function(1.7, 3.3) == doctest::Approx(beta_function(3.3, 1.7)).epsilon(1e-14));
}

TEST_CASE("stirling_second_row matches small closed forms") {
  const auto r0 = stirling_second_row(0);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0] == 1.0);

  const auto r3 = stirling_second_row(3);  // S(3,j) = 0,1,3,1
  REQUIRE(r3.size() == 4);
  CHECK(r3[0] == 0.0);
  CHECK(r3[1] == 1.0);
  CHECK(r3[2] == 3.0);
  CHECK(r3[3] == 1.0);

  const auto r5 = stirling_second_row(5);  // S(5,2) = 15, S(5,3) = 25
  CHECK(r5[2] == 15.0);
  CHECK(r5[3] == 25.0);
}

TEST_CASE("linear_fit recovers an exact line") {
  std::vector<double> xs{0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.5 * x - 0.75);
  const LinearFit fit = linear_fit(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(fit.slope_stderr == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("kahan_sum handles cancellation-prone sequences") {
  std::vector<double> vals;
  for (int i = 0; i < 100000; ++i) vals.push_back(1e-10);
  vals.push_back(1.0);
  CHECK(kahan_sum(vals) == doctest::Approx(1.0 + 1e-5).epsilon(1e-15));
}
