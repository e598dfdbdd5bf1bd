#include "bergman/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "bergman/geometry.hpp"
#include "bergman/math_util.hpp"
#include "bergman/quadrature.hpp"

namespace bergman::oracles {

double tau_disc_volume(double gamma) {
  const double s = std::sinh(gamma);
  return s * s;
}

double disc_volume(double gamma) {
  const double t = std::tanh(gamma);
  return t * t;
}

double beta_integral(double a, double b) { return beta_function(a, b); }

double monomial_ball_moment(const std::vector<int>& J, int n, double alpha) {
  if (static_cast<int>(J.size()) != n)
    throw std::invalid_argument("monomial_ball_moment: multi-index length != n");
  if (alpha <= -1.0) throw std::invalid_argument("monomial_ball_moment: alpha <= -1");
  double log_fact = 0.0;
  int total = 0;
  for (int j : J) {
    log_fact += log_gamma(j + 1.0);
    total += j;
  }
  return std::exp(log_gamma(n + alpha + 1.0) + log_fact - log_gamma(n + total + alpha + 1.0));
}

double g2_radial_z1_coeff() { return 1.0 / std::sqrt(12.0); }

double j_function(double c, double alpha, int n, double z_mag) {
  if (alpha <= -1.0) throw std::invalid_argument("j_function: alpha <= -1");
  if (z_mag < 0.0 || z_mag >= 1.0) throw std::invalid_argument("j_function: |z| outside [0,1)");
  const double sigma = (n + 1.0 + alpha + c) / 2.0;
  const double x = z_mag * z_mag;
  double term = 1.0, sum = 1.0;
  for (int m = 0; m < 20000000; ++m) {
    const double ratio = (sigma + m) * (sigma + m) / ((m + 1.0) * (m + n + alpha + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (term < 1e-16 * sum && m > 8) return sum;
  }
  return sum;
}

double bump_l1_norm(int n, double alpha, double gamma_bump, double center_mag) {
  if (alpha <= -1.0) throw std::invalid_argument("bump_l1_norm: alpha <= -1");
  if (center_mag < 0.0 || center_mag >= 1.0)
    throw std::invalid_argument("bump_l1_norm: |a| outside [0,1)");
  const double beta = n + 1.0 + alpha;
  const double T2 = std::pow(std::tanh(gamma_bump), 2);
  const double x = center_mag * center_mag;

  // n int_0^{T^2} (1-s/T^2)^2 s^q (1-s)^alpha ds, expanding (1-s)^alpha in
  // its binomial series (s <= T^2 < 1) and using int_0^1 x^m (1-x)^2 dx
  auto moment = [&](double q) {
    // coef_l = (-1)^l binom(alpha, l) T^{2(q+l+1)}, built incrementally
    double coef = std::pow(T2, q + 1.0), sum = 0.0;
    for (int l = 0; l < 100000; ++l) {
      const double e = q + l + 1.0;
      const double term = coef * 2.0 / (e * (e + 1.0) * (e + 2.0));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum) && l > 4) break;
      coef *= T2 * (l - alpha) / (l + 1.0);
    }
    return n * sum;
  };

  // angular mean of |1-<u,a>|^{-2 beta} over |u| = rho is
  // sum_m (beta)_m^2 / (m! (n)_m) (rho |a|)^{2m}
  double kernel_coef = 1.0;  // (beta)_m^2 / (m! (n)_m) x^m
  double sum = 0.0;
  for (int m = 0; m < 100000; ++m) {
    const double term = kernel_coef * moment(n - 1.0 + m);
    sum += term;
    if (term < 1e-16 * sum && m > 4) break;
    kernel_coef *= x * (beta + m) * (beta + m) / ((m + 1.0) * (n + m));
  }
  return std::pow(1.0 - x, beta) * v_alpha_constant(n, alpha) * sum;
}

std::vector<OracleRow> oracle_table() {
  std::vector<OracleRow> rows;
  rows.push_back({"tau_disc_volume(gamma=1,n=1)", tau_disc_volume(1.0), "sinh^2(1)"});
  rows.push_back({"disc_volume(gamma=1,n=1)", disc_volume(1.0), "tanh^2(1)"});
  rows.push_back({"G2_radial_z1_coeff", g2_radial_z1_coeff(), "sqrt(B(3,2)) = 1/sqrt(12)"});
  rows.push_back({"beta_integral(3,2)", beta_integral(3.0, 2.0), "B(3,2) = 1/12"});
  rows.push_back({"sphere_moment(J=K=(1,0),n=2)", monomial_sphere_moment({1, 0}, {1, 0}, 2),
                  "(n-1)! J!/(n-1+|J|)! = 1/2"});
  rows.push_back({"ball_moment(|z1|^2, n=1, alpha=0)", monomial_ball_moment({1}, 1, 0.0),
                  "Gamma(2)/Gamma(3) = 1/2"});
  rows.push_back({"ball_moment(|z1|^2, n=2, alpha=0)", monomial_ball_moment({1, 0}, 2, 0.0),
                  "Gamma(3)/Gamma(4) = 1/3"});
  rows.push_back({"norm_z1_2_0(n=1)", std::sqrt(monomial_ball_moment({1}, 1, 0.0)),
                  "sqrt(1/2)"});
  rows.push_back({"j_function(c=1,alpha=0,n=1,|z|=0)", j_function(1.0, 0.0, 1, 0.0),
                  "series at the origin = 1"});
  rows.push_back({"counterexample_slope(z=(0.5,0))", 0.75 * 0.75,
                  "(1-|z|^2)(1-|z1|^2) = 0.5625"});
  return rows;
}

}  // namespace bergman::oracles
