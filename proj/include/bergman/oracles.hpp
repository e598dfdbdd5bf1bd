#ifndef BERGMAN_ORACLES_HPP
#define BERGMAN_ORACLES_HPP

#include <string>
#include <vector>

namespace bergman::oracles {

/// tau(D(0,gamma)) for n = 1: tanh^2(gamma)/(1-tanh^2(gamma)) = sinh^2(gamma).
double tau_disc_volume(double gamma);

/// v(D(0,gamma)) for n = 1 with the normalized volume: tanh^2(gamma).
double disc_volume(double gamma);

/// int_0^1 r^{a-1} (1-r)^{b-1} dr.
double beta_integral(double a, double b);

/// int_B |w^J|^2 dv_alpha = Gamma(n+alpha+1) J! / Gamma(n+|J|+alpha+1).
double monomial_ball_moment(const std::vector<int>& J, int n, double alpha);

/// Coefficient of the closed form G^(2)_R(z_1)(z) = |z_1| sqrt(B(3,2)) = |z_1|/sqrt(12).
double g2_radial_z1_coeff();

/// J_{c,alpha}(z) = int dv_alpha(w)/|1-<z,w>|^{n+1+alpha+c}, evaluated by the
/// exact series obtained from the binomial expansion of the kernel and the
/// monomial ball moments. Valid for |z| < 1.
double j_function(double c, double alpha, int n, double z_mag);

/// L^1_alpha norm of the transported bump w -> (1 - |phi_a(w)|^2/T^2)_+^2
/// with T = tanh(gamma_bump) and |a| = center_mag, by the exact double series
/// from the binomial kernel expansion and incomplete moment integrals.
double bump_l1_norm(int n, double alpha, double gamma_bump, double center_mag);

struct OracleRow {
  std::string name;
  double value;
  std::string derivation;
};

/// The built-in analytic values used by the test suite.
std::vector<OracleRow> oracle_table();

}  // namespace bergman::oracles

#endif
