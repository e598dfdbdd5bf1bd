#ifndef BERGMAN_GEOMETRY_HPP
#define BERGMAN_GEOMETRY_HPP

#include <Eigen/Dense>
#include <complex>

namespace bergman {

using Complex = std::complex<double>;

/// A point of the closed unit ball of C^n. The dimension n is carried by the
/// vector size; all operations check it.
using Point = Eigen::VectorXcd;

/// Hermitian inner product <z,w> = sum_k z_k conj(w_k).
Complex inner(const Point& z, const Point& w);

/// |z|^2 with compensated summation.
double norm_sq(const Point& z);

/// 1 - |z|^2 computed as (1-|z|)(1+|z|) to avoid cancellation near the
/// boundary.
double one_minus_norm_sq(const Point& z);

/// True iff |z| < 1 (with no tolerance slack).
bool is_interior(const Point& z);

/// Throws std::domain_error unless |z| < 1.
void require_interior(const Point& z, const char* who);

/// The involutive automorphism phi_a of the unit ball swapping 0 and a.
///
/// phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>), where P_a is the
/// orthogonal projection onto span{a}, Q_a = I - P_a and s_a = sqrt(1-|a|^2).
/// phi_0 = -identity.
class MobiusMap {
 public:
  explicit MobiusMap(Point center);

  Point operator()(const Point& z) const;
  const Point& center() const { return center_; }
  double s() const { return s_; }
  int dim() const { return static_cast<int>(center_.size()); }

 private:
  Point center_;
  double center_norm_sq_;
  double s_;  // sqrt(1 - |a|^2), cached
};

/// Bergman metric beta(z,w) = artanh |phi_z(w)|.
double bergman_distance(const Point& z, const Point& w);

/// Membership in the Bergman metric ball D(center, gamma).
bool in_ball(const Point& w, const Point& center, double gamma);

/// Normalizing constant of the weighted measure v_alpha:
/// Gamma(n+alpha+1)/(n! Gamma(alpha+1)) for alpha > -1, and 1 otherwise.
double v_alpha_constant(int n, double alpha);

/// Density of dv_alpha with respect to the normalized volume dv.
double density_v_alpha(const Point& z, double alpha);

/// Density of the invariant measure: (1-|z|^2)^{-(n+1)}.
double density_tau(const Point& z);

}  // namespace bergman

#endif
