#ifndef BERGMAN_FUNCTIONALS_HPP
#define BERGMAN_FUNCTIONALS_HPP

#include <functional>
#include <limits>
#include <string>

#include "bergman/functions.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

/// Nonnegative scalar field on the ball together with its provenance.
struct PointwiseField {
  std::function<double(const Point&)> eval;
  std::string provenance;
};

/// Resolution of a Bergman-ball quadrature (radial x spherical).
struct BallResolution {
  int radial = 6;
  int sphere = 16;
  std::uint64_t seed = 42;
  BallResolution doubled() const { return {2 * radial, 2 * sphere, seed}; }
};

/// Candidate-center grid for maximal functionals plus the per-ball resolution.
struct CenterGrid {
  int radial = 3;
  int angular = 8;
  BallResolution inner{4, 12, 42};
  CenterGrid doubled() const { return {2 * radial, 2 * angular, inner.doubled()}; }
};

inline constexpr double kQInfinity = std::numeric_limits<double>::infinity();

/// Tent/area functional A^(q)_gamma over the field; q = infinity gives the
/// node maximum (a certified lower bound of the sup).
double area_integral_field(const std::function<double(const Point&)>& field, const Point& z,
                           double q, double gamma, const BallResolution& res);
double area_integral(const HoloFun& f, const Point& z, double q, double gamma,
                     const BallResolution& res);

/// Non-central maximal functional: grid maximum over candidate centers
/// w = phi_z(u), u on a polar grid in the Euclidean ball of radius tanh(gamma),
/// of the q-averages against v_alpha over D(w, gamma).
double maximal_field(const std::function<double(const Point&)>& field, const Point& z,
                     double q, double gamma, double alpha, const CenterGrid& grid);
double maximal_fn(const HoloFun& f, const Point& z, double q, double gamma, double alpha,
                  const CenterGrid& grid);

/// Hardy-Littlewood maximal function of a (not necessarily holomorphic) field:
/// the q = 1 case of the maximal functional.
double hl_maximal(const PointwiseField& g, const Point& z, double gamma, double alpha,
                  const CenterGrid& grid);

enum class GVariant { radial, gradient, invariant };

/// Littlewood-Paley g-functions. radial/gradient use the weight dr/(1-r) with
/// the damping factor (1-r); invariant uses dr/(1-r|z|) on |grad~ f(rz)|.
double g_function(const HoloFun& f, const Point& z, double q, GVariant variant,
                  int segments, int depth = 40);

/// (sum_i w_i field(node_i)^p)^(1/p) over a ball_v_alpha rule.
double lp_norm(const PointwiseField& field, double p, const QuadRule& rule);

/// lp_norm of |f|.
double bergman_norm(const HoloFun& f, double p, const QuadRule& rule);

/// Smallest N >= 0 with pN + alpha > -1.
int generalized_norm_order(double p, double alpha);

/// |f(0)| + (int (1-|z|^2)^{pN} |R^N f|^p dv_alpha)^{1/p}, alpha unrestricted.
double generalized_norm(const HoloFun& f, double p, double alpha, const BallResolution& res);

/// Area/maximal functionals of the weighted field (1-|w|^2)^k |R^k f(w)|.
double besov_area(const HoloFun& f, const Point& z, double q, double gamma, int k,
                  const BallResolution& res);
double besov_maximal(const HoloFun& f, const Point& z, double q, double gamma, double alpha,
                     int k, const CenterGrid& grid);

/// Kernel operator of the two-parameter family:
/// Sf(z) = (1-|z|^2)^a int (1-|w|^2)^b |1-<z,w>|^{-(n+1+a+b)} f(w) dv(w),
/// evaluated on a ball rule for the unweighted measure dv.
double operator_s(const PointwiseField& f, const Point& z, double a_exp, double b_exp,
                  const QuadRule& rule);

}  // namespace bergman

#endif
