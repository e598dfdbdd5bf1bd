#ifndef BERGMAN_QUADRATURE_HPP
#define BERGMAN_QUADRATURE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

enum class Target {
  ball_v_alpha,
  sphere_sigma,
  bergman_ball_tau,
  bergman_ball_v_alpha,
  radial_singular,
  radial_plain
};

enum class ErrorMethod { nested_rule_difference, mc_standard_error };

enum class RadialKind { one_minus_r, one_minus_r_absz };

struct RuleMeta {
  int radial_size = 0;
  int sphere_size = 0;
  int segments = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  double z_mag = 0.0;
  bool monte_carlo = false;
};

struct ErrorEstimate {
  double value = 0.0;
  double abs_err = 0.0;
  ErrorMethod method = ErrorMethod::nested_rule_difference;
};

/// Immutable node/weight list with a declared target measure and a nested
/// coarse companion used for error estimation.
struct QuadRule {
  Target target = Target::ball_v_alpha;
  std::vector<Point> nodes;    // point-valued rules
  std::vector<double> radii;   // radial rules
  std::vector<double> weights;
  RuleMeta meta;
  std::shared_ptr<const QuadRule> coarse;

  std::size_t size() const { return weights.size(); }
  double total_mass() const;
};

/// Gauss-Jacobi rule on (0,1) for the weight (1-x)^a x^b, a,b > -1.
/// Weights sum to B(a+1, b+1).
void gauss_jacobi01(int m, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Gauss-Legendre rule on (lo, hi).
void gauss_legendre(int m, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Normalized surface measure on the unit sphere of C^n. For n = 1 the
/// size-point uniform circle rule; for n >= 2 a deterministic product rule in
/// simplex/torus coordinates with roughly `size` nodes.
QuadRule sphere_rule(int n, int size, std::uint64_t seed);

/// Seeded Monte Carlo sphere rule (normalized standard Gaussian vectors,
/// equal weights). Kept as an independent cross-check of sphere_rule.
QuadRule sphere_rule_mc(int n, int size, std::uint64_t seed);

/// Closed form of int_S zeta^J conj(zeta)^K dsigma: 0 for J != K, else
/// (n-1)! J! / (n-1+|J|)!.
double monomial_sphere_moment(const std::vector<int>& J, const std::vector<int>& K, int n);

/// Tensor rule for the probability measure dv_alpha on the ball, alpha > -1.
QuadRule ball_rule(int n, double alpha, int radial_size, int sphere_size, std::uint64_t seed);

/// Rule for int_{D(center,gamma)} g dtau in pulled-back coordinates; nodes
/// are phi_center(u) over the Euclidean ball |u| < tanh(gamma).
QuadRule bergman_ball_rule(const Point& center, double gamma, int radial_size,
                           int sphere_size, std::uint64_t seed);

/// Rule for int_{D(center,gamma)} g dv_alpha, same pullback scheme. Any real
/// alpha is accepted: v_alpha is finite on compact Bergman balls.
QuadRule bergman_ball_weighted_rule(const Point& center, double gamma, double alpha,
                                    int radial_size, int sphere_size, std::uint64_t seed);

/// Composite Gauss-Legendre rule on the dyadic partition {1 - 2^-j} of (0,1)
/// with the singular factor 1/(1-r) (or 1/(1 - r z_mag)) absorbed into the
/// weights. `depth` dyadic levels cover [0, 1 - 2^-depth].
QuadRule radial_singular_rule(RadialKind kind, double z_mag, int segments, int depth = 40);

ErrorEstimate integrate(const QuadRule& rule, const std::function<double(const Point&)>& f);
ErrorEstimate integrate_radial(const QuadRule& rule, const std::function<double(double)>& f);

}  // namespace bergman

#endif
