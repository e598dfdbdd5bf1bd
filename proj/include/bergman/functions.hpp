#ifndef BERGMAN_FUNCTIONS_HPP
#define BERGMAN_FUNCTIONS_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

/// Evaluable holomorphic function with closed-form value, complex gradient,
/// k-th radial derivative and invariant-gradient magnitude. Immutable and
/// cheap to copy.
class HoloFun {
 public:
  static HoloFun constant(Complex c, int n);
  static HoloFun monomial(std::vector<int> exponents);
  static HoloFun kernel_power(Point a, double b, Complex scale = Complex(1.0, 0.0));
  /// Coifman-Rochberg atom: (1-|a|^2)^{(pb-n-1-alpha)/p} (1-<z,a>)^{-b}.
  /// Requires b > n max{1, 1/p} + (alpha+1)/p.
  static HoloFun atom(Point a, double b, double p, double alpha);
  static HoloFun combination(std::vector<std::pair<Complex, HoloFun>> terms);

  Complex eval(const Point& z) const;
  /// k-fold radial derivative R^k f, R f = sum_k z_k df/dz_k. k = 0 gives f.
  Complex radial_derivative(const Point& z, int order = 1) const;
  Point gradient(const Point& z) const;
  /// |grad(f o phi_z)(0)| = sqrt((1-|z|^2)(|grad f|^2 - |Rf|^2)).
  double invariant_gradient_norm(const Point& z) const;

  int dim() const;
  const std::string& name() const;

 private:
  struct Impl;
  explicit HoloFun(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Slack of the atomic-decomposition hypothesis:
/// b - (n max{1,1/p} + (alpha+1)/p). Atoms require this to be positive.
double atom_hypothesis_gap(int n, double b, double p, double alpha);

/// delta-separated set of atom centers in the Bergman metric.
struct Lattice {
  std::vector<Point> centers;  // ordered by |a_k|
  double separation = 0.0;
  double r_max = 0.0;
  int dim = 0;
};

/// Greedy maximal delta-separated set among deterministic shell candidates
/// (equiangular for n = 1, seeded sphere samples per shell for n >= 2).
Lattice build_lattice(int n, double delta, double r_max, std::uint64_t seed);

/// Finite atomic series sum_k c_k atom(a_k; b, p, alpha) over the first
/// coeffs.size() lattice centers.
HoloFun synthesize_atomic(const std::vector<Complex>& coeffs, const Lattice& lattice,
                          double b, double p, double alpha);

}  // namespace bergman

#endif
