// Shared machinery of the experiment implementations. Internal to src/.
#ifndef BERGMAN_EXPERIMENTS_INTERNAL_HPP
#define BERGMAN_EXPERIMENTS_INTERNAL_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/experiments.hpp"
#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"
#include "bergman/math_util.hpp"
#include "bergman/report.hpp"

namespace bergman::detail {

/// Family member with magnitude fast paths for single atoms (the hot loops
/// only need |R^k f| and derivative magnitudes, which for one kernel power
/// reduce to real powers of |1 - <w,a>|^2).
struct FamilyFun {
  explicit FamilyFun(HoloFun fn) : f(std::move(fn)) {}

  HoloFun f;
  std::string id;
  double radius = 0.0;
  bool is_atom = false;
  Complex f0{0.0, 0.0};

  bool fast_atom = false;
  Point a;          // atom center
  double b = 0.0;   // atom exponent
  double scale = 1.0;

  // Mobius pullback center for outer quadratures (zero vector: plain rule);
  // set to the (outermost) atom center so boundary concentration flattens out
  Point adapt;

  /// out[i] = |R^{ks[i]} f(w)|.
  void field_mags(const Point& w, const std::vector<int>& ks, double* out) const;

  /// |Rf(w)|^2 and |grad f(w)|^2 in one pass.
  void deriv_mags(const Point& w, double& rmag2, double& grad2) const;
};

/// Atom exponent used throughout: the decomposition hypothesis plus a fixed
/// margin of 1.5.
double atom_exponent(int n, double p, double alpha);

std::vector<FamilyFun> build_family(int n, double p, double alpha,
                                    const std::vector<double>& atom_radii,
                                    const std::vector<int>& degrees, bool include_constant);

Point unit_e(int n, int k = 0);
std::vector<Point> unit_directions(int n, int count, std::uint64_t seed);

/// Candidate centers for the grid maximal functional: z itself plus `radial`
/// shells of phi_z images of the given directions. A search grid, not a
/// quadrature: it stays fixed when resolutions double.
std::vector<Point> make_centers(const Point& z, double gamma, int radial,
                                const std::vector<Point>& dirs);

inline double qpow(double v, double q) {
  if (q == 1.0) return v;
  if (q == 2.0) return v * v;
  return std::pow(v, q);
}

inline double rel_change(double a, double b) {
  const double m = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / m;
}

/// max/min tracker over positive values.
struct Band {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  int count = 0;
  void add(double v) {
    if (!(v > 0.0)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++count;
  }
  double spread() const { return count > 0 ? hi / lo : 1.0; }
};

/// Least-squares slope collector; empty optional when under min_points.
struct Trend {
  std::vector<double> xs, ys;
  void add(double x, double y) {
    xs.push_back(x);
    ys.push_back(y);
  }
  std::optional<double> slope(std::size_t min_points = 3) const {
    if (xs.size() < std::max<std::size_t>(min_points, 2)) return std::nullopt;
    return linear_fit(xs, ys).slope;
  }
};

inline double boundary_x(double radius) { return -std::log(1.0 - radius); }

// One experiment each; dispatched from run_experiment.
void run_tent(const ExperimentConfig& cfg, ExperimentReport& rep);
void run_gfunction(const ExperimentConfig& cfg, ExperimentReport& rep);
void run_besov(const ExperimentConfig& cfg, ExperimentReport& rep);
void run_weak_type(const ExperimentConfig& cfg, ExperimentReport& rep);
void run_estimates(const ExperimentConfig& cfg, ExperimentReport& rep);
void run_counterexample(const ExperimentConfig& cfg, ExperimentReport& rep);
void run_atomic_bound(const ExperimentConfig& cfg, ExperimentReport& rep);

/// Partial-integral divergence data for the invariant-gradient g-integrand of
/// f = z_1 with the 1/(1-r) weight, plus the convergent 1/(1-r|z|) variant.
struct CounterexampleResult {
  double slope = 0.0;           // fitted d I(eps) / d log(1/eps)
  double expected = 0.0;        // (1-|z|^2)(1-|z_1|^2)
  double weighted = 0.0;        // value of the 1/(1-r|z|) integral
  double weighted_change = 0.0; // |value - value at doubled segments|
};
CounterexampleResult counterexample_at(const Point& z, int segments, int depth);

}  // namespace bergman::detail

#endif
