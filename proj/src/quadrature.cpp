#include "bergman/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

#include "bergman/math_util.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Jacobi on (-1,1) for (1-t)^a (1+t)^b via Golub-Welsch.
void gauss_jacobi_sym_uncached(int m, double a, double b, std::vector<double>& nodes,
                               std::vector<double>& weights) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi: m < 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponent <= -1");
  Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
  const double ab = a + b;
  for (int k = 0; k < m; ++k) {
    if (k == 0) {
      diag[0] = (b - a) / (ab + 2.0);
    } else {
      const double d = 2.0 * k + ab;
      diag[k] = (b * b - a * a) / (d * (d + 2.0));
    }
  }
  for (int k = 1; k < m; ++k) {
    double bk;
    if (k == 1) {
      bk = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      const double d = 2.0 * k + ab;
      bk = 4.0 * k * (k + a) * (k + b) * (k + ab) /
           (d * d * (d + 1.0) * (d - 1.0));
    }
    sub[k - 1] = std::sqrt(bk);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi: eigensolve failed");
  const double mu0 = std::exp2(ab + 1.0) * beta_function(a + 1.0, b + 1.0);
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    nodes[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

// Node construction shows up in hot loops (one Bergman-ball rule per maximal
// candidate center), so memoize the classical rules.
void gauss_jacobi_sym(int m, double a, double b, std::vector<double>& nodes,
                      std::vector<double>& weights) {
  using Key = std::tuple<int, double, double>;
  static std::map<Key, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  const Key key{m, a, b};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  gauss_jacobi_sym_uncached(m, a, b, nodes, weights);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, std::make_pair(nodes, weights));
}

QuadRule make_sphere(int n, int size, std::uint64_t seed, bool with_coarse);
QuadRule make_sphere_mc(int n, int size, std::uint64_t seed, bool with_coarse);
QuadRule make_ball(int n, double alpha, int radial_size, int sphere_size,
                   std::uint64_t seed, bool with_coarse);
QuadRule make_bergman_ball(const Point& center, double gamma, double alpha, bool tau,
                           int radial_size, int sphere_size, std::uint64_t seed,
                           bool with_coarse);
QuadRule make_radial_singular(RadialKind kind, double z_mag, int segments, int depth,
                              bool with_coarse);

QuadRule make_sphere(int n, int size, std::uint64_t seed, bool with_coarse) {
  if (n < 1) throw std::invalid_argument("sphere_rule: n < 1");
  if (size < 8) throw std::invalid_argument("sphere_rule: size < 8");
  QuadRule rule;
  rule.target = Target::sphere_sigma;
  rule.meta.sphere_size = size;
  rule.meta.seed = seed;
  if (n == 1) {
    rule.nodes.reserve(size);
    rule.weights.assign(size, 1.0 / size);
    for (int k = 0; k < size; ++k) {
      Point p(1);
      p[0] = std::polar(1.0, kTwoPi * k / size);
      rule.nodes.push_back(std::move(p));
    }
  } else {
    // Product rule in simplex/torus coordinates: zeta_k = sqrt(u_k) e^{i t_k}
    // with u uniform on the simplex and phases uniform on the torus.
    const int dims = 2 * n - 1;
    int m = std::max(3, static_cast<int>(std::llround(std::pow(double(size), 1.0 / dims))));
    // Simplex coordinates via iterated substitution u_j = x_j prod_{i<j}(1-x_i);
    // the j-th factor carries the Jacobi weight (1-x)^{n-1-j} on (0,1).
    std::vector<std::vector<double>> xs(n - 1), ws(n - 1);
    for (int j = 0; j < n - 1; ++j)
      gauss_jacobi01(m, double(n - 2 - j), 0.0, xs[j], ws[j]);
    // Normalizing constant: (n-1)! times the product of the Jacobi masses
    // 1/(n-1-j) equals 1, so uniform phase weights 1/m^n complete the rule.
    const double phase_w = std::pow(1.0 / m, n);
    double simplex_norm = std::exp(log_gamma(double(n)));  // (n-1)!
    // enumerate radial indices
    std::vector<std::vector<int>> radial_combos;
    std::vector<int> cur(n - 1, 0);
    while (true) {
      radial_combos.push_back(cur);
      int j = n - 2;
      while (j >= 0 && ++cur[j] == m) cur[j--] = 0;
      if (j < 0) break;
    }
    for (const auto& combo : radial_combos) {
      std::vector<double> u(n);
      double rem = 1.0, w_rad = simplex_norm;
      for (int j = 0; j < n - 1; ++j) {
        const double x = xs[j][combo[j]];
        u[j] = rem * x;
        w_rad *= ws[j][combo[j]];
        rem *= (1.0 - x);
      }
      u[n - 1] = rem;
      // enumerate phases
      std::vector<int> pidx(n, 0);
      while (true) {
        Point p(n);
        for (int k = 0; k < n; ++k)
          p[k] = std::polar(std::sqrt(u[k]), kTwoPi * pidx[k] / m);
        rule.nodes.push_back(std::move(p));
        rule.weights.push_back(w_rad * phase_w);
        int k = n - 1;
        while (k >= 0 && ++pidx[k] == m) pidx[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  if (with_coarse && size >= 16)
    rule.coarse = std::make_shared<QuadRule>(make_sphere(n, std::max(8, size / 2), seed, false));
  return rule;
}

// The deterministic sphere rules depend only on (n, size); share them across
// the many Bergman-ball rules built per maximal-functional evaluation.
const QuadRule& cached_sphere(int n, int size) {
  using Key = std::pair<int, int>;
  static std::map<Key, std::shared_ptr<const QuadRule>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, size}];
  if (!slot) slot = std::make_shared<QuadRule>(make_sphere(n, size, 0, false));
  return *slot;
}

QuadRule make_sphere_mc(int n, int size, std::uint64_t seed, bool with_coarse) {
  if (n < 1) throw std::invalid_argument("sphere_rule_mc: n < 1");
  if (size < 8) throw std::invalid_argument("sphere_rule_mc: size < 8");
  QuadRule rule;
  rule.target = Target::sphere_sigma;
  rule.meta.sphere_size = size;
  rule.meta.seed = seed;
  rule.meta.monte_carlo = true;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  rule.nodes.reserve(size);
  rule.weights.assign(size, 1.0 / size);
  for (int i = 0; i < size; ++i) {
    Point p(n);
    double s2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double re = gauss(rng), im = gauss(rng);
      p[k] = Complex(re, im);
      s2 += re * re + im * im;
    }
    p /= std::sqrt(s2);
    rule.nodes.push_back(std::move(p));
  }
  (void)with_coarse;  // SE-based error estimation, no companion needed
  return rule;
}

QuadRule make_ball(int n, double alpha, int radial_size, int sphere_size,
                   std::uint64_t seed, bool with_coarse) {
  if (alpha <= -1.0) throw std::invalid_argument("ball_rule: alpha <= -1");
  if (n < 1) throw std::invalid_argument("ball_rule: n < 1");
  if (radial_size < 1) throw std::invalid_argument("ball_rule: radial_size < 1");
  const QuadRule& sphere = cached_sphere(n, sphere_size);
  // Radial factor: c_alpha 2n r^{2n-1} (1-r^2)^alpha dr with u = r^2 becomes
  // c_alpha n u^{n-1} (1-u)^alpha du, a Jacobi weight on (0,1).
  std::vector<double> u, wu;
  gauss_jacobi01(radial_size, alpha, double(n - 1), u, wu);
  const double c = v_alpha_constant(n, alpha) * n;
  QuadRule rule;
  rule.target = Target::ball_v_alpha;
  rule.meta = {radial_size, sphere_size, 0, 0, seed, alpha, 0.0, 0.0, false};
  rule.nodes.reserve(u.size() * sphere.size());
  rule.weights.reserve(u.size() * sphere.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = std::sqrt(u[i]);
    const double wr = c * wu[i];
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      rule.nodes.push_back(r * sphere.nodes[j]);
      rule.weights.push_back(wr * sphere.weights[j]);
    }
  }
  if (with_coarse && radial_size >= 2)
    rule.coarse = std::make_shared<QuadRule>(make_ball(
        n, alpha, std::max(1, radial_size / 2), std::max(8, sphere_size / 2), seed, false));
  return rule;
}

QuadRule make_bergman_ball(const Point& center, double gamma, double alpha, bool tau,
                           int radial_size, int sphere_size, std::uint64_t seed,
                           bool with_coarse) {
  require_interior(center, "bergman_ball_rule");
  if (gamma <= 0.0) throw std::invalid_argument("bergman_ball_rule: gamma <= 0");
  const int n = static_cast<int>(center.size());
  const double t = std::tanh(gamma);
  const QuadRule& sphere = cached_sphere(n, sphere_size);
  const double c_norm = one_minus_norm_sq(center);
  QuadRule rule;
  rule.target = tau ? Target::bergman_ball_tau : Target::bergman_ball_v_alpha;
  rule.meta = {radial_size, sphere_size, 0, 0, seed, tau ? 0.0 : alpha, gamma, 0.0, false};
  rule.nodes.reserve(radial_size * sphere.size());
  rule.weights.reserve(radial_size * sphere.size());
  std::vector<double> r, wr;
  if (tau) {
    // Pullback under phi_center: dtau is invariant, so the density is the
    // smooth factor (1-|u|^2)^{-(n+1)} on the Euclidean ball |u| < t.
    gauss_legendre(radial_size, 0.0, t, r, wr);
    const MobiusMap phi(center);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double one_minus_u2 = (1.0 - r[i]) * (1.0 + r[i]);
      const double radial = 2.0 * n * std::pow(r[i], 2 * n - 1) * wr[i];
      const double density = std::pow(one_minus_u2, -(n + 1.0));
      for (std::size_t j = 0; j < sphere.size(); ++j) {
        rule.nodes.push_back(phi(r[i] * sphere.nodes[j]));
        rule.weights.push_back(radial * sphere.weights[j] * density);
      }
    }
  } else {
    // The same pullback for dv_alpha carries the factor
    // |1-<u,c>|^{-2(n+1+alpha)}, which is sharply peaked and defeats the
    // n >= 2 sphere rule. Instead use that D(c,gamma) is a Euclidean
    // ellipsoid: with a = |c|, d = 1 - a^2 t^2, it has center c(1-t^2)/d,
    // semiaxis rho1 = t(1-a^2)/d along c and rho2 = t sqrt((1-a^2)/d)
    // orthogonally. In these coordinates the density stays smooth.
    const double a2 = norm_sq(center);
    const double d = 1.0 - a2 * t * t;
    const double rho1 = t * c_norm / d;
    const double rho2 = t * std::sqrt(c_norm / d);
    const double jac = rho1 * rho1 * std::pow(rho2, 2.0 * (n - 1));
    const Point mid = center * ((1.0 - t * t) / d);
    Point chat = Point::Zero(n);
    if (a2 > 0.0)
      chat = center / std::sqrt(a2);
    else
      chat[0] = Complex(1.0, 0.0);
    const double c_alpha = v_alpha_constant(n, alpha);
    gauss_legendre(radial_size, 0.0, 1.0, r, wr);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double radial = 2.0 * n * std::pow(r[i], 2 * n - 1) * wr[i];
      for (std::size_t j = 0; j < sphere.size(); ++j) {
        const Point u = r[i] * sphere.nodes[j];
        const Complex upar = inner(u, chat);
        Point w = mid + rho2 * u + (rho1 - rho2) * upar * chat;
        const double density = c_alpha * std::pow(one_minus_norm_sq(w), alpha);
        rule.nodes.push_back(std::move(w));
        rule.weights.push_back(radial * sphere.weights[j] * jac * density);
      }
    }
  }
  if (with_coarse && radial_size >= 2)
    rule.coarse = std::make_shared<QuadRule>(
        make_bergman_ball(center, gamma, alpha, tau, std::max(1, radial_size / 2),
                          std::max(8, sphere_size / 2), seed, false));
  return rule;
}

QuadRule make_radial_singular(RadialKind kind, double z_mag, int segments, int depth,
                              bool with_coarse) {
  if (segments < 4) throw std::invalid_argument("radial_singular_rule: segments < 4");
  if (depth < 1) throw std::invalid_argument("radial_singular_rule: depth < 1");
  if (z_mag < 0.0 || z_mag >= 1.0)
    throw std::invalid_argument("radial_singular_rule: z_mag outside [0,1)");
  QuadRule rule;
  rule.target = Target::radial_singular;
  rule.meta.segments = segments;
  rule.meta.depth = depth;
  rule.meta.z_mag = (kind == RadialKind::one_minus_r_absz) ? z_mag : 0.0;
  std::vector<double> x, w;
  for (int j = 0; j < depth; ++j) {
    const double lo = 1.0 - std::exp2(-double(j));
    const double hi = 1.0 - std::exp2(-double(j + 1));
    gauss_legendre(segments, lo, hi, x, w);
    for (int i = 0; i < segments; ++i) {
      const double denom = (kind == RadialKind::one_minus_r_absz)
                               ? (1.0 - x[i] * z_mag)
                               : (1.0 - x[i]);
      rule.radii.push_back(x[i]);
      rule.weights.push_back(w[i] / denom);
    }
  }
  if (with_coarse && segments >= 8)
    rule.coarse = std::make_shared<QuadRule>(
        make_radial_singular(kind, z_mag, segments / 2, depth, false));
  return rule;
}

}  // namespace

void gauss_jacobi01(int m, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  gauss_jacobi_sym(m, a, b, nodes, weights);
  // map (-1,1) -> (0,1): x = (1+t)/2, weight picks up 2^{-(a+b+1)}
  const double scale = std::exp2(-(a + b + 1.0));
  for (int i = 0; i < m; ++i) {
    nodes[i] = 0.5 * (1.0 + nodes[i]);
    weights[i] *= scale;
  }
}

void gauss_legendre(int m, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  gauss_jacobi_sym(m, 0.0, 0.0, nodes, weights);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int i = 0; i < m; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
}

double QuadRule::total_mass() const {
  return kahan_sum(weights);
}

QuadRule sphere_rule(int n, int size, std::uint64_t seed) {
  return make_sphere(n, size, seed, true);
}

QuadRule sphere_rule_mc(int n, int size, std::uint64_t seed) {
  return make_sphere_mc(n, size, seed, true);
}

double monomial_sphere_moment(const std::vector<int>& J, const std::vector<int>& K, int n) {
  if (static_cast<int>(J.size()) != n || static_cast<int>(K.size()) != n)
    throw std::invalid_argument("monomial_sphere_moment: multi-index length != n");
  if (J != K) return 0.0;
  double log_fact = 0.0;
  int total = 0;
  for (int j : J) {
    log_fact += log_gamma(j + 1.0);
    total += j;
  }
  return std::exp(log_gamma(double(n)) + log_fact - log_gamma(double(n + total)));
}

QuadRule ball_rule(int n, double alpha, int radial_size, int sphere_size, std::uint64_t seed) {
  return make_ball(n, alpha, radial_size, sphere_size, seed, true);
}

QuadRule bergman_ball_rule(const Point& center, double gamma, int radial_size,
                           int sphere_size, std::uint64_t seed) {
  return make_bergman_ball(center, gamma, 0.0, true, radial_size, sphere_size, seed, true);
}

QuadRule bergman_ball_weighted_rule(const Point& center, double gamma, double alpha,
                                    int radial_size, int sphere_size, std::uint64_t seed) {
  // alpha <= -1 is fine here: the pulled-back density is evaluated pointwise
  // on |u| < tanh(gamma), where 1-|u|^2 stays bounded away from zero.
  return make_bergman_ball(center, gamma, alpha, false, radial_size, sphere_size, seed, true);
}

QuadRule radial_singular_rule(RadialKind kind, double z_mag, int segments, int depth) {
  return make_radial_singular(kind, z_mag, segments, depth, true);
}

namespace {

template <typename Nodes, typename Eval>
ErrorEstimate integrate_impl(const QuadRule& rule, const Nodes& nodes, const Eval& eval) {
  ErrorEstimate est;
  double sum = 0.0, comp = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    const double fi = eval(nodes[i]);
    if (!std::isfinite(fi))
      throw std::runtime_error("integrate: non-finite integrand at node " + std::to_string(i));
    const double term = rule.weights[i] * fi;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (rule.meta.monte_carlo) sumsq += fi * fi;
  }
  est.value = sum;
  if (rule.meta.monte_carlo) {
    const double nsz = double(rule.weights.size());
    const double mean = sum;  // equal weights 1/N
    const double var = std::max(0.0, sumsq / nsz - mean * mean);
    est.abs_err = std::sqrt(var / nsz);
    est.method = ErrorMethod::mc_standard_error;
  }
  return est;
}

}  // namespace

ErrorEstimate integrate(const QuadRule& rule, const std::function<double(const Point&)>& f) {
  if (rule.nodes.empty() && !rule.radii.empty())
    throw std::invalid_argument("integrate: radial rule passed to point integrator");
  ErrorEstimate est = integrate_impl(rule, rule.nodes, f);
  if (!rule.meta.monte_carlo && rule.coarse) {
    const ErrorEstimate c = integrate_impl(*rule.coarse, rule.coarse->nodes, f);
    est.abs_err = std::abs(est.value - c.value);
    est.method = ErrorMethod::nested_rule_difference;
  }
  return est;
}

ErrorEstimate integrate_radial(const QuadRule& rule, const std::function<double(double)>& f) {
  if (rule.radii.empty() && !rule.nodes.empty())
    throw std::invalid_argument("integrate_radial: point rule passed to radial integrator");
  ErrorEstimate est = integrate_impl(rule, rule.radii, f);
  if (rule.coarse) {
    const ErrorEstimate c = integrate_impl(*rule.coarse, rule.coarse->radii, f);
    est.abs_err = std::abs(est.value - c.value);
    est.method = ErrorMethod::nested_rule_difference;
  }
  return est;
}

}  // namespace bergman
