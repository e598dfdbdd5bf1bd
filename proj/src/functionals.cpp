#include "bergman/functionals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman {

namespace {

std::vector<Point> candidate_centers(const Point& z, double gamma, const CenterGrid& grid) {
  require_interior(z, "maximal_fn");
  const int n = static_cast<int>(z.size());
  const MobiusMap phi(z);
  std::vector<Point> centers;
  centers.push_back(z);  // u = 0, the ball centered at z itself
  std::vector<Point> directions;
  if (n == 1) {
    for (int j = 0; j < grid.angular; ++j) {
      Point d(1);
      d[0] = std::polar(1.0, 2.0 * std::numbers::pi * j / grid.angular);
      directions.push_back(std::move(d));
    }
  } else {
    const QuadRule sphere = sphere_rule(n, std::max(8, grid.angular), grid.inner.seed);
    directions = sphere.nodes;
  }
  for (int i = 1; i <= grid.radial; ++i) {
    // Bergman-equispaced shells strictly inside D(0, gamma)
    const double t = std::tanh(gamma * i / (grid.radial + 1.0));
    for (const Point& d : directions) centers.push_back(phi(t * d));
  }
  return centers;
}

}  // namespace

double area_integral_field(const std::function<double(const Point&)>& field, const Point& z,
                           double q, double gamma, const BallResolution& res) {
  require_interior(z, "area_integral");
  if (gamma <= 0.0) throw std::invalid_argument("area_integral: gamma <= 0");
  const QuadRule rule = bergman_ball_rule(z, gamma, res.radial, res.sphere, res.seed);
  if (std::isinf(q)) {
    double m = 0.0;
    for (const Point& node : rule.nodes) m = std::max(m, field(node));
    return m;
  }
  if (q < 1.0) throw std::invalid_argument("area_integral: q < 1");
  const double integral =
      integrate(rule, [&](const Point& w) { return std::pow(field(w), q); }).value;
  return std::pow(integral, 1.0 / q);
}

double area_integral(const HoloFun& f, const Point& z, double q, double gamma,
                     const BallResolution& res) {
  return area_integral_field([&](const Point& w) { return std::abs(f.eval(w)); }, z, q,
                             gamma, res);
}

double maximal_field(const std::function<double(const Point&)>& field, const Point& z,
                     double q, double gamma, double alpha, const CenterGrid& grid) {
  if (q < 1.0 || std::isinf(q)) throw std::invalid_argument("maximal_fn: q outside [1,inf)");
  if (alpha <= -1.0) throw std::invalid_argument("maximal_fn: alpha <= -1");
  if (gamma <= 0.0) throw std::invalid_argument("maximal_fn: gamma <= 0");
  double best = 0.0;
  for (const Point& w : candidate_centers(z, gamma, grid)) {
    const QuadRule rule = bergman_ball_weighted_rule(w, gamma, alpha, grid.inner.radial,
                                                     grid.inner.sphere, grid.inner.seed);
    double mass = 0.0, integral = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double fi = field(rule.nodes[i]);
      if (!std::isfinite(fi))
        throw std::runtime_error("maximal_fn: non-finite field value at node " +
                                 std::to_string(i));
      mass += rule.weights[i];
      integral += rule.weights[i] * std::pow(fi, q);
    }
    best = std::max(best, std::pow(integral / mass, 1.0 / q));
  }
  return best;
}

double maximal_fn(const HoloFun& f, const Point& z, double q, double gamma, double alpha,
                  const CenterGrid& grid) {
  return maximal_field([&](const Point& w) { return std::abs(f.eval(w)); }, z, q, gamma,
                       alpha, grid);
}

double hl_maximal(const PointwiseField& g, const Point& z, double gamma, double alpha,
                  const CenterGrid& grid) {
  return maximal_field(g.eval, z, 1.0, gamma, alpha, grid);
}

double g_function(const HoloFun& f, const Point& z, double q, GVariant variant,
                  int segments, int depth) {
  require_interior(z, "g_function");
  if (q < 1.0) throw std::invalid_argument("g_function: q < 1");
  const double z_mag = std::sqrt(norm_sq(z));
  const RadialKind kind =
      (variant == GVariant::invariant) ? RadialKind::one_minus_r_absz : RadialKind::one_minus_r;
  const QuadRule rule = radial_singular_rule(kind, z_mag, segments, depth);
  const auto integrand = [&](double r) {
    const Point rz = r * z;
    switch (variant) {
      case GVariant::radial:
        return std::pow((1.0 - r) * std::abs(f.radial_derivative(rz, 1)), q);
      case GVariant::gradient:
        return std::pow((1.0 - r) * std::sqrt(norm_sq(f.gradient(rz))), q);
      case GVariant::invariant:
      default:
        return std::pow(f.invariant_gradient_norm(rz), q);
    }
  };
  return std::pow(integrate_radial(rule, integrand).value, 1.0 / q);
}

double lp_norm(const PointwiseField& field, double p, const QuadRule& rule) {
  if (p <= 0.0) throw std::invalid_argument("lp_norm: p <= 0");
  if (rule.target != Target::ball_v_alpha)
    throw std::invalid_argument("lp_norm: rule target must be ball_v_alpha");
  const double integral =
      integrate(rule, [&](const Point& w) { return std::pow(field.eval(w), p); }).value;
  return std::pow(integral, 1.0 / p);
}

double bergman_norm(const HoloFun& f, double p, const QuadRule& rule) {
  return lp_norm({[&](const Point& w) { return std::abs(f.eval(w)); }, "|" + f.name() + "|"},
                 p, rule);
}

int generalized_norm_order(double p, double alpha) {
  if (p <= 0.0) throw std::invalid_argument("generalized_norm_order: p <= 0");
  int N = 0;
  while (p * N + alpha <= -1.0) ++N;
  return N;
}

double generalized_norm(const HoloFun& f, double p, double alpha, const BallResolution& res) {
  const int n = f.dim();
  const int N = generalized_norm_order(p, alpha);
  const double alpha_eff = alpha + p * N;  // > -1 by construction
  // dv_alpha = (c_alpha / c_alpha_eff) (1-|z|^2)^{-pN} dv_alpha_eff
  const double c_ratio = v_alpha_constant(n, alpha) / v_alpha_constant(n, alpha_eff);
  const QuadRule rule = ball_rule(n, alpha_eff, res.radial, res.sphere, res.seed);
  const double integral = integrate(rule, [&](const Point& w) {
                            return std::pow(std::abs(f.radial_derivative(w, N)), p);
                          }).value;
  const Point origin = Point::Zero(n);
  return std::abs(f.eval(origin)) + std::pow(c_ratio * integral, 1.0 / p);
}

namespace {

std::function<double(const Point&)> besov_field(const HoloFun& f, int k) {
  if (k < 0) throw std::invalid_argument("besov field: k < 0");
  return [f, k](const Point& w) {
    return std::pow(one_minus_norm_sq(w), double(k)) * std::abs(f.radial_derivative(w, k));
  };
}

}  // namespace

double besov_area(const HoloFun& f, const Point& z, double q, double gamma, int k,
                  const BallResolution& res) {
  return area_integral_field(besov_field(f, k), z, q, gamma, res);
}

double besov_maximal(const HoloFun& f, const Point& z, double q, double gamma, double alpha,
                     int k, const CenterGrid& grid) {
  return maximal_field(besov_field(f, k), z, q, gamma, alpha, grid);
}

double operator_s(const PointwiseField& f, const Point& z, double a_exp, double b_exp,
                  const QuadRule& rule) {
  require_interior(z, "operator_s");
  if (rule.target != Target::ball_v_alpha || rule.meta.alpha != 0.0)
    throw std::invalid_argument("operator_s: rule must discretize the unweighted dv");
  const int n = static_cast<int>(z.size());
  const double exponent = n + 1.0 + a_exp + b_exp;
  const double integral = integrate(rule, [&](const Point& w) {
                            const double kernel =
                                std::pow(std::abs(Complex(1.0, 0.0) - inner(z, w)), -exponent);
                            return std::pow(one_minus_norm_sq(w), b_exp) * kernel * f.eval(w);
                          }).value;
  return std::pow(one_minus_norm_sq(z), a_exp) * integral;
}

}  // namespace bergman
