#include "bergman/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "bergman/math_util.hpp"

namespace bergman {

namespace {

void require_same_dim(const Point& z, const Point& w, const char* who) {
  if (z.size() != w.size())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  if (z.size() < 1) throw std::invalid_argument(std::string(who) + ": empty point");
}

}  // namespace

Complex inner(const Point& z, const Point& w) {
  require_same_dim(z, w, "inner");
  // Eigen's dot conjugates its first argument: w.dot(z) = sum conj(w_k) z_k.
  return w.dot(z);
}

double norm_sq(const Point& z) {
  double sum = 0.0, c = 0.0;
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    const double v = std::norm(z[k]);
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double one_minus_norm_sq(const Point& z) {
  const double r = std::sqrt(norm_sq(z));
  return (1.0 - r) * (1.0 + r);
}

bool is_interior(const Point& z) { return norm_sq(z) < 1.0; }

void require_interior(const Point& z, const char* who) {
  if (!is_interior(z))
    throw std::domain_error(std::string(who) + ": point is not interior (|z| >= 1)");
}

MobiusMap::MobiusMap(Point center) : center_(std::move(center)) {
  if (center_.size() < 1) throw std::invalid_argument("MobiusMap: empty center");
  require_interior(center_, "MobiusMap");
  center_norm_sq_ = norm_sq(center_);
  s_ = std::sqrt(one_minus_norm_sq(center_));
}

Point MobiusMap::operator()(const Point& z) const {
  require_same_dim(z, center_, "MobiusMap::apply");
  require_interior(z, "MobiusMap::apply");
  if (center_norm_sq_ == 0.0) return -z;
  const Complex zw = inner(z, center_);
  const Complex proj_coef = zw / center_norm_sq_;
  const Point pz = proj_coef * center_;
  const Point qz = z - pz;
  return (center_ - pz - s_ * qz) / (1.0 - zw);
}

double bergman_distance(const Point& z, const Point& w) {
  require_interior(z, "bergman_distance");
  require_interior(w, "bergman_distance");
  const MobiusMap phi(z);
  const double m = std::sqrt(norm_sq(phi(w)));
  return std::atanh(std::min(m, 1.0 - 1e-17));
}

bool in_ball(const Point& w, const Point& center, double gamma) {
  require_interior(w, "in_ball");
  require_interior(center, "in_ball");
  const MobiusMap phi(center);
  return norm_sq(phi(w)) < std::tanh(gamma) * std::tanh(gamma);
}

double v_alpha_constant(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("v_alpha_constant: n < 1");
  if (alpha <= -1.0) return 1.0;
  return std::exp(log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0) - log_gamma(alpha + 1.0));
}

double density_v_alpha(const Point& z, double alpha) {
  require_interior(z, "density_v_alpha");
  const int n = static_cast<int>(z.size());
  return v_alpha_constant(n, alpha) * std::pow(one_minus_norm_sq(z), alpha);
}

double density_tau(const Point& z) {
  require_interior(z, "density_tau");
  const int n = static_cast<int>(z.size());
  return std::pow(one_minus_norm_sq(z), -(n + 1.0));
}

}  // namespace bergman
