#include "bergman/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "bergman/math_util.hpp"

namespace bergman {

namespace {

struct Monomial {
  std::vector<int> exponents;
  int degree = 0;
};

struct KernelPower {
  Point a;
  double b = 0.0;
  Complex scale{1.0, 0.0};
};

}  // namespace

struct HoloFun::Impl {
  std::variant<Monomial, KernelPower, std::vector<std::pair<Complex, HoloFun>>> body;
  int n = 0;
  std::string name;
};

namespace {

Complex pow_int(Complex z, int k) {
  Complex r{1.0, 0.0};
  while (k-- > 0) r *= z;
  return r;
}

Complex kernel_base(const KernelPower& kp, const Point& z) {
  return 1.0 - inner(z, kp.a);
}

// R^k applied to (1-w)^{-b} with w = <z,a>: since R acts as w d/dw here,
// R^k = sum_j S(k,j) w^j d^j/dw^j with Stirling numbers of the second kind,
// and d^j/dw^j (1-w)^{-b} = (b)_j (1-w)^{-(b+j)}.
Complex kernel_radial_derivative(const KernelPower& kp, const Point& z, int order) {
  const Complex w = inner(z, kp.a);
  const Complex base = 1.0 - w;
  if (order == 0) return kp.scale * std::pow(base, -kp.b);
  const std::vector<double> stirling = stirling_second_row(order);
  Complex sum{0.0, 0.0};
  double rising = 1.0;  // (b)_j
  Complex wj{1.0, 0.0};
  for (int j = 0; j <= order; ++j) {
    if (j > 0) {
      rising *= (kp.b + j - 1);
      wj *= w;
    }
    if (stirling[static_cast<std::size_t>(j)] != 0.0)
      sum += stirling[static_cast<std::size_t>(j)] * rising * wj * std::pow(base, -(kp.b + j));
  }
  return kp.scale * sum;
}

}  // namespace

HoloFun HoloFun::constant(Complex c, int n) {
  if (n < 1) throw std::invalid_argument("HoloFun::constant: n < 1");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->body = std::vector<std::pair<Complex, HoloFun>>{
      {c, monomial(std::vector<int>(static_cast<std::size_t>(n), 0))}};
  std::ostringstream os;
  os << "const(" << c.real() << (c.imag() >= 0 ? "+" : "") << c.imag() << "i)";
  impl->name = os.str();
  return HoloFun(std::move(impl));
}

HoloFun HoloFun::monomial(std::vector<int> exponents) {
  if (exponents.empty()) throw std::invalid_argument("HoloFun::monomial: empty multi-index");
  Monomial m;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("HoloFun::monomial: negative exponent");
    m.degree += e;
  }
  m.exponents = std::move(exponents);
  auto impl = std::make_shared<Impl>();
  impl->n = static_cast<int>(m.exponents.size());
  std::ostringstream os;
  os << "monomial(";
  for (std::size_t i = 0; i < m.exponents.size(); ++i)
    os << (i ? "," : "") << m.exponents[i];
  os << ")";
  impl->name = os.str();
  impl->body = std::move(m);
  return HoloFun(std::move(impl));
}

HoloFun HoloFun::kernel_power(Point a, double b, Complex scale) {
  require_interior(a, "HoloFun::kernel_power");
  KernelPower kp{std::move(a), b, scale};
  auto impl = std::make_shared<Impl>();
  impl->n = static_cast<int>(kp.a.size());
  std::ostringstream os;
  os << "kernel(|a|=" << std::sqrt(norm_sq(kp.a)) << ",b=" << b << ")";
  impl->name = os.str();
  impl->body = std::move(kp);
  return HoloFun(std::move(impl));
}

HoloFun HoloFun::atom(Point a, double b, double p, double alpha) {
  require_interior(a, "HoloFun::atom");
  const int n = static_cast<int>(a.size());
  const double gap = atom_hypothesis_gap(n, b, p, alpha);
  if (gap <= 0.0) {
    std::ostringstream os;
    os << "HoloFun::atom: hypothesis violated: b = " << b
       << " must exceed n*max{1,1/p} + (alpha+1)/p = " << (b - gap);
    throw std::invalid_argument(os.str());
  }
  const double exponent = (p * b - n - 1.0 - alpha) / p;
  const double scale = std::pow(one_minus_norm_sq(a), exponent);
  const double mag = std::sqrt(norm_sq(a));
  HoloFun f = kernel_power(std::move(a), b, Complex(scale, 0.0));
  auto impl = std::make_shared<Impl>(*f.impl_);
  std::ostringstream os;
  os << "atom(|a|=" << mag << ",b=" << b << ",p=" << p << ",alpha=" << alpha << ")";
  impl->name = os.str();
  return HoloFun(std::move(impl));
}

HoloFun HoloFun::combination(std::vector<std::pair<Complex, HoloFun>> terms) {
  if (terms.empty()) throw std::invalid_argument("HoloFun::combination: empty term list");
  const int n = terms.front().second.dim();
  for (const auto& [c, f] : terms)
    if (f.dim() != n)
      throw std::invalid_argument("HoloFun::combination: dimension mismatch");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  std::ostringstream os;
  os << "combination[" << terms.size() << "]";
  impl->name = os.str();
  impl->body = std::move(terms);
  return HoloFun(std::move(impl));
}

int HoloFun::dim() const { return impl_->n; }

const std::string& HoloFun::name() const { return impl_->name; }

Complex HoloFun::eval(const Point& z) const { return radial_derivative(z, 0); }

Complex HoloFun::radial_derivative(const Point& z, int order) const {
  require_interior(z, "HoloFun::radial_derivative");
  if (z.size() != impl_->n)
    throw std::invalid_argument("HoloFun: dimension mismatch");
  if (order < 0) throw std::invalid_argument("HoloFun: negative derivative order");
  return std::visit(
      [&](const auto& body) -> Complex {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          Complex v{1.0, 0.0};
          for (std::size_t k = 0; k < body.exponents.size(); ++k)
            v *= pow_int(z[static_cast<Eigen::Index>(k)], body.exponents[k]);
          return std::pow(double(body.degree), double(order)) * v *
                 ((order > 0 && body.degree == 0) ? 0.0 : 1.0);
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          return kernel_radial_derivative(body, z, order);
        } else {
          Complex sum{0.0, 0.0};
          for (const auto& [c, f] : body) sum += c * f.radial_derivative(z, order);
          return sum;
        }
      },
      impl_->body);
}

Point HoloFun::gradient(const Point& z) const {
  require_interior(z, "HoloFun::gradient");
  if (z.size() != impl_->n)
    throw std::invalid_argument("HoloFun: dimension mismatch");
  return std::visit(
      [&](const auto& body) -> Point {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          Point g = Point::Zero(impl_->n);
          for (int k = 0; k < impl_->n; ++k) {
            const int e = body.exponents[static_cast<std::size_t>(k)];
            if (e == 0) continue;
            Complex v{double(e), 0.0};
            for (int j = 0; j < impl_->n; ++j) {
              const int ej = body.exponents[static_cast<std::size_t>(j)];
              v *= pow_int(z[j], j == k ? ej - 1 : ej);
            }
            g[k] = v;
          }
          return g;
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          const Complex factor =
              body.scale * body.b * std::pow(kernel_base(body, z), -(body.b + 1.0));
          return factor * body.a.conjugate();
        } else {
          Point sum = Point::Zero(impl_->n);
          for (const auto& [c, f] : body) sum += c * f.gradient(z);
          return sum;
        }
      },
      impl_->body);
}

double HoloFun::invariant_gradient_norm(const Point& z) const {
  const Point g = gradient(z);
  const Complex rf = radial_derivative(z, 1);
  const double g2 = norm_sq(g);
  const double r2 = std::norm(rf);
  const double s = one_minus_norm_sq(z);
  double radicand = s * (g2 - r2);
  if (radicand < 0.0) {
    // |grad f|^2 >= |Rf|^2 holds analytically; negatives are roundoff
    const double tol = 1e-14 * std::max(1.0, s * g2);
    if (radicand < -tol)
      throw std::runtime_error("invariant_gradient_norm: radicand below roundoff tolerance");
    radicand = 0.0;
  }
  return std::sqrt(radicand);
}

double atom_hypothesis_gap(int n, double b, double p, double alpha) {
  if (n < 1 || p <= 0.0) throw std::invalid_argument("atom_hypothesis_gap: bad n or p");
  return b - (n * std::max(1.0, 1.0 / p) + (alpha + 1.0) / p);
}

Lattice build_lattice(int n, double delta, double r_max, std::uint64_t seed) {
  if (n < 1 || delta <= 0.0 || r_max <= 0.0 || r_max >= 1.0)
    throw std::invalid_argument("build_lattice: degenerate parameters");
  const double shell_step = delta / 2.0;
  const double rho_max = std::atanh(r_max);
  const double angular_scale = std::tanh(delta / 2.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Point> candidates;
  candidates.push_back(Point::Zero(n));
  for (double rho = shell_step; rho <= rho_max; rho += shell_step) {
    const double r = std::tanh(rho);
    if (r > r_max) break;
    const double needed = 2.0 * std::numbers::pi * r / ((1.0 - r * r) * angular_scale);
    if (n == 1) {
      const int m = std::max(1, static_cast<int>(std::ceil(needed)));
      for (int k = 0; k < m; ++k) {
        Point p(1);
        p[0] = std::polar(r, 2.0 * std::numbers::pi * k / m);
        candidates.push_back(std::move(p));
      }
    } else {
      const double count = std::pow(needed, 2.0 * n - 1.0);
      const int m = static_cast<int>(std::min(4096.0, std::max(8.0, std::ceil(count))));
      for (int k = 0; k < m; ++k) {
        Point p(n);
        double s2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double re = gauss(rng), im = gauss(rng);
          p[j] = Complex(re, im);
          s2 += re * re + im * im;
        }
        p *= r / std::sqrt(s2);
        candidates.push_back(std::move(p));
      }
    }
  }

  Lattice lattice;
  lattice.separation = delta;
  lattice.r_max = r_max;
  lattice.dim = n;
  for (const Point& cand : candidates) {
    bool separated = true;
    for (const Point& kept : lattice.centers) {
      if (bergman_distance(cand, kept) < delta) {
        separated = false;
        break;
      }
    }
    if (separated) lattice.centers.push_back(cand);
  }
  std::stable_sort(lattice.centers.begin(), lattice.centers.end(),
                   [](const Point& a, const Point& b) { return norm_sq(a) < norm_sq(b); });
  return lattice;
}

HoloFun synthesize_atomic(const std::vector<Complex>& coeffs, const Lattice& lattice,
                          double b, double p, double alpha) {
  if (coeffs.size() > lattice.centers.size())
    throw std::invalid_argument("synthesize_atomic: more coefficients than lattice centers");
  if (coeffs.empty()) throw std::invalid_argument("synthesize_atomic: empty coefficients");
  std::vector<std::pair<Complex, HoloFun>> terms;
  terms.reserve(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    terms.emplace_back(coeffs[k], HoloFun::atom(lattice.centers[k], b, p, alpha));
  return HoloFun::combination(std::move(terms));
}

}  // namespace bergman
