#include "bergman/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "experiments_internal.hpp"

namespace bergman {
namespace detail {

Point unit_e(int n, int k) {
  Point e = Point::Zero(n);
  e[k] = Complex(1.0, 0.0);
  return e;
}

std::vector<Point> unit_directions(int n, int count, std::uint64_t seed) {
  std::vector<Point> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (n == 1) {
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * M_PI * i / count;
      Point d(1);
      d[0] = std::polar(1.0, th);
      dirs.push_back(std::move(d));
    }
    return dirs;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    Point d(n);
    double s = 0.0;
    do {
      for (int j = 0; j < n; ++j) d[j] = Complex(gauss(rng), gauss(rng));
      s = std::sqrt(norm_sq(d));
    } while (s < 1e-8);
    dirs.push_back(d / s);
  }
  return dirs;
}

std::vector<Point> make_centers(const Point& z, double gamma, int radial,
                                const std::vector<Point>& dirs) {
  std::vector<Point> centers;
  centers.reserve(1 + static_cast<std::size_t>(radial) * dirs.size());
  centers.push_back(z);
  const MobiusMap phi(z);
  for (int i = 1; i <= radial; ++i) {
    const double t = std::tanh(gamma * i / (radial + 1));
    for (const auto& d : dirs) centers.push_back(phi(t * d));
  }
  return centers;
}

double atom_exponent(int n, double p, double alpha) {
  return n * std::max(1.0, 1.0 / p) + (alpha + 1.0) / p + 1.5;
}

void FamilyFun::field_mags(const Point& w, const std::vector<int>& ks, double* out) const {
  if (fast_atom) {
    const Complex ip = inner(w, a);
    const double ns = std::norm(Complex(1.0, 0.0) - ip);
    const double p0 = scale * std::pow(ns, -0.5 * b);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (ks[i] == 0) {
        out[i] = p0;
      } else if (ks[i] == 1) {
        out[i] = b * std::abs(ip) * p0 / std::sqrt(ns);
      } else {
        out[i] = std::abs(f.radial_derivative(w, ks[i]));
      }
    }
    return;
  }
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out[i] = ks[i] == 0 ? std::abs(f.eval(w)) : std::abs(f.radial_derivative(w, ks[i]));
  }
}

void FamilyFun::deriv_mags(const Point& w, double& rmag2, double& grad2) const {
  if (fast_atom) {
    const Complex ip = inner(w, a);
    const double ns = std::norm(Complex(1.0, 0.0) - ip);
    const double common = scale * b * std::pow(ns, -0.5 * (b + 1.0));
    const double c2 = common * common;
    rmag2 = c2 * std::norm(ip);
    grad2 = c2 * norm_sq(a);
    return;
  }
  const Point g = f.gradient(w);
  Complex rf(0.0, 0.0);
  for (Eigen::Index j = 0; j < w.size(); ++j) rf += w[j] * g[j];
  rmag2 = std::norm(rf);
  grad2 = g.squaredNorm();
}

std::vector<FamilyFun> build_family(int n, double p, double alpha,
                                    const std::vector<double>& atom_radii,
                                    const std::vector<int>& degrees, bool include_constant) {
  std::vector<FamilyFun> fam;
  const double b = atom_exponent(n, p, alpha);

  auto push_atom = [&](const Point& a) {
    FamilyFun g{HoloFun::atom(a, b, p, alpha)};
    const double r = std::sqrt(norm_sq(a));
    std::ostringstream id;
    id << "atom_r" << r;
    g.id = id.str();
    g.radius = r;
    g.is_atom = true;
    g.fast_atom = true;
    g.a = a;
    g.adapt = a;
    g.b = b;
    g.scale = std::pow(std::max(1.0 - norm_sq(a), 1e-300), (p * b - n - 1 - alpha) / p);
    g.f0 = g.f.eval(Point::Zero(n));
    fam.push_back(std::move(g));
  };

  for (double r : atom_radii) push_atom(r * unit_e(n));

  for (int d : degrees) {
    std::vector<int> expo(static_cast<std::size_t>(n), 0);
    if (n == 1) {
      expo[0] = d;
    } else if (d == 1) {
      expo[0] = 1;
    } else {
      expo[0] = d / 2;
      expo[1] = d - d / 2;
    }
    FamilyFun g{HoloFun::monomial(expo)};
    g.id = g.f.name();
    g.f0 = g.f.eval(Point::Zero(n));
    fam.push_back(std::move(g));
  }

  {
    FamilyFun g{HoloFun::combination(
        {{Complex(1.0, 0.0), HoloFun::atom(0.3 * unit_e(n), b, p, alpha)},
         {Complex(0.5, 0.0),
          HoloFun::atom(0.6 * unit_e(n, n == 1 ? 0 : 1), b, p, alpha)}})};
    g.id = "combo_near";
    g.adapt = 0.6 * unit_e(n, n == 1 ? 0 : 1);
    g.f0 = g.f.eval(Point::Zero(n));
    fam.push_back(std::move(g));
  }
  {
    FamilyFun g{HoloFun::combination(
        {{Complex(1.0, 0.0), HoloFun::atom(0.5 * unit_e(n), b, p, alpha)},
         {Complex(0.0, -0.7), HoloFun::atom(0.8 * unit_e(n), b, p, alpha)}})};
    g.id = "combo_far";
    g.adapt = 0.8 * unit_e(n);
    g.f0 = g.f.eval(Point::Zero(n));
    fam.push_back(std::move(g));
  }

  if (include_constant) {
    FamilyFun g{HoloFun::constant(Complex(1.0, 0.0), n)};
    g.id = "const_1";
    g.f0 = Complex(1.0, 0.0);
    fam.push_back(std::move(g));
  }
  return fam;
}

}  // namespace detail

std::vector<TestFunction> equivalence_test_family(int n, double p, double alpha,
                                                  const std::vector<double>& atom_radii,
                                                  bool include_constant) {
  auto fam = detail::build_family(n, p, alpha, atom_radii, {1, 2, 4}, include_constant);
  std::vector<TestFunction> out;
  out.reserve(fam.size());
  for (auto& g : fam) out.push_back({std::move(g.f), std::move(g.id), g.radius, g.is_atom});
  return out;
}

std::vector<std::string> validate_cells(const ExperimentConfig& cfg) {
  std::vector<std::string> bad = validate_config(cfg);
  if (!bad.empty()) return bad;

  auto cell = [](auto... parts) {
    std::ostringstream os;
    ((os << parts), ...);
    return os.str();
  };

  std::size_t cells = 0;
  if (cfg.name == "tent_equivalence" || cfg.name == "weak_type_check") {
    for (double a : cfg.alpha) {
      if (a <= -1.0)
        bad.push_back(cell(cfg.name, ": alpha=", a, " requires alpha > -1"));
    }
    for (double q : cfg.q) {
      if (std::isinf(q)) bad.push_back(cell(cfg.name, ": q must be finite"));
    }
    cells = cfg.n.size() * cfg.p.size() * cfg.q.size() * cfg.alpha.size() * cfg.gamma.size();
  } else if (cfg.name == "gfunction_equivalence") {
    for (double q : cfg.q) {
      if (q <= 1.0) bad.push_back(cell(cfg.name, ": q=", q, " requires q > 1"));
    }
    cells = cfg.n.size() * cfg.p.size() * cfg.q.size() * cfg.alpha.size();
  } else if (cfg.name == "besov_equivalence") {
    for (double a : cfg.alpha)
      for (double p : cfg.p)
        for (int k : cfg.k) {
          if (p * k + a <= -1.0)
            bad.push_back(
                cell(cfg.name, ": p=", p, " alpha=", a, " k=", k, " requires p*k+alpha > -1"));
        }
    cells = cfg.n.size() * cfg.p.size() * cfg.q.size() * cfg.alpha.size() * cfg.gamma.size() *
            cfg.k.size();
  } else if (cfg.name == "estimate_suite") {
    cells = cfg.n.size() * cfg.alpha.size() * cfg.gamma.size();
  } else if (cfg.name == "counterexample_check") {
    cells = cfg.n.size();
  } else if (cfg.name == "atomic_bound_check") {
    for (int n : cfg.n)
      for (double p : cfg.p)
        for (double a : cfg.alpha) {
          const double gap = atom_hypothesis_gap(n, detail::atom_exponent(n, p, a), p, a);
          if (gap <= 0.0)
            bad.push_back(cell(cfg.name, ": n=", n, " p=", p, " alpha=", a,
                               " atom hypothesis violated (gap=", gap, ")"));
        }
    cells = cfg.n.size() * cfg.p.size() * cfg.lattice_deltas.size() * cfg.lattice_sizes.size();
  } else {
    bad.push_back("unknown experiment: " + cfg.name);
    return bad;
  }

  if (cells == 0) bad.push_back(cfg.name + ": no cells (empty parameter grid)");
  return bad;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto bad = validate_cells(cfg);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "invalid cells for " << cfg.name << ":";
    for (const auto& s : bad) os << "\n  " << s;
    throw ConfigError(os.str());
  }

  ExperimentReport rep;
  rep.experiment = cfg.name;
  rep.seed = cfg.seed;
  {
    std::ostringstream os;
    os << "resolutions: ball=" << cfg.ball_radial << "x" << cfg.ball_sphere
       << " tent=" << cfg.tent_radial << "x" << cfg.tent_sphere << " centers="
       << cfg.centers_radial << "x" << cfg.centers_angular << " inner=" << cfg.maximal_radial
       << "x" << cfg.maximal_sphere << " g=" << cfg.segments << "/" << cfg.depth;
    rep.notes.push_back(os.str());
  }
  rep.notes.push_back(
      "tolerances (band, trend, convergence) are verdict policy; the comparability "
      "constants themselves are not pinned analytically");

  if (cfg.name == "tent_equivalence") {
    detail::run_tent(cfg, rep);
  } else if (cfg.name == "gfunction_equivalence") {
    detail::run_gfunction(cfg, rep);
  } else if (cfg.name == "besov_equivalence") {
    detail::run_besov(cfg, rep);
  } else if (cfg.name == "weak_type_check") {
    detail::run_weak_type(cfg, rep);
  } else if (cfg.name == "estimate_suite") {
    detail::run_estimates(cfg, rep);
  } else if (cfg.name == "counterexample_check") {
    detail::run_counterexample(cfg, rep);
  } else if (cfg.name == "atomic_bound_check") {
    detail::run_atomic_bound(cfg, rep);
  }
  return rep;
}

}  // namespace bergman
