// weak_type_check, estimate_suite, counterexample_check, atomic_bound_check.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "bergman/functionals.hpp"
#include "bergman/oracles.hpp"
#include "bergman/quadrature.hpp"
#include "experiments_internal.hpp"

namespace bergman::detail {
namespace {

std::string radius_id(double r) {
  std::ostringstream os;
  os << "radius_" << r;
  return os.str();
}

/// Seeded sampler for interior points.
struct Sampler {
  std::mt19937_64 rng;
  std::normal_distribution<double> gauss{0.0, 1.0};
  std::uniform_real_distribution<double> unif{0.0, 1.0};
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  Point direction(int n) {
    Point d(n);
    double s = 0.0;
    do {
      for (int j = 0; j < n; ++j) d[j] = Complex(gauss(rng), gauss(rng));
      s = std::sqrt(norm_sq(d));
    } while (s < 1e-8);
    return d / s;
  }
  /// Uniform w.r.t. normalized volume in the ball of the given radius.
  Point ball_point(int n, double radius) {
    return radius * std::pow(unif(rng), 1.0 / (2.0 * n)) * direction(n);
  }
};

/// sup over a 200-point log grid of lambda (anchored at the attained max, six
/// decades down) of lambda * mu_h{M >= lambda}. The super-level indicator is
/// smoothed one-sidedly over [lambda(1-h), lambda] so the quadrature sees a
/// continuous integrand; the smoothing is exact at the top of the grid, which
/// keeps constants exact.
double weak_sup(const std::vector<double>& values, const std::vector<double>& weights) {
  double top = 0.0;
  for (double v : values) top = std::max(top, v);
  if (top <= 0.0) return 0.0;
  const double h = 0.1;
  double best = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double lam = top * std::pow(10.0, -6.0 * j / 199.0);
    const double lo = lam * (1.0 - h);
    double mu = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = values[i];
      if (v >= lam)
        mu += weights[i];
      else if (v > lo)
        mu += weights[i] * (v - lo) / (lam - lo);
    }
    best = std::max(best, lam * mu);
  }
  return best;
}

/// Composite Gauss-Legendre on (0, hi) refined dyadically toward 1.
double dyadic_integral(const std::function<double(double)>& h, double hi, int depth, int pts) {
  std::vector<double> xs, ws;
  double sum = 0.0;
  for (int m = 0; m < depth; ++m) {
    const double lo = 1.0 - std::ldexp(1.0, -m);
    double up = 1.0 - std::ldexp(1.0, -m - 1);
    if (m == depth - 1 || up > hi) up = hi;
    if (up <= lo) break;
    gauss_legendre(pts, lo, up, xs, ws);
    for (std::size_t i = 0; i < xs.size(); ++i) sum += ws[i] * h(xs[i]);
    if (up >= hi) break;
  }
  return sum;
}

}  // namespace

CounterexampleResult counterexample_at(const Point& z, int segments, int depth) {
  CounterexampleResult out;
  const double zz = norm_sq(z);
  const double z1 = std::norm(z[0]);
  out.expected = (1.0 - zz) * (1.0 - z1);

  // |grad~ z_1 (rz)|^2 = (1 - r^2 |z|^2)(1 - r^2 |z_1|^2), in closed form
  auto integrand = [&](double r) {
    return (1.0 - r * r * zz) * (1.0 - r * r * z1) / (1.0 - r);
  };

  const int levels = 22;
  std::vector<double> xs, ys, gx, gw;
  double acc = 0.0;
  for (int m = 1; m <= levels; ++m) {
    const double lo = 1.0 - std::ldexp(1.0, -(m - 1));
    const double hi = 1.0 - std::ldexp(1.0, -m);
    gauss_legendre(segments, lo, hi, gx, gw);
    for (std::size_t i = 0; i < gx.size(); ++i) acc += gw[i] * integrand(gx[i]);
    if (m >= levels - 8) {
      xs.push_back(m * std::log(2.0));  // log(1/eps), eps = 2^-m
      ys.push_back(acc);
    }
  }
  out.slope = linear_fit(xs, ys).slope;

  auto weighted = [&](int segs) {
    const QuadRule rule =
        radial_singular_rule(RadialKind::one_minus_r_absz, std::sqrt(zz), segs, depth);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.radii[i];
      s += rule.weights[i] * (1.0 - r * r * zz) * (1.0 - r * r * z1);
    }
    return s;
  };
  out.weighted = weighted(segments);
  out.weighted_change = std::abs(out.weighted - weighted(2 * segments));
  return out;
}

void run_counterexample(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double origin_err = 0.0, interior_err = 0.0, weighted_change = 0.0, formula_dev = 0.0;
  for (int n : cfg.n) {
    std::vector<std::pair<std::string, Point>> zs;
    zs.emplace_back("origin", Point::Zero(n));
    zs.emplace_back("half_e1", 0.5 * unit_e(n));
    {
      Point mix = Point::Zero(n);
      mix[0] = Complex(0.3, 0.0);
      if (n >= 2)
        mix[1] = Complex(0.4, 0.0);
      else
        mix[0] = Complex(0.3, 0.4);
      zs.emplace_back("mixed", mix);
    }
    const HoloFun z1 = [&] {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      e[0] = 1;
      return HoloFun::monomial(e);
    }();
    for (const auto& [id, z] : zs) {
      const auto res = counterexample_at(z, cfg.segments, cfg.depth);
      rep.add_row({n, 2, 2, 0, 0, 0, id, "divergence_slope", res.slope, true});
      rep.add_row({n, 2, 2, 0, 0, 0, id, "expected_slope", res.expected, true});
      rep.add_row({n, 2, 2, 0, 0, 0, id, "weighted_integral", res.weighted,
                   res.weighted_change <= 1e-6});
      rep.add_row({n, 2, 2, 0, 0, 0, id, "weighted_change", res.weighted_change, true});
      if (norm_sq(z) == 0.0)
        origin_err = std::max(origin_err, std::abs(res.slope - 1.0));
      else
        interior_err =
            std::max(interior_err, std::abs(res.slope - res.expected) / res.expected);
      weighted_change = std::max(weighted_change, res.weighted_change);

      // cross-check of the closed-form integrand against the generic evaluator
      for (double r : {0.2, 0.7, 0.95}) {
        const Point w = r * z;
        const double direct = z1.invariant_gradient_norm(w);
        const double closed =
            std::sqrt((1.0 - norm_sq(w)) * (1.0 - std::norm(w.size() > 0 ? w[0] : Complex())));
        formula_dev = std::max(formula_dev, std::abs(direct - closed));
      }
    }
  }
  rep.add_verdict({"slope_origin", origin_err, 0.01, origin_err <= 0.01,
                   "divergence rate 1 at the origin, within 1%"});
  rep.add_verdict({"slope_interior", interior_err, 0.05, interior_err <= 0.05,
                   "rate (1-|z|^2)(1-|z_1|^2) at interior points, within 5%"});
  rep.add_verdict({"weighted_stable", weighted_change, 1e-6, weighted_change <= 1e-6,
                   "the 1/(1-r|z|) weighting removes the divergence"});
  rep.add_verdict({"formula_consistency", formula_dev, 1e-12, formula_dev <= 1e-12,
                   "closed-form integrand matches the generic invariant gradient"});
}

void run_weak_type(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double const_err = 0.0, scaling_err = 0.0, max_slope = 0.0;
  Band band;
  int skipped = 0;
  const double alpha = cfg.alpha.front();
  const double p = 1.0;

  for (int n : cfg.n)
    for (double gamma : cfg.gamma) {
      const auto dirs = unit_directions(n, cfg.centers_angular, cfg.seed + 17);

      // Test fields are transported bumps supported on D(a, bump_gamma). The
      // grid maximal uses mollified ball averages with the quartic profile
      // psi_c(w) = (1 - |phi_c(w)|^2 / tanh^2 gamma)_+^2: the numerator can
      // then be integrated on a rule adapted to the field's support (a hard
      // ball rule cannot resolve a small bump inside a larger averaging
      // ball), while the denominator int psi_c dv_alpha is the analytic bump
      // norm. Candidate centers lie within D(z, pattern), so M vanishes
      // identically outside D(a, pattern + gamma + bump_gamma) and the
      // level-set measure is a single local patch quadrature.
      const double bump_gamma = 0.5;
      const double pattern = gamma * cfg.centers_radial / (cfg.centers_radial + 1.0);
      const double support = pattern + gamma + bump_gamma;
      const double tg2 = std::pow(std::tanh(gamma), 2);

      auto t2_at = [](const Point& w, const Point& c) {
        const double ns = std::norm(Complex(1.0, 0.0) - inner(w, c));
        return 1.0 - (1.0 - norm_sq(c)) * (1.0 - norm_sq(w)) / ns;
      };
      auto psi = [tg2](double t2) {
        const double s = 1.0 - t2 / tg2;
        return s > 0.0 ? s * s : 0.0;
      };

      // max over candidate centers of psi-averages of the field prepared as
      // (node, weight * value) pairs on its support rule
      auto maximal_at = [&](const std::vector<Point>& fnodes, const std::vector<double>& fwv,
                            const Point& z) {
        double best = 0.0;
        for (const Point& c : make_centers(z, gamma, cfg.centers_radial, dirs)) {
          double num = 0.0;
          for (std::size_t i = 0; i < fnodes.size(); ++i)
            num += fwv[i] * psi(t2_at(fnodes[i], c));
          const double den = oracles::bump_l1_norm(n, alpha, gamma, std::sqrt(norm_sq(c)));
          best = std::max(best, num / den);
        }
        return best;
      };

      const double t2max = std::pow(std::tanh(bump_gamma), 2);
      Trend trend;
      for (double r : cfg.atom_radii) {
        const Point a = r * unit_e(n);
        const double rr = r * r;
        auto g = [&a, rr, t2max](const Point& w) {
          const double t2 = 1.0 - (1.0 - rr) * (1.0 - norm_sq(w)) /
                                      std::norm(Complex(1.0, 0.0) - inner(w, a));
          const double s = 1.0 - t2 / t2max;
          return s > 0.0 ? s * s : 0.0;
        };
        auto sup_at = [&](double amp, int pass) {
          const int sc = 1 << pass;
          const QuadRule frule = bergman_ball_weighted_rule(
              a, bump_gamma, alpha, cfg.maximal_radial * sc, cfg.maximal_sphere * sc, cfg.seed);
          std::vector<double> fwv(frule.size());
          for (std::size_t i = 0; i < frule.size(); ++i)
            fwv[i] = frule.weights[i] * amp * g(frule.nodes[i]);
          const QuadRule patch = bergman_ball_weighted_rule(
              a, support, alpha, cfg.ball_radial * sc, cfg.ball_sphere * sc, cfg.seed);
          std::vector<double> vals(patch.size());
          for (std::size_t i = 0; i < patch.size(); ++i)
            vals[i] = maximal_at(frule.nodes, fwv, patch.nodes[i]);
          return weak_sup(vals, patch.weights);
        };
        const double s0 = sup_at(1.0, 0);
        const double s1 = sup_at(1.0, 1);
        const bool ok = rel_change(s0, s1) <= cfg.convergence_rel;
        const double l1 = oracles::bump_l1_norm(n, alpha, bump_gamma, r);
        const double C = s0 / l1;
        rep.add_row({n, p, 1, alpha, gamma, 0, radius_id(r), "weak_sup", s0, ok});
        rep.add_row({n, p, 1, alpha, gamma, 0, radius_id(r), "l1_norm", l1, true});
        rep.add_row({n, p, 1, alpha, gamma, 0, radius_id(r), "weak_ratio", C, ok});
        if (ok) {
          band.add(C);
          if (r > 0.0) trend.add(boundary_x(r), std::log(C));
        }

        if (r == 0.9) {
          const double s2 = sup_at(2.0, 0);
          scaling_err = std::max(scaling_err, rel_change(s2, 2.0 * s0));
          rep.add_row({n, p, 1, alpha, gamma, 0, "scaled", "weak_sup", s2, true});
        }
      }
      if (const auto sl = trend.slope())
        max_slope = std::max(max_slope, std::abs(*sl));
      else
        ++skipped;

      // f == 1: numerator and denominator of each psi-average use the same
      // quadrature, so every average is exactly 1 and the sup equals ||f||_1
      const double s_const = [&] {
        const QuadRule outer = ball_rule(n, alpha, cfg.ball_radial, cfg.ball_sphere, cfg.seed);
        std::vector<double> vals(outer.size());
        for (std::size_t j = 0; j < outer.size(); ++j) {
          double best = 0.0;
          for (const Point& c : make_centers(outer.nodes[j], gamma, cfg.centers_radial, dirs)) {
            const QuadRule ball = bergman_ball_weighted_rule(
                c, gamma, alpha, cfg.maximal_radial, cfg.maximal_sphere, cfg.seed);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < ball.size(); ++i) {
              const double pw = ball.weights[i] * psi(t2_at(ball.nodes[i], c));
              num += pw;
              den += pw;
            }
            if (den > 0.0) best = std::max(best, num / den);
          }
          vals[j] = best;
        }
        return weak_sup(vals, outer.weights);
      }();
      rep.add_row({n, p, 1, alpha, gamma, 0, "const_1", "weak_sup", s_const, true});
      const_err = std::max(const_err, std::abs(s_const - 1.0));
    }

  rep.add_verdict({"constant_exact", const_err, 1e-8, const_err <= 1e-8,
                   "sup lambda mu{M >= lambda} equals ||f||_1 exactly for constants"});
  rep.add_verdict({"scaling_exact", scaling_err, 1e-12, scaling_err <= 1e-12,
                   "the weak sup is homogeneous of degree 1"});
  rep.add_verdict({"ratio_band", band.spread(), cfg.band_spread_max,
                   band.spread() <= cfg.band_spread_max,
                   "weak (1,1) constant across transported bumps"});
  {
    std::ostringstream note;
    note << "weak constant flat in -log(1-|a|)";
    if (skipped > 0) note << "; " << skipped << " group(s) skipped (few converged atoms)";
    rep.add_verdict(
        {"boundary_trend", max_slope, cfg.trend_slope_max, max_slope <= cfg.trend_slope_max,
         note.str()});
  }
}

void run_atomic_bound(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const double alpha = cfg.alpha.front();
  Band uniform_band;
  Trend uniform_trend;
  double max_size_slope = -std::numeric_limits<double>::infinity();
  double max_spread = 0.0;

  for (int n : cfg.n) {
    // exact single-atom norms (series oracle): the normalization makes them
    // uniformly comparable across the radius scale
    for (double p : cfg.p) {
      const double b = atom_exponent(n, p, alpha);
      const double c = p * b - (n + 1 + alpha);
      const auto exact_norm = [&](double r) {
        return std::pow(std::pow(1.0 - r * r, c) * oracles::j_function(c, alpha, n, r), 1.0 / p);
      };
      for (double r : cfg.atom_radii) {
        const double norm_p = exact_norm(r);
        rep.add_row({n, p, p, alpha, 0, 0, radius_id(r), "atom_norm_exact", norm_p, true});
        uniform_band.add(norm_p);
      }
      // flatness is a boundary statement: the series values are exact and
      // cheap, so the fit uses a deep fixed schedule regardless of atom_radii
      Trend tr;
      for (double r : {0.99, 0.999, 1.0 - 1e-4, 1.0 - 1e-5}) {
        const double norm_p = exact_norm(r);
        rep.add_row({n, p, p, alpha, 0, 0, radius_id(r) + "_fit", "atom_norm_exact", norm_p,
                     true});
        uniform_band.add(norm_p);
        tr.add(boundary_x(r), std::log(norm_p));
      }
      if (const auto sl = tr.slope()) uniform_trend.add(0.0, *sl);
    }

    std::map<double, Lattice> lattices;
    for (double delta : cfg.lattice_deltas)
      lattices.emplace(delta, build_lattice(n, delta, 0.9, cfg.seed));

    for (double p : cfg.p) {
      const double b = atom_exponent(n, p, alpha);
      Band size_band;
      for (double delta : cfg.lattice_deltas) {
        const Lattice& lat = lattices.at(delta);
        Trend size_tr;
        for (int size : cfg.lattice_sizes) {
          const std::size_t m = std::min<std::size_t>(size, lat.centers.size());
          std::mt19937_64 rng(cfg.seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                              std::hash<double>{}(p + 13.0 * delta) ^ m);
          std::uniform_real_distribution<double> unif(0.0, 1.0);
          std::vector<Complex> coeffs(m);
          double sum_cp = 0.0;
          for (auto& cc : coeffs) {
            cc = std::polar(std::sqrt(unif(rng)), 2.0 * M_PI * unif(rng));
            sum_cp += std::pow(std::abs(cc), p);
          }
          const HoloFun f = synthesize_atomic(coeffs, lat, b, p, alpha);

          double val[2];
          for (int pass = 0; pass < 2; ++pass) {
            const int sc = 1 << pass;
            const QuadRule rule = ball_rule(n, alpha, 4 * cfg.ball_radial * sc,
                                            6 * cfg.ball_sphere * sc, cfg.seed);
            double s = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i)
              s += rule.weights[i] * std::pow(std::abs(f.eval(rule.nodes[i])), p);
            val[pass] = s;
          }
          const bool ok = rel_change(val[0], val[1]) <= cfg.convergence_rel;
          const double C = val[0] / sum_cp;
          std::ostringstream id;
          id << "lattice_d" << delta << "_m" << m;
          rep.add_row({n, p, p, alpha, 0, 0, id.str(), "atomic_c", C, ok});
          if (ok) {
            size_band.add(C);
            size_tr.add(std::log(static_cast<double>(m)), std::log(C));
          }
        }
        if (const auto sl = size_tr.slope(2)) max_size_slope = std::max(max_size_slope, *sl);
      }
      max_spread = std::max(max_spread, size_band.spread());
    }

    // far-apart pair: quadrature vs sum of exact single-atom norms (p = 2)
    {
      const double b = atom_exponent(n, 2.0, alpha);
      const HoloFun f =
          HoloFun::combination({{Complex(1.0, 0.0), HoloFun::atom(0.6 * unit_e(n), b, 2.0, alpha)},
                                {Complex(1.0, 0.0), HoloFun::atom(-0.6 * unit_e(n), b, 2.0, alpha)}});
      const QuadRule rule =
          ball_rule(n, alpha, 4 * cfg.ball_radial, 6 * cfg.ball_sphere, cfg.seed);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i)
        s += rule.weights[i] * std::norm(f.eval(rule.nodes[i]));
      const double c = 2.0 * b - (n + 1 + alpha);
      const double single = std::pow(1.0 - 0.36, c) * oracles::j_function(c, alpha, n, 0.6);
      rep.add_row({n, 2, 2, alpha, 0, 0, "atom_pair", "pair_energy_ratio", s / (2.0 * single),
                   true});
    }
  }

  rep.add_verdict({"atom_uniform_band", uniform_band.spread(), cfg.band_spread_max,
                   uniform_band.spread() <= cfg.band_spread_max,
                   "normalized atoms have uniformly comparable norms"});
  {
    double worst = 0.0;
    for (double s : uniform_trend.ys) worst = std::max(worst, std::abs(s));
    rep.add_verdict({"atom_uniform_trend", worst, cfg.trend_slope_max,
                     worst <= cfg.trend_slope_max, "atom norms flat toward the boundary"});
  }
  rep.add_verdict({"atomic_band", max_spread, cfg.band_spread_max,
                   max_spread <= cfg.band_spread_max,
                   "||sum c_k atom_k||_p^p / sum |c_k|^p across lattices"});
  if (std::isfinite(max_size_slope)) {
    rep.add_verdict({"atomic_size_trend", max_size_slope, cfg.trend_slope_max,
                     max_size_slope <= cfg.trend_slope_max,
                     "one-sided: the constant must not grow with the number of atoms"});
  } else {
    rep.notes.push_back("no converged lattice cells: size-trend verdict vacuous");
    rep.add_verdict({"atomic_size_trend", 0.0, cfg.trend_slope_max, true, "vacuous"});
  }
}

// ---------------------------------------------------------------------------
// estimate_suite
// ---------------------------------------------------------------------------
namespace {

void check_geometry_axioms(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double max_dev = 0.0, tri_violation = 0.0;
  for (int n = 1; n <= 4; ++n) {
    Sampler smp(cfg.seed + n);
    double dev = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const Point a = smp.ball_point(n, 0.99);
      const Point z = smp.ball_point(n, 0.99);
      const Point w = smp.ball_point(n, 0.99);
      const MobiusMap phi(a);
      dev = std::max(dev, (phi(phi(z)) - z).norm());
      const double lhs = one_minus_norm_sq(phi(z));
      const double rhs =
          one_minus_norm_sq(a) * one_minus_norm_sq(z) / std::norm(Complex(1.0, 0.0) - inner(z, a));
      dev = std::max(dev, std::abs(lhs - rhs));
      dev = std::max(dev, std::abs(bergman_distance(a, z) - bergman_distance(z, a)));
      tri_violation = std::max(
          tri_violation,
          bergman_distance(a, z) - bergman_distance(a, w) - bergman_distance(w, z));
    }
    rep.add_row({n, 2, 2, 0, 0, 0, "samples_1000", "geometry_max_dev", dev, true});
    max_dev = std::max(max_dev, dev);
  }
  rep.add_verdict({"geometry_axioms", max_dev, 1e-12, max_dev <= 1e-12,
                   "involution, magnitude identity, symmetry (n = 1..4)"});
  rep.add_verdict({"triangle_inequality", tri_violation, 1e-10, tri_violation <= 1e-10,
                   "metric triangle inequality up to rounding"});
}

void check_comparability(const ExperimentConfig& cfg, ExperimentReport& rep) {
  // the empirical sup uses one fixed sample set transported by phi_a for every
  // radius, so spread(ar) is a smooth function of ar and the fitted slope
  // measures the boundary drift, not sampling noise
  // the sups settle on the scale 1 - |a| tanh(gamma), so the flatness fit only
  // sees the last three radii; the shallow ones are reported for context
  const std::vector<double> radii{0.0, 0.5, 0.9, 0.99, 1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6};
  const double fit_from = 1.0 - 2e-4;
  double slope24 = 0.0, slope26 = 0.0;
  for (int n : cfg.n)
    for (double gamma : cfg.gamma) {
      Sampler smp(cfg.seed + 101 * n);
      const Point dir = smp.direction(n);
      std::vector<Point> ws, zs;
      for (int it = 0; it < 200; ++it) {
        ws.push_back(smp.ball_point(n, std::tanh(gamma)));
        // near-sphere points stand in for the closed ball (phi_a needs |z| < 1)
        zs.push_back(it % 3 == 0 ? Point((1.0 - 1e-9) * smp.direction(n))
                                 : smp.ball_point(n, 1.0 - 1e-9));
      }
      Trend t24, t26;
      for (double ar : radii) {
        const Point a = ar * dir;
        const MobiusMap phi(a);
        double spread = 1.0;
        for (const Point& w : ws) {
          const Point z = phi(w);
          const double q1 = one_minus_norm_sq(a);
          const double q2 = one_minus_norm_sq(z);
          const double q3 = std::abs(Complex(1.0, 0.0) - inner(a, z));
          const double hi = std::max({q1, q2, q3}), lo = std::min({q1, q2, q3});
          spread = std::max(spread, hi / lo);
        }
        rep.add_row({n, 2, 2, 0, gamma, 0, radius_id(ar), "metric_ball_spread", spread, true});
        if (ar >= fit_from) t24.add(boundary_x(ar), std::log(spread));

        // kernel comparability: |1-<z,u>| vs |1-<z,v>| for beta(u,v) < gamma,
        // z over the closed ball including the sphere, both transported by the
        // same phi_u so the extremal configurations travel with u
        const Point u = a;
        double kspread = 1.0;
        for (std::size_t it = 0; it < ws.size(); ++it) {
          const Point v = phi(ws[it]);
          const Point z = phi(zs[it]);
          const double num = std::abs(Complex(1.0, 0.0) - inner(z, u));
          const double den = std::abs(Complex(1.0, 0.0) - inner(z, v));
          if (den < 1e-300 || num < 1e-300) continue;
          kspread = std::max({kspread, num / den, den / num});
        }
        rep.add_row({n, 2, 2, 0, gamma, 0, radius_id(ar), "kernel_spread", kspread, true});
        if (ar >= fit_from) t26.add(boundary_x(ar), std::log(kspread));
      }
      if (const auto sl = t24.slope()) slope24 = std::max(slope24, std::abs(*sl));
      if (const auto sl = t26.slope()) slope26 = std::max(slope26, std::abs(*sl));
    }
  rep.add_verdict({"metric_ball_comparability", slope24, 0.05, slope24 <= 0.05,
                   "1-|a|^2 ~ 1-|z|^2 ~ |1-<a,z>| uniformly on metric balls"});
  rep.add_verdict({"kernel_comparability", slope26, 0.05, slope26 <= 0.05,
                   "|1-<z,u>| ~ |1-<z,v>| uniformly for u, v at bounded distance"});
}

void check_envelope(ExperimentReport& rep) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int it = 0; it <= 100; ++it) {
    const double t = it / 100.0;
    for (int ir = 1; ir <= 26; ++ir) {
      const double rho = ir / 26.0;
      for (int ith = 0; ith < 64; ++ith) {
        const Complex lam = std::polar(rho, 2.0 * M_PI * ith / 64.0);
        const double den = (1.0 - t) + std::abs(1.0 - lam);
        if (den < 1e-13) continue;
        const double ratio = std::abs(1.0 - t * lam) / den;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
  }
  rep.add_row({1, 2, 2, 0, 0, 0, "grid", "envelope_min", lo, true});
  rep.add_row({1, 2, 2, 0, 0, 0, "grid", "envelope_max", hi, true});
  const double dev = std::max(1.0 / 3.0 - lo, hi - 1.0);
  rep.add_verdict({"denominator_envelope", dev, 1e-9, dev <= 1e-9,
                   "|1-t lambda| between (1/3) and 1 times (1-t)+|1-lambda|"});
}

void check_ball_volumes(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double max_slope = 0.0;
  for (int n : cfg.n)
    for (double alpha : cfg.alpha) {
      if (alpha <= -1.0) continue;
      for (double gamma : cfg.gamma) {
        // the ratio saturates only near the boundary (for alpha = 0 it is
        // exactly t^{2n} (1-r^2 t^2)^{-(n+1)}), so the flatness fit uses the
        // boundary-most radii; shallow radii are reported but not fitted
        Trend tr;
        for (double r : {0.0, 0.5, 0.9, 0.99, 0.999, 1.0 - 1e-4, 1.0 - 1e-5}) {
          const Point z = r * unit_e(n);
          const double mass =
              bergman_ball_weighted_rule(z, gamma, alpha, 16, 48, cfg.seed).total_mass();
          const double mass2 =
              bergman_ball_weighted_rule(z, gamma, alpha, 32, 96, cfg.seed).total_mass();
          const double ratio = mass / std::pow(1.0 - r * r, n + 1 + alpha);
          const bool ok = rel_change(mass, mass2) <= cfg.convergence_rel;
          rep.add_row({n, 2, 2, alpha, gamma, 0, radius_id(r), "ball_volume_ratio", ratio, ok});
          if (r >= 1.0 - 2e-3 && ok) tr.add(boundary_x(r), std::log(ratio));
        }
        if (const auto sl = tr.slope()) max_slope = std::max(max_slope, std::abs(*sl));
      }
    }
  rep.add_verdict({"ball_volume_growth", max_slope, cfg.trend_slope_max,
                   max_slope <= cfg.trend_slope_max,
                   "v_alpha(D(z,gamma)) ~ (1-|z|^2)^{n+1+alpha}"});
}

void check_kernel_integrals(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double worst = 0.0;
  for (int n : cfg.n) {
    if (n > 2) continue;
    for (double c : {0.5, 1.0, 2.0})
      for (double alpha : {0.0, 1.0}) {
        std::vector<double> vals;
        for (int j = 1; j <= 6; ++j) {
          const double r = 1.0 - std::pow(10.0, -j);
          const double v = std::pow(1.0 - r * r, c) * oracles::j_function(c, alpha, n, r);
          vals.push_back(v);
          std::ostringstream id;
          id << "one_minus_r_1e-" << j;
          rep.add_row({n, 2, 2, alpha, 0, 0, id.str(), "kernel_integral_scaled", v, true});
        }
        worst = std::max(worst, rel_change(vals[vals.size() - 1], vals[vals.size() - 2]));
      }
  }
  rep.add_verdict({"kernel_integral_growth", worst, 0.05, worst <= 0.05,
                   "(1-|z|^2)^c J_c(z) levels off toward the boundary"});
}

// n int_0^{T2} s^q (1-s)^alpha ds via the binomial series of (1-s)^alpha.
double incomplete_moment(int n, double alpha, double T2, double q) {
  double coef = std::pow(T2, q + 1.0), sum = 0.0;
  for (int l = 0; l < 100000; ++l) {
    const double term = coef / (q + l + 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && l > 4) break;
    coef *= T2 * (l - alpha) / (l + 1.0);
  }
  return n * sum;
}

// int_{|u| < T} |1-<u,a>|^{-2 beta} (1-|u|^2)^alpha dv(u) / v(B), exact series
// from the binomial kernel expansion and angular monomial means; x = |a|^2.
double kernel_ball_series(int n, double alpha, double beta, double T2, double x) {
  double coef = 1.0, sum = 0.0;
  for (int m = 0; m < 200000; ++m) {
    const double term = coef * incomplete_moment(n, alpha, T2, n - 1.0 + m);
    sum += term;
    if (std::abs(term) < 1e-15 * std::abs(sum) && m > 8) break;
    coef *= x * (beta + m) * (beta + m) / ((m + 1.0) * (n + m));
  }
  return sum;
}

void check_subharmonic_bound(const ExperimentConfig& cfg, ExperimentReport& rep) {
  // The atom is evaluated at its own center. Pulling the bound back to the
  // fixed ball |u| < tanh(gamma) gives the exact ratio
  //   |f(a)|^2 v_alpha(D(a,gamma)) / int_D |f|^2 dv_alpha
  //     = A(n+1+alpha) / A(n+1+alpha-b),   A(beta) = kernel_ball_series(x),
  // a smooth function of x = |a|^2 that settles toward the boundary. The plain
  // ellipsoid quadrature cross-checks the series at the shallow radii, where
  // it can still resolve the integrand.
  double max_slope = 0.0, cross_dev = 0.0;
  for (int n : cfg.n) {
    for (double gamma : cfg.gamma)
      for (double alpha : cfg.alpha) {
        if (alpha <= -1.0) continue;
        const double b = atom_exponent(n, 2.0, alpha);
        const double T2 = std::pow(std::tanh(gamma), 2);
        Trend tr;
        for (double r : {0.5, 0.9, 0.99, 0.999, 1.0 - 1e-4, 1.0 - 1e-5}) {
          const double x = r * r;
          const double ratio = kernel_ball_series(n, alpha, n + 1.0 + alpha, T2, x) /
                               kernel_ball_series(n, alpha, n + 1.0 + alpha - b, T2, x);
          rep.add_row({n, 2, 2, alpha, gamma, 0, radius_id(r), "point_eval_constant", ratio,
                       true});
          if (r >= 1.0 - 2e-3) tr.add(boundary_x(r), std::log(ratio));

          if (n <= 2 && r <= 0.9) {
            const Point a = r * unit_e(n);
            const HoloFun f = HoloFun::atom(a, b, 2.0, alpha);
            double quad[2];
            for (int pass = 0; pass < 2; ++pass) {
              const int sc = 1 << pass;
              const QuadRule rule =
                  bergman_ball_weighted_rule(a, gamma, alpha, 12 * sc, 48 * sc, cfg.seed);
              double s = 0.0;
              for (std::size_t i = 0; i < rule.size(); ++i)
                s += rule.weights[i] * std::norm(f.eval(rule.nodes[i]));
              quad[pass] = std::norm(f.eval(a)) * rule.total_mass() / s;
            }
            const bool ok = rel_change(quad[0], quad[1]) <= cfg.convergence_rel;
            rep.add_row({n, 2, 2, alpha, gamma, 0, radius_id(r) + "_quad",
                         "point_eval_constant", quad[0], ok});
            if (ok) cross_dev = std::max(cross_dev, rel_change(quad[0], ratio));
          }
        }
        if (const auto sl = tr.slope()) max_slope = std::max(max_slope, std::abs(*sl));
      }
  }
  rep.add_verdict({"point_evaluation", max_slope, cfg.trend_slope_max,
                   max_slope <= cfg.trend_slope_max,
                   "|f(z)|^2 <= C avg_{D(z,gamma)} |f|^2 with stable C"});
  rep.add_verdict({"point_evaluation_quadrature", cross_dev, 0.02, cross_dev <= 0.02,
                   "ellipsoid quadrature agrees with the series ratio at shallow radii"});
}

void check_derivative_bound(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double worst = 0.0;
  const double beta_exp = 3.0;
  for (int n : cfg.n) {
    if (n > 2) continue;
    const QuadRule sample = ball_rule(n, 0.0, 6, 16, cfg.seed);
    std::vector<std::pair<Complex, HoloFun>> terms;
    std::vector<double> gw(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const double gi = 1.0 + sample.nodes[i][0].real();
      gw[i] = sample.weights[i] * std::abs(gi);
      terms.emplace_back(Complex(sample.weights[i] * gi, 0.0),
                         HoloFun::kernel_power(sample.nodes[i], beta_exp));
    }
    const HoloFun f = HoloFun::combination(terms);
    Sampler smp(cfg.seed + 23 * n);
    std::vector<Point> dirs;
    for (int i = 0; i < 4; ++i) dirs.push_back(smp.direction(n));
    for (double r : {0.0, 0.5, 0.9}) {
      double ratio = 0.0;
      for (const auto& d : dirs) {
        const Point z = r * d;
        const double lhs = f.invariant_gradient_norm(z);
        double rhs = 0.0;
        for (std::size_t i = 0; i < sample.size(); ++i)
          rhs += gw[i] * std::pow(std::norm(Complex(1.0, 0.0) - inner(z, sample.nodes[i])),
                                  -0.5 * (beta_exp + 0.5));
        rhs *= std::sqrt(2.0) * beta_exp * std::sqrt(one_minus_norm_sq(z));
        ratio = std::max(ratio, lhs / rhs);
      }
      rep.add_row({n, 2, 2, 0, 0, 0, radius_id(r), "derivative_bound_ratio", ratio, true});
      worst = std::max(worst, ratio);
    }
  }
  rep.add_verdict({"derivative_bound", worst, 1.0 + 1e-10, worst <= 1.0 + 1e-10,
                   "invariant gradient of kernel integrals, with the exact constant"});
}

void check_g_closed_form(const ExperimentConfig& cfg, ExperimentReport& rep) {
  double max_err = 0.0;
  for (int n : cfg.n) {
    if (n > 2) continue;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[0] = 1;
    const HoloFun z1 = HoloFun::monomial(e);
    Sampler smp(cfg.seed + 31 * n);
    double err = 0.0;
    for (int it = 0; it < 50; ++it) {
      const Point z = smp.ball_point(n, 0.999);
      const double g = g_function(z1, z, 2.0, GVariant::radial, cfg.segments, cfg.depth);
      err = std::max(err, std::abs(g - std::abs(z[0]) * oracles::g2_radial_z1_coeff()));
    }
    rep.add_row({n, 2, 2, 0, 0, 0, "samples_50", "g_closed_form_err", err, true});
    max_err = std::max(max_err, err);
  }
  rep.add_verdict({"g_closed_form", max_err, 1e-6, max_err <= 1e-6,
                   "G^(2) of z_1 equals |z_1|/sqrt(12)"});
}

void check_sandwich(const ExperimentConfig& cfg, ExperimentReport& rep) {
  // transported atoms evaluated at their own centers: each constant in the
  // chain |f| <~ A <~ M <~ A_{2 gamma} then settles toward the boundary
  double max_slope = 0.0;
  const double gamma = 1.0, p = 2.0, q = 2.0;
  for (int n : cfg.n) {
    if (n > 2) continue;
    const double b = atom_exponent(n, p, 0.0);
    const BallResolution res{2 * cfg.tent_radial, 2 * cfg.tent_sphere, cfg.seed};
    const CenterGrid grid{cfg.centers_radial, cfg.centers_angular,
                          {cfg.maximal_radial, cfg.maximal_sphere, cfg.seed}};
    Trend t1, t2;
    for (double r : {0.5, 0.9, 0.99, 0.999}) {
      const Point z = r * unit_e(n);
      const HoloFun f = HoloFun::atom(z, b, p, 0.0);
      const double A = area_integral(f, z, q, gamma, res);
      const double M = maximal_fn(f, z, q, gamma, 0.0, grid);
      const double A2 = area_integral(f, z, q, 2.0 * gamma, res);
      const double c1 = A > 0.0 ? std::abs(f.eval(z)) / A : 0.0;
      const double cm = M > 0.0 ? A / M : 0.0;
      const double c2 = A2 > 0.0 ? M / A2 : 0.0;
      rep.add_row({n, p, q, 0, gamma, 0, radius_id(r), "sandwich_c1", c1, true});
      rep.add_row({n, p, q, 0, gamma, 0, radius_id(r), "sandwich_cmid", cm, true});
      rep.add_row({n, p, q, 0, gamma, 0, radius_id(r), "sandwich_c2", c2, true});
      if (r >= 0.9 && c1 > 0.0 && c2 > 0.0) {
        t1.add(boundary_x(r), std::log(c1));
        t2.add(boundary_x(r), std::log(c2));
      }
    }
    for (const auto* t : {&t1, &t2})
      if (const auto sl = t->slope()) max_slope = std::max(max_slope, std::abs(*sl));
  }
  rep.add_verdict({"sandwich_stability", max_slope, cfg.trend_slope_max,
                   max_slope <= cfg.trend_slope_max,
                   "pointwise |f| <~ A <~ M <~ A_{2 gamma} constants flat in the radius"});
}

void check_operator_family(const ExperimentConfig& cfg, ExperimentReport& rep) {
  // S_{a,b} f(z) = (1-|z|^2)^a int f(w) (1-|w|^2)^b |1-<z,w>|^{-(n+1+a+b)} dv(w)
  // applied to the fixed radial f(w) = 1 - |w|^2. The L^2 mass of Sf over the
  // exhaustion |z| < 1 - 2^{-j} levels off when the parameter test passes
  // ((a,b) = (0,0)) and doubles per octave step for the violating pair
  // ((a,b) = (-1,0)), where Sf ~ (1-|z|^2)^{-1} at the boundary.
  constexpr int J = 8;
  constexpr int J_FIT = 6;  // the first octaves still fill in bulk volume
  double good_slope = 0.0;
  double bad_growth = std::numeric_limits<double>::infinity();

  for (int n : cfg.n) {
    if (n > 2) continue;
    // angular mean of |1 - s zeta_1|^{-e} over the unit sphere (exact series)
    auto kernel_avg = [n](double e, double s2) {
      double coef = 1.0, sum = 0.0;
      for (int m = 0; m < 1000000; ++m) {
        sum += coef;
        if (coef < 1e-14 * sum && m > 4) break;
        coef *= s2 * (0.5 * e + m) * (0.5 * e + m) / ((m + 1.0) * (n + m));
      }
      return sum;
    };
    const double nf2 = 2.0 / ((n + 1.0) * (n + 2.0));  // ||f||_2^2, exact

    for (const auto& [a_exp, b_exp] : std::vector<std::pair<double, double>>{{0, 0}, {-1, 0}}) {
      const bool good = a_exp == 0.0;
      const double expo = n + 1.0 + a_exp + b_exp;
      std::array<std::array<double, J>, 2> ratio{};
      for (int pass = 0; pass < 2; ++pass) {
        const int sc = 1 << pass;
        auto s_at = [&](double rho) {
          const double inner_val = dyadic_integral(
              [&](double r) {
                return 2.0 * n * std::pow(r, 2.0 * n - 1.0) *
                       std::pow(1.0 - r * r, b_exp + 1.0) *
                       kernel_avg(expo, rho * rho * r * r);
              },
              1.0, 24, 6 * sc);
          return std::pow(1.0 - rho * rho, a_exp) * inner_val;
        };
        // accumulate the rho-integral octave by octave
        double ns2 = 0.0;
        std::vector<double> xs, ws;
        for (int j = 1; j <= J; ++j) {
          gauss_legendre(10 * sc, 1.0 - std::ldexp(1.0, -(j - 1)),
                         1.0 - std::ldexp(1.0, -j), xs, ws);
          for (std::size_t i = 0; i < xs.size(); ++i) {
            const double v = s_at(xs[i]);
            ns2 += ws[i] * 2.0 * n * std::pow(xs[i], 2.0 * n - 1.0) * v * v;
          }
          ratio[pass][j - 1] = std::sqrt(ns2 / nf2);
        }
      }
      Trend tr;
      double first = 0.0, last = 0.0;
      for (int j = 1; j <= J; ++j) {
        const double v = ratio[0][j - 1];
        const bool ok = rel_change(v, ratio[1][j - 1]) <= cfg.convergence_rel;
        std::ostringstream id;
        id << "exhaust_j" << j << "_a" << a_exp << "_b" << b_exp;
        rep.add_row({n, 2, 2, 0, 0, 0, id.str(), "operator_norm_ratio", v, ok});
        if (!ok || v <= 0.0) continue;
        if (good) {
          if (j >= J_FIT) tr.add(j * std::log(2.0), std::log(v));
        } else {
          if (first == 0.0) first = v;
          last = v;
        }
      }
      if (good) {
        if (const auto sl = tr.slope()) good_slope = std::max(good_slope, std::abs(*sl));
      } else if (first > 0.0 && last > first) {
        bad_growth = std::min(bad_growth, last / first);
      }
    }
  }
  rep.add_verdict({"operator_bounded_flat", good_slope, cfg.trend_slope_max,
                   good_slope <= cfg.trend_slope_max,
                   "||Sf|| on the exhaustion flat when the parameter test passes"});
  const bool have = std::isfinite(bad_growth);
  rep.add_verdict({"operator_unbounded_growth", have ? bad_growth : 0.0, 2.0,
                   have && bad_growth >= 2.0,
                   "the violating parameter choice blows up across four octaves"});
}

}  // namespace

void run_estimates(const ExperimentConfig& cfg, ExperimentReport& rep) {
  check_geometry_axioms(cfg, rep);
  check_comparability(cfg, rep);
  check_envelope(rep);
  check_ball_volumes(cfg, rep);
  check_kernel_integrals(cfg, rep);
  check_subharmonic_bound(cfg, rep);
  check_derivative_bound(cfg, rep);
  check_g_closed_form(cfg, rep);
  check_sandwich(cfg, rep);
  check_operator_family(cfg, rep);

  // compact divergence check (the full protocol lives in counterexample_check)
  {
    const int n = std::find(cfg.n.begin(), cfg.n.end(), 2) != cfg.n.end() ? 2 : cfg.n.front();
    const auto res = counterexample_at(0.5 * unit_e(n), cfg.segments, cfg.depth);
    rep.add_row({n, 2, 2, 0, 0, 0, "half_e1", "divergence_slope", res.slope, true});
    const double err = std::abs(res.slope - res.expected) / res.expected;
    rep.add_verdict({"divergence_rate", err, 0.05, err <= 0.05,
                     "unweighted g-integrand of z_1 diverges at the predicted rate"});
  }
}

}  // namespace bergman::detail
