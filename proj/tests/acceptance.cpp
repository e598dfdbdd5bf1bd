// Acceptance harness: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Criteria 1-4 are checked directly against closed forms; 5-9 run the full
// default-resolution experiments; 10 checks determinism and the convergence
// gates on the collected reports.
#include <cmath>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/experiments.hpp"
#include "bergman/functionals.hpp"
#include "bergman/functions.hpp"
#include "bergman/geometry.hpp"
#include "bergman/oracles.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/report.hpp"

using namespace bergman;

namespace {

int failures = 0;

void criterion(int id, bool pass, const std::string& what) {
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " - " << what
            << std::endl;
  if (!pass) ++failures;
}

Point sample_ball(int n, std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Point z(n);
    for (int i = 0; i < n; ++i) z[i] = Complex(u(rng), u(rng));
    if (norm_sq(z) < 1.0) return rmax * z;
  }
}

bool geometry_exactness() {
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 1000; ++trial) {
      const Point a = sample_ball(n, rng, 0.99);
      const Point z = sample_ball(n, rng, 0.99);
      const MobiusMap phi(a);
      worst = std::max(worst, (phi(phi(z)) - z).norm());
      worst = std::max(worst, (phi(Point::Zero(n)) - a).norm());
      worst = std::max(worst, phi(a).norm());
      const double lhs = one_minus_norm_sq(phi(z));
      const double rhs = one_minus_norm_sq(a) * one_minus_norm_sq(z) /
                         std::norm(Complex(1.0, 0.0) - inner(z, a));
      worst = std::max(worst, std::abs(lhs - rhs));
      worst = std::max(worst, std::abs(bergman_distance(a, z) - bergman_distance(z, a)));
    }
  return worst <= 1e-12;
}

bool quadrature_oracles() {
  bool ok = true;
  // sphere moments |J| <= 4: exact for n = 1, within 3 SE (MC) for n = 2, 3
  const QuadRule circle = sphere_rule(1, 64, 42);
  for (int j = 0; j <= 4; ++j)
    for (int k = 0; k <= 4 - j; ++k) {
      const auto est = integrate(circle, [&](const Point& z) {
        return (std::pow(z[0], j) * std::pow(std::conj(z[0]), k)).real();
      });
      ok = ok && std::abs(est.value - monomial_sphere_moment({j}, {k}, 1)) <= 1e-12;
    }
  for (int n : {2, 3}) {
    const QuadRule mc = sphere_rule_mc(n, 40000, 42);
    const std::vector<std::vector<int>> exps = {{1, 0}, {2, 0}, {1, 1}, {2, 2}};
    for (auto J : exps) {
      J.resize(n, 0);
      const auto est = integrate(mc, [&](const Point& z) {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= std::pow(std::abs(z[i]), 2.0 * J[i]);
        return v;
      });
      ok = ok && std::abs(est.value - monomial_sphere_moment(J, J, n)) <= 3.0 * est.abs_err;
    }
  }
  // int dv_alpha = 1 +- 1e-8
  for (int n : {1, 2})
    for (double alpha : {0.0, 1.0})
      ok = ok && std::abs(ball_rule(n, alpha, 24, 96, 42).total_mass() - 1.0) <= 1e-8;
  // invariant volume of the unit Bergman disc, n = 1
  const double tau =
      bergman_ball_rule(Point::Zero(1), 1.0, 32, 64, 42).total_mass();
  ok = ok && std::abs(tau - std::sinh(1.0) * std::sinh(1.0)) <= 1e-6;
  return ok;
}

bool closed_form_anchors() {
  bool ok = true;
  std::mt19937_64 rng(77);
  const HoloFun z1 = HoloFun::monomial({1, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const Point z = sample_ball(2, rng, 0.97);
    const double expect = std::abs(z[0]) * oracles::g2_radial_z1_coeff();
    ok = ok &&
         std::abs(g_function(z1, z, 2.0, GVariant::radial, 8, 48) - expect) <= 1e-6;
  }
  const QuadRule r1 = ball_rule(1, 0.0, 48, 96, 42);
  ok = ok &&
       std::abs(bergman_norm(HoloFun::monomial({1}), 2.0, r1) - std::sqrt(0.5)) <= 1e-8;
  const QuadRule r2 = ball_rule(2, 0.0, 32, 512, 42);
  const double m2 = integrate(r2, [](const Point& z) { return std::norm(z[0]); }).value;
  ok = ok && std::abs(m2 - 1.0 / 3.0) <= 1e-6;
  return ok;
}

bool pointwise_chain() {
  std::mt19937_64 rng(55);
  bool ok = true;
  int points = 0;
  for (const auto& [n, p, alpha] :
       std::vector<std::tuple<int, double, double>>{{1, 2.0, 0.0}, {2, 0.5, 1.0}}) {
    const auto fam = equivalence_test_family(n, p, alpha, {0.0, 0.5, 0.9, 0.99}, true);
    for (int trial = 0; trial < 5000 / static_cast<int>(fam.size()) + 1; ++trial)
      for (const TestFunction& g : fam) {
        const Point z = sample_ball(n, rng, 0.995);
        const double om = one_minus_norm_sq(z);
        const double rmag = om * std::abs(g.f.radial_derivative(z, 1));
        const double gmag = om * std::sqrt(norm_sq(g.f.gradient(z)));
        const double inv = g.f.invariant_gradient_norm(z);
        ok = ok && rmag <= gmag + 1e-12 && gmag <= inv + 1e-12;
        ++points;
      }
  }
  return ok && points >= 10000;
}

bool has_verdict(const ExperimentReport& rep, const std::string& name) {
  for (const auto& v : rep.verdicts)
    if (v.name == name && v.pass) return true;
  return false;
}

}  // namespace

int main() {
  criterion(1, geometry_exactness(),
            "geometry exactness at 1e-12 over 1000 samples for n = 1..4");
  criterion(2, quadrature_oracles(),
            "quadrature oracles: sphere moments, weighted mass 1, invariant disc volume");
  criterion(3, closed_form_anchors(),
            "closed-form anchors: radial g-function of z1, ||z1||_{2,0}, second moment");
  criterion(4, pointwise_chain(),
            "pointwise derivative chain over the full test family at 10^4 points");

  std::cout << "running default-resolution experiments..." << std::endl;
  const ExperimentReport tent = run_experiment(default_config("tent_equivalence"));
  const ExperimentReport gfun = run_experiment(default_config("gfunction_equivalence"));
  const ExperimentReport besov = run_experiment(default_config("besov_equivalence"));
  const ExperimentReport weak = run_experiment(default_config("weak_type_check"));
  const ExperimentReport est = run_experiment(default_config("estimate_suite"));
  const ExperimentReport cx = run_experiment(default_config("counterexample_check"));
  const ExperimentReport atomic = run_experiment(default_config("atomic_bound_check"));

  criterion(5,
            has_verdict(tent, "sandwich_trend") && has_verdict(est, "sandwich_stability"),
            "pointwise sandwich holds with constants flat toward the boundary");
  criterion(6, tent.pass() && gfun.pass() && besov.pass() && has_verdict(tent, "gamma_agreement"),
            "norm-equivalence sweeps: bounded bands, flat boundary trends, "
            "aperture-independent verdicts");
  criterion(7,
            has_verdict(cx, "slope_interior") && has_verdict(cx, "slope_origin") &&
                has_verdict(cx, "weighted_stable"),
            "divergence rates 0.5625 and 1 confirmed; weighted variant stable");
  criterion(8, weak.pass() && has_verdict(weak, "constant_exact"),
            "weak-type check: constant case exact, bump family flat");
  criterion(9,
            has_verdict(est, "operator_bounded_flat") &&
                has_verdict(est, "operator_unbounded_growth"),
            "kernel-operator family: bounded case flat, violating case grows >= 2x");

  bool det = true;
  det = det && to_csv(est) == to_csv(run_experiment(default_config("estimate_suite")));
  det = det && to_csv(cx) == to_csv(run_experiment(default_config("counterexample_check")));
  // every row carries a convergence flag; flagged rows coexist with passing
  // verdicts only because they are excluded, never silently accepted
  bool saw_flagged = false;
  bool atomic_ok = atomic.pass();
  for (const ExperimentReport* rep : {&tent, &gfun, &besov, &weak, &est, &cx, &atomic})
    for (const ReportRow& r : rep->rows) saw_flagged = saw_flagged || !r.converged;
  criterion(10, det && saw_flagged && atomic_ok,
            "identical seed gives bit-identical CSV; unconverged cells are flagged "
            "and excluded");

  std::cout << (failures == 0 ? "acceptance: ALL PASS" : "acceptance: FAILURES")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
