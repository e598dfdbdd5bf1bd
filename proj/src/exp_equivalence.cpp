// Norm-equivalence sweeps: tent/area vs maximal vs reference norms, the
// g-function variants, and the extended-range (k-th derivative) scale.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "bergman/functionals.hpp"
#include "bergman/quadrature.hpp"
#include "experiments_internal.hpp"

namespace bergman::detail {
namespace {

struct SweepTotals {
  double max_spread = 0.0;
  double max_slope = 0.0;
  int skipped_trends = 0;
  double sand_c1 = 0.0, sand_cmid = 0.0, sand_c2 = 0.0;
  double sand_slope = 0.0;
  int cells = 0;
};

/// Pushforward of the plain v_alpha rule under phi_a with the exact Jacobian
/// ((1-|a|^2)/|1-<u,a>|^2)^{n+1+alpha}. In the pulled-back coordinates a
/// boundary atom centered at a is polynomially smooth, so its norms converge
/// at desk resolutions where the plain rule would need an unaffordable
/// angular refinement.
QuadRule adapted_outer_rule(const Point& a, int n, double alpha, int radial, int sphere,
                            std::uint64_t seed) {
  QuadRule rule = ball_rule(n, alpha, radial, sphere, seed);
  if (a.size() == 0 || norm_sq(a) == 0.0) return rule;
  const MobiusMap phi(a);
  const double lead = std::pow(1.0 - norm_sq(a), n + 1.0 + alpha);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.weights[i] *=
        lead * std::pow(std::norm(Complex(1.0, 0.0) - inner(rule.nodes[i], a)),
                        -(n + 1.0 + alpha));
    rule.nodes[i] = phi(rule.nodes[i]);
  }
  return rule;
}

/// Family indices sharing one outer-rule adaptation center.
// |phi_a(z)|^2 via the magnitude identity (plain coordinates when a = 0);
// used to keep pointwise sampling on a covariant, resolvable node set
double pulled_back_r2(const Point& z, const Point& a) {
  if (a.size() == 0 || norm_sq(a) == 0.0) return norm_sq(z);
  return 1.0 - (1.0 - norm_sq(a)) * one_minus_norm_sq(z) /
                   std::norm(Complex(1.0, 0.0) - inner(z, a));
}

struct OuterGroup {
  Point center;  // size 0 or zero vector: plain rule
  std::vector<std::size_t> fis;
};

std::vector<OuterGroup> group_by_adaptation(const std::vector<FamilyFun>& fam) {
  std::vector<OuterGroup> groups;
  for (std::size_t fi = 0; fi < fam.size(); ++fi) {
    const Point& a = fam[fi].adapt;
    const bool plain = a.size() == 0 || norm_sq(a) == 0.0;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const OuterGroup& g) {
      const bool gplain = g.center.size() == 0 || norm_sq(g.center) == 0.0;
      if (plain || gplain) return plain == gplain;
      return (g.center - a).norm() < 1e-15;
    });
    if (it == groups.end()) {
      groups.push_back({plain ? Point() : a, {fi}});
    } else {
      it->fis.push_back(fi);
    }
  }
  return groups;
}

std::string cell_tag(double p, double q, int k) {
  std::ostringstream os;
  os << "_cell_p" << p << "_q" << q;
  if (k != 0) os << "_k" << k;
  return os.str();
}

/// One (n, alpha, gamma) group of the area/maximal sweep at base and doubled
/// quadrature resolutions (candidate centers stay fixed: they are a search
/// grid, not a quadrature). Appends rows and per-cell stats to rep and fills
/// cell_pass (one flag per (pi, ki, qi) cell) for cross-gamma comparison.
void sweep_group(const ExperimentConfig& cfg, int n, double alpha, double gamma,
                 const std::vector<int>& ks, ExperimentReport& rep, SweepTotals& tot,
                 std::vector<char>& cell_pass) {
  const std::size_t NP = cfg.p.size(), NQ = cfg.q.size(), NK = ks.size();
  const bool tent_mode = ks.size() == 1 && ks[0] == 0;

  std::vector<std::vector<FamilyFun>> fam;
  fam.reserve(NP);
  for (double p : cfg.p)
    fam.push_back(
        build_family(n, p, alpha, cfg.atom_radii, cfg.monomial_degrees, /*constant=*/true));
  const std::size_t F = fam[0].size();
  const auto dirs = unit_directions(n, cfg.centers_angular, cfg.seed + 17);

  const std::size_t slots = NP * F * NK * NQ;
  auto slot = [&](std::size_t pi, std::size_t fi, std::size_t ki, std::size_t qi) {
    return ((pi * F + fi) * NK + ki) * NQ + qi;
  };

  // [pass] final norms
  std::array<std::vector<double>, 2> area_v, max_v, ref_plain, ref_cent;
  // sandwich maxima per (pi, fi, qi), base pass only
  std::vector<double> c1(NP * F * NQ, 0.0), cm(NP * F * NQ, 0.0), c2(NP * F * NQ, 0.0);

  std::vector<double> tacc(slots), tmax(slots), macc(slots), mmax(slots), mbest(slots);
  std::vector<double> mags(NK);
  std::vector<double> omk(NK);
  std::vector<double> a2acc(NP * F * NQ), a2max(NP * F * NQ);

  const auto groups = group_by_adaptation(fam[0]);

  for (int pass = 0; pass < 2; ++pass) {
    const int sc = 1 << pass;
    std::vector<double> area_sum(slots, 0.0), max_sum(slots, 0.0);
    std::vector<double> rp(NP * F, 0.0), rc(NP * F, 0.0);

    // each adaptation group integrates over its own pulled-back outer rule
    for (const OuterGroup& grp : groups) {
      const QuadRule outer = adapted_outer_rule(grp.center, n, alpha, cfg.ball_radial * sc,
                                                cfg.ball_sphere * sc, cfg.seed);

      auto group_slots = [&](auto&& fn) {
        for (std::size_t pi = 0; pi < NP; ++pi)
          for (std::size_t fi : grp.fis)
            for (std::size_t ki = 0; ki < NK; ++ki)
              for (std::size_t qi = 0; qi < NQ; ++qi) fn(slot(pi, fi, ki, qi), qi);
      };

      // accumulate field^q over one inner rule into acc/accmax for the group
      auto inner_accumulate = [&](const QuadRule& rule, std::vector<double>& acc,
                                  std::vector<double>& accmax) {
        group_slots([&](std::size_t s, std::size_t) { acc[s] = accmax[s] = 0.0; });
        for (std::size_t j = 0; j < rule.size(); ++j) {
          const Point& w = rule.nodes[j];
          const double tw = rule.weights[j];
          const double om = one_minus_norm_sq(w);
          for (std::size_t ki = 0; ki < NK; ++ki)
            omk[ki] = ks[ki] == 0 ? 1.0 : (ks[ki] == 1 ? om : std::pow(om, ks[ki]));
          for (std::size_t pi = 0; pi < NP; ++pi)
            for (std::size_t fi : grp.fis) {
              fam[pi][fi].field_mags(w, ks, mags.data());
              for (std::size_t ki = 0; ki < NK; ++ki) {
                const double val = mags[ki] * omk[ki];
                const std::size_t base = slot(pi, fi, ki, 0);
                for (std::size_t qi = 0; qi < NQ; ++qi) {
                  if (std::isinf(cfg.q[qi]))
                    accmax[base + qi] = std::max(accmax[base + qi], val);
                  else
                    acc[base + qi] += tw * qpow(val, cfg.q[qi]);
                }
              }
            }
        }
      };

      for (std::size_t idx = 0; idx < outer.size(); ++idx) {
        const Point& z = outer.nodes[idx];
        const double wz = outer.weights[idx];
        const bool sand_here = tent_mode && pass == 0 && idx % cfg.sandwich_stride == 0 &&
                               pulled_back_r2(z, grp.center) <= 0.49;

        const QuadRule tent = bergman_ball_rule(z, gamma, cfg.tent_radial * sc,
                                                cfg.tent_sphere * sc, cfg.seed);
        inner_accumulate(tent, tacc, tmax);
        // tacc now holds A^q sums; convert in place to A values
        group_slots([&](std::size_t s, std::size_t qi) {
          const double q = cfg.q[qi];
          tacc[s] = std::isinf(q) ? tmax[s] : std::pow(tacc[s], 1.0 / q);
        });

        group_slots([&](std::size_t s, std::size_t) { mbest[s] = 0.0; });
        for (const Point& c : make_centers(z, gamma, cfg.centers_radial, dirs)) {
          const QuadRule ball = bergman_ball_weighted_rule(
              c, gamma, alpha, cfg.maximal_radial * sc, cfg.maximal_sphere * sc, cfg.seed);
          const double mass = ball.total_mass();
          inner_accumulate(ball, macc, mmax);
          group_slots([&](std::size_t s, std::size_t qi) {
            const double q = cfg.q[qi];
            const double avg = std::isinf(q) ? mmax[s] : std::pow(macc[s] / mass, 1.0 / q);
            mbest[s] = std::max(mbest[s], avg);
          });
        }

        for (std::size_t pi = 0; pi < NP; ++pi) {
          const double p = cfg.p[pi];
          for (std::size_t fi : grp.fis) {
            const Complex fz = fam[pi][fi].f.eval(z);
            rp[pi * F + fi] += wz * std::pow(std::abs(fz), p);
            rc[pi * F + fi] += wz * std::pow(std::abs(fz - fam[pi][fi].f0), p);
            for (std::size_t ki = 0; ki < NK; ++ki)
              for (std::size_t qi = 0; qi < NQ; ++qi) {
                const std::size_t s = slot(pi, fi, ki, qi);
                area_sum[s] += wz * std::pow(tacc[s], p);
                max_sum[s] += wz * std::pow(mbest[s], p);
              }

            // pointwise sandwich |f| <~ A <~ M <~ A_{2 gamma} on strided nodes
            if (sand_here) {
              if (fi == grp.fis.front() && pi == 0) {
                const QuadRule tent2 = bergman_ball_rule(z, 2.0 * gamma, cfg.tent_radial,
                                                         cfg.tent_sphere, cfg.seed);
                inner_accumulate(tent2, a2acc, a2max);
                group_slots([&](std::size_t s, std::size_t qi) {
                  const double q = cfg.q[qi];
                  a2acc[s] = std::isinf(q) ? a2max[s] : std::pow(a2acc[s], 1.0 / q);
                });
              }
              for (std::size_t qi = 0; qi < NQ; ++qi) {
                const std::size_t s3 = (pi * F + fi) * NQ + qi;
                const double A = tacc[slot(pi, fi, 0, qi)];
                const double M = mbest[slot(pi, fi, 0, qi)];
                const double A2 = a2acc[s3];
                if (A > 0.0) c1[s3] = std::max(c1[s3], std::abs(fz) / A);
                if (M > 0.0) cm[s3] = std::max(cm[s3], A / M);
                if (A2 > 0.0) c2[s3] = std::max(c2[s3], M / A2);
              }
            }
          }
        }
      }
    }

    area_v[pass].resize(slots);
    max_v[pass].resize(slots);
    ref_plain[pass].resize(NP * F);
    ref_cent[pass].resize(NP * F);
    for (std::size_t pi = 0; pi < NP; ++pi) {
      const double p = cfg.p[pi];
      for (std::size_t fi = 0; fi < F; ++fi) {
        ref_plain[pass][pi * F + fi] = std::pow(rp[pi * F + fi], 1.0 / p);
        ref_cent[pass][pi * F + fi] = std::pow(rc[pi * F + fi], 1.0 / p);
        for (std::size_t ki = 0; ki < NK; ++ki)
          for (std::size_t qi = 0; qi < NQ; ++qi) {
            const std::size_t s = slot(pi, fi, ki, qi);
            area_v[pass][s] = std::pow(area_sum[s], 1.0 / p);
            max_v[pass][s] = std::pow(max_sum[s], 1.0 / p);
          }
      }
    }
  }

  // emit rows and per-cell statistics
  for (std::size_t pi = 0; pi < NP; ++pi)
    for (std::size_t ki = 0; ki < NK; ++ki)
      for (std::size_t qi = 0; qi < NQ; ++qi) {
        const double p = cfg.p[pi], q = cfg.q[qi];
        const int k = ks[ki];
        Band band;
        Trend tr_a, tr_m;
        for (std::size_t fi = 0; fi < F; ++fi) {
          const auto& g = fam[pi][fi];
          const std::size_t s = slot(pi, fi, ki, qi);
          const std::size_t rs = pi * F + fi;
          const double ref0 = k == 0 ? ref_plain[0][rs] : ref_cent[0][rs];
          const double ref1 = k == 0 ? ref_plain[1][rs] : ref_cent[1][rs];
          const bool ref_ok = rel_change(ref0, ref1) <= cfg.convergence_rel;
          const bool a_ok = rel_change(area_v[0][s], area_v[1][s]) <= cfg.convergence_rel;
          const bool m_ok = rel_change(max_v[0][s], max_v[1][s]) <= cfg.convergence_rel;

          rep.add_row({n, p, q, alpha, gamma, k, g.id, "reference_norm", ref0, ref_ok});
          rep.add_row({n, p, q, alpha, gamma, k, g.id, "area_norm", area_v[0][s], a_ok});
          rep.add_row({n, p, q, alpha, gamma, k, g.id, "maximal_norm", max_v[0][s], m_ok});

          if (!ref_ok || ref0 <= 1e-14) continue;
          if (a_ok && area_v[0][s] > 0.0) {
            const double ra = area_v[0][s] / ref0;
            band.add(ra);
            if (g.is_atom && g.radius >= 0.9) tr_a.add(boundary_x(g.radius), std::log(ra));
          }
          if (m_ok && max_v[0][s] > 0.0) {
            const double rm = max_v[0][s] / ref0;
            band.add(rm);
            if (g.is_atom && g.radius >= 0.9) tr_m.add(boundary_x(g.radius), std::log(rm));
          }
        }

        const double spread = band.spread();
        const std::string tag = cell_tag(p, q, k);
        rep.add_row({n, p, q, alpha, gamma, k, tag, "band_spread", spread, band.count > 0});
        bool ok = spread <= cfg.band_spread_max;
        int have_slope = 0;
        for (const auto* tr : {&tr_a, &tr_m}) {
          const auto sl = tr->slope();
          if (!sl) continue;
          ++have_slope;
          const char* metric = tr == &tr_a ? "trend_slope_area" : "trend_slope_maximal";
          rep.add_row({n, p, q, alpha, gamma, k, tag, metric, *sl, true});
          tot.max_slope = std::max(tot.max_slope, std::abs(*sl));
          if (std::abs(*sl) > cfg.trend_slope_max) ok = false;
        }
        if (have_slope == 0) ++tot.skipped_trends;
        tot.max_spread = std::max(tot.max_spread, spread);
        ++tot.cells;
        cell_pass.push_back(ok ? 1 : 0);
      }

  if (tent_mode) {
    for (std::size_t pi = 0; pi < NP; ++pi)
      for (std::size_t qi = 0; qi < NQ; ++qi) {
        Trend tr;
        for (std::size_t fi = 0; fi < F; ++fi) {
          const auto& g = fam[pi][fi];
          const std::size_t s3 = (pi * F + fi) * NQ + qi;
          rep.add_row({n, cfg.p[pi], cfg.q[qi], alpha, gamma, 0, g.id, "sandwich_c1", c1[s3], true});
          rep.add_row({n, cfg.p[pi], cfg.q[qi], alpha, gamma, 0, g.id, "sandwich_cmid", cm[s3], true});
          rep.add_row({n, cfg.p[pi], cfg.q[qi], alpha, gamma, 0, g.id, "sandwich_c2", c2[s3], true});
          tot.sand_c1 = std::max(tot.sand_c1, c1[s3]);
          tot.sand_cmid = std::max(tot.sand_cmid, cm[s3]);
          tot.sand_c2 = std::max(tot.sand_c2, c2[s3]);
          if (g.is_atom && g.radius >= 0.9 && c1[s3] > 0.0 && c2[s3] > 0.0) {
            tr.add(boundary_x(g.radius), std::log(std::max(c1[s3], c2[s3])));
          }
        }
        if (const auto sl = tr.slope()) tot.sand_slope = std::max(tot.sand_slope, std::abs(*sl));
      }
  }
}

void finish_sweep_verdicts(const ExperimentConfig& cfg, const SweepTotals& tot,
                           int gamma_mismatches, int gamma_pairs, bool tent_mode,
                           ExperimentReport& rep) {
  rep.add_verdict({"band_spread", tot.max_spread, cfg.band_spread_max,
                   tot.max_spread <= cfg.band_spread_max,
                   "max over cells of (largest ratio)/(smallest ratio)"});
  {
    std::ostringstream note;
    note << "max |slope| of log(ratio) vs -log(1-|a|) over boundary atoms";
    if (tot.skipped_trends > 0)
      note << "; " << tot.skipped_trends << " cell(s) with <3 converged atoms skipped";
    rep.add_verdict({"boundary_trend", tot.max_slope, cfg.trend_slope_max,
                     tot.max_slope <= cfg.trend_slope_max, note.str()});
  }
  if (tent_mode) {
    rep.add_verdict({"sandwich_trend", tot.sand_slope, cfg.trend_slope_max,
                     tot.sand_slope <= cfg.trend_slope_max,
                     "pointwise constants C1, C2 stable toward the boundary"});
    std::ostringstream note;
    note << "max pointwise constants: C1=" << tot.sand_c1 << " Cmid=" << tot.sand_cmid
         << " C2=" << tot.sand_c2;
    rep.notes.push_back(note.str());
  }
  if (gamma_pairs > 0) {
    rep.add_verdict({"gamma_agreement", static_cast<double>(gamma_mismatches), 0.0,
                     gamma_mismatches == 0,
                     "cell verdicts must agree across aperture choices"});
  } else {
    rep.notes.push_back("single aperture configured: gamma-agreement check vacuous");
  }
  for (double q : cfg.q)
    if (q == 1.0) {
      rep.notes.push_back(
          "q=1 cells compare plain averages; equivalence there needs no Kahane-Khinchine step");
      break;
    }
}

/// Runs the (n, alpha) x gamma sweep with the given derivative orders and
/// fills the gamma-agreement counters.
void sweep_all(const ExperimentConfig& cfg, const std::vector<int>& ks, ExperimentReport& rep,
               SweepTotals& tot, int& mismatches, int& pairs) {
  for (int n : cfg.n)
    for (double alpha : cfg.alpha) {
      std::vector<std::vector<char>> per_gamma;
      for (double gamma : cfg.gamma) {
        std::vector<char> cell_pass;
        sweep_group(cfg, n, alpha, gamma, ks, rep, tot, cell_pass);
        per_gamma.push_back(std::move(cell_pass));
      }
      for (std::size_t gi = 1; gi < per_gamma.size(); ++gi) {
        ++pairs;
        for (std::size_t c = 0; c < per_gamma[0].size(); ++c)
          if (per_gamma[gi][c] != per_gamma[0][c]) ++mismatches;
      }
    }
}

}  // namespace

void run_tent(const ExperimentConfig& cfg, ExperimentReport& rep) {
  SweepTotals tot;
  int mismatches = 0, pairs = 0;
  sweep_all(cfg, {0}, rep, tot, mismatches, pairs);
  finish_sweep_verdicts(cfg, tot, mismatches, pairs, /*tent_mode=*/true, rep);
}

void run_besov(const ExperimentConfig& cfg, ExperimentReport& rep) {
  SweepTotals tot;
  int mismatches = 0, pairs = 0;
  std::vector<int> ks = cfg.k;
  sweep_all(cfg, ks, rep, tot, mismatches, pairs);
  finish_sweep_verdicts(cfg, tot, mismatches, pairs, /*tent_mode=*/false, rep);

  // Extended range alpha <= -1 (Hardy / Hardy-Sobolev scale): fixed p=2, k=1,
  // q=2 cells; the outer weight (1-|z|^2)^alpha is folded into a shifted
  // Jacobi rule at alpha_eff = alpha + p k > -1.
  const double p = 2.0, q = 2.0;
  const int k = 1;
  const double gamma = cfg.gamma.front();
  Band hband;
  Trend htrend;
  const std::vector<int> ks1{1};
  std::vector<double> mags(1);
  for (int n : cfg.n)
    for (double alpha : {-1.0, -1.5, -2.0}) {
      const double alpha_eff = alpha + p * k;
      const double c_eff = v_alpha_constant(n, alpha_eff);
      auto fam = build_family(n, p, alpha, cfg.atom_radii, cfg.monomial_degrees, false);
      const std::size_t F = fam.size();
      const auto dirs = unit_directions(n, cfg.centers_angular, cfg.seed + 17);

      const auto groups = group_by_adaptation(fam);
      std::array<std::vector<double>, 2> area_v, max_v, ref_v;
      for (int pass = 0; pass < 2; ++pass) {
        const int sc = 1 << pass;
        std::vector<double> asum(F, 0.0), msum(F, 0.0), rsum(F, 0.0);
        for (const OuterGroup& grp : groups) {
          const QuadRule outer = adapted_outer_rule(grp.center, n, alpha_eff,
                                                    cfg.ball_radial * sc, cfg.ball_sphere * sc,
                                                    cfg.seed);
          for (std::size_t idx = 0; idx < outer.size(); ++idx) {
            const Point& z = outer.nodes[idx];
            const double wz = outer.weights[idx];
            const double omz = one_minus_norm_sq(z);
            const QuadRule tent = bergman_ball_rule(z, gamma, cfg.tent_radial * sc,
                                                    cfg.tent_sphere * sc, cfg.seed);
            std::vector<double> av(F, 0.0), mv(F, 0.0);
            for (std::size_t j = 0; j < tent.size(); ++j) {
              const Point& w = tent.nodes[j];
              const double om = one_minus_norm_sq(w);
              for (std::size_t fi : grp.fis) {
                fam[fi].field_mags(w, ks1, mags.data());
                av[fi] += tent.weights[j] * qpow(mags[0] * om, q);
              }
            }
            for (const Point& c : make_centers(z, gamma, cfg.centers_radial, dirs)) {
              const QuadRule ball = bergman_ball_weighted_rule(
                  c, gamma, alpha, cfg.maximal_radial * sc, cfg.maximal_sphere * sc, cfg.seed);
              const double mass = ball.total_mass();
              std::vector<double> acc(F, 0.0);
              for (std::size_t j = 0; j < ball.size(); ++j) {
                const Point& w = ball.nodes[j];
                const double om = one_minus_norm_sq(w);
                for (std::size_t fi : grp.fis) {
                  fam[fi].field_mags(w, ks1, mags.data());
                  acc[fi] += ball.weights[j] * qpow(mags[0] * om, q);
                }
              }
              for (std::size_t fi : grp.fis) mv[fi] = std::max(mv[fi], std::sqrt(acc[fi] / mass));
            }
            for (std::size_t fi : grp.fis) {
              const double A = std::sqrt(av[fi]) / std::pow(omz, k);
              asum[fi] += wz * A * A;
              const double M = mv[fi] / std::pow(omz, k);
              msum[fi] += wz * M * M;
              fam[fi].field_mags(z, ks1, mags.data());
              rsum[fi] += wz * mags[0] * mags[0];
            }
          }
        }
        area_v[pass].resize(F);
        max_v[pass].resize(F);
        ref_v[pass].resize(F);
        for (std::size_t fi = 0; fi < F; ++fi) {
          area_v[pass][fi] = std::sqrt(asum[fi] / c_eff);
          max_v[pass][fi] = std::sqrt(msum[fi] / c_eff);
          // ||f||^2 in the extended range: |f(0)-f0| vanishes for the centered
          // member, leaving the order-1 radial-derivative integral at alpha_eff
          ref_v[pass][fi] = std::sqrt(rsum[fi] / c_eff);
        }
      }
      for (std::size_t fi = 0; fi < F; ++fi) {
        const bool r_ok = rel_change(ref_v[0][fi], ref_v[1][fi]) <= cfg.convergence_rel;
        const bool a_ok = rel_change(area_v[0][fi], area_v[1][fi]) <= cfg.convergence_rel;
        const bool m_ok = rel_change(max_v[0][fi], max_v[1][fi]) <= cfg.convergence_rel;
        rep.add_row({n, p, q, alpha, gamma, k, fam[fi].id, "reference_norm", ref_v[0][fi], r_ok});
        rep.add_row({n, p, q, alpha, gamma, k, fam[fi].id, "area_norm", area_v[0][fi], a_ok});
        rep.add_row({n, p, q, alpha, gamma, k, fam[fi].id, "maximal_norm", max_v[0][fi], m_ok});
        if (!r_ok || ref_v[0][fi] <= 1e-14) continue;
        if (a_ok && area_v[0][fi] > 0.0) {
          const double ra = area_v[0][fi] / ref_v[0][fi];
          hband.add(ra);
          if (fam[fi].is_atom && fam[fi].radius >= 0.9)
            htrend.add(boundary_x(fam[fi].radius), std::log(ra));
        }
        if (m_ok && max_v[0][fi] > 0.0) hband.add(max_v[0][fi] / ref_v[0][fi]);
      }
    }
  rep.add_verdict({"hardy_band", hband.spread(), cfg.band_spread_max,
                   hband.spread() <= cfg.band_spread_max,
                   "extended range alpha in {-1,-1.5,-2} at p=2, k=1"});
  const auto hs = htrend.slope();
  rep.add_verdict({"hardy_trend", hs ? std::abs(*hs) : 0.0, cfg.trend_slope_max,
                   !hs || std::abs(*hs) <= cfg.trend_slope_max,
                   hs ? "boundary atoms, extended range" : "too few converged atoms (vacuous)"});
}

void run_gfunction(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const std::size_t NP = cfg.p.size(), NQ = cfg.q.size();
  Band band;
  double max_slope = 0.0;
  double order_violation = 0.0;  // max of G_radial/G_gradient - 1
  int skipped = 0;

  for (int n : cfg.n)
    for (double alpha : cfg.alpha) {
      std::vector<std::vector<FamilyFun>> fam;
      for (double p : cfg.p)
        fam.push_back(build_family(n, p, alpha, cfg.atom_radii, cfg.monomial_degrees, false));
      const std::size_t F = fam[0].size();
      const std::size_t slots = NP * F * NQ * 3;
      auto slot = [&](std::size_t pi, std::size_t fi, std::size_t qi, std::size_t v) {
        return ((pi * F + fi) * NQ + qi) * 3 + v;
      };

      const auto groups = group_by_adaptation(fam[0]);
      std::array<std::vector<double>, 2> gnorm, ref_v;
      for (int pass = 0; pass < 2; ++pass) {
        const int sc = 1 << pass;
        const QuadRule rad_rule =
            radial_singular_rule(RadialKind::one_minus_r, 0.0, cfg.segments * sc, cfg.depth);
        std::vector<double> gsum(slots, 0.0), rsum(NP * F, 0.0);
        std::vector<double> gq(slots);
        Point rz;

        for (const OuterGroup& grp : groups) {
          const QuadRule outer = adapted_outer_rule(grp.center, n, alpha, cfg.ball_radial * sc,
                                                    cfg.ball_sphere * sc, cfg.seed);
          for (std::size_t idx = 0; idx < outer.size(); ++idx) {
            const Point& z = outer.nodes[idx];
            const double wz = outer.weights[idx];
            const double zmag = std::sqrt(norm_sq(z));
            const QuadRule inv_rule =
                radial_singular_rule(RadialKind::one_minus_r_absz, zmag, cfg.segments * sc,
                                     cfg.depth);
            for (std::size_t pi = 0; pi < NP; ++pi)
              for (std::size_t fi : grp.fis)
                for (std::size_t qi = 0; qi < NQ; ++qi)
                  for (int v = 0; v < 3; ++v) gq[slot(pi, fi, qi, v)] = 0.0;
            for (std::size_t j = 0; j < rad_rule.size(); ++j) {
              const double r = rad_rule.radii[j];
              const double wr = rad_rule.weights[j];
              const double wi = inv_rule.weights[j];
              rz = r * z;
              const double om_rz = one_minus_norm_sq(rz);
              for (std::size_t pi = 0; pi < NP; ++pi)
                for (std::size_t fi : grp.fis) {
                  double rmag2 = 0.0, grad2 = 0.0;
                  fam[pi][fi].deriv_mags(rz, rmag2, grad2);
                  const double fr = (1.0 - r) * std::sqrt(rmag2);
                  const double fg = (1.0 - r) * std::sqrt(grad2);
                  const double fv = std::sqrt(std::max(0.0, om_rz * (grad2 - rmag2)));
                  for (std::size_t qi = 0; qi < NQ; ++qi) {
                    const double q = cfg.q[qi];
                    gq[slot(pi, fi, qi, 0)] += wr * qpow(fr, q);
                    gq[slot(pi, fi, qi, 1)] += wr * qpow(fg, q);
                    gq[slot(pi, fi, qi, 2)] += wi * qpow(fv, q);
                  }
                }
            }
            for (std::size_t pi = 0; pi < NP; ++pi) {
              const double p = cfg.p[pi];
              for (std::size_t fi : grp.fis) {
                const Complex fz = fam[pi][fi].f.eval(z);
                rsum[pi * F + fi] += wz * std::pow(std::abs(fz - fam[pi][fi].f0), p);
                for (std::size_t qi = 0; qi < NQ; ++qi) {
                  const double q = cfg.q[qi];
                  double gv[3];
                  for (int v = 0; v < 3; ++v) {
                    gv[v] = std::pow(gq[slot(pi, fi, qi, v)], 1.0 / q);
                    gsum[slot(pi, fi, qi, v)] += wz * std::pow(gv[v], p);
                  }
                  if (pass == 0 && gv[1] > 0.0)
                    order_violation = std::max(order_violation, gv[0] / gv[1] - 1.0);
                }
              }
            }
          }
        }
        gnorm[pass].resize(slots);
        ref_v[pass].resize(NP * F);
        for (std::size_t pi = 0; pi < NP; ++pi)
          for (std::size_t fi = 0; fi < F; ++fi) {
            ref_v[pass][pi * F + fi] = std::pow(rsum[pi * F + fi], 1.0 / cfg.p[pi]);
            for (std::size_t qi = 0; qi < NQ; ++qi)
              for (int v = 0; v < 3; ++v) {
                const std::size_t s = slot(pi, fi, qi, v);
                gnorm[pass][s] = std::pow(gsum[s], 1.0 / cfg.p[pi]);
              }
          }
      }

      static const char* metrics[3] = {"g_radial_norm", "g_gradient_norm", "g_invariant_norm"};
      for (std::size_t pi = 0; pi < NP; ++pi)
        for (std::size_t qi = 0; qi < NQ; ++qi) {
          const double p = cfg.p[pi], q = cfg.q[qi];
          Trend tr[3];
          Band cell_band;
          for (std::size_t fi = 0; fi < F; ++fi) {
            const auto& g = fam[pi][fi];
            const double ref0 = ref_v[0][pi * F + fi];
            const bool r_ok =
                rel_change(ref0, ref_v[1][pi * F + fi]) <= cfg.convergence_rel;
            rep.add_row({n, p, q, alpha, 0.0, 0, g.id, "reference_norm", ref0, r_ok});
            for (int v = 0; v < 3; ++v) {
              const std::size_t s = slot(pi, fi, qi, v);
              const bool ok = rel_change(gnorm[0][s], gnorm[1][s]) <= cfg.convergence_rel;
              rep.add_row({n, p, q, alpha, 0.0, 0, g.id, metrics[v], gnorm[0][s], ok});
              if (r_ok && ok && ref0 > 1e-14 && gnorm[0][s] > 0.0) {
                const double ratio = gnorm[0][s] / ref0;
                cell_band.add(ratio);
                band.add(ratio);
                if (g.is_atom && g.radius >= 0.9)
                  tr[v].add(boundary_x(g.radius), std::log(ratio));
              }
            }
          }
          const std::string tag = cell_tag(p, q, 0);
          rep.add_row({n, p, q, alpha, 0.0, 0, tag, "band_spread", cell_band.spread(),
                       cell_band.count > 0});
          int have = 0;
          for (int v = 0; v < 3; ++v) {
            if (const auto sl = tr[v].slope()) {
              ++have;
              rep.add_row({n, p, q, alpha, 0.0, 0, tag,
                           std::string("trend_slope_") + metrics[v], *sl, true});
              max_slope = std::max(max_slope, std::abs(*sl));
            }
          }
          if (have == 0) ++skipped;
        }
    }

  // constants must be annihilated exactly by every variant
  double const_max = 0.0;
  for (int n : cfg.n) {
    const HoloFun one = HoloFun::constant(Complex(1.0, 0.0), n);
    for (double r : {0.0, 0.4, 0.8}) {
      const Point z = r * unit_e(n);
      for (auto v : {GVariant::radial, GVariant::gradient, GVariant::invariant})
        const_max = std::max(const_max,
                             std::abs(g_function(one, z, cfg.q.front(), v, cfg.segments)));
    }
  }

  rep.add_verdict({"band_spread", band.spread(), cfg.band_spread_max,
                   band.spread() <= cfg.band_spread_max,
                   "all three g-variants vs the centered reference norm"});
  {
    std::ostringstream note;
    note << "boundary atoms, per variant";
    if (skipped > 0) note << "; " << skipped << " cell(s) without enough converged atoms";
    rep.add_verdict({"boundary_trend", max_slope, cfg.trend_slope_max,
                     max_slope <= cfg.trend_slope_max, note.str()});
  }
  rep.add_verdict({"pointwise_ordering", order_violation, 1e-12, order_violation <= 1e-12,
                   "G_radial <= G_gradient at every sampled point"});
  rep.add_verdict({"constants_vanish", const_max, 1e-12, const_max <= 1e-12,
                   "all variants give exactly 0 on constants"});
}

}  // namespace bergman::detail
