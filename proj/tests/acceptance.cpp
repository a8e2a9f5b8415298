// Acceptance suite: one criterion per section, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "monolab/functional.hpp"
#include "monolab/kahler.hpp"
#include "monolab/operators.hpp"
#include "monolab/reduction3d.hpp"
#include "monolab/topology.hpp"

using namespace monolab;

namespace {

int failures = 0;

struct Criterion {
  int index;
  const char* label;
  std::chrono::steady_clock::time_point start;

  Criterion(int i, const char* l) : index(i), label(l), start(std::chrono::steady_clock::now()) {}

  void report(bool passed, const std::string& detail) const {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d (%s): %s  (%.1f s)\n", passed ? "PASS" : "FAIL",
                index, label, detail.c_str(), secs);
    std::fflush(stdout);
    if (!passed) ++failures;
  }
};

struct Lattice4 {
  std::shared_ptr<TorusLattice> lat;
  std::shared_ptr<FluxBackground> bg;
};

Lattice4 build4(int N, double L, const std::array<std::array<int, 4>, 4>& m) {
  Lattice4 out;
  const double a = L / N;
  out.lat = std::make_shared<TorusLattice>(make_lattice(4, {N, N, N, N}, {a, a, a, a}));
  out.bg = std::make_shared<FluxBackground>(flux_background(*out.lat, m));
  return out;
}

std::array<std::array<int, 4>, 4> flux4(int m01, int m23 = 0) {
  std::array<std::array<int, 4>, 4> m{};
  m[0][1] = m01; m[1][0] = -m01;
  m[2][3] = m23; m[3][2] = -m23;
  return m;
}

GaugeMap random_gauge(const TorusLattice& lat, std::mt19937_64& rng, bool winding) {
  GaugeMap g = make_gauge_map(lat);
  std::normal_distribution<double> gd(0.0, 1.0);
  for (double& x : g.f.v) x = gd(rng);
  if (winding) {
    std::uniform_int_distribution<int> wd(-2, 2);
    for (int u = 0; u < lat.dim; ++u) g.winding[static_cast<std::size_t>(u)] = wd(rng);
  }
  return g;
}

char buf[512];

// 1. Clifford fiber algebra at machine precision.
void criterion1() {
  Criterion cr(1, "clifford fiber algebra");
  std::mt19937_64 rng(101);
  std::normal_distribution<double> gd(0.0, 1.0);

  double worst_anti = 0.0;
  for (int dim : {3, 4}) {
    const GammaRep rep = build_gamma_rep(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        CMat anti = rep.generators[static_cast<std::size_t>(i)] * rep.generators[static_cast<std::size_t>(j)] +
                    rep.generators[static_cast<std::size_t>(j)] * rep.generators[static_cast<std::size_t>(i)];
        if (i == j)
          for (int r = 0; r < rep.fiber; ++r) anti.at(r, r) += 2.0;
        for (int r = 0; r < rep.fiber; ++r)
          for (int c = 0; c < rep.fiber; ++c)
            worst_anti = std::max(worst_anti, std::abs(anti.at(r, c)));
      }
  }

  const GammaRep rep = build_gamma_rep(4);
  double worst_real = 0.0, worst_sum = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::array<cplx, 2> p{cplx{gd(rng), gd(rng)}, cplx{gd(rng), gd(rng)}};
    const std::array<cplx, 4> full{p[0], p[1], cplx{}, cplx{}};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const auto eev = mat_apply(rep.generators[static_cast<std::size_t>(i)] * rep.generators[static_cast<std::size_t>(j)], full);
        cplx pair{};
        for (int k = 0; k < 4; ++k) pair += eev[static_cast<std::size_t>(k)] * std::conj(full[static_cast<std::size_t>(k)]);
        worst_real = std::max(worst_real, std::fabs(std::real(pair)));
        sum += std::norm(pair);
      }
    const double n2 = norm2(p);
    worst_sum = std::max(worst_sum, std::fabs(sum - 2.0 * n2 * n2) / std::max(1.0, 2.0 * n2 * n2));
  }

  const std::array<std::array<double, 6>, 3> asd = {{{1, 0, 0, 0, 0, -1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, -1, 0, 0}}};
  double worst_asd = 0.0;
  for (const auto& w : asd)
    for (int trial = 0; trial < 20; ++trial) {
      const std::array<cplx, 2> p{cplx{gd(rng), gd(rng)}, cplx{gd(rng), gd(rng)}};
      const auto r = two_form_action(rep, w, p);
      worst_asd = std::max(worst_asd, std::sqrt(std::norm(r[0]) + std::norm(r[1])));
    }

  const bool pass = worst_anti == 0.0 && worst_real < 1e-13 && worst_asd < 1e-13 &&
                    worst_sum < 1e-12;
  std::snprintf(buf, sizeof(buf),
                "anticommutators=%.1e, Re<ee psi,psi>=%.2e, |ASD action|=%.2e, sum rule rel=%.2e",
                worst_anti, worst_real, worst_asd, worst_sum);
  cr.report(pass, buf);
}

// 2. Discrete calculus identities and flux quantization on 8^4.
void criterion2() {
  Criterion cr(2, "discrete calculus and flux quantization");
  Lattice4 l4 = build4(8, 1.0, flux4(0));
  const TorusLattice& lat = *l4.lat;
  std::mt19937_64 rng(102);
  std::normal_distribution<double> gd(0.0, 1.0);

  double worst_dd = 0.0, worst_adj = 0.0, worst_star = 0.0;
  for (int k = 0; k <= 4; ++k) {
    Cochain c = make_cochain(lat, k);
    for (double& x : c.v) x = gd(rng);
    const Cochain ss = hodge_star(lat, hodge_star(lat, c));
    const double sign = (k * (4 - k)) % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < c.v.size(); ++i)
      worst_star = std::max(worst_star, std::fabs(ss.v[i] - sign * c.v[i]));
    if (k + 2 <= 4) {
      const Cochain ddc = d(lat, d(lat, c));
      for (double x : ddc.v) worst_dd = std::max(worst_dd, std::fabs(x));
    }
    if (k + 1 <= 4) {
      Cochain y = make_cochain(lat, k + 1);
      for (double& v : y.v) v = gd(rng);
      const double lhs = inner(lat, d(lat, c), y);
      const double rhs = inner(lat, c, d_star(lat, y));
      worst_adj = std::max(worst_adj, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)));
    }
  }

  // flux quantization for |m| <= 3: every plane separately plus 20 random
  // antisymmetric matrices
  double worst_flux = 0.0;
  auto check_flux = [&](const std::array<std::array<int, 4>, 4>& m) {
    const FluxBackground bg = flux_background(lat, m);
    const int base[4] = {1, 5, 2, 7};
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) {
        const double flux = plaquette_flux_sum(lat, bg.F0, u, v, base);
        worst_flux = std::max(worst_flux, std::fabs(flux - 2.0 * kPi * m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]));
      }
  };
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v)
      for (int mm = -3; mm <= 3; ++mm) {
        std::array<std::array<int, 4>, 4> m{};
        m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = mm;
        m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = -mm;
        check_flux(m);
      }
  std::uniform_int_distribution<int> dm(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<std::array<int, 4>, 4> m{};
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) {
        m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = dm(rng);
        m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = -m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      }
    check_flux(m);
  }

  const bool pass = worst_dd < 1e-12 && worst_adj < 1e-12 && worst_star == 0.0 &&
                    worst_flux < 1e-12;
  std::snprintf(buf, sizeof(buf), "dd=%.1e, adjointness=%.2e, star law=%.1e, flux=%.2e",
                worst_dd, worst_adj, worst_star, worst_flux);
  cr.report(pass, buf);
}

// 3. Weitzenboeck convergence across 8^4 -> 16^4 -> 32^4.
void criterion3() {
  Criterion cr(3, "weitzenbock convergence");
  std::vector<double> residuals;
  for (int N : {8, 16, 32}) {
    Lattice4 l4 = build4(N, 1.0, flux4(0));
    const Config c = random_config(l4.lat, l4.bg, 103, 0.4);
    residuals.push_back(weitzenbock_residual(c).value);
  }
  bool decreasing = residuals[1] < residuals[0] && residuals[2] < residuals[1];
  const double order1 = std::log2(residuals[0] / residuals[1]);
  const double order2 = std::log2(residuals[1] / residuals[2]);
  // pinned reading: monotone decay, every step at order >= 1.5, observed
  // order from the finest pair >= 1.9
  const bool pass = decreasing && order1 >= 1.5 && order2 >= 1.5 && order2 >= 1.9;
  std::snprintf(buf, sizeof(buf),
                "residuals %.3e -> %.3e -> %.3e, orders %.3f, %.3f (finest >= 1.9)",
                residuals[0], residuals[1], residuals[2], order1, order2);
  cr.report(pass, buf);
}

// 4. Analytic gradient vs central differences on 8^4.
void criterion4() {
  Criterion cr(4, "gradient correctness");
  Lattice4 l4 = build4(8, 1.0, flux4(1));
  std::mt19937_64 rng(104);
  std::normal_distribution<double> gd(0.0, 1.0);
  double worst = 0.0;
  for (int ci = 0; ci < 5; ++ci) {
    const Config c = random_config(l4.lat, l4.bg, 200 + static_cast<unsigned>(ci), 0.5);
    FunctionalParams p;
    p.kappa = (ci % 2 == 0) ? 0.5 : -0.25;
    if (ci == 2) p.eta = harmonic_selfdual(*l4.lat, 0.2, 11);
    const TangentPair g = gradient(c, p);
    const double gn = std::sqrt(tangent_norm2(*l4.lat, g));
    for (int t = 0; t < 20; ++t) {
      TangentPair dir = make_tangent(*l4.lat);
      for (double& x : dir.alpha.v) x = gd(rng);
      for (cplx& z : dir.phi.v) z = cplx{gd(rng), gd(rng)};
      const double sc = std::sqrt(tangent_norm2(*l4.lat, dir));
      for (double& x : dir.alpha.v) x /= sc;
      for (cplx& z : dir.phi.v) z /= sc;
      auto shifted = [&](double s) {
        Config cs = c;
        for (std::size_t i = 0; i < cs.a.v.size(); ++i) cs.a.v[i] += s * dir.alpha.v[i];
        for (std::size_t i = 0; i < cs.psi.v.size(); ++i) cs.psi.v[i] += s * dir.phi.v[i];
        return action(cs, p);
      };
      const double eps = 0.02;
      const double fd =
          (shifted(-2 * eps) - 8 * shifted(-eps) + 8 * shifted(eps) - shifted(2 * eps)) / (12 * eps);
      const double an = tangent_inner(*l4.lat, g, dir);
      worst = std::max(worst, std::fabs(fd - an) / std::max(std::fabs(an), 1e-3 * gn));
    }
  }
  std::snprintf(buf, sizeof(buf), "worst relative deviation %.3e (tol 1e-6)", worst);
  cr.report(worst < 1e-6, buf);
}

// 5. Gauge invariance under 50 random maps including winding.
void criterion5() {
  Criterion cr(5, "gauge invariance");
  Lattice4 l4 = build4(8, 1.0, flux4(1, -1));
  std::mt19937_64 rng(105);
  const Config c = random_config(l4.lat, l4.bg, 106, 0.7);
  FunctionalParams praw, pwb;
  praw.form = ActionForm::raw;
  pwb.form = ActionForm::weitzenbock;
  pwb.kappa = -0.5;
  const double sraw = action(c, praw);
  const double swb = action(c, pwb);
  const SWResidual r = sw_residual(c);
  const double nd = norm2(*l4.lat, r.dirac);
  const double nc = norm2(*l4.lat, r.curv);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const GaugeMap g = random_gauge(*l4.lat, rng, t % 2 == 1);
    const Config cg = gauge_act(g, c);
    worst = std::max(worst, std::fabs(action(cg, praw) - sraw) / (1.0 + std::fabs(sraw)));
    worst = std::max(worst, std::fabs(action(cg, pwb) - swb) / (1.0 + std::fabs(swb)));
    const SWResidual rg = sw_residual(cg);
    worst = std::max(worst, std::fabs(norm2(*l4.lat, rg.dirac) - nd) / (1.0 + nd));
    worst = std::max(worst, std::fabs(norm2(*l4.lat, rg.curv) - nc) / (1.0 + nc));
  }
  std::snprintf(buf, sizeof(buf), "worst relative change %.3e over 50 maps (tol 1e-11)", worst);
  cr.report(worst < 1e-11, buf);
}

// 6. Vanishing-theorem realization: kappa = +1, m = 0, ten random starts.
void criterion6() {
  Criterion cr(6, "vanishing theorem runs");
  Lattice4 l4 = build4(8, 1.0, flux4(0));
  double worst_psi = 0.0, worst_fplus = 0.0;
  int converged = 0;
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const Config c0 = random_config(l4.lat, l4.bg, seed, 0.3);
    FunctionalParams p;
    p.kappa = 1.0;
    SolveOptions opts;
    opts.tol = 1e-10;
    opts.max_iters = 5000;
    auto [cmin, rep] = flow_minimize(c0, p, opts);
    if (rep.converged) ++converged;
    worst_psi = std::max(worst_psi, rep.psi_sup);
    worst_fplus = std::max(worst_fplus, std::sqrt(rep.i_plus));
  }
  const bool pass = converged == 10 && worst_psi < 1e-6 && worst_fplus < 1e-6;
  std::snprintf(buf, sizeof(buf),
                "%d/10 converged, worst |psi|_inf=%.2e, worst |F+|=%.2e (tol 1e-6)",
                converged, worst_psi, worst_fplus);
  cr.report(pass, buf);
}

// 7. Bound monitors at kappa = -1.
void criterion7() {
  Criterion cr(7, "bound monitors at kappa = -1");
  Lattice4 l4 = build4(8, 1.0, flux4(0));
  double worst_psi2 = 0.0, worst_iplus = 0.0, bound_iplus = 0.0;
  int converged = 0;
  const int runs = 5;
  for (int seed = 1; seed <= runs; ++seed) {
    const Config c0 = random_config(l4.lat, l4.bg, 300 + static_cast<unsigned>(seed), 0.4);
    FunctionalParams p;
    p.kappa = -1.0;
    SolveOptions opts;
    opts.tol = 1e-6;  // nonzero minimum: Armijo floor is sqrt(eps |S|)
    opts.max_iters = 20000;
    auto [cmin, rep] = flow_minimize(c0, p, opts);
    if (!rep.converged) continue;
    ++converged;
    const BoundsReport b = bounds_report(cmin, p);
    worst_psi2 = std::max(worst_psi2, b.psi_sup2);
    worst_iplus = std::max(worst_iplus, b.i_plus);
    bound_iplus = b.i_plus_bound;
  }
  const bool pass = converged == runs && worst_psi2 <= 1.0 + 1e-3 &&
                    worst_iplus <= bound_iplus + 1e-3;
  std::snprintf(buf, sizeof(buf),
                "%d/%d converged, |psi|_inf^2=%.6f (<= 1+1e-3), I+=%.2e (<= Vol/8+1e-3=%.4f)",
                converged, runs, worst_psi2, worst_iplus, bound_iplus + 1e-3);
  cr.report(pass, buf);
}

// 8. Kaehler equivalences on 100 random configurations.
void criterion8() {
  Criterion cr(8, "kahler equivalence");
  Lattice4 l4 = build4(8, 1.0, flux4(2, 2));
  const KahlerStructure ks = kahler_structure(*l4.lat);
  double worst_dirac = 0.0, worst_total = 0.0;
  for (unsigned t = 0; t < 100; ++t) {
    const Config c = random_config(l4.lat, l4.bg, 400 + t, 0.8);
    const SpinorField dol = dolbeault_dirac(ks, c);
    const SpinorField dir = dirac_plus(c);
    double num = 0.0;
    for (std::size_t i = 0; i < dol.v.size(); ++i) num += std::norm(dol.v[i] - dir.v[i]);
    worst_dirac = std::max(worst_dirac,
                           std::sqrt(l4.lat->cell_volume * num / norm2(*l4.lat, c.psi)));
    const KSWResidual kr = ksw_residual(ks, c);
    const SWResidual r = sw_residual(c);
    const double curv = std::sqrt(norm2(*l4.lat, r.curv));
    worst_total = std::max(worst_total, std::fabs(kr.total - curv) / (1.0 + curv));
  }
  const bool pass = worst_dirac < 1e-10 && worst_total < 1e-10;
  std::snprintf(buf, sizeof(buf), "dolbeault vs dirac %.2e, ksw total vs curv %.2e (tol 1e-10)",
                worst_dirac, worst_total);
  cr.report(pass, buf);
}

// 9. 3-d reduction: gradient-flow identity and quantized csd shifts on 8^3.
void criterion9() {
  Criterion cr(9, "3-d reduction");
  auto lat = std::make_shared<TorusLattice>(make_lattice(3, {8, 8, 8}, {0.125, 0.125, 0.125}));
  std::mt19937_64 rng(109);
  std::normal_distribution<double> gd(0.0, 1.0);

  double worst_fd = 0.0;
  {
    std::array<std::array<int, 4>, 4> m{};
    m[0][1] = 1;
    m[1][0] = -1;
    auto bg = std::make_shared<FluxBackground>(flux_background(*lat, m));
    const Config3 c = random_config(lat, bg, 110, 0.6, 1.0);
    const TangentPair rhs = flow_rhs(c);
    for (int t = 0; t < 10; ++t) {
      TangentPair dir = make_tangent(*lat);
      for (double& x : dir.alpha.v) x = gd(rng);
      for (cplx& z : dir.phi.v) z = cplx{gd(rng), gd(rng)};
      const double sc = std::sqrt(tangent_norm2(*lat, dir));
      for (double& x : dir.alpha.v) x /= sc;
      for (cplx& z : dir.phi.v) z /= sc;
      auto shifted = [&](double s) {
        Config3 cs = c;
        for (std::size_t i = 0; i < cs.a.v.size(); ++i) cs.a.v[i] += s * dir.alpha.v[i];
        for (std::size_t i = 0; i < cs.psi.v.size(); ++i) cs.psi.v[i] += s * dir.phi.v[i];
        return csd(cs).value;
      };
      const double eps = 0.02;
      const double fd =
          (shifted(-2 * eps) - 8 * shifted(-eps) + 8 * shifted(eps) - shifted(2 * eps)) / (12 * eps);
      const double an = -tangent_inner(*lat, rhs, dir);
      worst_fd = std::max(worst_fd, std::fabs(fd - an) / std::max(1.0, std::fabs(an)));
    }
  }

  double worst_shift = 0.0;
  for (int m01 = -2; m01 <= 2; ++m01)
    for (int m02 = -2; m02 <= 2; ++m02)
      for (int m12 = -2; m12 <= 2; ++m12) {
        std::array<std::array<int, 4>, 4> m{};
        m[0][1] = m01; m[1][0] = -m01;
        m[0][2] = m02; m[2][0] = -m02;
        m[1][2] = m12; m[2][1] = -m12;
        auto bg = std::make_shared<FluxBackground>(flux_background(*lat, m));
        const Config3 c = random_config(lat, bg, 111, 0.4, 1.0);
        const double base = csd(c).value;
        GaugeMap g = make_gauge_map(*lat);
        for (int w0 = -2; w0 <= 2; ++w0)
          for (int w1 = -2; w1 <= 2; ++w1)
            for (int w2 = -2; w2 <= 2; ++w2) {
              g.winding = {w0, w1, w2, 0};
              const double measured = csd(gauge_act(g, c)).value - base;
              const double predicted = gauge_shift_predicted(m, g.winding);
              worst_shift = std::max(
                  worst_shift, std::fabs(measured - predicted) / std::max(1.0, std::fabs(predicted)));
            }
      }

  const bool pass = worst_fd < 1e-6 && worst_shift < 1e-8;
  std::snprintf(buf, sizeof(buf),
                "flow vs -grad csd %.2e (tol 1e-6), shift vs 4pi^2 pairing %.2e over |m|,|w|<=2 (tol 1e-8)",
                worst_fd, worst_shift);
  cr.report(pass, buf);
}

// 10. Topology regression: exact identities and enumerations.
void criterion10() {
  Criterion cr(10, "topology regression");
  std::mt19937_64 rng(112);
  std::uniform_int_distribution<long long> dchi(-300, 300), dsig(-120, 120), dq(-9, 9), dx(-9, 9);

  bool identity_ok = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    FourManifoldData md;
    md.chi = dchi(rng);
    md.sigma = dsig(rng);
    md.Q.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) md.Q[i][j] = md.Q[j][i] = dq(rng);
    SpinCClass s;
    s.c1_L2.resize(n);
    for (auto& x : s.c1_L2) x = dx(rng);
    const SWDimension dim = sw_dimension(md, s);
    if (dim.dimension != dirac_index(s, md) - asd_index(md)) identity_ok = false;
  }

  bool family_ok = true;
  for (long long dd = 1; dd <= 6; ++dd) {
    const BlowupFamily fam = cp2_blowup(dd * dd);
    if (sw_dimension(fam.manifold, fam.canonical).dimension != Rational(0)) family_ok = false;
  }

  bool thom_ok = true;
  for (long long dd = 1; dd <= 10; ++dd)
    if (thom_genus_bound(dd) != (dd - 1) * (dd - 2) / 2) thom_ok = false;

  bool enum_ok = true;
  std::uniform_int_distribution<long long> dform(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    FourManifoldData md;
    md.chi = dchi(rng) % 20;
    md.sigma = dsig(rng) % 10;
    md.Q.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      long long q = dform(rng);
      if (q == 0) q = 1;
      md.Q[i][i] = q;
    }
    const long long target = 2 * md.chi + 3 * md.sigma;
    const auto found = basic_class_candidates(md, 3);
    std::vector<std::vector<long long>> oracle;
    std::vector<long long> x(n, -3);
    for (;;) {
      long long q = 0;
      for (std::size_t i = 0; i < n; ++i) q += md.Q[i][i] * x[i] * x[i];
      if (q == target) oracle.push_back(x);
      std::size_t i = n;
      bool done = false;
      while (i > 0) {
        --i;
        if (++x[i] <= 3) break;
        x[i] = -3;
        if (i == 0) done = true;
      }
      if (done) break;
    }
    if (found != oracle) enum_ok = false;
  }

  const bool pass = identity_ok && family_ok && thom_ok && enum_ok;
  std::snprintf(buf, sizeof(buf),
                "identity 10^4 random: %s, blow-up family d=1..6: %s, thom d=1..10: %s, enumerator vs oracle: %s",
                identity_ok ? "exact" : "FAIL", family_ok ? "all zero" : "FAIL",
                thom_ok ? "exact" : "FAIL", enum_ok ? "match" : "FAIL");
  cr.report(pass, buf);
}

}  // namespace

int main() {
  set_threads(1);
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
