#pragma once

// The monopole energy functional in both forms, its exact discrete
// gradient, a gauge-fixed descent minimizer, and bound monitors.
//
// raw form (kappa = 0 only):   S = |D psi|^2 + |F+ + eta - q(psi)|^2
// weitzenbock form:            S = |grad psi|^2 + |F+|^2 + (kappa/4)|psi|^2
//                                  + (1/8)|psi|^4 + |eta|^2 + 2<eta, F+ - q>
// At kappa = 0 the two agree up to the O(a^2) discrete Weitzenboeck defect;
// |q(psi)|^2 = (1/8)|psi|^4 holds pointwise, so the quartic coefficient is
// fixed, not tuned. kappa is a synthetic constant (a flat lattice has no
// scalar curvature); it only enters the weitzenbock form.
//
// The gradient is the exact derivative of the implemented weitzenbock-form
// action: twice the Euler-Lagrange expressions, with the curvature current
// living on links (the derivative of the transport phases).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monolab/fourier.hpp"
#include "monolab/operators.hpp"

namespace monolab {

enum class ActionForm { raw, weitzenbock };

struct FunctionalParams {
  double kappa = 0.0;
  std::optional<Cochain> eta;  // self-dual 2-cochain perturbation
  ActionForm form = ActionForm::weitzenbock;
};

inline double action(const Config& c, const FunctionalParams& p) {
  const TorusLattice& lat = *c.lat;
  if (lat.dim != 4) throw Error("action: needs dim 4");
  if (p.eta.has_value()) require_selfdual(lat, *p.eta, "action");

  if (p.form == ActionForm::raw) {
    if (p.kappa != 0.0)
      throw Error("action: raw form is the geometric identity, kappa must be 0");
    const SWResidual r = sw_residual(c, p.eta.has_value() ? &*p.eta : nullptr);
    return norm2(lat, r.dirac) + norm2(lat, r.curv);
  }

  const LinkPhases ph = link_phases(c);
  const SpinorForm grad_psi = covariant_derivative(c, c.psi, ph);
  const Cochain Fp = sd_curvature(c);
  double s = norm2(lat, grad_psi) + norm2(lat, Fp);
  s += 0.25 * p.kappa * norm2(lat, c.psi);
  s += 0.125 * lat.cell_volume * block_sum(lat.nsites, [&](std::size_t st) {
    const double n2v = std::norm(c.psi.v[2 * st]) + std::norm(c.psi.v[2 * st + 1]);
    return n2v * n2v;
  });
  if (p.eta.has_value()) {
    const Cochain q = quad_form_field(lat, c.psi);
    s += norm2(lat, *p.eta) + 2.0 * inner(lat, *p.eta, Fp) - 2.0 * inner(lat, *p.eta, q);
  }
  return s;
}

// L2 gradient of the weitzenbock-form action.
inline TangentPair gradient(const Config& c, const FunctionalParams& p) {
  const TorusLattice& lat = *c.lat;
  if (p.form != ActionForm::weitzenbock)
    throw Error("gradient: defined for the weitzenbock form");
  if (p.eta.has_value()) require_selfdual(lat, *p.eta, "gradient");

  const LinkPhases ph = link_phases(c);
  const SpinorForm gpsi = covariant_derivative(c, c.psi, ph);
  const GammaRep& rep = gamma4();

  TangentPair g = make_tangent(lat);

  // psi part: 2 grad* grad psi + (kappa/2) psi + (1/2)|psi|^2 psi + i rho(eta) psi
  const SpinorField lap = covariant_div(c, gpsi, ph);
  const int n2 = lat.ncomp(2);
  parallel_for(lat.nsites, [&](std::size_t st) {
    const cplx p0 = c.psi.v[2 * st];
    const cplx p1 = c.psi.v[2 * st + 1];
    const double nrm = std::norm(p0) + std::norm(p1);
    const double coef = 0.5 * p.kappa + 0.5 * nrm;
    cplx g0 = 2.0 * lap.v[2 * st] + coef * p0;
    cplx g1 = 2.0 * lap.v[2 * st + 1] + coef * p1;
    if (p.eta.has_value()) {
      std::array<double, 6> w{};
      for (int q2 = 0; q2 < 6; ++q2) w[static_cast<std::size_t>(q2)] = p.eta->at(st, q2, n2);
      const auto rho = two_form_action(rep, w, {p0, p1});
      g0 += cplx{0.0, 1.0} * rho[0];
      g1 += cplx{0.0, 1.0} * rho[1];
    }
    g.phi.v[2 * st] = g0;
    g.phi.v[2 * st + 1] = g1;
  });

  // connection part: link current of |grad psi|^2 plus 2 d*(F+ + eta)
  Cochain fp = sd_curvature(c);
  if (p.eta.has_value())
    for (std::size_t i = 0; i < fp.v.size(); ++i) fp.v[i] += p.eta->v[i];
  g.alpha = d_star(lat, fp);
  const int n1 = lat.ncomp(1);
  const double q = c.charge;
  lat.par_sites([&](std::size_t st, const int* n) {
    for (int k = 0; k < lat.dim; ++k) {
      g.alpha.at(st, k, n1) *= 2.0;
      const std::size_t sf = lat.fwd(st, n, k);
      const cplx u = ph.at(st, k);
      const std::array<cplx, 2> t{u * c.psi.v[2 * sf], u * c.psi.v[2 * sf + 1]};
      const std::array<cplx, 2> back{std::conj(u) * c.psi.v[2 * st],
                                     std::conj(u) * c.psi.v[2 * st + 1]};
      const auto gk_here = gpsi.fiber(st, k);
      const auto gk_fwd = gpsi.fiber(sf, k);
      g.alpha.at(st, k, n1) +=
          q * (std::imag(hermitian(t, gk_here)) + std::imag(hermitian(back, gk_fwd)));
    }
  });
  return g;
}

struct SolveOptions {
  double step0 = 0.25;
  int max_iters = 10000;
  double tol = 1e-8;  // stopping tolerance on the rms gradient per dof
  int gauge_fix_period = 100;
  double armijo = 1e-4;
  int max_backtracks = 48;
  double grow = 1.3;
  bool keep_trace = false;
  bool precondition = true;  // Fourier-diagonal SPD metric for the step
};

// SPD change of metric for descent directions: divide Fourier modes of the
// connection part by the compact Laplacian symbol and the section part by
// the central one (the free curvature of each quadratic term), plus an
// O(max(1, |kappa|)) shift. Stationary points are untouched.
inline TangentPair precondition(const TorusLattice& lat, const TangentPair& g,
                                double kappa) {
  const double shift = std::max(0.25, 0.5 * std::fabs(kappa));
  TangentPair out = g;
  std::vector<cplx> awork(g.alpha.v.size());
  for (std::size_t i = 0; i < awork.size(); ++i) awork[i] = cplx{g.alpha.v[i], 0.0};
  precondition_field(lat, awork, lat.ncomp(1), shift, LaplaceSymbol::compact);
  for (std::size_t i = 0; i < awork.size(); ++i) out.alpha.v[i] = awork[i].real();
  std::vector<cplx> pwork = g.phi.v;
  precondition_field(lat, pwork, 2, shift, LaplaceSymbol::central);
  out.phi.v = std::move(pwork);
  return out;
}

struct TraceRow {
  int iter;
  double action;
  double grad_norm;
  double psi_sup;
  double i_plus;
  double i_minus;
};

struct SolveReport {
  int iterations = 0;
  double final_action = 0.0;
  double dirac_residual = 0.0;
  double curv_residual = 0.0;
  double psi_sup = 0.0;
  double i_plus = 0.0;
  double i_minus = 0.0;
  bool converged = false;
  bool line_search_failed = false;
  double grad_rms = 0.0;
  double gauge_fix_residual = 0.0;
  std::vector<TraceRow> trace;
};

inline double grad_rms(const TangentPair& g) {
  double acc = 0.0;
  std::size_t n = g.alpha.v.size();
  for (double x : g.alpha.v) acc += x * x;
  for (cplx z : g.phi.v) acc += std::norm(z);
  n += 2 * g.phi.v.size();
  return std::sqrt(acc / static_cast<double>(n));
}

inline void fill_diagnostics(const Config& c, const FunctionalParams& p,
                             SolveReport& rep) {
  const TorusLattice& lat = *c.lat;
  const SWResidual r = sw_residual(c, p.eta.has_value() ? &*p.eta : nullptr);
  rep.dirac_residual = std::sqrt(norm2(lat, r.dirac));
  rep.curv_residual = std::sqrt(norm2(lat, r.curv));
  rep.psi_sup = sup_norm(c.psi);
  const Cochain F = curvature(c);
  const Cochain Fp = selfdual_project(lat, F);
  rep.i_plus = norm2(lat, Fp);
  rep.i_minus = norm2(lat, axpy(-1.0, Fp, F));
}

// Gradient descent with Armijo backtracking and periodic Coulomb
// re-projection. The functional cannot increase between accepted steps.
inline std::pair<Config, SolveReport> flow_minimize(const Config& c0,
                                                    const FunctionalParams& p,
                                                    const SolveOptions& opts = {}) {
  const TorusLattice& lat = *c0.lat;
  Config c = c0;
  SolveReport rep;
  double step = opts.step0;
  double S = action(c, p);

  for (int it = 0; it < opts.max_iters; ++it) {
    const TangentPair g = gradient(c, p);
    const double rms = grad_rms(g);
    rep.grad_rms = rms;
    if (opts.keep_trace || it == 0) {
      SolveReport tmp;
      fill_diagnostics(c, p, tmp);
      rep.trace.push_back({it, S, rms, tmp.psi_sup, tmp.i_plus, tmp.i_minus});
    }
    if (rms < opts.tol) {
      rep.converged = true;
      rep.iterations = it;
      break;
    }

    const TangentPair dir = opts.precondition ? precondition(lat, g, p.kappa) : g;
    const double slope = tangent_inner(lat, g, dir);  // > 0: SPD metric

    bool accepted = false;
    double s = step;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      Config trial = c;
      for (std::size_t i = 0; i < trial.a.v.size(); ++i)
        trial.a.v[i] -= s * dir.alpha.v[i];
      for (std::size_t i = 0; i < trial.psi.v.size(); ++i)
        trial.psi.v[i] -= s * dir.phi.v[i];
      const double St = action(trial, p);
      if (St <= S - opts.armijo * s * slope) {
        c = std::move(trial);
        S = St;
        step = std::min(s * opts.grow, 1e4 * opts.step0);
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) {
      rep.line_search_failed = true;
      rep.iterations = it;
      break;
    }
    rep.iterations = it + 1;

    if (opts.gauge_fix_period > 0 && (it + 1) % opts.gauge_fix_period == 0) {
      CoulombResult cr = coulomb_fix(c);
      c = std::move(cr.config);
      rep.gauge_fix_residual = cr.rel_residual;
      S = action(c, p);
    }
  }

  rep.final_action = S;
  fill_diagnostics(c, p, rep);
  {
    const TangentPair g = gradient(c, p);
    rep.grad_rms = grad_rms(g);
    rep.converged = rep.grad_rms < opts.tol;
    if (opts.keep_trace)
      rep.trace.push_back({rep.iterations, S, rep.grad_rms, rep.psi_sup,
                           rep.i_plus, rep.i_minus});
  }
  return {std::move(c), std::move(rep)};
}

struct BoundsReport {
  double psi_sup2 = 0.0;     // |psi|_inf^2
  double i_plus = 0.0;       // integral of |F+|^2
  double i_minus = 0.0;      // integral of |F-|^2
  double psi_bound = 0.0;    // max(0, -kappa)
  double i_plus_bound = 0.0; // (1/8) integral of kappa^2
  bool psi_ok = false;
  bool i_plus_ok = false;
};

// Monitors for the sup bound on |psi|^2 and the |F+|^2 budget; meaningful
// at converged solutions only.
inline BoundsReport bounds_report(const Config& c, const FunctionalParams& p,
                                  double slack = 1e-3) {
  const TorusLattice& lat = *c.lat;
  BoundsReport b;
  const double s = sup_norm(c.psi);
  b.psi_sup2 = s * s;
  const Cochain F = curvature(c);
  const Cochain Fp = selfdual_project(lat, F);
  b.i_plus = norm2(lat, Fp);
  b.i_minus = norm2(lat, axpy(-1.0, Fp, F));
  b.psi_bound = std::max(0.0, -p.kappa);
  b.i_plus_bound = 0.125 * p.kappa * p.kappa * lat.total_volume;
  b.psi_ok = b.psi_sup2 <= b.psi_bound + slack;
  b.i_plus_ok = b.i_plus <= b.i_plus_bound + slack;
  return b;
}

inline nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json j;
  j["iterations"] = r.iterations;
  j["final_action"] = r.final_action;
  j["dirac_residual"] = r.dirac_residual;
  j["curv_residual"] = r.curv_residual;
  j["psi_sup"] = r.psi_sup;
  j["i_plus"] = r.i_plus;
  j["i_minus"] = r.i_minus;
  j["converged"] = r.converged;
  j["line_search_failed"] = r.line_search_failed;
  j["grad_rms"] = r.grad_rms;
  j["gauge_fix_residual"] = r.gauge_fix_residual;
  return j;
}

inline void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream os(path);
  if (!os) throw Error("write_trace_csv: cannot open " + path);
  os << "iter,S,grad_norm,psi_sup,i_plus,i_minus\n";
  char buf[256];
  for (const TraceRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.iter,
                  r.action, r.grad_norm, r.psi_sup, r.i_plus, r.i_minus);
    os << buf;
  }
}

}  // namespace monolab
