#pragma once

// Covariant derivative, twisted Dirac operator, curvature, equation
// residuals, the discrete Weitzenboeck identity and the linearization
// complex (T, G).
//
// All first-order operators share one stencil: a covariant central
// difference with unitary link transport,
//   grad_k psi(x) = (U_k(x) psi(x+e_k) - conj(U_k(x-e_k)) psi(x-e_k)) / 2a_k.
// The transport is unitary, so grad_k is exactly anti-self-adjoint and the
// Dirac blocks D+ : S+ -> S- and D- = (D+)* : S- -> S+ are exact adjoints.
// With the half-charge convention (the stored connection lives on L^2) the
// discrete Weitzenboeck identity reads
//   D- D+ psi = grad* grad psi - (i/2) rho(F) psi + O(a^2),
// with rho the self-dual 2-form action of clifford.hpp and F = F0 + da.

#include <array>
#include <cmath>

#include "monolab/clifford.hpp"
#include "monolab/fields.hpp"
#include "monolab/flux.hpp"
#include "monolab/lattice.hpp"

namespace monolab {

inline const GammaRep& gamma4() {
  static const GammaRep rep = build_gamma_rep(4);
  return rep;
}

inline const GammaRep& gamma3() {
  static const GammaRep rep = build_gamma_rep(3);
  return rep;
}

// grad_A psi as a spinor-valued 1-cochain.
inline SpinorForm covariant_derivative(const Config& c, const SpinorField& psi,
                                       const LinkPhases& ph) {
  const TorusLattice& lat = *c.lat;
  SpinorForm out = make_spinor_form(lat);
  lat.par_sites([&](std::size_t s, const int* n) {
    for (int k = 0; k < lat.dim; ++k) {
      const std::size_t sf = lat.fwd(s, n, k);
      const std::size_t sb = lat.bwd(s, n, k);
      const cplx uf = ph.at(s, k);
      const cplx ub = std::conj(ph.at(sb, k));
      const double inv2a = 0.5 / lat.spacings[static_cast<std::size_t>(k)];
      out.set_fiber(s, k,
                    {(uf * psi.v[2 * sf] - ub * psi.v[2 * sb]) * inv2a,
                     (uf * psi.v[2 * sf + 1] - ub * psi.v[2 * sb + 1]) * inv2a});
    }
  });
  return out;
}

inline SpinorForm covariant_derivative(const Config& c) {
  return covariant_derivative(c, c.psi, link_phases(c));
}

// grad* applied to a spinor-valued 1-cochain: -sum_k grad_k omega_k.
inline SpinorField covariant_div(const Config& c, const SpinorForm& w,
                                 const LinkPhases& ph) {
  const TorusLattice& lat = *c.lat;
  SpinorField out = make_spinor(lat);
  lat.par_sites([&](std::size_t s, const int* n) {
    cplx acc0{}, acc1{};
    for (int k = 0; k < lat.dim; ++k) {
      const std::size_t sf = lat.fwd(s, n, k);
      const std::size_t sb = lat.bwd(s, n, k);
      const cplx uf = ph.at(s, k);
      const cplx ub = std::conj(ph.at(sb, k));
      const double inv2a = 0.5 / lat.spacings[static_cast<std::size_t>(k)];
      const auto wf = w.fiber(sf, k);
      const auto wb = w.fiber(sb, k);
      acc0 -= (uf * wf[0] - ub * wb[0]) * inv2a;
      acc1 -= (uf * wf[1] - ub * wb[1]) * inv2a;
    }
    out.v[2 * s] = acc0;
    out.v[2 * s + 1] = acc1;
  });
  return out;
}

namespace detail {
// Contract a spinor-valued 1-cochain with per-direction 2x2 blocks.
inline SpinorField contract_blocks(const TorusLattice& lat, const SpinorForm& w,
                                   const std::array<Block2, 4>& blocks) {
  SpinorField out = make_spinor(lat);
  parallel_for(lat.nsites, [&](std::size_t s) {
    cplx acc0{}, acc1{};
    for (int k = 0; k < lat.dim; ++k) {
      const auto f = w.fiber(s, k);
      const Block2& b = blocks[static_cast<std::size_t>(k)];
      acc0 += b.m00 * f[0] + b.m01 * f[1];
      acc1 += b.m10 * f[0] + b.m11 * f[1];
    }
    out.v[2 * s] = acc0;
    out.v[2 * s + 1] = acc1;
  });
  return out;
}
}  // namespace detail

// D+ : S+ -> S-, the twisted Dirac operator (d = 4).
inline SpinorField dirac_plus(const Config& c, const SpinorField& psi,
                              const LinkPhases& ph) {
  if (c.lat->dim != 4) throw Error("dirac_plus: needs dim 4");
  return detail::contract_blocks(*c.lat, covariant_derivative(c, psi, ph),
                                 gamma4().plus_to_minus);
}

inline SpinorField dirac_plus(const Config& c) {
  return dirac_plus(c, c.psi, link_phases(c));
}

// D- : S- -> S+, the exact adjoint block of D+.
inline SpinorField dirac_minus(const Config& c, const SpinorField& chi,
                               const LinkPhases& ph) {
  if (c.lat->dim != 4) throw Error("dirac_minus: needs dim 4");
  return detail::contract_blocks(*c.lat, covariant_derivative(c, chi, ph),
                                 gamma4().minus_to_plus);
}

// F = F0 + da, the curvature of the stored connection.
inline Cochain curvature(const Config& c) {
  const TorusLattice& lat = *c.lat;
  Cochain F = d(lat, c.a);
  parallel_for(F.v.size(), [&](std::size_t i) { F.v[i] += c.bg->F0.v[i]; });
  return F;
}

inline Cochain sd_curvature(const Config& c) {
  return selfdual_project(*c.lat, curvature(c));
}

// Pointwise quadratic form q(psi) as a real self-dual 2-cochain.
inline Cochain quad_form_field(const TorusLattice& lat, const SpinorField& psi) {
  const GammaRep& rep = gamma4();
  Cochain q = make_cochain(lat, 2);
  const int n2 = lat.ncomp(2);
  parallel_for(lat.nsites, [&](std::size_t s) {
    const std::array<double, 6> qs = quadratic_form(rep, psi.fiber(s));
    for (int p = 0; p < 6; ++p) q.at(s, p, n2) = qs[static_cast<std::size_t>(p)];
  });
  return q;
}

struct SWResidual {
  SpinorField dirac;  // S- section
  Cochain curv;       // real self-dual 2-cochain
};

inline void require_selfdual(const TorusLattice& lat, const Cochain& eta,
                             const char* who) {
  Cochain p = selfdual_project(lat, eta);
  double dev = 0.0;
  for (std::size_t i = 0; i < p.v.size(); ++i)
    dev = std::max(dev, std::fabs(p.v[i] - eta.v[i]));
  double scale = 0.0;
  for (double x : eta.v) scale = std::max(scale, std::fabs(x));
  if (dev > 1e-12 * std::max(scale, 1.0))
    throw Error(std::string(who) + ": eta is not self-dual");
}

// Residual of the (optionally perturbed) equations:
//   dirac = D_A psi,   curv = F+ + eta - q(psi).
inline SWResidual sw_residual(const Config& c, const Cochain* eta = nullptr) {
  const TorusLattice& lat = *c.lat;
  if (lat.dim != 4) throw Error("sw_residual: needs dim 4");
  if (eta != nullptr) require_selfdual(lat, *eta, "sw_residual");
  SWResidual r;
  r.dirac = dirac_plus(c);
  r.curv = sd_curvature(c);
  const Cochain q = quad_form_field(lat, c.psi);
  parallel_for(r.curv.v.size(), [&](std::size_t i) {
    r.curv.v[i] += (eta != nullptr ? eta->v[i] : 0.0) - q.v[i];
  });
  return r;
}

struct WeitzenbockReport {
  double value = 0.0;    // residual norm, relative when psi != 0
  bool relative = true;  // false: psi = 0, absolute norm reported
};

// Average of a 2-cochain over the four cells around each site, per
// component: (1/4)(F(x) + F(x-e_j) + F(x-e_k) + F(x-e_j-e_k)). This is the
// field strength the commutator of central covariant differences actually
// samples; using the raw forward-corner value leaves an O(a) offset.
inline Cochain clover_average(const TorusLattice& lat, const Cochain& F) {
  if (F.degree != 2) throw Error("clover_average: needs a 2-cochain");
  const int n2 = lat.ncomp(2);
  Cochain out = make_cochain(lat, 2);
  lat.par_sites([&](std::size_t s, const int* n) {
    for (int p = 0; p < n2; ++p) {
      const int j = lat.comps[2][static_cast<std::size_t>(p)][0];
      const int k = lat.comps[2][static_cast<std::size_t>(p)][1];
      const std::size_t sj = lat.bwd(s, n, j);
      const std::size_t sk = lat.bwd(s, n, k);
      int nj[4] = {n[0], n[1], n[2], n[3]};
      nj[j] = (nj[j] + lat.sizes[static_cast<std::size_t>(j)] - 1) % lat.sizes[static_cast<std::size_t>(j)];
      const std::size_t sjk = lat.bwd(sj, nj, k);
      out.at(s, p, n2) = 0.25 * (F.at(s, p, n2) + F.at(sj, p, n2) +
                                 F.at(sk, p, n2) + F.at(sjk, p, n2));
    }
  });
  return out;
}

// | D-D+ psi - grad*grad psi + (i/2) rho(F) psi | / |psi| with all three
// terms built from the same first-order stencil (F enters through its
// clover average), so the defect is pure discretization error (flat
// metric, kappa = 0).
inline WeitzenbockReport weitzenbock_residual(const Config& c) {
  const TorusLattice& lat = *c.lat;
  if (lat.dim != 4) throw Error("weitzenbock_residual: needs dim 4");
  const LinkPhases ph = link_phases(c);
  const GammaRep& rep = gamma4();

  const SpinorField dd = dirac_minus(c, dirac_plus(c, c.psi, ph), ph);
  const SpinorField lap = covariant_div(c, covariant_derivative(c, c.psi, ph), ph);
  const Cochain F = clover_average(lat, curvature(c));

  const int n2 = lat.ncomp(2);
  double acc = lat.cell_volume * block_sum(lat.nsites, [&](std::size_t s) {
    std::array<double, 6> w{};
    for (int p = 0; p < 6; ++p) w[static_cast<std::size_t>(p)] = F.at(s, p, n2);
    const std::array<cplx, 2> rho = two_form_action(rep, w, c.psi.fiber(s));
    const cplx half_i{0.0, 0.5};
    const cplx r0 = dd.v[2 * s] - lap.v[2 * s] + half_i * rho[0];
    const cplx r1 = dd.v[2 * s + 1] - lap.v[2 * s + 1] + half_i * rho[1];
    return std::norm(r0) + std::norm(r1);
  });

  WeitzenbockReport rep_out;
  const double pn = std::sqrt(norm2(lat, c.psi));
  if (pn > 0.0) {
    rep_out.value = std::sqrt(acc) / pn;
    rep_out.relative = true;
  } else {
    rep_out.value = std::sqrt(acc);
    rep_out.relative = false;
  }
  return rep_out;
}

// Tangent pair at a configuration.
struct TangentPair {
  Cochain alpha;   // real 1-cochain
  SpinorField phi; // section
};

inline TangentPair make_tangent(const TorusLattice& lat) {
  TangentPair t;
  t.alpha = make_cochain(lat, 1);
  t.phi = make_spinor(lat);
  return t;
}

// Exact directional derivative of sw_residual at a base configuration.
class LinearizedOp {
 public:
  explicit LinearizedOp(const Config& base)
      : base_(base), ph_(link_phases(base)) {}

  // T(alpha, phi) -> (S- section, self-dual 2-cochain)
  SWResidual apply(const TangentPair& t) const {
    const TorusLattice& lat = *base_.lat;
    const int n1 = lat.ncomp(1);
    const GammaRep& rep = gamma4();

    // Dirac row: D+ phi + sum_k e_k . (d/da grad_k psi)[alpha], where the
    // derivative of the transport is dU_k/da_k = -i charge a_k U_k.
    SpinorForm dgrad = make_spinor_form(lat);
    const double q = base_.charge;
    lat.par_sites([&](std::size_t s, const int* n) {
      for (int k = 0; k < lat.dim; ++k) {
        const std::size_t sf = lat.fwd(s, n, k);
        const std::size_t sb = lat.bwd(s, n, k);
        const cplx uf = ph_.at(s, k);
        const cplx ub = std::conj(ph_.at(sb, k));
        const double af = t.alpha.at(s, k, n1);
        const double ab = t.alpha.at(sb, k, n1);
        const cplx m{0.0, -0.5 * q};
        dgrad.set_fiber(s, k,
                        {m * (af * uf * base_.psi.v[2 * sf] + ab * ub * base_.psi.v[2 * sb]),
                         m * (af * uf * base_.psi.v[2 * sf + 1] + ab * ub * base_.psi.v[2 * sb + 1])});
      }
    });

    SWResidual out;
    out.dirac = dirac_plus(base_, t.phi, ph_);
    const SpinorField extra = detail::contract_blocks(lat, dgrad, rep.plus_to_minus);
    parallel_for(out.dirac.v.size(), [&](std::size_t i) { out.dirac.v[i] += extra.v[i]; });

    // Curvature row: p+ d alpha - dq(psi)[phi]
    out.curv = selfdual_project(lat, d(lat, t.alpha));
    const int n2 = lat.ncomp(2);
    parallel_for(lat.nsites, [&](std::size_t s) {
      const auto psifib = base_.psi.fiber(s);
      const auto phifib = t.phi.fiber(s);
      for (int p = 0; p < 6; ++p) {
        const Block2& b = rep.pair_plus[static_cast<std::size_t>(p)];
        const cplx term = hermitian(b.apply(phifib), psifib) + hermitian(b.apply(psifib), phifib);
        out.curv.at(s, p, n2) -= 0.25 * std::imag(term);
      }
    });
    return out;
  }

  const Config& base() const { return base_; }

 private:
  Config base_;
  LinkPhases ph_;
};

inline LinearizedOp linearize(const Config& c) { return LinearizedOp(c); }

// weighted inner products on tangent pairs
inline double tangent_inner(const TorusLattice& lat, const TangentPair& x,
                            const TangentPair& y) {
  return inner(lat, x.alpha, y.alpha) + std::real(inner(lat, x.phi, y.phi));
}

inline double tangent_norm2(const TorusLattice& lat, const TangentPair& x) {
  return tangent_inner(lat, x, x);
}

// Infinitesimal gauge direction G(f) = ((1/charge) df, i f psi).
inline TangentPair gauge_tangent(const Config& c, const Cochain& f) {
  const TorusLattice& lat = *c.lat;
  TangentPair t = make_tangent(lat);
  t.alpha = d(lat, f);
  for (double& x : t.alpha.v) x /= c.charge;
  parallel_for(lat.nsites, [&](std::size_t s) {
    const cplx iflam{0.0, f.v[s]};
    t.phi.v[2 * s] = iflam * c.psi.v[2 * s];
    t.phi.v[2 * s + 1] = iflam * c.psi.v[2 * s + 1];
  });
  return t;
}

}  // namespace monolab
