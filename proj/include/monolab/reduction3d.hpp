#pragma once

// Dimensional reduction to the 3-torus: the self-adjoint Dirac operator,
// the Chern-Simons-Dirac functional, its gradient flow, the quantized
// gauge shift, and temporal-gauge slicing of 4-d configurations.
//
// A 3-d configuration stores the connection of the flux-m bundle itself
// (charge 1 transport), unlike the 4-d setup where the stored field lives
// on L^2. With
//   C(a, psi) = integral (a - a0) ^ (F0ref + d(a - a0)/2) + (1/2) Re <psi, dirac3 psi>
// the discrete L2 gradient is exactly (-flow_rhs):
//   d/dt psi = -dirac3 psi,
//   d/dt a   = -*F - (1/2) Im <psi(x), e_k U_k psi(x+e_k)>  per link,
// and a winding-w gauge map shifts C by exactly
//   4 pi^2 (w_0 m_12 - w_1 m_02 + w_2 m_01),
// both identities holding at machine precision (all the cochain-level
// integration by parts is exact).
//
// Temporal-gauge slicing identifies a 4-d pair on T^4 with a path of 3-d
// pairs through t = -x_3, a_3d = a_spatial / 2, psi_3d = psi / sqrt(2),
// m_3d = m_spatial / 2. Under that identification the 4-d Dirac residual
// equals the slice flow defect d psi/dt + dirac3 psi exactly, and the
// (k,3) components of the curvature residual match the connection defect
// d a/dt - flow_rhs_a up to O(a^2) (site versus link discretizations of
// the quadratic term).

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "monolab/operators.hpp"

namespace monolab {

using Config3 = Config;  // dim-3 lattice, charge 1

inline Config3 make_config3(std::shared_ptr<const TorusLattice> lat,
                            std::shared_ptr<const FluxBackground> bg) {
  if (lat->dim != 3) throw Error("make_config3: needs dim 3");
  return make_config(std::move(lat), std::move(bg), 1.0);
}

namespace detail {
inline std::array<Block2, 3> sigma3_blocks() {
  const GammaRep& rep = gamma3();
  std::array<Block2, 3> b;
  for (int k = 0; k < 3; ++k)
    b[static_cast<std::size_t>(k)] = Block2{rep.generators[static_cast<std::size_t>(k)].at(0, 0),
                                            rep.generators[static_cast<std::size_t>(k)].at(0, 1),
                                            rep.generators[static_cast<std::size_t>(k)].at(1, 0),
                                            rep.generators[static_cast<std::size_t>(k)].at(1, 1)};
  return b;
}
}  // namespace detail

// Self-adjoint twisted Dirac operator on the 3-torus.
inline SpinorField dirac3(const Config3& c, const SpinorField& psi,
                          const LinkPhases& ph) {
  const TorusLattice& lat = *c.lat;
  if (lat.dim != 3) throw Error("dirac3: needs dim 3");
  static const std::array<Block2, 3> blocks = detail::sigma3_blocks();
  SpinorField out = make_spinor(lat);
  lat.par_sites([&](std::size_t s, const int* n) {
    cplx acc0{}, acc1{};
    for (int k = 0; k < 3; ++k) {
      const std::size_t sf = lat.fwd(s, n, k);
      const std::size_t sb = lat.bwd(s, n, k);
      const cplx uf = ph.at(s, k);
      const cplx ub = std::conj(ph.at(sb, k));
      const double inv2a = 0.5 / lat.spacings[static_cast<std::size_t>(k)];
      const cplx g0 = (uf * psi.v[2 * sf] - ub * psi.v[2 * sb]) * inv2a;
      const cplx g1 = (uf * psi.v[2 * sf + 1] - ub * psi.v[2 * sb + 1]) * inv2a;
      const Block2& b = blocks[static_cast<std::size_t>(k)];
      acc0 += b.m00 * g0 + b.m01 * g1;
      acc1 += b.m10 * g0 + b.m11 * g1;
    }
    out.v[2 * s] = acc0;
    out.v[2 * s + 1] = acc1;
  });
  return out;
}

inline SpinorField dirac3(const Config3& c) { return dirac3(c, c.psi, link_phases(c)); }

namespace detail {
// integral of the 3-d cup product of a 1-cochain with a 2-cochain
inline double cup_integral_12(const TorusLattice& lat, const Cochain& alpha,
                              const Cochain& gamma) {
  const int n1 = lat.ncomp(1);
  const int n2 = lat.ncomp(2);
  double acc = 0.0;
  // components: (01)=0, (02)=1, (12)=2
  lat.for_sites([&](std::size_t s, const int* n) {
    const std::size_t s0 = lat.fwd(s, n, 0);
    const std::size_t s1 = lat.fwd(s, n, 1);
    const std::size_t s2 = lat.fwd(s, n, 2);
    acc += alpha.at(s, 0, n1) * gamma.at(s0, 2, n2) -
           alpha.at(s, 1, n1) * gamma.at(s1, 1, n2) +
           alpha.at(s, 2, n1) * gamma.at(s2, 0, n2);
  });
  return lat.cell_volume * acc;
}

inline double cup_integral_21(const TorusLattice& lat, const Cochain& gamma,
                              const Cochain& alpha) {
  const int n1 = lat.ncomp(1);
  const int n2 = lat.ncomp(2);
  double acc = 0.0;
  lat.for_sites([&](std::size_t s, const int* n) {
    int nn[3] = {n[0], n[1], n[2]};
    const std::size_t s01 = lat.fwd(lat.fwd(s, n, 0), (nn[0] = (n[0] + 1) % lat.sizes[0], nn), 1);
    nn[0] = n[0];
    const std::size_t s02 = lat.fwd(lat.fwd(s, n, 0), (nn[0] = (n[0] + 1) % lat.sizes[0], nn), 2);
    nn[0] = n[0];
    const std::size_t s12 = lat.fwd(lat.fwd(s, n, 1), (nn[1] = (n[1] + 1) % lat.sizes[1], nn), 2);
    acc += gamma.at(s, 0, n2) * alpha.at(s01, 2, n1) -
           gamma.at(s, 1, n2) * alpha.at(s02, 1, n1) +
           gamma.at(s, 2, n2) * alpha.at(s12, 0, n1);
  });
  return lat.cell_volume * acc;
}
}  // namespace detail

struct CSDValue {
  double value = 0.0;
  double spinor_imag = 0.0;  // imaginary remainder of the spinor integral
};

// Chern-Simons-Dirac functional against a reference offset (default 0).
inline CSDValue csd(const Config3& c, const Cochain* a0_ref = nullptr,
                    bool antisymmetrize = false) {
  const TorusLattice& lat = *c.lat;
  if (lat.dim != 3) throw Error("csd: needs dim 3");
  Cochain alpha = c.a;
  if (a0_ref != nullptr)
    for (std::size_t i = 0; i < alpha.v.size(); ++i) alpha.v[i] -= a0_ref->v[i];

  // gamma = F_ref + d(alpha)/2 with F_ref the curvature at the reference
  Cochain gamma = d(lat, alpha);
  for (double& x : gamma.v) x *= 0.5;
  if (a0_ref != nullptr) {
    const Cochain dref = d(lat, *a0_ref);
    for (std::size_t i = 0; i < gamma.v.size(); ++i) gamma.v[i] += dref.v[i];
  }
  for (std::size_t i = 0; i < gamma.v.size(); ++i) gamma.v[i] += c.bg->F0.v[i];

  double wedge = detail::cup_integral_12(lat, alpha, gamma);
  if (antisymmetrize)
    wedge = 0.5 * (wedge + detail::cup_integral_21(lat, gamma, alpha));

  const cplx spinor = inner(lat, c.psi, dirac3(c));
  CSDValue out;
  out.value = wedge + 0.5 * std::real(spinor);
  out.spinor_imag = 0.5 * std::imag(spinor);
  return out;
}

// Exact L2 gradient of csd (reference 0), returned as the downward flow
// right-hand side: (d/dt psi, d/dt a) = flow_rhs = -grad csd.
inline TangentPair flow_rhs(const Config3& c) {
  const TorusLattice& lat = *c.lat;
  if (lat.dim != 3) throw Error("flow_rhs: needs dim 3");
  const LinkPhases ph = link_phases(c);
  TangentPair rhs = make_tangent(lat);

  // section row: -dirac3 psi
  const SpinorField dp = dirac3(c, c.psi, ph);
  for (std::size_t i = 0; i < rhs.phi.v.size(); ++i) rhs.phi.v[i] = -dp.v[i];

  // connection row: -( shifted-dual(F0 + da/2) + half-dual(da) + link current )
  const Cochain da = d(lat, c.a);
  const int n1 = lat.ncomp(1);
  const int n2 = lat.ncomp(2);
  static const std::array<Block2, 3> blocks = detail::sigma3_blocks();
  lat.par_sites([&](std::size_t s, const int* n) {
    const std::size_t f0 = lat.fwd(s, n, 0);
    const std::size_t f1 = lat.fwd(s, n, 1);
    const std::size_t f2 = lat.fwd(s, n, 2);
    auto g1at = [&](std::size_t site, int comp) {
      return c.bg->F0.at(site, comp, n2) + 0.5 * da.at(site, comp, n2);
    };
    double g[3];
    g[0] = g1at(f0, 2);
    g[1] = -g1at(f1, 1);
    g[2] = g1at(f2, 0);

    // (1/2) <<da cup .>> adjoint: bases shifted back across the closing face
    int nn[3] = {n[0], n[1], n[2]};
    const std::size_t b1 = lat.bwd(s, n, 1);
    nn[1] = (n[1] + lat.sizes[1] - 1) % lat.sizes[1];
    const std::size_t b12 = lat.bwd(b1, nn, 2);
    nn[1] = n[1];
    const std::size_t b0 = lat.bwd(s, n, 0);
    nn[0] = (n[0] + lat.sizes[0] - 1) % lat.sizes[0];
    const std::size_t b02 = lat.bwd(b0, nn, 2);
    const std::size_t b01 = lat.bwd(b0, nn, 1);
    g[0] += 0.5 * da.at(b12, 2, n2);
    g[1] += -0.5 * da.at(b02, 1, n2);
    g[2] += 0.5 * da.at(b01, 0, n2);

    for (int k = 0; k < 3; ++k) {
      const std::size_t sf = lat.fwd(s, n, k);
      const cplx u = ph.at(s, k);
      const std::array<cplx, 2> t{u * c.psi.v[2 * sf], u * c.psi.v[2 * sf + 1]};
      const Block2& bk = blocks[static_cast<std::size_t>(k)];
      const std::array<cplx, 2> et = bk.apply(t);
      const double J = -0.5 * std::imag(hermitian(c.psi.fiber(s), et));
      rhs.alpha.at(s, k, n1) = -(g[k] + J);
    }
  });
  return rhs;
}

// Predicted csd shift under a winding-w gauge map on flux background m:
// 4 pi^2 <c1 cup [winding], [Y]> computed combinatorially.
inline double gauge_shift_predicted(const std::array<std::array<int, 4>, 4>& m,
                                    const std::array<int, 4>& w) {
  const long long pairing = static_cast<long long>(w[0]) * m[1][2] -
                            static_cast<long long>(w[1]) * m[0][2] +
                            static_cast<long long>(w[2]) * m[0][1];
  return 4.0 * kPi * kPi * static_cast<double>(pairing);
}

// Explicit downward flow on csd with monotonicity backtracking.
struct CSDFlowRow {
  double t;
  double value;
  double rhs_norm;
  double psi_sup;
};

struct CSDFlowResult {
  Config3 config;
  std::vector<double> values;
  std::vector<CSDFlowRow> trace;
};

inline CSDFlowResult csd_flow(const Config3& c0, int steps, double dt0) {
  Config3 c = c0;
  CSDFlowResult out{c0, {}, {}};
  double dt = dt0;
  double time = 0.0;
  double value = csd(c).value;
  out.values.push_back(value);
  for (int it = 0; it < steps; ++it) {
    const TangentPair rhs = flow_rhs(c);
    out.trace.push_back({time, value, std::sqrt(tangent_norm2(*c.lat, rhs)), sup_norm(c.psi)});
    for (int bt = 0; bt < 40; ++bt) {
      Config3 trial = c;
      for (std::size_t i = 0; i < trial.a.v.size(); ++i)
        trial.a.v[i] += dt * rhs.alpha.v[i];
      for (std::size_t i = 0; i < trial.psi.v.size(); ++i)
        trial.psi.v[i] += dt * rhs.phi.v[i];
      const double vt = csd(trial).value;
      if (vt <= value) {
        c = std::move(trial);
        value = vt;
        time += dt;
        dt = std::min(dt * 1.2, 16.0 * dt0);
        break;
      }
      dt *= 0.5;
    }
    out.values.push_back(value);
  }
  out.trace.push_back({time, value, std::sqrt(tangent_norm2(*c.lat, flow_rhs(c))), sup_norm(c.psi)});
  out.config = std::move(c);
  return out;
}

inline void write_csd_trace_csv(const std::string& path,
                                const std::vector<CSDFlowRow>& rows) {
  std::ofstream os(path);
  if (!os) throw Error("write_csd_trace_csv: cannot open " + path);
  os << "t,C,rhs_norm,psi_sup\n";
  char buf[160];
  for (const CSDFlowRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.t, r.value,
                  r.rhs_norm, r.psi_sup);
    os << buf;
  }
}

// Temporal-gauge slicing of a 4-d configuration (time axis = direction 3,
// time orientation t = -x_3).
struct SliceData {
  std::shared_ptr<TorusLattice> lat3;
  std::shared_ptr<FluxBackground> bg3;
  std::vector<Config3> slices;  // indexed by n_3
  double a_t = 1.0;             // time-direction spacing of the source lattice
};

inline SliceData temporal_slice(const Config& c4, double tol = 1e-12) {
  const TorusLattice& lat4 = *c4.lat;
  if (lat4.dim != 4) throw Error("temporal_slice: needs a 4-d configuration");
  const int n1 = lat4.ncomp(1);
  double worst = 0.0;
  for (std::size_t s = 0; s < lat4.nsites; ++s)
    worst = std::max(worst, std::fabs(c4.a.at(s, 3, n1)));
  if (worst > tol)
    throw Error("temporal_slice: nonzero temporal component, max |a_t| = " +
                std::to_string(worst));
  for (int u = 0; u < 4; ++u)
    if (c4.bg->m[3][static_cast<std::size_t>(u)] != 0)
      throw Error("temporal_slice: background flux must have no temporal legs");

  std::array<std::array<int, 4>, 4> m3{};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      const int muv = c4.bg->m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (muv % 2 != 0)
        throw Error("temporal_slice: spatial flux must be even (L^2 = L_3d^2)");
      m3[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = muv / 2;
    }

  SliceData out;
  out.lat3 = std::make_shared<TorusLattice>(
      make_lattice(3, {lat4.sizes[0], lat4.sizes[1], lat4.sizes[2]},
                   {lat4.spacings[0], lat4.spacings[1], lat4.spacings[2]}));
  out.bg3 = std::make_shared<FluxBackground>(flux_background(*out.lat3, m3));
  out.a_t = lat4.spacings[3];

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const int n13 = out.lat3->ncomp(1);
  for (int tau = 0; tau < lat4.sizes[3]; ++tau) {
    Config3 slice = make_config3(out.lat3, out.bg3);
    out.lat3->for_sites([&](std::size_t s3, const int* n3) {
      const int n4[4] = {n3[0], n3[1], n3[2], tau};
      const std::size_t s4 = lat4.encode(n4);
      for (int k = 0; k < 3; ++k)
        slice.a.at(s3, k, n13) = 0.5 * c4.a.at(s4, k, n1);
      slice.psi.v[2 * s3] = inv_sqrt2 * c4.psi.v[2 * s4];
      slice.psi.v[2 * s3 + 1] = inv_sqrt2 * c4.psi.v[2 * s4 + 1];
    });
    out.slices.push_back(std::move(slice));
  }
  return out;
}

// Slicewise flow defect (d/dt psi - rhs_psi, d/dt a - rhs_a) with
// t = -x_3: central time differences for the section, forward for the
// connection, matching the 4-d stencils.
struct SliceDefect {
  std::vector<SpinorField> dirac;  // per slice
  std::vector<Cochain> conn;      // per slice, 1-cochains
};

// Per-site quadratic term of the reduced curvature equation, stored per the
// purely-imaginary convention: v_k = -(1/2) Im<e_k psi, psi>.
inline Cochain quad_current_site(const Config3& c) {
  const TorusLattice& lat = *c.lat;
  static const std::array<Block2, 3> blocks = detail::sigma3_blocks();
  Cochain v = make_cochain(lat, 1);
  const int n1 = lat.ncomp(1);
  parallel_for(lat.nsites, [&](std::size_t s) {
    const auto f = c.psi.fiber(s);
    for (int k = 0; k < 3; ++k) {
      const auto ef = blocks[static_cast<std::size_t>(k)].apply(f);
      v.at(s, k, n1) = -0.5 * std::imag(hermitian(ef, f));
    }
  });
  return v;
}

inline SliceDefect slice_flow_defect(const SliceData& sd) {
  const TorusLattice& lat3 = *sd.lat3;
  const int T = static_cast<int>(sd.slices.size());
  SliceDefect out;
  const int n13 = lat3.ncomp(1);
  for (int tau = 0; tau < T; ++tau) {
    const Config3& cur = sd.slices[static_cast<std::size_t>(tau)];
    const Config3& nxt = sd.slices[static_cast<std::size_t>((tau + 1) % T)];
    const Config3& prv = sd.slices[static_cast<std::size_t>((tau + T - 1) % T)];

    SpinorField dd = dirac3(cur);
    const Cochain starF = hodge_star(lat3, curvature(cur));
    const Cochain v = quad_current_site(cur);

    Cochain dc = make_cochain(lat3, 1);
    const double inv2at = 0.5 / sd.a_t;
    const double invat = 1.0 / sd.a_t;
    for (std::size_t s = 0; s < lat3.nsites; ++s) {
      // t = -x_3: d/dt = -d/dx_3; central difference for the section
      dd.v[2 * s] += -(nxt.psi.v[2 * s] - prv.psi.v[2 * s]) * inv2at;
      dd.v[2 * s + 1] += -(nxt.psi.v[2 * s + 1] - prv.psi.v[2 * s + 1]) * inv2at;
      // forward difference for the connection, matching the 4-d coboundary
      for (int k = 0; k < 3; ++k)
        dc.at(s, k, n13) = -(nxt.a.at(s, k, n13) - cur.a.at(s, k, n13)) * invat +
                           starF.at(s, k, n13) - v.at(s, k, n13);
    }
    out.dirac.push_back(std::move(dd));
    out.conn.push_back(std::move(dc));
  }
  return out;
}

}  // namespace monolab
