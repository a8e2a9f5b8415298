#pragma once

// Configurations (A, psi), the gauge-group action, Coulomb gauge fixing
// and seeded band-limited random configurations.
//
// A configuration stores the 1-cochain offset a against a fixed flux
// background (full connection C = A0 + a) and a 2-component complex
// section. The section couples to C with a fixed charge: 1/2 in the 4-d
// setup, where C lives on L^2 and psi is an S+ (x) L section, and 1 in the
// 3-d reduction. Parallel transport over the link (x, x + e_k) is
//   U_k(x) = exp(-i charge (a_k C_k(x) + twist_k(x))).
//
// A gauge map (f, w) acts by psi' = exp(i f + 2 pi i sum_u w_u n_u / N_u) psi
// and a' = a + (1/charge)(df + h_w) with (h_w)_u = 2 pi w_u / L_u; the sign
// is fixed by requiring exact covariance of the transport.

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "monolab/clifford.hpp"
#include "monolab/flux.hpp"
#include "monolab/lattice.hpp"

namespace monolab {

// 2-component complex section, one fiber per site.
struct SpinorField {
  std::vector<cplx> v;  // 2 * nsites

  std::array<cplx, 2> fiber(std::size_t s) const { return {v[2 * s], v[2 * s + 1]}; }
  void set_fiber(std::size_t s, const std::array<cplx, 2>& f) {
    v[2 * s] = f[0];
    v[2 * s + 1] = f[1];
  }
};

inline SpinorField make_spinor(const TorusLattice& lat) {
  SpinorField f;
  f.v.assign(2 * lat.nsites, cplx{});
  return f;
}

// Spinor-valued 1-cochain (one fiber per site and direction).
struct SpinorForm {
  int dim = 0;
  std::vector<cplx> v;  // 2 * dim * nsites

  std::array<cplx, 2> fiber(std::size_t s, int k) const {
    const std::size_t b = 2 * (s * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k));
    return {v[b], v[b + 1]};
  }
  void set_fiber(std::size_t s, int k, const std::array<cplx, 2>& f) {
    const std::size_t b = 2 * (s * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k));
    v[b] = f[0];
    v[b + 1] = f[1];
  }
};

inline SpinorForm make_spinor_form(const TorusLattice& lat) {
  SpinorForm f;
  f.dim = lat.dim;
  f.v.assign(2 * static_cast<std::size_t>(lat.dim) * lat.nsites, cplx{});
  return f;
}

inline cplx inner(const TorusLattice& lat, const SpinorField& x, const SpinorField& y) {
  return lat.cell_volume * block_sum_complex(x.v.size(), [&](std::size_t i) {
           return x.v[i] * std::conj(y.v[i]);
         });
}

inline double norm2(const TorusLattice& lat, const SpinorField& x) {
  return lat.cell_volume * block_sum(x.v.size(), [&](std::size_t i) { return std::norm(x.v[i]); });
}

inline double norm2(const TorusLattice& lat, const SpinorForm& x) {
  return lat.cell_volume * block_sum(x.v.size(), [&](std::size_t i) { return std::norm(x.v[i]); });
}

inline double sup_norm(const SpinorField& x) {
  double m = 0.0;
  for (std::size_t s = 0; 2 * s + 1 < x.v.size(); ++s) {
    const double n2 = std::norm(x.v[2 * s]) + std::norm(x.v[2 * s + 1]);
    if (n2 > m) m = n2;
  }
  return std::sqrt(m);
}

struct Config {
  std::shared_ptr<const TorusLattice> lat;
  std::shared_ptr<const FluxBackground> bg;
  Cochain a;        // offset: full connection is A0 + a
  SpinorField psi;  // 2-component section
  double charge = 0.5;
};

inline Config make_config(std::shared_ptr<const TorusLattice> lat,
                          std::shared_ptr<const FluxBackground> bg,
                          double charge) {
  Config c;
  c.a = make_cochain(*lat, 1);
  c.psi = make_spinor(*lat);
  c.lat = std::move(lat);
  c.bg = std::move(bg);
  c.charge = charge;
  return c;
}

// Precomputed link transport factors for one configuration.
struct LinkPhases {
  int dim = 0;
  std::vector<cplx> u;  // dim * nsites

  cplx at(std::size_t s, int k) const { return u[s * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)]; }
};

inline LinkPhases link_phases(const Config& c) {
  const TorusLattice& lat = *c.lat;
  const int n1 = lat.ncomp(1);
  LinkPhases ph;
  ph.dim = lat.dim;
  ph.u.assign(static_cast<std::size_t>(lat.dim) * lat.nsites, cplx{1.0, 0.0});
  lat.par_sites([&](std::size_t s, const int*) {
    for (int k = 0; k < lat.dim; ++k) {
      const double ang = c.charge * (lat.spacings[static_cast<std::size_t>(k)] *
                                         (c.bg->A0.at(s, k, n1) + c.a.at(s, k, n1)) +
                                     c.bg->twist.at(s, k, n1));
      ph.u[s * static_cast<std::size_t>(lat.dim) + static_cast<std::size_t>(k)] = std::polar(1.0, -ang);
    }
  });
  return ph;
}

struct GaugeMap {
  Cochain f;  // real 0-cochain, lambda = exp(i f)
  std::array<int, 4> winding{};
};

inline GaugeMap make_gauge_map(const TorusLattice& lat) {
  GaugeMap g;
  g.f = make_cochain(lat, 0);
  return g;
}

inline Config gauge_act(const GaugeMap& g, const Config& c) {
  const TorusLattice& lat = *c.lat;
  if (g.f.v.size() != lat.nsites) throw Error("gauge_act: mismatched lattice");
  const int n1 = lat.ncomp(1);
  Config out = c;
  const Cochain df = d(lat, g.f);
  const double invq = 1.0 / c.charge;
  lat.par_sites([&](std::size_t s, const int* n) {
    double wphase = 0.0;
    for (int u = 0; u < lat.dim; ++u) {
      const double hw = 2.0 * kPi * g.winding[static_cast<std::size_t>(u)] / lat.length(u);
      out.a.at(s, u, n1) = c.a.at(s, u, n1) + invq * (df.at(s, u, n1) + hw);
      wphase += 2.0 * kPi * g.winding[static_cast<std::size_t>(u)] * n[u] / lat.sizes[static_cast<std::size_t>(u)];
    }
    const cplx phase = std::polar(1.0, g.f.v[s] + wphase);
    out.psi.v[2 * s] = phase * c.psi.v[2 * s];
    out.psi.v[2 * s + 1] = phase * c.psi.v[2 * s + 1];
  });
  return out;
}

struct PoissonResult {
  Cochain f;
  double rel_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// CG solve of d* d f = b on 0-cochains, f and b mean-free.
inline PoissonResult solve_poisson(const TorusLattice& lat, const Cochain& b,
                                   double rel_tol = 1e-12, int max_iters = 10000) {
  PoissonResult out;
  out.f = make_cochain(lat, 0);
  Cochain r = b;
  double mean = 0.0;
  for (double x : r.v) mean += x;
  mean /= static_cast<double>(r.v.size());
  for (double& x : r.v) x -= mean;

  const double bnorm = std::sqrt(norm2(lat, r));
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  Cochain p = r;
  double rr = norm2(lat, r);
  for (int it = 0; it < max_iters; ++it) {
    Cochain Ap = d_star(lat, d(lat, p));
    const double pAp = inner(lat, p, Ap);
    if (pAp <= 0.0) break;
    const double alpha = rr / pAp;
    for (std::size_t i = 0; i < out.f.v.size(); ++i) {
      out.f.v[i] += alpha * p.v[i];
      r.v[i] -= alpha * Ap.v[i];
    }
    const double rr_new = norm2(lat, r);
    out.iterations = it + 1;
    if (std::sqrt(rr_new) <= rel_tol * bnorm) {
      out.converged = true;
      rr = rr_new;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < p.v.size(); ++i) p.v[i] = r.v[i] + beta * p.v[i];
  }
  out.rel_residual = std::sqrt(norm2(lat, r)) / bnorm;
  return out;
}

struct CoulombResult {
  Config config;
  GaugeMap map;
  double rel_residual = 0.0;  // |d* a'| / max(|a'|, eps)
  int iterations = 0;
};

// Gauge transformation in the identity component (w = 0) making the offset
// co-closed: d*(a + (1/charge) df) = 0.
inline CoulombResult coulomb_fix(const Config& c, double rel_tol = 1e-12,
                                 int max_iters = 10000) {
  const TorusLattice& lat = *c.lat;
  Cochain b = d_star(lat, c.a);
  for (double& x : b.v) x *= -c.charge;
  PoissonResult ps = solve_poisson(lat, b, rel_tol, max_iters);
  if (!ps.converged && ps.rel_residual > 1e-8)
    throw Error("coulomb_fix: Poisson solver did not converge, rel residual " +
                std::to_string(ps.rel_residual));
  CoulombResult out;
  out.map = make_gauge_map(lat);
  out.map.f = ps.f;
  out.config = gauge_act(out.map, c);
  out.iterations = ps.iterations;
  const double an = std::sqrt(norm2(lat, out.config.a));
  out.rel_residual = std::sqrt(norm2(lat, d_star(lat, out.config.a))) /
                     (an > 0.0 ? an : 1.0);
  return out;
}

namespace detail {
// Band-limited mode synthesis shared by all random fields: value(site) =
// sum over integer modes with |k|_1 <= kmax of coef_k exp(2 pi i k.n/N).
// The l1 ball keeps mode products (curvature times section) at one lattice
// unit per direction, which keeps discretization errors clean on coarse
// grids.
struct ModeSynth {
  int dim;
  int kmax;
  std::vector<std::array<int, 4>> modes;
  std::vector<cplx> coefs;
  std::array<std::vector<cplx>, 4> tables;  // tables[u][(k+kmax) * N_u + n]

  ModeSynth(const TorusLattice& lat, int kmax_, std::mt19937_64& rng, double scale)
      : dim(lat.dim), kmax(kmax_) {
    std::array<int, 4> k{};
    const int width = 2 * kmax + 1;
    int idx[4] = {0, 0, 0, 0};
    for (;;) {
      int l1 = 0;
      for (int u = 0; u < dim; ++u) {
        k[static_cast<std::size_t>(u)] = idx[u] - kmax;
        l1 += std::abs(k[static_cast<std::size_t>(u)]);
      }
      if (l1 <= kmax) modes.push_back(k);
      int u = dim - 1;
      while (u >= 0 && ++idx[u] == width) idx[u--] = 0;
      if (u < 0) break;
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    coefs.resize(modes.size());
    const double amp = scale / std::sqrt(static_cast<double>(modes.size()));
    for (auto& cf : coefs) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      cf = amp * cplx{re, im};
    }
    for (int u = 0; u < dim; ++u) {
      const int N = lat.sizes[static_cast<std::size_t>(u)];
      tables[static_cast<std::size_t>(u)].resize(static_cast<std::size_t>(width * N));
      for (int kk = -kmax; kk <= kmax; ++kk)
        for (int n = 0; n < N; ++n)
          tables[static_cast<std::size_t>(u)][static_cast<std::size_t>((kk + kmax) * N + n)] =
              std::polar(1.0, 2.0 * kPi * kk * n / N);
    }
  }

  cplx eval(const TorusLattice& lat, const int* n) const {
    cplx acc{};
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
      cplx phase{1.0, 0.0};
      for (int u = 0; u < dim; ++u)
        phase *= tables[static_cast<std::size_t>(u)][static_cast<std::size_t>(
            (modes[mi][static_cast<std::size_t>(u)] + kmax) * lat.sizes[static_cast<std::size_t>(u)] + n[u])];
      acc += coefs[mi] * phase;
    }
    return acc;
  }
};
}  // namespace detail

// Deterministic smooth random configuration: offset and section built from
// Fourier modes |k|_inf <= kmax so the same seed describes one continuum
// field independent of the grid resolution.
inline Config random_config(std::shared_ptr<const TorusLattice> lat,
                            std::shared_ptr<const FluxBackground> bg,
                            std::uint64_t seed, double amplitude,
                            double charge = 0.5, int kmax = 1) {
  if (amplitude < 0.0) throw Error("random_config: amplitude must be >= 0");
  Config c = make_config(lat, bg, charge);
  if (amplitude == 0.0) return c;
  const TorusLattice& L = *c.lat;
  std::mt19937_64 rng(seed);
  const int n1 = L.ncomp(1);

  std::vector<detail::ModeSynth> a_modes;
  a_modes.reserve(static_cast<std::size_t>(L.dim));
  for (int u = 0; u < L.dim; ++u) a_modes.emplace_back(L, kmax, rng, amplitude);
  std::vector<detail::ModeSynth> psi_modes;
  psi_modes.reserve(2);
  for (int comp = 0; comp < 2; ++comp) psi_modes.emplace_back(L, kmax, rng, amplitude);

  L.par_sites([&](std::size_t s, const int* n) {
    for (int u = 0; u < L.dim; ++u)
      c.a.at(s, u, n1) = std::real(a_modes[static_cast<std::size_t>(u)].eval(L, n));
    for (int comp = 0; comp < 2; ++comp)
      c.psi.v[2 * s + static_cast<std::size_t>(comp)] = psi_modes[static_cast<std::size_t>(comp)].eval(L, n);
  });
  return c;
}

// Constant self-dual 2-cochain with unit pointwise norm, scaled; the
// harmonic self-dual perturbation used by the perturbed equations (d = 4).
inline Cochain harmonic_selfdual(const TorusLattice& lat, double amplitude,
                                 std::uint64_t seed = 0) {
  if (lat.dim != 4) throw Error("harmonic_selfdual: needs dim 4");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // self-dual basis coefficients on pairs (01),(02),(03),(12),(13),(23)
  const double c1 = gauss(rng), c2 = gauss(rng), c3 = gauss(rng);
  double w01 = c1, w23 = c1;
  double w02 = c2, w13 = -c2;
  double w03 = c3, w12 = c3;
  const double nrm = std::sqrt(w01 * w01 + w02 * w02 + w03 * w03 + w12 * w12 + w13 * w13 + w23 * w23);
  const double sc = nrm > 0.0 ? amplitude / nrm : 0.0;
  Cochain eta = make_cochain(lat, 2);
  const int n2 = lat.ncomp(2);
  for (std::size_t s = 0; s < lat.nsites; ++s) {
    eta.at(s, 0, n2) = sc * w01;
    eta.at(s, 1, n2) = sc * w02;
    eta.at(s, 2, n2) = sc * w03;
    eta.at(s, 3, n2) = sc * w12;
    eta.at(s, 4, n2) = sc * w13;
    eta.at(s, 5, n2) = sc * w23;
  }
  return eta;
}

}  // namespace monolab
