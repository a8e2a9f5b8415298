#pragma once

// Quantized-flux background connections on the periodic torus.
//
// The stored integer matrix m is the first Chern data of the bundle the
// connection lives on: in the 4-d setup that bundle is L^2 (so c1(L) = m/2),
// in the 3-d reduction it is L itself. A0 is the standard constant-field
// ("Landau") gauge; a single-valued cochain cannot carry net flux, so the
// flux sits in per-direction transition twists applied to sections on
// wrap-around links. The constant 2-cochain F0 with
//   F0_uv = 2 pi m_uv / (L_u L_v)
// is the curvature; its plaquette sum over each coordinate 2-torus is
// exactly 2 pi m_uv.

#include <array>
#include <cmath>
#include <cstdlib>

#include "monolab/lattice.hpp"

namespace monolab {

struct FluxBackground {
  std::array<std::array<int, 4>, 4> m{};  // antisymmetric flux integers
  Cochain A0;     // constant-field gauge potential (1-cochain)
  Cochain twist;  // transition angles at unit charge; wrap links only
  Cochain F0;     // constant curvature 2-cochain

  bool trivial() const {
    for (const auto& row : m)
      for (int x : row)
        if (x != 0) return false;
    return true;
  }
};

inline FluxBackground flux_background(const TorusLattice& lat,
                                      const std::array<std::array<int, 4>, 4>& m,
                                      int max_abs = 64) {
  for (int u = 0; u < lat.dim; ++u)
    for (int v = 0; v < lat.dim; ++v) {
      if (m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != -m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
        throw Error("flux_background: m must be antisymmetric");
      if (std::abs(m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) > max_abs)
        throw Error("flux_background: |m| exceeds configured maximum");
    }

  FluxBackground bg;
  bg.m = m;
  bg.A0 = make_cochain(lat, 1);
  bg.twist = make_cochain(lat, 1);
  bg.F0 = make_cochain(lat, 2);

  const int n1 = lat.ncomp(1);
  const int n2 = lat.ncomp(2);
  for (int p = 0; p < n2; ++p) {
    const int u = lat.comps[2][static_cast<std::size_t>(p)][0];
    const int v = lat.comps[2][static_cast<std::size_t>(p)][1];
    const double f0 = 2.0 * kPi * m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] / (lat.length(u) * lat.length(v));
    for (std::size_t s = 0; s < lat.nsites; ++s) bg.F0.at(s, p, n2) = f0;
  }

  lat.for_sites([&](std::size_t s, const int* n) {
    for (int v = 0; v < lat.dim; ++v) {
      // A0_v = sum_{u<v} F0_uv x_u with x_u = a_u n_u
      double acc = 0.0;
      for (int u = 0; u < v; ++u) {
        const int muv = m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        if (muv == 0) continue;
        const double f0 = 2.0 * kPi * muv / (lat.length(u) * lat.length(v));
        acc += f0 * lat.spacings[static_cast<std::size_t>(u)] * n[u];
      }
      bg.A0.at(s, v, n1) = acc;

      // transition angle on the +v wrap link
      if (n[v] == lat.sizes[static_cast<std::size_t>(v)] - 1) {
        double tw = 0.0;
        for (int w = v + 1; w < lat.dim; ++w) {
          const int mvw = m[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
          if (mvw == 0) continue;
          const double phi = 2.0 * kPi * mvw / (static_cast<double>(lat.sizes[static_cast<std::size_t>(v)]) * lat.sizes[static_cast<std::size_t>(w)]);
          tw -= phi * lat.sizes[static_cast<std::size_t>(v)] * n[w];
        }
        bg.twist.at(s, v, n1) = tw;
      }
    }
  });
  return bg;
}

// Sum of a_u a_v F_uv over the (u,v) coordinate 2-torus through base.
// For F = F0 this is exactly 2 pi m_uv.
inline double plaquette_flux_sum(const TorusLattice& lat, const Cochain& F,
                                 int u, int v, const int* base) {
  const int n2 = lat.ncomp(2);
  int idx[4];
  for (int t = 0; t < lat.dim; ++t) idx[t] = base[t];
  const int p = detail::comp_index(lat, 2, {u < v ? u : v, u < v ? v : u, 0, 0});
  const double sgn = (u < v) ? 1.0 : -1.0;
  double sum = 0.0;
  for (int i = 0; i < lat.sizes[static_cast<std::size_t>(u)]; ++i)
    for (int j = 0; j < lat.sizes[static_cast<std::size_t>(v)]; ++j) {
      idx[u] = i;
      idx[v] = j;
      sum += F.at(lat.encode(idx), p, n2);
    }
  return sgn * sum * lat.spacings[static_cast<std::size_t>(u)] * lat.spacings[static_cast<std::size_t>(v)];
}

// Largest deviation (mod 2 pi) of the covariant plaquette angle from the
// constant target charge * a_u a_v F0_uv; checks cocycle consistency of the
// transition data. Exactly zero for integer charge * m.
inline double holonomy_defect(const TorusLattice& lat, const FluxBackground& bg,
                              double charge) {
  const int n1 = lat.ncomp(1);
  auto link_angle = [&](std::size_t s, int k) {
    return charge * (lat.spacings[static_cast<std::size_t>(k)] * bg.A0.at(s, k, n1) + bg.twist.at(s, k, n1));
  };
  double worst = 0.0;
  lat.for_sites([&](std::size_t s, const int* n) {
    for (int u = 0; u < lat.dim; ++u)
      for (int v = u + 1; v < lat.dim; ++v) {
        const std::size_t su = lat.fwd(s, n, u);
        const std::size_t sv = lat.fwd(s, n, v);
        const double ang = link_angle(s, u) + link_angle(su, v) -
                           link_angle(sv, u) - link_angle(s, v);
        const int p = detail::comp_index(lat, 2, {u, v, 0, 0});
        const double target = charge * lat.spacings[static_cast<std::size_t>(u)] * lat.spacings[static_cast<std::size_t>(v)] * bg.F0.at(s, p, lat.ncomp(2));
        double dev = std::remainder(ang - target, 2.0 * kPi);
        if (std::fabs(dev) > worst) worst = std::fabs(dev);
      }
  });
  return worst;
}

}  // namespace monolab
