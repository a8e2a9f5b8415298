#pragma once

// Periodic flat-torus discretization in d = 3, 4.
//
// A k-cochain stores one real value per k-cell: the coefficient of the
// orthonormal-frame form component, sampled at the cell's base corner.
// Sites are indexed row-major (last coordinate fastest) and components
// lexicographically, e.g. degree-2 in d = 4: (01),(02),(03),(12),(13),(23).
//
// d is the forward-difference coboundary (divided by the spacing), d_star
// its exact adjoint for the volume-weighted inner product, so d.d = 0 and
// <dc, g> = <c, d* g> hold to machine precision. The Hodge star permutes
// components with the orientation sign; e0^...^e(d-1) is positive.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "monolab/parallel.hpp"

namespace monolab {

inline constexpr double kPi = 3.14159265358979323846;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TorusLattice {
  int dim = 0;
  std::array<int, 4> sizes{};     // N_u, each >= 4
  std::array<double, 4> spacings{};  // a_u > 0
  std::size_t nsites = 0;
  std::array<std::size_t, 4> stride{};
  // comps[k]: sorted index tuples of the degree-k components, lex order.
  std::array<std::vector<std::array<int, 4>>, 5> comps;

  double cell_volume = 0.0;   // prod a_u
  double total_volume = 0.0;  // prod N_u a_u

  double length(int u) const { return sizes[static_cast<std::size_t>(u)] * spacings[static_cast<std::size_t>(u)]; }
  int ncomp(int k) const { return static_cast<int>(comps[static_cast<std::size_t>(k)].size()); }

  void decode(std::size_t s, int* n) const {
    for (int u = dim - 1; u >= 0; --u) {
      n[u] = static_cast<int>(s % static_cast<std::size_t>(sizes[static_cast<std::size_t>(u)]));
      s /= static_cast<std::size_t>(sizes[static_cast<std::size_t>(u)]);
    }
  }

  std::size_t encode(const int* n) const {
    std::size_t s = 0;
    for (int u = 0; u < dim; ++u) s = s * static_cast<std::size_t>(sizes[static_cast<std::size_t>(u)]) + static_cast<std::size_t>(n[u]);
    return s;
  }

  // Neighbor in +u direction given the coordinates of s.
  std::size_t fwd(std::size_t s, const int* n, int u) const {
    return n[u] + 1 < sizes[static_cast<std::size_t>(u)]
               ? s + stride[static_cast<std::size_t>(u)]
               : s - static_cast<std::size_t>(sizes[static_cast<std::size_t>(u)] - 1) * stride[static_cast<std::size_t>(u)];
  }
  std::size_t bwd(std::size_t s, const int* n, int u) const {
    return n[u] > 0 ? s - stride[static_cast<std::size_t>(u)]
                    : s + static_cast<std::size_t>(sizes[static_cast<std::size_t>(u)] - 1) * stride[static_cast<std::size_t>(u)];
  }

  // Iterates sites [lo, hi) calling fn(site, coords).
  template <class Fn>
  void sites_range(std::size_t lo, std::size_t hi, Fn&& fn) const {
    int n[4];
    decode(lo, n);
    for (std::size_t s = lo; s < hi; ++s) {
      fn(s, n);
      for (int u = dim - 1; u >= 0; --u) {
        if (++n[u] < sizes[static_cast<std::size_t>(u)]) break;
        n[u] = 0;
      }
    }
  }

  template <class Fn>
  void for_sites(Fn&& fn) const {
    sites_range(0, nsites, fn);
  }

  // Parallel site sweep; fn(site, coords) must write disjoint outputs.
  template <class Fn>
  void par_sites(Fn&& fn) const {
    const std::size_t block = detail::kReduceBlock;
    const std::size_t nb = (nsites + block - 1) / block;
    detail::run_chunks(nb, [&](std::size_t c) {
      const std::size_t lo = c * block;
      const std::size_t hi = std::min(nsites, lo + block);
      sites_range(lo, hi, fn);
    });
  }
};

inline TorusLattice make_lattice(int dim, const std::vector<int>& sizes,
                                 const std::vector<double>& spacings) {
  if (dim != 3 && dim != 4) throw Error("make_lattice: dim must be 3 or 4");
  if (static_cast<int>(sizes.size()) != dim || static_cast<int>(spacings.size()) != dim)
    throw Error("make_lattice: sizes/spacings length mismatch");
  TorusLattice lat;
  lat.dim = dim;
  lat.nsites = 1;
  lat.cell_volume = 1.0;
  lat.total_volume = 1.0;
  for (int u = 0; u < dim; ++u) {
    if (sizes[static_cast<std::size_t>(u)] < 4) throw Error("make_lattice: each size must be >= 4");
    if (!(spacings[static_cast<std::size_t>(u)] > 0.0)) throw Error("make_lattice: spacings must be > 0");
    lat.sizes[static_cast<std::size_t>(u)] = sizes[static_cast<std::size_t>(u)];
    lat.spacings[static_cast<std::size_t>(u)] = spacings[static_cast<std::size_t>(u)];
    lat.nsites *= static_cast<std::size_t>(sizes[static_cast<std::size_t>(u)]);
    lat.cell_volume *= spacings[static_cast<std::size_t>(u)];
    lat.total_volume *= sizes[static_cast<std::size_t>(u)] * spacings[static_cast<std::size_t>(u)];
  }
  lat.stride[static_cast<std::size_t>(dim - 1)] = 1;
  for (int u = dim - 2; u >= 0; --u)
    lat.stride[static_cast<std::size_t>(u)] = lat.stride[static_cast<std::size_t>(u + 1)] * static_cast<std::size_t>(lat.sizes[static_cast<std::size_t>(u + 1)]);

  for (int k = 0; k <= dim; ++k) {
    std::array<int, 4> idx{};
    std::vector<std::array<int, 4>> list;
    // enumerate sorted k-subsets of {0..dim-1} in lex order
    std::vector<int> sel(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) sel[static_cast<std::size_t>(i)] = i;
    if (k == 0) {
      list.push_back(idx);
    } else {
      for (;;) {
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = sel[static_cast<std::size_t>(i)];
        list.push_back(idx);
        int i = k - 1;
        while (i >= 0 && sel[static_cast<std::size_t>(i)] == dim - k + i) --i;
        if (i < 0) break;
        ++sel[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
    lat.comps[static_cast<std::size_t>(k)] = std::move(list);
  }
  return lat;
}

struct Cochain {
  int degree = 0;
  std::vector<double> v;

  double& at(std::size_t site, int comp, int ncomp) {
    return v[site * static_cast<std::size_t>(ncomp) + static_cast<std::size_t>(comp)];
  }
  const double& at(std::size_t site, int comp, int ncomp) const {
    return v[site * static_cast<std::size_t>(ncomp) + static_cast<std::size_t>(comp)];
  }
};

inline Cochain make_cochain(const TorusLattice& lat, int degree) {
  if (degree < 0 || degree > lat.dim) throw Error("make_cochain: bad degree");
  Cochain c;
  c.degree = degree;
  c.v.assign(lat.nsites * static_cast<std::size_t>(lat.ncomp(degree)), 0.0);
  return c;
}

namespace detail {
// Position of j within the sorted tuple K u {j}; also the sign exponent.
inline int insert_pos(const std::array<int, 4>& K, int klen, int j) {
  int p = 0;
  while (p < klen && K[static_cast<std::size_t>(p)] < j) ++p;
  return p;
}

// Component index of a sorted tuple within lat.comps[k].
inline int comp_index(const TorusLattice& lat, int k, const std::array<int, 4>& t) {
  const auto& list = lat.comps[static_cast<std::size_t>(k)];
  for (std::size_t i = 0; i < list.size(); ++i) {
    bool eq = true;
    for (int m = 0; m < k; ++m)
      if (list[i][static_cast<std::size_t>(m)] != t[static_cast<std::size_t>(m)]) { eq = false; break; }
    if (eq) return static_cast<int>(i);
  }
  throw Error("comp_index: tuple not found");
}
}  // namespace detail

// Forward-difference coboundary, degree k -> k+1.
inline Cochain d(const TorusLattice& lat, const Cochain& c) {
  const int k = c.degree;
  if (k >= lat.dim) throw Error("d: top-degree input");
  const int nin = lat.ncomp(k);
  const int nout = lat.ncomp(k + 1);
  Cochain out = make_cochain(lat, k + 1);

  // Precompute, per output component J, the k+1 (m, face comp, dir) terms.
  struct Term { int sign; int face; int dir; double inva; };
  std::vector<std::vector<Term>> plan(static_cast<std::size_t>(nout));
  for (int cj = 0; cj < nout; ++cj) {
    const auto& J = lat.comps[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(cj)];
    for (int m = 0; m <= k; ++m) {
      std::array<int, 4> face{};
      int fi = 0;
      for (int t = 0; t <= k; ++t)
        if (t != m) face[static_cast<std::size_t>(fi++)] = J[static_cast<std::size_t>(t)];
      Term term;
      term.sign = (m % 2 == 0) ? 1 : -1;
      term.face = detail::comp_index(lat, k, face);
      term.dir = J[static_cast<std::size_t>(m)];
      term.inva = 1.0 / lat.spacings[static_cast<std::size_t>(term.dir)];
      plan[static_cast<std::size_t>(cj)].push_back(term);
    }
  }

  lat.par_sites([&](std::size_t s, const int* n) {
    for (int cj = 0; cj < nout; ++cj) {
      double acc = 0.0;
      for (const auto& t : plan[static_cast<std::size_t>(cj)]) {
        const std::size_t sf = lat.fwd(s, n, t.dir);
        const double diff = c.at(sf, t.face, nin) - c.at(s, t.face, nin);
        acc += t.sign * t.inva * diff;
      }
      out.at(s, cj, nout) = acc;
    }
  });
  return out;
}

// Adjoint of d for the discrete inner product, degree k -> k-1.
inline Cochain d_star(const TorusLattice& lat, const Cochain& c) {
  const int k = c.degree;
  if (k < 1) throw Error("d_star: degree-0 input");
  const int nin = lat.ncomp(k);
  const int nout = lat.ncomp(k - 1);
  Cochain out = make_cochain(lat, k - 1);

  struct Term { int sign; int coface; int dir; double inva; };
  std::vector<std::vector<Term>> plan(static_cast<std::size_t>(nout));
  for (int ck = 0; ck < nout; ++ck) {
    const auto& K = lat.comps[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(ck)];
    bool in_K[4] = {false, false, false, false};
    for (int m = 0; m < k - 1; ++m) in_K[K[static_cast<std::size_t>(m)]] = true;
    for (int j = 0; j < lat.dim; ++j) {
      if (in_K[j]) continue;
      const int pos = detail::insert_pos(K, k - 1, j);
      std::array<int, 4> J{};
      for (int m = 0, t = 0; m < k; ++m) {
        if (m == pos) J[static_cast<std::size_t>(m)] = j;
        else J[static_cast<std::size_t>(m)] = K[static_cast<std::size_t>(t++)];
      }
      Term term;
      term.sign = (pos % 2 == 0) ? 1 : -1;
      term.coface = detail::comp_index(lat, k, J);
      term.dir = j;
      term.inva = 1.0 / lat.spacings[static_cast<std::size_t>(j)];
      plan[static_cast<std::size_t>(ck)].push_back(term);
    }
  }

  lat.par_sites([&](std::size_t s, const int* n) {
    for (int ck = 0; ck < nout; ++ck) {
      double acc = 0.0;
      for (const auto& t : plan[static_cast<std::size_t>(ck)]) {
        const std::size_t sb = lat.bwd(s, n, t.dir);
        const double diff = c.at(sb, t.coface, nin) - c.at(s, t.coface, nin);
        acc += t.sign * t.inva * diff;
      }
      out.at(s, ck, nout) = acc;
    }
  });
  return out;
}

// Hodge star, degree k -> dim-k; an isometry with ** = (-1)^{k(dim-k)}.
inline Cochain hodge_star(const TorusLattice& lat, const Cochain& c) {
  const int k = c.degree;
  const int nin = lat.ncomp(k);
  const int nout = lat.ncomp(lat.dim - k);
  Cochain out = make_cochain(lat, lat.dim - k);

  std::vector<int> target(static_cast<std::size_t>(nin));
  std::vector<double> sign(static_cast<std::size_t>(nin));
  for (int ci = 0; ci < nin; ++ci) {
    const auto& J = lat.comps[static_cast<std::size_t>(k)][static_cast<std::size_t>(ci)];
    bool in_J[4] = {false, false, false, false};
    for (int m = 0; m < k; ++m) in_J[J[static_cast<std::size_t>(m)]] = true;
    std::array<int, 4> Jc{};
    int t = 0;
    for (int u = 0; u < lat.dim; ++u)
      if (!in_J[u]) Jc[static_cast<std::size_t>(t++)] = u;
    // parity of the permutation (J, Jc) of (0..dim-1)
    std::array<int, 4> perm{};
    for (int m = 0; m < k; ++m) perm[static_cast<std::size_t>(m)] = J[static_cast<std::size_t>(m)];
    for (int m = 0; m < lat.dim - k; ++m) perm[static_cast<std::size_t>(k + m)] = Jc[static_cast<std::size_t>(m)];
    int inv = 0;
    for (int a = 0; a < lat.dim; ++a)
      for (int b = a + 1; b < lat.dim; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inv;
    target[static_cast<std::size_t>(ci)] = detail::comp_index(lat, lat.dim - k, Jc);
    sign[static_cast<std::size_t>(ci)] = (inv % 2 == 0) ? 1.0 : -1.0;
  }

  parallel_for(lat.nsites, [&](std::size_t s) {
    for (int ci = 0; ci < nin; ++ci)
      out.at(s, target[static_cast<std::size_t>(ci)], nout) = sign[static_cast<std::size_t>(ci)] * c.at(s, ci, nin);
  });
  return out;
}

// p+ = (1 + *)/2 on 2-cochains in d = 4.
inline Cochain selfdual_project(const TorusLattice& lat, const Cochain& c) {
  if (lat.dim != 4) throw Error("selfdual_project: needs dim 4");
  if (c.degree != 2) throw Error("selfdual_project: needs a 2-cochain");
  Cochain st = hodge_star(lat, c);
  Cochain out = make_cochain(lat, 2);
  parallel_for(out.v.size(), [&](std::size_t i) { out.v[i] = 0.5 * (c.v[i] + st.v[i]); });
  return out;
}

inline double inner(const TorusLattice& lat, const Cochain& x, const Cochain& y) {
  if (x.degree != y.degree || x.v.size() != y.v.size())
    throw Error("inner: degree mismatch");
  return lat.cell_volume *
         block_sum(x.v.size(), [&](std::size_t i) { return x.v[i] * y.v[i]; });
}

inline double norm2(const TorusLattice& lat, const Cochain& x) {
  return lat.cell_volume * block_sum(x.v.size(), [&](std::size_t i) { return x.v[i] * x.v[i]; });
}

inline double norm(const TorusLattice& lat, const Cochain& x) { return std::sqrt(norm2(lat, x)); }

inline Cochain axpy(double alpha, const Cochain& x, const Cochain& y) {
  Cochain r = y;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += alpha * x.v[i];
  return r;
}

inline Cochain scaled(double alpha, const Cochain& x) {
  Cochain r = x;
  for (auto& v : r.v) v *= alpha;
  return r;
}

}  // namespace monolab
