#pragma once

// Fiberwise Clifford algebra for flat d = 3, 4.
//
// Canonical representation (chiral blocks from the Pauli matrices):
//   d = 4:  e_k = [[0, i s_k], [i s_k, 0]] for k = 0,1,2,
//           e_3 = [[0, I], [-I, 0]],
//   d = 3:  e_k = i s_k  on a 2-dim fiber.
// Generators satisfy e_i e_j + e_j e_i = -2 delta_ij and are skew-adjoint.
// In d = 4 the grading operator is -e_0 e_1 e_2 e_3 = diag(1,1,-1,-1), so
// S+ is spanned by the first two components and S- by the last two; every
// generator is off-diagonal in that splitting.
//
// 2-form components are ordered lexicographically:
//   d = 4: (01),(02),(03),(12),(13),(23)   d = 3: (01),(02),(12).
// Orientation: e0^e1^e2^e3 is positive; the Hodge star and self-duality
// follow that choice.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace monolab {

using cplx = std::complex<double>;

// Small dense complex matrix, capacity 4x4.
struct CMat {
  int n = 0;
  std::array<cplx, 16> m{};

  cplx& at(int r, int c) { return m[static_cast<std::size_t>(r * n + c)]; }
  const cplx& at(int r, int c) const {
    return m[static_cast<std::size_t>(r * n + c)];
  }
};

inline CMat cmat_zero(int n) {
  CMat z;
  z.n = n;
  return z;
}

inline CMat cmat_id(int n) {
  CMat z = cmat_zero(n);
  for (int i = 0; i < n; ++i) z.at(i, i) = 1.0;
  return z;
}

inline CMat operator*(const CMat& a, const CMat& b) {
  CMat r = cmat_zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < a.n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

inline CMat operator+(const CMat& a, const CMat& b) {
  CMat r = a;
  for (int i = 0; i < a.n * a.n; ++i) r.m[static_cast<std::size_t>(i)] += b.m[static_cast<std::size_t>(i)];
  return r;
}

inline CMat operator*(cplx s, const CMat& a) {
  CMat r = a;
  for (auto& v : r.m) v *= s;
  return r;
}

inline CMat adjoint(const CMat& a) {
  CMat r = cmat_zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(i, j) = std::conj(a.at(j, i));
  return r;
}

template <std::size_t N>
inline std::array<cplx, N> mat_apply(const CMat& a, const std::array<cplx, N>& v) {
  std::array<cplx, N> r{};
  for (int i = 0; i < a.n; ++i) {
    cplx s{};
    for (int j = 0; j < a.n; ++j) s += a.at(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

// 2x2 block acting on a pair of components; used in hot lattice loops.
struct Block2 {
  cplx m00, m01, m10, m11;

  std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const {
    return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
  }
};

struct SpinorFiber {
  std::array<cplx, 2> plus{};
  std::array<cplx, 2> minus{};
};

inline double norm2(const std::array<cplx, 2>& v) {
  return std::norm(v[0]) + std::norm(v[1]);
}

inline cplx hermitian(const std::array<cplx, 2>& u, const std::array<cplx, 2>& v) {
  return u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]);
}

inline int pair_count(int dim) { return dim * (dim - 1) / 2; }

// Index of the ordered pair (i < j) in the lexicographic component order.
inline int pair_index(int dim, int i, int j) {
  int p = 0;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      if (a == i && b == j) return p;
      ++p;
    }
  throw std::invalid_argument("pair_index: bad pair");
}

struct GammaRep {
  int dim = 0;    // ambient dimension (3 or 4)
  int fiber = 0;  // spinor fiber dimension (2 or 4)
  std::vector<CMat> generators;
  CMat chirality;  // d = 4 only: diag(1,1,-1,-1)

  // d = 4 block data. e_k = [[0, b_k], [-b_k^dag, 0]] in the S+ (+) S- split.
  std::array<Block2, 4> minus_to_plus{};   // b_k
  std::array<Block2, 4> plus_to_minus{};   // -b_k^dag
  // S+ block of e_i e_j per lexicographic pair (i < j).
  std::array<Block2, 6> pair_plus{};
};

namespace detail {
inline CMat pauli(int k) {
  CMat s = cmat_zero(2);
  const cplx I{0.0, 1.0};
  switch (k) {
    case 0: s.at(0, 1) = 1.0; s.at(1, 0) = 1.0; break;
    case 1: s.at(0, 1) = -I;  s.at(1, 0) = I;   break;
    default: s.at(0, 0) = 1.0; s.at(1, 1) = -1.0; break;
  }
  return s;
}

inline Block2 block_of(const CMat& g, int r0, int c0) {
  return {g.at(r0, c0), g.at(r0, c0 + 1), g.at(r0 + 1, c0), g.at(r0 + 1, c0 + 1)};
}
}  // namespace detail

inline GammaRep build_gamma_rep(int dim) {
  if (dim != 3 && dim != 4)
    throw std::invalid_argument("build_gamma_rep: dim must be 3 or 4");
  GammaRep rep;
  rep.dim = dim;
  const cplx I{0.0, 1.0};
  if (dim == 3) {
    rep.fiber = 2;
    for (int k = 0; k < 3; ++k) rep.generators.push_back(I * detail::pauli(k));
    return rep;
  }
  rep.fiber = 4;
  for (int k = 0; k < 3; ++k) {
    CMat g = cmat_zero(4);
    CMat is = I * detail::pauli(k);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        g.at(r, 2 + c) = is.at(r, c);
        g.at(2 + r, c) = is.at(r, c);
      }
    rep.generators.push_back(g);
  }
  CMat g3 = cmat_zero(4);
  g3.at(0, 2) = 1.0; g3.at(1, 3) = 1.0;
  g3.at(2, 0) = -1.0; g3.at(3, 1) = -1.0;
  rep.generators.push_back(g3);

  CMat prod = rep.generators[0] * rep.generators[1] * rep.generators[2] *
              rep.generators[3];
  rep.chirality = cplx{-1.0, 0.0} * prod;

  for (int k = 0; k < 4; ++k) {
    rep.minus_to_plus[static_cast<std::size_t>(k)] = detail::block_of(rep.generators[static_cast<std::size_t>(k)], 0, 2);
    rep.plus_to_minus[static_cast<std::size_t>(k)] = detail::block_of(rep.generators[static_cast<std::size_t>(k)], 2, 0);
  }
  int p = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      CMat prod_ij = rep.generators[static_cast<std::size_t>(i)] * rep.generators[static_cast<std::size_t>(j)];
      rep.pair_plus[static_cast<std::size_t>(p++)] = detail::block_of(prod_ij, 0, 0);
    }
  return rep;
}

// Clifford multiplication v . s on the full fiber.
inline std::array<cplx, 4> clifford_mul(const GammaRep& rep,
                                        const std::array<double, 4>& v,
                                        const std::array<cplx, 4>& s) {
  if (rep.dim != 4) throw std::invalid_argument("clifford_mul: need d=4 rep");
  CMat op = cmat_zero(4);
  for (int k = 0; k < 4; ++k) op = op + cplx{v[static_cast<std::size_t>(k)], 0.0} * rep.generators[static_cast<std::size_t>(k)];
  return mat_apply(op, s);
}

inline std::array<cplx, 2> clifford_mul3(const GammaRep& rep,
                                         const std::array<double, 3>& v,
                                         const std::array<cplx, 2>& s) {
  if (rep.dim != 3) throw std::invalid_argument("clifford_mul3: need d=3 rep");
  CMat op = cmat_zero(2);
  for (int k = 0; k < 3; ++k) op = op + cplx{v[static_cast<std::size_t>(k)], 0.0} * rep.generators[static_cast<std::size_t>(k)];
  return mat_apply(op, s);
}

// rho(w) s = sum_{i<j} w_ij e_i e_j s restricted to S+. The anti-self-dual
// part of w acts as zero; for self-dual w the Hilbert-Schmidt norm of the
// operator is 2|w| (eigenvalues +- i sqrt2 |w|).
inline std::array<cplx, 2> two_form_action(const GammaRep& rep,
                                           const std::array<double, 6>& w,
                                           const std::array<cplx, 2>& s) {
  if (rep.dim != 4) throw std::invalid_argument("two_form_action: need d=4 rep");
  std::array<cplx, 2> r{};
  for (int p = 0; p < 6; ++p) {
    const double wp = w[static_cast<std::size_t>(p)];
    if (wp == 0.0) continue;
    const Block2& b = rep.pair_plus[static_cast<std::size_t>(p)];
    r[0] += wp * (b.m00 * s[0] + b.m01 * s[1]);
    r[1] += wp * (b.m10 * s[0] + b.m11 * s[1]);
  }
  return r;
}

// q_ij = Im<e_i e_j psi, psi> / 4, the real coefficients of the spinor
// quadratic form. <e_i e_j psi, psi> is purely imaginary, so this loses
// nothing; the result is self-dual by construction.
inline std::array<double, 6> quadratic_form(const GammaRep& rep,
                                            const std::array<cplx, 2>& psi) {
  if (rep.dim != 4) throw std::invalid_argument("quadratic_form: need d=4 rep");
  std::array<double, 6> q{};
  for (int p = 0; p < 6; ++p) {
    const Block2& b = rep.pair_plus[static_cast<std::size_t>(p)];
    const std::array<cplx, 2> es = b.apply(psi);
    q[static_cast<std::size_t>(p)] = 0.25 * std::imag(hermitian(es, psi));
  }
  return q;
}

}  // namespace monolab
