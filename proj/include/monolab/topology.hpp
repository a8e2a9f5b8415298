#pragma once

// Closed-form integer/rational calculators: moduli dimensions, index
// decompositions, basic-class enumeration, genus and curvature bounds,
// holomorphic-curve dimensions and the non-abelian dimension formula.
// Everything here is exact arithmetic; no floating point enters any
// dimension or index. Squares of c1(L) are carried as c1(L^2) integrally
// and divided by 4 at the end.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "monolab/lattice.hpp"  // for Error

namespace monolab {

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw Error("Rational: zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(std::llabs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_integer() const { return den == 1; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator>(const Rational& o) const { return o < *this; }

  Rational operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
  }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw Error("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

using IntMatrix = std::vector<std::vector<long long>>;

inline bool is_symmetric(const IntMatrix& Q) {
  const std::size_t n = Q.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (Q[i].size() != n) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (Q[i][j] != Q[j][i]) return false;
  }
  return true;
}

// Exact signature of an integer symmetric matrix by congruence
// diagonalization over the rationals.
inline long long signature_of(const IntMatrix& Qin) {
  if (!is_symmetric(Qin)) throw Error("signature_of: matrix not symmetric");
  const std::size_t n = Qin.size();
  std::vector<std::vector<Rational>> Q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Q[i][j] = Rational(Qin[i][j]);

  long long sig = 0;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // find a nonzero diagonal pivot among unused rows
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && Q[i][i].num != 0) { p = i; break; }
    if (p == n) {
      // all remaining diagonal entries vanish; find an off-diagonal one
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!used[j] && Q[i][j].num != 0) { a = i; b = j; break; }
      }
      if (a == n) break;  // remaining block is zero
      // row/col operation: e_a <- e_a + e_b makes Q[a][a] = 2 Q[a][b] != 0
      for (std::size_t j = 0; j < n; ++j) Q[a][j] = Q[a][j] + Q[b][j];
      for (std::size_t i = 0; i < n; ++i) Q[i][a] = Q[i][a] + Q[i][b];
      p = a;
    }
    used[p] = true;
    sig += (Q[p][p].num > 0) ? 1 : -1;
    // clear row/column p against the pivot
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || used[i]) continue;
      if (Q[i][p].num == 0) continue;
      const Rational f = Q[i][p] / Q[p][p];
      for (std::size_t j = 0; j < n; ++j) Q[i][j] = Q[i][j] - f * Q[p][j];
      for (std::size_t j = 0; j < n; ++j) Q[j][i] = Q[j][i] - f * Q[j][p];
    }
  }
  return sig;
}

// Exact determinant (Bareiss), for the nondegeneracy check.
inline long long det_of(const IntMatrix& Qin) {
  IntMatrix Q = Qin;
  const std::size_t n = Q.size();
  long long prev = 1;
  long long sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (Q[k][k] == 0) {
      std::size_t swap = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (Q[i][k] != 0) { swap = i; break; }
      if (swap == n) return 0;
      std::swap(Q[k], Q[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        Q[i][j] = (Q[i][j] * Q[k][k] - Q[i][k] * Q[k][j]) / prev;
    prev = Q[k][k];
  }
  return n == 0 ? 1 : sign * Q[n - 1][n - 1];
}

struct FourManifoldData {
  long long chi = 0;
  long long sigma = 0;
  long long b2plus = 0;
  IntMatrix Q;  // intersection form on H^2 / torsion
  std::optional<long long> b1;

  void validate() const {
    if (!is_symmetric(Q)) throw Error("FourManifoldData: Q must be symmetric");
    if (!Q.empty() && signature_of(Q) != sigma)
      throw Error("FourManifoldData: signature(Q) != sigma");
    if (b1.has_value() && chi != 2 - 2 * *b1 + static_cast<long long>(Q.size()))
      throw Error("FourManifoldData: chi inconsistent with b1 and rank(Q)");
  }
};

struct SpinCClass {
  std::vector<long long> c1_L2;  // class of L^2 in the Q-lattice

  Rational c1L_squared(const FourManifoldData& md) const {
    if (c1_L2.size() != md.Q.size()) throw Error("SpinCClass: rank mismatch");
    long long q = 0;
    for (std::size_t i = 0; i < c1_L2.size(); ++i)
      for (std::size_t j = 0; j < c1_L2.size(); ++j)
        q += c1_L2[i] * md.Q[i][j] * c1_L2[j];
    return Rational(q, 4);
  }
};

// dim(M) = c1(L)^2 - (2 chi + 3 sigma)/4, with the index decomposition.
struct SWDimension {
  Rational dimension;
  Rational dirac_index;     // c1(L)^2 - sigma/4
  Rational euler_sig_term;  // (chi + sigma)/2
};

inline SWDimension sw_dimension(const FourManifoldData& md, const SpinCClass& s) {
  if (s.c1_L2.size() != md.Q.size()) throw Error("sw_dimension: rank mismatch");
  SWDimension out;
  long long q = 0;
  for (std::size_t i = 0; i < s.c1_L2.size(); ++i)
    for (std::size_t j = 0; j < s.c1_L2.size(); ++j)
      q += s.c1_L2[i] * md.Q[i][j] * s.c1_L2[j];
  out.dimension = Rational(q - 2 * md.chi - 3 * md.sigma, 4);
  out.dirac_index = Rational(q - md.sigma, 4);
  out.euler_sig_term = Rational(md.chi + md.sigma, 2);
  return out;
}

inline Rational dirac_index(const SpinCClass& s, const FourManifoldData& md) {
  return s.c1L_squared(md) - Rational(md.sigma, 4);
}

// The (chi + sigma)/2 term, equal to -Ind(d* + d+).
inline Rational asd_index(const FourManifoldData& md) {
  return Rational(md.chi + md.sigma, 2);
}

// All lattice classes x with coordinates in [-bound, bound] and
// Q(x, x) = 2 chi + 3 sigma (the zero-dimensional condition on c1(L^2),
// whose square is 4 c1(L)^2).
inline std::vector<std::vector<long long>> basic_class_candidates(
    const FourManifoldData& md, long long bound) {
  if (md.Q.empty() || det_of(md.Q) == 0)
    throw Error("basic_class_candidates: Q must be nondegenerate");
  if (bound < 0) throw Error("basic_class_candidates: bound must be >= 0");
  const long long target = 2 * md.chi + 3 * md.sigma;
  const std::size_t n = md.Q.size();
  std::vector<std::vector<long long>> out;
  std::vector<long long> x(n, -bound);
  for (;;) {
    long long q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += x[i] * md.Q[i][j] * x[j];
    if (q == target) out.push_back(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++x[i] <= bound) break;
      x[i] = -bound;
      if (i == 0) return out;
    }
  }
}

inline long long thom_genus_bound(long long d) {
  if (d < 1) throw Error("thom_genus_bound: degree must be >= 1");
  return (d - 1) * (d - 2) / 2;
}

struct CurvatureEstimate {
  double f_bound = 0.0;       // |F_A| <= 2 pi (2g - 2)
  double psi_sq_bound = 0.0;  // |psi|^2 <= 4 pi (2g - 2)
};

inline CurvatureEstimate curvature_estimate_bound(long long g) {
  if (g < 1) throw Error("curvature_estimate_bound: genus must be >= 1");
  CurvatureEstimate out;
  out.f_bound = 2.0 * kPi * static_cast<double>(2 * g - 2);
  out.psi_sq_bound = 4.0 * kPi * static_cast<double>(2 * g - 2);
  return out;
}

inline long long gromov_dimension(long long c1K_dot_A, long long A_sq) {
  return -c1K_dot_A + A_sq;
}

inline Rational nonabelian_dimension(long long N, long long c2, long long chi,
                                     long long sigma, long long delta) {
  if (N < 2) throw Error("nonabelian_dimension: N must be >= 2");
  return Rational((4 * N - 2) * c2) - Rational((N * N - 1) * (chi + sigma), 2) -
         Rational(delta * sigma, 4);
}

enum class ConnectedSumVerdict { vanishes, no_conclusion };

inline ConnectedSumVerdict connected_sum_invariant(long long b2plus_1,
                                                   long long b2plus_2) {
  return (b2plus_1 >= 1 && b2plus_2 >= 1) ? ConnectedSumVerdict::vanishes
                                          : ConnectedSumVerdict::no_conclusion;
}

enum class CountingRule { zero, signed_count, pairing };

struct InvariantRule {
  CountingRule rule = CountingRule::zero;
  Rational pairing_degree;  // d/2 for positive even integer dimension
};

// dim < 0: no solutions generically; dim = 0: signed point count; odd or
// fractional dim: zero; positive even: pairing of c1(L)^{d/2}.
inline InvariantRule invariant_counting_rules(const Rational& dim) {
  InvariantRule out;
  if (dim < Rational(0)) return out;
  if (dim == Rational(0)) {
    out.rule = CountingRule::signed_count;
    return out;
  }
  if (!dim.is_integer() || dim.num % 2 != 0) return out;  // zero
  out.rule = CountingRule::pairing;
  out.pairing_degree = dim / Rational(2);
  return out;
}

// chi and sigma of a connected sum (chi_1 + chi_2 - 2, sigma_1 + sigma_2);
// the intersection form is the direct sum.
inline FourManifoldData connected_sum(const FourManifoldData& a,
                                      const FourManifoldData& b) {
  FourManifoldData out;
  out.chi = a.chi + b.chi - 2;
  out.sigma = a.sigma + b.sigma;
  out.b2plus = a.b2plus + b.b2plus;
  const std::size_t na = a.Q.size(), nb = b.Q.size();
  out.Q.assign(na + nb, std::vector<long long>(na + nb, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) out.Q[i][j] = a.Q[i][j];
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) out.Q[na + i][na + j] = b.Q[i][j];
  if (a.b1.has_value() && b.b1.has_value()) out.b1 = *a.b1 + *b.b1;
  return out;
}

inline FourManifoldData cp2_data(bool reversed = false) {
  FourManifoldData md;
  md.chi = 3;
  md.sigma = reversed ? -1 : 1;
  md.b2plus = reversed ? 0 : 1;
  md.Q = {{reversed ? -1LL : 1LL}};
  md.b1 = 0;
  return md;
}

// CP^2 # n conj(CP^2), with the canonical-class candidate 3H - sum E_i.
struct BlowupFamily {
  FourManifoldData manifold;
  SpinCClass canonical;  // c1(K) = 3H - E in the (H, E_1..E_n) basis
};

inline BlowupFamily cp2_blowup(long long n) {
  BlowupFamily out;
  out.manifold = cp2_data(false);
  for (long long i = 0; i < n; ++i)
    out.manifold = connected_sum(out.manifold, cp2_data(true));
  out.canonical.c1_L2.assign(static_cast<std::size_t>(n + 1), -1);
  out.canonical.c1_L2[0] = 3;
  return out;
}

}  // namespace monolab
