#pragma once

// 2x2x2 integer cubes: the three binary quadratic forms obtained by
// epsilon-contraction, their common discriminant, and the slice-map
// identities that tie the forms together. The identity verification comes
// in two flavours: exact coefficient comparison for a single cube, and a
// finite-grid polynomial identity test that certifies the identities as
// polynomial laws (every coefficient has degree at most four in each cube
// entry, so agreement on {0..4}^8 forces agreement everywhere).

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tri/identities.hpp"
#include "tri/rational.hpp"

namespace tri {

struct Cube {
  // entry (a,b,c) at index a*4 + b*2 + c
  std::array<mpz_class, 8> t{};
  const mpz_class& tau(int a, int b, int c) const { return t[a * 4 + b * 2 + c]; }
  mpz_class& tau(int a, int b, int c) { return t[a * 4 + b * 2 + c]; }
};

template <typename T>
using M2 = std::array<std::array<T, 2>, 2>;

namespace detail {

template <typename T>
M2<T> m2mul(const M2<T>& x, const M2<T>& y) {
  M2<T> r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

template <typename T>
M2<T> m2adj(const M2<T>& x) {
  return M2<T>{{{x[1][1], -x[0][1]}, {-x[1][0], x[0][0]}}};
}

template <typename T>
M2<T> m2transpose(const M2<T>& x) {
  return M2<T>{{{x[0][0], x[1][0]}, {x[0][1], x[1][1]}}};
}

inline int eps(int i, int j) { return i == j ? 0 : (i == 0 ? 1 : -1); }

// The three epsilon-contractions, G[s] doubled over the remaining slots:
// (G1)_{aa'} = sum eps_{bb'} eps_{cc'} tau_{abc} tau_{a'b'c'}, cyclically.
template <typename T>
std::array<M2<T>, 3> contractions(const std::array<T, 8>& t) {
  auto at = [&](int a, int b, int c) -> const T& { return t[a * 4 + b * 2 + c]; };
  std::array<M2<T>, 3> G{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      T g1{}, g2{}, g3{};
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) {
              int e = eps(p, q) * eps(r, s);
              if (e == 0) continue;
              g1 += T(e) * at(i, p, r) * at(j, q, s);
              g2 += T(e) * at(r, i, p) * at(s, j, q);
              g3 += T(e) * at(p, r, i) * at(q, s, j);
            }
      G[0][i][j] = g1;
      G[1][i][j] = g2;
      G[2][i][j] = g3;
    }
  return G;
}

// slot slices: slot 1 fixes the first index, etc.
template <typename T>
std::array<M2<T>, 2> slices(const std::array<T, 8>& t, int slot) {
  auto at = [&](int a, int b, int c) -> const T& { return t[a * 4 + b * 2 + c]; };
  std::array<M2<T>, 2> S{};
  for (int v = 0; v < 2; ++v)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) switch (slot) {
          case 1: S[v][i][j] = at(v, i, j); break;
          case 2: S[v][i][j] = at(i, v, j); break;
          case 3: S[v][i][j] = at(i, j, v); break;
          default: throw std::invalid_argument("slot must be 1, 2 or 3");
        }
  return S;
}

template <typename T>
T tabs(const T& x) {
  return x < 0 ? T(-x) : x;
}

// Residual of one cleared identity. which = 1,2,3; the identity compares
// 2 S_p A S_q^T + S_q A S_p^T terms against -(G)_{pq} H with denominators
// cleared, i.e. the normalization scalar is -1/2. With wrong_scalar the
// residual is recomputed for scalar +1 instead; that version must fail
// somewhere on the grid, proving -1/2 is forced.
template <typename T>
T cleared_residual(const std::array<T, 8>& t, int which, bool wrong_scalar) {
  auto G = contractions(t);
  int gi = which == 1 ? 0 : (which == 2 ? 1 : 2);
  int hi = which == 1 ? 1 : 0;
  M2<T> A = m2adj(which == 3 ? G[1] : G[2]);
  auto S = slices(t, which);
  const M2<T>&Gm = G[gi], &H = G[hi];
  T worst{};
  auto upd = [&](const M2<T>& R) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) worst = std::max(worst, tabs(R[i][j]));
  };
  for (int p = 0; p < 2; ++p) {
    M2<T> L = m2mul(m2mul(S[p], A), m2transpose(S[p]));
    const T& g = Gm[p][p];
    M2<T> R{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (wrong_scalar)
          R[i][j] = L[i][j] - g * H[i][j];
        else
          R[i][j] = T(2) * L[i][j] + g * H[i][j];
      }
    upd(R);
  }
  {
    M2<T> L1 = m2mul(m2mul(S[0], A), m2transpose(S[1]));
    M2<T> L2 = m2mul(m2mul(S[1], A), m2transpose(S[0]));
    M2<T> R{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (wrong_scalar)
          R[i][j] = L1[i][j] + L2[i][j] - T(2) * Gm[0][1] * H[i][j];
        else
          R[i][j] = L1[i][j] + L2[i][j] + Gm[0][1] * H[i][j];
      }
    upd(R);
  }
  return worst;
}

template <typename T>
T det2(const M2<T>& m) {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

}  // namespace detail

struct BinaryForm {
  mpz_class a, b, c;  // a x^2 + b xy + c y^2
  mpz_class disc() const { return b * b - 4 * a * c; }
  M2<mpz_class> gram() const { return {{{2 * a, b}, {b, 2 * c}}}; }
};

// The three forms attached to a cube. The contraction matrices have even
// diagonal, so the coefficients are integers.
inline std::array<BinaryForm, 3> recover_forms(const Cube& K) {
  auto G = detail::contractions(K.t);
  std::array<BinaryForm, 3> out;
  for (int s = 0; s < 3; ++s) {
    if (G[s][0][0] % 2 != 0 || G[s][1][1] % 2 != 0 || G[s][0][1] != G[s][1][0])
      throw std::logic_error("contraction matrix is not an even symmetric form");
    out[s] = {G[s][0][0] / 2, G[s][0][1], G[s][1][1] / 2};
  }
  return out;
}

// Common discriminant of the three forms (equality asserted).
inline mpz_class discriminants(const Cube& K) {
  auto F = recover_forms(K);
  mpz_class d = F[0].disc();
  if (F[1].disc() != d || F[2].disc() != d)
    throw std::runtime_error("discriminants disagree: " + F[0].disc().get_str() +
                             ", " + F[1].disc().get_str() + ", " +
                             F[2].disc().get_str());
  return d;
}

// Closed-form expansion of the discriminant in the cube entries; used as an
// independent cross-check of the contraction route.
inline mpz_class disc_quartic(const Cube& K) {
  const mpz_class &a = K.t[0], &b = K.t[1], &c = K.t[2], &d = K.t[3];
  const mpz_class &e = K.t[4], &f = K.t[5], &g = K.t[6], &h = K.t[7];
  return a * a * h * h + b * b * g * g + c * c * f * f + d * d * e * e -
         2 * (a * b * g * h + a * c * f * h + a * d * e * h + b * c * f * g +
              b * d * e * g + c * d * e * f) +
         4 * (a * d * f * g + b * c * e * h);
}

// Projective scaling constant -1/(2 det G1); absent when the cube is
// degenerate. Scales as tau^-4 under cube scaling by tau.
inline std::optional<Rat> kappa(const Cube& K) {
  auto G = detail::contractions(K.t);
  mpz_class d = detail::det2(G[0]);
  if (d == 0) return std::nullopt;
  Rat out = Rat(-1) / (Rat(2) * Rat(d));
  return out;
}

// x-weighted slice along a slot: slot 1 gives (M_x)_{bc} = sum_a x_a tau_{abc}.
inline M2<mpz_class> slice_map(const Cube& K, int slot,
                               const std::array<mpz_class, 2>& x) {
  auto S = detail::slices(K.t, slot);
  M2<mpz_class> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = x[0] * S[0][i][j] + x[1] * S[1][i][j];
  return out;
}

// Unimodular action on one slot; form of that slot transforms by U, the
// other two forms are unchanged.
inline Cube apply_slot(const Cube& K, int slot, const M2<mpz_class>& U) {
  Cube out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        mpz_class v = 0;
        for (int w = 0; w < 2; ++w) switch (slot) {
            case 1: v += U[a][w] * K.tau(w, b, c); break;
            case 2: v += U[b][w] * K.tau(a, w, c); break;
            case 3: v += U[c][w] * K.tau(a, b, w); break;
            default: throw std::invalid_argument("slot must be 1, 2 or 3");
          }
        out.tau(a, b, c) = v;
      }
  return out;
}

// Exact verification of the three slice identities for one cube, with
// denominators cleared, plus agreement of the three discriminants.
inline IdentityReport verify_cleared_identities(const Cube& K) {
  IdentityReport rep;
  rep.subject = "cube identities";
  {
    IdentityCheck c;
    c.name = "disc_agree";
    auto F = recover_forms(K);
    mpz_class d = F[0].disc();
    mpz_class r1 = abs(F[1].disc() - d), r2 = abs(F[2].disc() - d);
    c.pass = r1 == 0 && r2 == 0;
    c.residual = Rat(r1 > r2 ? r1 : r2);
    rep.checks.push_back(c);
  }
  for (int which = 1; which <= 3; ++which) {
    IdentityCheck c;
    c.name = "main" + std::to_string(which);
    mpz_class r = detail::cleared_residual(K.t, which, false);
    c.pass = r == 0;
    c.residual = Rat(r);
    rep.checks.push_back(c);
  }
  return rep;
}

struct UniversalReport {
  bool pass = false;
  long cubes_checked = 0;
  std::string witness;  // first failing cube, if any
};

// Polynomial identity test on the grid {0..4}^8. Every identity coefficient
// has degree at most 4 in each entry, so vanishing on the grid proves the
// polynomial identity. With wrong_scalar the first identity is evaluated
// with normalization scalar +1 instead of -1/2; the grid must then report
// a failing witness, showing the scalar is forced.
inline UniversalReport verify_universal_identities(bool wrong_scalar = false) {
  UniversalReport rep;
  std::array<long long, 8> t{};
  auto run = [&](auto&& self, int pos) -> bool {
    if (pos == 8) {
      ++rep.cubes_checked;
      auto G = detail::contractions(t);
      long long d1 = -detail::det2(G[0]);
      if (-detail::det2(G[1]) != d1 || -detail::det2(G[2]) != d1) return false;
      for (int which = 1; which <= 3; ++which)
        if (detail::cleared_residual(t, which, wrong_scalar && which == 1) != 0)
          return false;
      return true;
    }
    for (long long v = 0; v <= 4; ++v) {
      t[pos] = v;
      if (!self(self, pos + 1)) return false;
    }
    return true;
  };
  bool ok = run(run, 0);
  rep.pass = ok;
  if (!ok) {
    std::string w = "(";
    for (int i = 0; i < 8; ++i)
      w += std::to_string(t[i]) + (i == 7 ? ")" : ",");
    rep.witness = w;
  }
  return rep;
}

}  // namespace tri
