#pragma once
// Verification of the tensor identities a single triality satisfies: Clifford
// composition, trace and full-contraction normalizations, the triangle
// relation, the double-box identities, the off-diagonal reproducing formula
// and the preservation formula, plus the dimension obstruction chain.
//
// All built-in metrics are diagonal +-1, so every contraction here stays in
// 64-bit integers; residuals are reported exactly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tri/models.hpp"

namespace tri {

struct IdentityCheck {
  std::string name;
  bool pass = false;
  Rat residual;  // max absolute residual, 0 exactly when pass
  std::string witness;  // first offending entry, empty when pass
};

struct IdentityReport {
  std::string subject;
  std::vector<IdentityCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  Rat max_residual() const {
    Rat m = 0;
    for (const auto& c : checks)
      if (c.residual > m) m = c.residual;
    return m;
  }
};

namespace detail {

// integer view of a model (possibly colour-rotated)
struct ITau {
  int n;
  std::vector<int8_t> t;                // dense n^3
  std::array<std::vector<int>, 3> g;    // +-1 diagonals
  int tau(int a, int b, int c) const { return t[size_t(a) * n * n + size_t(b) * n + c]; }
};

inline ITau itau_of(const TrialityModel& m, int rot) {
  ITau v;
  v.n = m.n;
  v.t.assign(size_t(m.n) * m.n * m.n, 0);
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      for (int c = 0; c < m.n; ++c) {
        // rot 1: new colour f reads the old colour (f - 1) mod 3, so new V1 is
        // the old V3; rot 2 is the other cyclic rotation
        int val = rot == 0 ? m.tval(a, b, c)
                 : rot == 1 ? m.tval(b, c, a)
                            : m.tval(c, a, b);
        v.t[size_t(a) * m.n * m.n + size_t(b) * m.n + c] = int8_t(val);
      }
  for (int f = 0; f < 3; ++f) v.g[f] = m.metric[(f + 3 - rot) % 3];
  return v;
}

using Box = std::vector<int64_t>;  // dense n^4, index ((u,v),(u',v'))

inline size_t bidx(int n, int u, int v, int up, int vp) {
  return ((size_t(u) * n + v) * n + up) * n + vp;
}

// White box with the given colour contracted (1-based colour label).
// colour 3: legs (a,b),(a',b'); colour 2: (a,c),(a',c'); colour 1: (b,c),(b',c').
inline Box white_box(const ITau& m, int colour) {
  int n = m.n;
  Box C(size_t(n) * n * n * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int up = 0; up < n; ++up)
        for (int vp = 0; vp < n; ++vp) {
          int64_t s = 0;
          for (int k = 0; k < n; ++k) {
            int t1, t2, gk;
            if (colour == 3) { t1 = m.tau(u, v, k);  t2 = m.tau(up, vp, k); gk = m.g[2][k]; }
            else if (colour == 2) { t1 = m.tau(u, k, v);  t2 = m.tau(up, k, vp); gk = m.g[1][k]; }
            else { t1 = m.tau(k, u, v);  t2 = m.tau(k, up, vp); gk = m.g[0][k]; }
            s += int64_t(t1) * t2 * gk;
          }
          C[bidx(n, u, v, up, vp)] = s;
        }
  return C;
}

// Skew (black) box: antisymmetrized in the first legs of the two vertices.
// Doubled to stay integral: returns 2*B = C - C(swapped).
inline Box skew_box2(const ITau& m, int colour) {
  int n = m.n;
  Box C = white_box(m, colour);
  Box B(C.size(), 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int up = 0; up < n; ++up)
        for (int vp = 0; vp < n; ++vp)
          B[bidx(n, u, v, up, vp)] =
              C[bidx(n, u, v, up, vp)] - C[bidx(n, up, v, u, vp)];
  return B;
}

// Glue two boxes through their second legs (v and v') with the inverse of the
// given metric on both; free legs are the first legs of each box.
inline Box glue_second_legs(const ITau& m, const Box& X, const Box& Y,
                            const std::vector<int>& gmid) {
  int n = m.n;
  Box out(size_t(n) * n * n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int aG = 0; aG < n; ++aG)
      for (int ap = 0; ap < n; ++ap)
        for (int aGp = 0; aGp < n; ++aGp) {
          int64_t s = 0;
          for (int b = 0; b < n; ++b)
            for (int bp = 0; bp < n; ++bp) {
              int64_t x = X[bidx(n, a, b, ap, bp)];
              if (!x) continue;
              int64_t y = Y[bidx(n, aG, b, aGp, bp)];
              if (!y) continue;
              s += x * y * gmid[b] * gmid[bp];
            }
          out[bidx(n, a, aG, ap, aGp)] = s;
        }
  return out;
}

struct IntResidual {
  int64_t max_abs = 0;
  std::string witness;
  void feed(int64_t r, int a, int b, int c, int d) {
    int64_t v = r < 0 ? -r : r;
    if (v > max_abs) {
      max_abs = v;
      witness = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                std::to_string(c) + "," + std::to_string(d) + ")";
    }
  }
  IdentityCheck done(const std::string& name) const {
    IdentityCheck c;
    c.name = name;
    c.pass = max_abs == 0;
    c.residual = Rat(long(max_abs));
    if (!c.pass) c.witness = witness;
    return c;
  }
};

inline IdentityCheck check_clifford(const ITau& m) {
  // two-term identity: C3(a,b,a',b') + C3(a',b,a,b') = 2 g1_{aa'} g2_{bb'}
  int n = m.n;
  Box C = white_box(m, 3);
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int ap = 0; ap < n; ++ap)
        for (int bp = 0; bp < n; ++bp) {
          int64_t lhs = C[bidx(n, a, b, ap, bp)] + C[bidx(n, ap, b, a, bp)];
          int64_t rhs = (a == ap && b == bp) ? 2LL * m.g[0][a] * m.g[1][b] : 0;
          res.feed(lhs - rhs, a, b, ap, bp);
        }
  return res.done("clifford");
}

inline IdentityCheck check_trace(const ITau& m) {
  int n = m.n;
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap) {
      int64_t s = 0;
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          s += int64_t(m.tau(a, b, c)) * m.tau(ap, b, c) * m.g[1][b] * m.g[2][c];
      int64_t rhs = a == ap ? int64_t(n) * m.g[0][a] : 0;
      res.feed(s - rhs, a, ap, 0, 0);
    }
  return res.done("trace");
}

inline IdentityCheck check_full_contraction(const ITau& m) {
  int n = m.n;
  int64_t s = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int t = m.tau(a, b, c);
        if (t) s += int64_t(t) * t * m.g[0][a] * m.g[1][b] * m.g[2][c];
      }
  IntResidual res;
  res.feed(s - int64_t(n) * n, 0, 0, 0, 0);
  return res.done("full_contraction");
}

inline IdentityCheck check_triangle(const ITau& m) {
  // sum_{p,q,r} tau_{aqr} tau_{pbr} tau_{pqc} g1^p g2^q g3^r = (2-n) tau_{abc}
  int n = m.n;
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int64_t s = 0;
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r) {
            int t1 = m.tau(a, q, r);
            if (!t1) continue;
            for (int p = 0; p < n; ++p) {
              int t2 = m.tau(p, b, r);
              if (!t2) continue;
              int t3 = m.tau(p, q, c);
              if (!t3) continue;
              s += int64_t(t1) * t2 * t3 * m.g[0][p] * m.g[1][q] * m.g[2][r];
            }
          }
        res.feed(s - int64_t(2 - n) * m.tau(a, b, c), a, b, c, 0);
      }
  return res.done("triangle");
}

// lowered delta patterns on V1 used by the double-box identities
inline int64_t pat1(const ITau& m, int a, int aG, int ap, int aGp) {
  return (a == aG && ap == aGp) ? int64_t(m.g[0][a]) * m.g[0][ap] : 0;
}
inline int64_t pat2(const ITau& m, int a, int aG, int ap, int aGp) {
  return (a == ap && aG == aGp) ? int64_t(m.g[0][a]) * m.g[0][aG] : 0;
}
inline int64_t pat3(const ITau& m, int a, int aG, int ap, int aGp) {
  return (a == aGp && ap == aG) ? int64_t(m.g[0][a]) * m.g[0][ap] : 0;
}

inline IdentityCheck check_double_box_white(const ITau& m) {
  // two colour-3 boxes glued through V2 plus two colour-2 boxes glued through
  // V3, free legs all in V1: equals 2n (P1 + P2 - P3)
  int n = m.n;
  Box C3 = white_box(m, 3), C2 = white_box(m, 2);
  Box UDA = glue_second_legs(m, C3, C3, m.g[1]);
  Box UDB = glue_second_legs(m, C2, C2, m.g[2]);
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int aG = 0; aG < n; ++aG)
      for (int ap = 0; ap < n; ++ap)
        for (int aGp = 0; aGp < n; ++aGp) {
          size_t i = bidx(n, a, aG, ap, aGp);
          int64_t rhs = 2LL * n * (pat1(m, a, aG, ap, aGp) + pat2(m, a, aG, ap, aGp)
                                   - pat3(m, a, aG, ap, aGp));
          res.feed(UDA[i] + UDB[i] - rhs, a, aG, ap, aGp);
        }
  return res.done("double_box.white");
}

inline IdentityCheck check_double_box_skew(const ITau& m) {
  // skew versions glued the same way: 4*(SDA + SDB) = 4 * 2n (P1 - P3)
  int n = m.n;
  Box B3 = skew_box2(m, 3), B2 = skew_box2(m, 2);
  Box SDA4 = glue_second_legs(m, B3, B3, m.g[1]);  // 4*SDA
  Box SDB4 = glue_second_legs(m, B2, B2, m.g[2]);
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int aG = 0; aG < n; ++aG)
      for (int ap = 0; ap < n; ++ap)
        for (int aGp = 0; aGp < n; ++aGp) {
          size_t i = bidx(n, a, aG, ap, aGp);
          int64_t rhs = 8LL * n * (pat1(m, a, aG, ap, aGp) - pat3(m, a, aG, ap, aGp));
          res.feed(SDA4[i] + SDB4[i] - rhs, a, aG, ap, aGp);
        }
  return res.done("double_box.skew");
}

inline IdentityCheck check_skew_box_equality(const ITau& m) {
  // (n-4) SDA = (n-4) SDB entrywise; the two glued skew boxes agree except in
  // dimension four, where the factor kills the discrepancy
  int n = m.n;
  Box B3 = skew_box2(m, 3), B2 = skew_box2(m, 2);
  Box SDA4 = glue_second_legs(m, B3, B3, m.g[1]);
  Box SDB4 = glue_second_legs(m, B2, B2, m.g[2]);
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int aG = 0; aG < n; ++aG)
      for (int ap = 0; ap < n; ++ap)
        for (int aGp = 0; aGp < n; ++aGp) {
          size_t i = bidx(n, a, aG, ap, aGp);
          res.feed((n - 4) * (SDA4[i] - SDB4[i]), a, aG, ap, aGp);
        }
  return res.done("double_box.skew_equality");
}

inline IdentityCheck check_off_diagonal(const ITau& m) {
  // colour-3 skew box glued to a colour-1 skew box through V2 reproduces the
  // colour-2 skew box with factor (n-4)
  int n = m.n;
  Box B3 = skew_box2(m, 3), B1 = skew_box2(m, 1), B2 = skew_box2(m, 2);
  IntResidual res;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int ap = 0; ap < n; ++ap)
        for (int cp = 0; cp < n; ++cp) {
          int64_t s = 0;  // 4 * OFF
          for (int b = 0; b < n; ++b)
            for (int bp = 0; bp < n; ++bp) {
              int64_t x = B3[bidx(n, a, b, ap, bp)];
              if (!x) continue;
              int64_t y = B1[bidx(n, b, c, bp, cp)];
              if (!y) continue;
              s += x * y * m.g[1][b] * m.g[1][bp];
            }
          int64_t rhs = 2LL * (n - 4) * B2[bidx(n, a, c, ap, cp)];  // 4*(n-4)*B2
          res.feed(s - rhs, a, c, ap, cp);
        }
  return res.done("off_diagonal_reproduce");
}

inline IdentityCheck check_preservation(const ITau& m) {
  // For each plane rotation r0 in so(V3), the induced pair (p,q) built from
  // the composition maps satisfies tau(p.,.,.) + tau(.,q.,.) - 2 tau(.,.,r0.) = 0.
  // Everything doubled twice to stay integral.
  int n = m.n;
  IntResidual res;
  auto A = [&](int k, int b, int a) { return m.tau(a, b, k) * m.g[1][b]; };
  auto At = [&](int k, int a, int b) { return m.tau(a, b, k) * m.g[0][a]; };
  for (int zi = 0; zi < n; ++zi)
    for (int zj = zi + 1; zj < n; ++zj) {
      // P2 = At_i A_j - At_j A_i (=2p), Q2 = A_i At_j - A_j At_i (=2q)
      std::vector<int64_t> P2(size_t(n) * n, 0), Q2(size_t(n) * n, 0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int64_t p = 0, q = 0;
          for (int k = 0; k < n; ++k) {
            p += int64_t(At(zi, x, k)) * A(zj, k, y) - int64_t(At(zj, x, k)) * A(zi, k, y);
            q += int64_t(A(zi, x, k)) * At(zj, k, y) - int64_t(A(zj, x, k)) * At(zi, k, y);
          }
          P2[size_t(x) * n + y] = p;
          Q2[size_t(x) * n + y] = q;
        }
      // r0: z_i z_j plane rotation, r0[zj][zi] = g3[zi], r0[zi][zj] = -g3[zj]
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            int64_t t1 = 0, t2 = 0;
            for (int al = 0; al < n; ++al) {
              int v = m.tau(al, b, c);
              if (v) t1 += int64_t(v) * P2[size_t(al) * n + a];
            }
            for (int be = 0; be < n; ++be) {
              int v = m.tau(a, be, c);
              if (v) t2 += int64_t(v) * Q2[size_t(be) * n + b];
            }
            int64_t t3 = 0;  // sum_ga tau(a,b,ga) r0[ga][c]
            if (c == zi) t3 = int64_t(m.tau(a, b, zj)) * m.g[2][zi];
            else if (c == zj) t3 = -int64_t(m.tau(a, b, zi)) * m.g[2][zj];
            res.feed(t1 + t2 - 4 * t3, a, b, c, zi * n + zj);
          }
    }
  return res.done("preservation");
}

}  // namespace detail

// Public box constructors on rational tensors. The relation checks above use
// the plain normalization; the Lie-algebra normalization carries the extra
// 1/4 and exists as a separate constructor so the two never mix silently.
inline Tensor skew_box(const TrialityModel& m, int colour) {
  detail::ITau v = detail::itau_of(m, 0);
  detail::Box B2 = detail::skew_box2(v, colour);
  Tensor t({m.n, m.n, m.n, m.n});
  Rat half = frac(1, 2);
  for (size_t i = 0; i < B2.size(); ++i) t.data[i] = half * Rat(long(B2[i]));
  return t;
}

inline Tensor skew_box_lie(const TrialityModel& m, int colour) {
  return frac(1, 4) * skew_box(m, colour);
}

inline IdentityReport verify_composition(const TrialityModel& m) {
  IdentityReport rep;
  rep.subject = m.name;
  const char* names[3] = {"composition.grad_x", "composition.grad_y", "composition.grad_z"};
  // the gradient identities are the clifford check under colour rotation:
  // grad_x on the model itself, grad_y on rot 2, grad_z on rot 1
  const int rots[3] = {0, 2, 1};
  for (int ver = 0; ver < 3; ++ver) {
    detail::ITau v = detail::itau_of(m, rots[ver]);
    IdentityCheck c = detail::check_clifford(v);
    c.name = names[ver];
    rep.checks.push_back(c);
  }
  return rep;
}

// The full relation battery, run under all three cyclic colour rotations.
inline IdentityReport verify_structure_relations(const TrialityModel& m) {
  IdentityReport rep;
  rep.subject = m.name;
  for (int rot = 0; rot < 3; ++rot) {
    detail::ITau v = detail::itau_of(m, rot);
    std::string suffix = rot == 0 ? "" : ".rot" + std::to_string(rot);
    auto add = [&](IdentityCheck c) {
      c.name += suffix;
      rep.checks.push_back(std::move(c));
    };
    add(detail::check_clifford(v));
    add(detail::check_trace(v));
    add(detail::check_full_contraction(v));
    add(detail::check_triangle(v));
    add(detail::check_double_box_white(v));
    add(detail::check_double_box_skew(v));
    add(detail::check_skew_box_equality(v));
    add(detail::check_off_diagonal(v));
    add(detail::check_preservation(v));
  }
  return rep;
}

inline long hurwitz_scalar(long n) {
  return n * n * (n - 1) * (n - 2) * (n - 4) * (n - 8);
}

inline IdentityReport hurwitz_obstruction(const TrialityModel& m) {
  IdentityReport rep;
  rep.subject = m.name;
  int n = m.n;
  // tensor form: n(n-2)(n-4)(n-8) * (SDA - SDB) = 0
  detail::ITau v = detail::itau_of(m, 0);
  detail::Box B3 = detail::skew_box2(v, 3), B2v = detail::skew_box2(v, 2);
  detail::Box SDA4 = detail::glue_second_legs(v, B3, B3, v.g[1]);
  detail::Box SDB4 = detail::glue_second_legs(v, B2v, B2v, v.g[2]);
  detail::IntResidual res;
  int64_t f = int64_t(n) * (n - 2) * (n - 4) * (n - 8);
  for (int a = 0; a < n; ++a)
    for (int aG = 0; aG < n; ++aG)
      for (int ap = 0; ap < n; ++ap)
        for (int aGp = 0; aGp < n; ++aGp) {
          size_t i = detail::bidx(n, a, aG, ap, aGp);
          res.feed(f * (SDA4[i] - SDB4[i]), a, aG, ap, aGp);
        }
  rep.checks.push_back(res.done("hurwitz.tensor"));
  IdentityCheck sc;
  sc.name = "hurwitz.scalar";
  long s = hurwitz_scalar(n);
  sc.pass = s == 0;
  sc.residual = Rat(s < 0 ? -s : s);
  if (!sc.pass) sc.witness = "n=" + std::to_string(n);
  rep.checks.push_back(sc);
  return rep;
}

}  // namespace tri
