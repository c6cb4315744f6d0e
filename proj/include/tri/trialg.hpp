#pragma once
// The triality algebra: triples (p,q,r) of metric-skew endomorphisms with
// tau(px,y,z) + tau(x,qy,z) + tau(x,y,rz) = 0, obtained as the exact kernel
// of one big linear system. so(g) is coordinatized once and for all by the
// elementary generators g^{-1}(E_ij - E_ji), i<j, ordered lexicographically;
// kernel output, golden values and membership tests all depend on that choice.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tri/matrix.hpp"
#include "tri/models.hpp"

namespace tri {

struct SkewTriple {
  std::array<Mat, 3> comp;
};

inline std::vector<std::pair<int, int>> so_pairs(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.push_back({i, j});
  return p;
}

// Matrix of the constraint map: rows are the n^3 values (a,b,c) in
// lexicographic order, columns the elementary generators of
// so(g1) + so(g2) + so(g3) in slot-major order.
inline Mat constraint_operator(const TrialityModel& m) {
  int n = m.n;
  auto pairs = so_pairs(n);
  int mm = int(pairs.size());
  Mat C(n * n * n, 3 * mm);
  for (int f = 0; f < 3; ++f) {
    const std::vector<int>& g = m.metric[f];
    for (int k = 0; k < mm; ++k) {
      auto [i, j] = pairs[k];
      // P = g^{-1}(E_ij - E_ji): P[i][j] = 1/g_i, P[j][i] = -1/g_j
      Rat pij = Rat(1) / Rat(g[i]);
      Rat pji = Rat(-1) / Rat(g[j]);
      int col = f * mm + k;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            Rat s = 0;
            if (f == 0) {
              // sum_al tau(al,b,c) P[al][a]
              if (a == j && m.tval(i, b, c)) s += Rat(m.tval(i, b, c)) * pij;
              if (a == i && m.tval(j, b, c)) s += Rat(m.tval(j, b, c)) * pji;
            } else if (f == 1) {
              if (b == j && m.tval(a, i, c)) s += Rat(m.tval(a, i, c)) * pij;
              if (b == i && m.tval(a, j, c)) s += Rat(m.tval(a, j, c)) * pji;
            } else {
              if (c == j && m.tval(a, b, i)) s += Rat(m.tval(a, b, i)) * pij;
              if (c == i && m.tval(a, b, j)) s += Rat(m.tval(a, b, j)) * pji;
            }
            if (s != 0) C.at((a * n + b) * n + c, col) = s;
          }
    }
  }
  return C;
}

struct TrialityAlgebra {
  TrialityModel model;
  int dim = 0;
  std::vector<std::vector<Rat>> basis_vecs;  // kernel vectors, length 3*m
  std::vector<SkewTriple> basis;             // same elements as matrices
  std::vector<std::pair<int, int>> pairs;    // so generator order
  std::vector<int> free_cols;                // coordinate readoff positions
  Mat gram;                                  // componentwise trace form on t

  // triple for an arbitrary coefficient vector in the so^3 coordinates
  SkewTriple triple_of(const std::vector<Rat>& v) const {
    int n = model.n;
    int mm = int(pairs.size());
    SkewTriple t;
    for (int f = 0; f < 3; ++f) {
      t.comp[f] = Mat(n, n);
      for (int k = 0; k < mm; ++k) {
        const Rat& cf = v[f * mm + k];
        if (cf == 0) continue;
        auto [i, j] = pairs[k];
        t.comp[f].at(i, j) += cf / Rat(model.metric[f][i]);
        t.comp[f].at(j, i) -= cf / Rat(model.metric[f][j]);
      }
    }
    return t;
  }

  std::vector<Rat> vec_of(const SkewTriple& t) const {
    int mm = int(pairs.size());
    std::vector<Rat> v(3 * mm, Rat(0));
    for (int f = 0; f < 3; ++f)
      for (int k = 0; k < mm; ++k) {
        auto [i, j] = pairs[k];
        v[f * mm + k] = Rat(model.metric[f][i]) * t.comp[f].at(i, j);
      }
    return v;
  }

  // Coordinates in the stored basis. The kernel basis is in echelon-pivot
  // form, so the coordinates are simply the entries at the free columns;
  // membership is then verified by exact reconstruction.
  std::vector<Rat> coords(const SkewTriple& t) const {
    std::vector<Rat> v = vec_of(t);
    std::vector<Rat> co(dim, Rat(0));
    for (int k = 0; k < dim; ++k) co[k] = v[free_cols[k]];
    std::vector<Rat> check(v.size(), Rat(0));
    for (int k = 0; k < dim; ++k) {
      if (co[k] == 0) continue;
      for (size_t t2 = 0; t2 < v.size(); ++t2) check[t2] += co[k] * basis_vecs[k][t2];
    }
    if (check != v)
      throw std::invalid_argument("triple is not in the triality algebra span");
    return co;
  }
};

inline TrialityAlgebra triality_algebra(const TrialityModel& m) {
  TrialityAlgebra t;
  t.model = m;
  t.pairs = so_pairs(m.n);
  Mat C = constraint_operator(m);
  t.basis_vecs = kernel_basis(C);
  t.free_cols = free_columns(C);
  t.dim = int(t.basis_vecs.size());
  for (const auto& v : t.basis_vecs) t.basis.push_back(t.triple_of(v));
  // metric-skewness of every component: (g p)^T = -(g p)
  for (const SkewTriple& st : t.basis)
    for (int f = 0; f < 3; ++f) {
      Mat gp = m.metric_mat(f) * st.comp[f];
      if (!(gp + gp.transpose()).is_zero())
        throw std::runtime_error("triality algebra basis component not metric-skew");
    }
  t.gram = Mat(t.dim, t.dim);
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) {
      Rat s = 0;
      for (int f = 0; f < 3; ++f) s += trace(t.basis[i].comp[f] * t.basis[j].comp[f]);
      t.gram.at(i, j) = s;
    }
  return t;
}

// Componentwise commutator; closure (exact expressibility in the stored
// basis) is part of the contract and checked on every call.
inline SkewTriple t_bracket(const TrialityAlgebra& t, const SkewTriple& u,
                            const SkewTriple& v) {
  t.coords(u);
  t.coords(v);
  SkewTriple r;
  for (int f = 0; f < 3; ++f) r.comp[f] = commutator(u.comp[f], v.comp[f]);
  t.coords(r);  // throws if the bracket left the span
  return r;
}

// Decomposition of t into minimal ideals, as lists of coordinate vectors in
// the stored basis. Used by the per-ideal calibration fallback. The abelian
// case (n=2) has no simple ideals and is kept as one block; dimensions above
// twelve can only be so(8), which is simple, so they are one block too and
// the centroid computation is skipped.
inline std::vector<std::vector<std::vector<Rat>>> ideal_decomposition(
    const TrialityAlgebra& t) {
  int d = t.dim;
  std::vector<std::vector<std::vector<Rat>>> blocks;
  if (d == 0) return blocks;
  auto whole = [&]() {
    std::vector<std::vector<Rat>> b;
    for (int i = 0; i < d; ++i) {
      std::vector<Rat> v(d, Rat(0));
      v[i] = 1;
      b.push_back(v);
    }
    blocks.push_back(b);
    return blocks;
  };
  if (d > 12) return whole();

  // adjoint matrices in t coordinates
  std::vector<Mat> ad(d, Mat(d, d));
  bool any_nonzero = false;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      SkewTriple br;
      for (int f = 0; f < 3; ++f)
        br.comp[f] = commutator(t.basis[i].comp[f], t.basis[j].comp[f]);
      std::vector<Rat> co = t.coords(br);
      for (int k = 0; k < d; ++k) {
        ad[i].at(k, j) = co[k];
        if (co[k] != 0) any_nonzero = true;
      }
    }
  if (!any_nonzero) return whole();  // abelian

  // centroid: all X with X ad_i = ad_i X; row per (i, r, c), column per X entry
  Mat sys(d * d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        int row = (i * d + r) * d + c;
        for (int k = 0; k < d; ++k) {
          if (ad[i].at(k, c) != 0) sys.at(row, r * d + k) += ad[i].at(k, c);
          if (ad[i].at(r, k) != 0) sys.at(row, k * d + c) -= ad[i].at(r, k);
        }
      }
  std::vector<std::vector<Rat>> cent = kernel_basis(sys);
  int k = int(cent.size());
  if (k <= 1) return whole();

  // generic centroid element; its rational eigenspaces are the ideals
  for (int attempt = 0; attempt < 2; ++attempt) {
    Mat theta(d, d);
    for (int r = 0; r < k; ++r) {
      long w = attempt == 0 ? r + 1 : (r + 1) * (r + 1) + 1;
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) theta.at(x, y) += Rat(w) * cent[r][x * d + y];
    }
    // minimal polynomial by first linear dependence among powers of theta
    std::vector<Mat> pows = {Mat::identity(d)};
    std::vector<Rat> minpoly;  // c_0 + c_1 x + ... + x^deg
    for (int deg = 1; deg <= k; ++deg) {
      pows.push_back(pows.back() * theta);
      Mat dep(d * d, deg);
      for (int p = 0; p < deg; ++p)
        for (int x = 0; x < d; ++x)
          for (int y = 0; y < d; ++y) dep.at(x * d + y, p) = pows[p].at(x, y);
      std::vector<Rat> rhs(d * d);
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) rhs[x * d + y] = -pows[deg].at(x, y);
      if (auto sol = solve(dep, rhs)) {
        minpoly = *sol;
        minpoly.push_back(Rat(1));
        break;
      }
    }
    if (minpoly.empty()) continue;
    int deg = int(minpoly.size()) - 1;
    // rational roots: clear denominators, trial-divide divisor candidates
    mpz_class lcm = 1;
    for (const Rat& c : minpoly)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ip;
    for (const Rat& c : minpoly) {
      Rat scaled = c * Rat(lcm);
      ip.push_back(scaled.get_num());
    }
    auto eval = [&](const Rat& x) {
      Rat s = 0, p = 1;
      for (const Rat& c : minpoly) { s += c * p; p *= x; }
      return s;
    };
    auto divisors = [](const mpz_class& m) {
      std::vector<mpz_class> ds;
      for (mpz_class p = 1; p * p <= m; ++p)
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
          ds.push_back(p);
          if (p * p != m) ds.push_back(m / p);
        }
      return ds;
    };
    std::vector<Rat> roots;
    if (eval(Rat(0)) == 0) roots.push_back(Rat(0));
    mpz_class a0 = 0, alead = abs(ip.back());
    for (const mpz_class& c : ip)
      if (c != 0) { a0 = abs(c); break; }
    for (const mpz_class& p : divisors(a0))
      for (const mpz_class& q : divisors(alead))
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          Rat cand(sgn < 0 ? mpz_class(-p) : p, q);
          cand.canonicalize();
          if (eval(cand) == 0) {
            bool seen = false;
            for (const Rat& r : roots) seen |= r == cand;
            if (!seen) roots.push_back(cand);
          }
        }
    if (int(roots.size()) != deg) continue;  // not split over Q with this theta
    // eigenspace per root
    blocks.clear();
    int total = 0;
    bool ok = true;
    for (const Rat& lam : roots) {
      Mat M = theta;
      for (int x = 0; x < d; ++x) M.at(x, x) -= lam;
      std::vector<std::vector<Rat>> ker = kernel_basis(M);
      if (ker.empty()) { ok = false; break; }
      total += int(ker.size());
      blocks.push_back(ker);
    }
    if (!ok || total != d) continue;
    // each block must be an ideal: ad_i maps it into itself
    for (const auto& blk : blocks) {
      Mat B(d, int(blk.size()));
      for (size_t c2 = 0; c2 < blk.size(); ++c2)
        for (int x = 0; x < d; ++x) B.at(x, int(c2)) = blk[c2][x];
      for (int i = 0; i < d && ok; ++i)
        for (size_t c2 = 0; c2 < blk.size() && ok; ++c2) {
          std::vector<Rat> img(d, Rat(0));
          for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
              if (ad[i].at(x, y) != 0 && blk[c2][y] != 0)
                img[x] += ad[i].at(x, y) * blk[c2][y];
          if (!solve(B, img)) ok = false;
        }
    }
    if (ok) return blocks;
  }
  throw std::runtime_error("ideal decomposition failed: centroid not split over Q");
}

// (image dim, kernel dim) of the projection of t onto each so factor.
inline std::array<std::pair<int, int>, 3> projection_profile(const TrialityAlgebra& t) {
  std::array<std::pair<int, int>, 3> out;
  int mm = int(t.pairs.size());
  for (int f = 0; f < 3; ++f) {
    Mat P(t.dim, mm);
    for (int i = 0; i < t.dim; ++i)
      for (int k = 0; k < mm; ++k) P.at(i, k) = t.basis_vecs[i][f * mm + k];
    int r = rank(P);
    out[f] = {r, t.dim - r};
  }
  return out;
}

}  // namespace tri
