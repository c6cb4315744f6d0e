#pragma once

// Lie algebra assembly for a pair of triality models: t(up) + t(low) acting
// on three hom sectors W_s = V_s x V'_{s+1}, with the W.W -> t component fixed
// by trace adjointness up to one scalar per side. The scalars are calibrated
// by solving the linear system that the Jacobi identity imposes; if the two
// global scalars do not give a unique solution the same machinery re-runs
// with one scalar per minimal ideal of each t.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tri/identities.hpp"
#include "tri/matrix.hpp"
#include "tri/models.hpp"
#include "tri/rational.hpp"
#include "tri/trialg.hpp"

namespace tri {

// Product V_s x V_{s+1} -> V_{s+2} on basis vectors e_i, e_j, as a sparse
// list of (component, coefficient). Indices are slot-local.
inline std::vector<std::pair<int, Rat>> basis_product(const TrialityModel& m,
                                                      int s, int i, int j) {
  std::vector<std::pair<int, Rat>> out;
  for (int c = 0; c < m.n; ++c) {
    int t = 0;
    switch (s) {
      case 0: t = m.tval(i, j, c); break;          // V1 x V2 -> V3
      case 1: t = m.tval(c, i, j); break;          // V2 x V3 -> V1
      case 2: t = m.tval(j, c, i); break;          // V3 x V1 -> V2
      default: throw std::invalid_argument("basis_product: slot");
    }
    if (t != 0) out.emplace_back(c, Rat(t, m.metric[(s + 2) % 3][c]));
  }
  for (auto& e : out) e.second.canonicalize();
  return out;
}

namespace detail {

// Coefficient affine in the calibration unknowns: a0 + sum u_m x_m + sum l_m y_m.
struct AffCoef {
  Rat a0;
  std::vector<std::pair<int, Rat>> u, l;  // (block index, coefficient)
  bool numeric() const { return u.empty() && l.empty(); }
};

inline void aff_add(AffCoef& dst, const AffCoef& src, const Rat& scale) {
  dst.a0 += src.a0 * scale;
  for (const auto& [m, c] : src.u) {
    bool hit = false;
    for (auto& [m2, c2] : dst.u)
      if (m2 == m) { c2 += c * scale; hit = true; }
    if (!hit) dst.u.emplace_back(m, c * scale);
  }
  for (const auto& [m, c] : src.l) {
    bool hit = false;
    for (auto& [m2, c2] : dst.l)
      if (m2 == m) { c2 += c * scale; hit = true; }
    if (!hit) dst.l.emplace_back(m, c * scale);
  }
}

}  // namespace detail

struct Calibration {
  std::vector<Rat> up, low;      // one scalar per block
  bool per_ideal_up = false;
  bool per_ideal_low = false;
  Rat bracket_scale = 1;         // scale of the W pairing used in adjointness
  Rat c_up() const { return up.empty() ? Rat(0) : up[0]; }
  Rat c_low() const { return low.empty() ? Rat(0) : low[0]; }
};

struct LieAlgebra {
  TrialityModel up_model, low_model;
  TrialityAlgebra up, low;
  int n = 0, np = 0;            // model dimensions
  int du = 0, dl = 0;           // t sector dimensions
  int wdim = 0, dim = 0;
  int off_tu = 0, off_tl = 0;
  std::array<int, 3> off_w{};
  std::string family;           // compact / split / mixed
  Calibration scalars;

  // structure table, pairs i<j only, rows sorted by target index
  std::vector<std::vector<std::pair<int, Rat>>> table;

  // integer mirror: entry value = int / denom (valid when has_int)
  bool has_int = false;
  long long denom = 1;
  std::vector<std::vector<std::pair<int, long long>>> itable;

  int pid(int i, int j) const {  // requires i < j
    return i * (2 * dim - i - 1) / 2 + (j - i - 1);
  }
  int widx(int s, int a, int b) const { return off_w[s] + a * np + b; }

  // sector of an index: 0 = t_up, 1 = t_low, 2 + s = W_s
  int sector_of(int idx) const {
    if (idx < du) return 0;
    if (idx < du + dl) return 1;
    return 2 + (idx - du - dl) / (n * np);
  }

  std::string label(int idx) const {
    int s = sector_of(idx);
    if (s == 0) return "t_up[" + std::to_string(idx) + "]";
    if (s == 1) return "t_low[" + std::to_string(idx - off_tl) + "]";
    int r = idx - off_w[s - 2];
    return "W" + std::to_string(s - 1) + "(" + std::to_string(r / np) + "," +
           std::to_string(r % np) + ")";
  }

  const std::vector<std::pair<int, Rat>>& row(int i, int j) const {
    return table[pid(i, j)];
  }

  // [e_i, e_j] for any order, as a sparse vector
  std::vector<std::pair<int, Rat>> bracket(int i, int j) const {
    if (i == j) return {};
    if (i < j) return table[pid(i, j)];
    auto out = table[pid(j, i)];
    for (auto& e : out) e.second = -e.second;
    return out;
  }

  // diagonal entry of the W_s pairing at local index (a, b)
  Rat w_metric(int s, int a, int b) const {
    return Rat(up_model.metric[s][a] * low_model.metric[(s + 1) % 3][b]) *
           scalars.bracket_scale;
  }
};

// Dense adjoint matrix of a coordinate vector: column j = [v, e_j].
inline Mat ad_matrix(const LieAlgebra& L, const std::vector<Rat>& v) {
  if (int(v.size()) != L.dim) throw std::invalid_argument("ad_matrix: size");
  Mat A(L.dim, L.dim);
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j) {
      const auto& r = L.table[L.pid(i, j)];
      if (r.empty()) continue;
      for (const auto& [k, c] : r) {
        if (v[i] != 0) A.at(k, j) += v[i] * c;
        if (v[j] != 0) A.at(k, i) -= v[j] * c;
      }
    }
  return A;
}

namespace detail {

struct MagicBuilder {
  const TrialityModel& um;
  const TrialityModel& lm;
  Rat w_scale;
  bool force_per_ideal;

  TrialityAlgebra up, low;
  int n, np, du, dl, wdim, N;
  int off_tl;
  std::array<int, 3> off_w{};
  std::vector<std::vector<std::vector<Rat>>> blocks_up, blocks_low;
  std::vector<Mat> proj_up, proj_low;  // per-block projectors in t coords
  Mat gram_up_inv, gram_low_inv;
  std::vector<std::map<int, AffCoef>> aff;  // per pair i<j

  MagicBuilder(const TrialityModel& u, const TrialityModel& l, const Rat& ws,
               bool fpi)
      : um(u), lm(l), w_scale(ws), force_per_ideal(fpi),
        up(triality_algebra(u)), low(triality_algebra(l)) {
    n = um.n;
    np = lm.n;
    du = up.dim;
    dl = low.dim;
    wdim = 3 * n * np;
    N = du + dl + wdim;
    off_tl = du;
    for (int s = 0; s < 3; ++s) off_w[s] = du + dl + s * n * np;
    aff.assign(size_t(N) * (N - 1) / 2, {});
    if (du > 0) {
      auto gi = inverse(up.gram);
      if (!gi) throw std::runtime_error("degenerate trace form on t_up");
      gram_up_inv = *gi;
    }
    if (dl > 0) {
      auto gi = inverse(low.gram);
      if (!gi) throw std::runtime_error("degenerate trace form on t_low");
      gram_low_inv = *gi;
    }
    set_blocks();
  }

  void set_blocks() {
    auto single = [](int d) {
      std::vector<std::vector<std::vector<Rat>>> b;
      if (d == 0) return b;
      std::vector<std::vector<Rat>> blk;
      for (int i = 0; i < d; ++i) {
        std::vector<Rat> v(d, Rat(0));
        v[i] = 1;
        blk.push_back(v);
      }
      b.push_back(blk);
      return b;
    };
    if (force_per_ideal) {
      blocks_up = ideal_decomposition(up);
      blocks_low = ideal_decomposition(low);
    } else {
      blocks_up = single(du);
      blocks_low = single(dl);
    }
    proj_up = projectors(blocks_up, up.gram, du);
    proj_low = projectors(blocks_low, low.gram, dl);
  }

  // gram-orthogonal projector onto each block
  static std::vector<Mat> projectors(
      const std::vector<std::vector<std::vector<Rat>>>& blocks, const Mat& gram,
      int d) {
    std::vector<Mat> out;
    if (blocks.size() == 1) {
      out.push_back(Mat::identity(d));
      return out;
    }
    for (const auto& blk : blocks) {
      int m = int(blk.size());
      Mat B(d, m);
      for (int c = 0; c < m; ++c)
        for (int r = 0; r < d; ++r) B.at(r, c) = blk[c][r];
      Mat Bt = B.transpose();
      Mat S = Bt * gram * B;
      auto Si = inverse(S);
      if (!Si) throw std::runtime_error("ideal block degenerate under trace form");
      out.push_back(B * (*Si) * Bt * gram);
    }
    return out;
  }

  int pid(int i, int j) const { return i * (2 * N - i - 1) / 2 + (j - i - 1); }
  int widx(int s, int a, int b) const { return off_w[s] + a * np + b; }

  void add(int i, int j, int k, const Rat& c) {
    if (c == 0) return;
    if (i == j) throw std::logic_error("diagonal bracket entry");
    if (i > j) { add(j, i, k, -c); return; }
    aff[pid(i, j)][k].a0 += c;
  }
  void add_aff(int i, int j, int k, const AffCoef& c) {
    if (i > j) {
      AffCoef neg;
      aff_add(neg, c, Rat(-1));
      add_aff(j, i, k, neg);
      return;
    }
    aff_add(aff[pid(i, j)][k], c, Rat(1));
  }

  void build_table() {
    // [t, t]: componentwise commutators, zero across the two copies
    for (int i = 0; i < du; ++i)
      for (int j = i + 1; j < du; ++j) {
        SkewTriple br;
        for (int f = 0; f < 3; ++f)
          br.comp[f] = commutator(up.basis[i].comp[f], up.basis[j].comp[f]);
        std::vector<Rat> co = up.coords(br);
        for (int k = 0; k < du; ++k) add(i, j, k, co[k]);
      }
    for (int i = 0; i < dl; ++i)
      for (int j = i + 1; j < dl; ++j) {
        SkewTriple br;
        for (int f = 0; f < 3; ++f)
          br.comp[f] = commutator(low.basis[i].comp[f], low.basis[j].comp[f]);
        std::vector<Rat> co = low.coords(br);
        for (int k = 0; k < dl; ++k) add(off_tl + i, off_tl + j, off_tl + k, co[k]);
      }

    // [t, W]: t_up acts on the upper leg in slot s, t_low on the lower leg
    // in slot s+1
    for (int s = 0; s < 3; ++s) {
      for (int i = 0; i < du; ++i) {
        const Mat& P = up.basis[i].comp[s];
        for (int a = 0; a < n; ++a)
          for (int al = 0; al < n; ++al) {
            if (P.at(al, a) == 0) continue;
            for (int b = 0; b < np; ++b)
              add(i, widx(s, a, b), widx(s, al, b), P.at(al, a));
          }
      }
      for (int i = 0; i < dl; ++i) {
        const Mat& P = low.basis[i].comp[(s + 1) % 3];
        for (int b = 0; b < np; ++b)
          for (int be = 0; be < np; ++be) {
            if (P.at(be, b) == 0) continue;
            for (int a = 0; a < n; ++a)
              add(off_tl + i, widx(s, a, b), widx(s, a, be), P.at(be, b));
          }
      }
    }

    // [W_s, W_{s+1}] -> W_{s+2}: triality products on both legs
    for (int s = 0; s < 3; ++s) {
      int t = (s + 1) % 3, r = (s + 2) % 3;
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          auto pu = basis_product(um, s, a, c);
          if (pu.empty()) continue;
          for (int b = 0; b < np; ++b)
            for (int d = 0; d < np; ++d) {
              auto pl = basis_product(lm, (s + 1) % 3, b, d);
              for (const auto& [ua, cu] : pu)
                for (const auto& [lb, cl] : pl)
                  add(widx(s, a, b), widx(t, c, d), widx(r, ua, lb), cu * cl);
            }
        }
    }

    // [W_s, W_s] -> t: adjointness against the trace form, one unknown
    // scalar per block and side
    for (int s = 0; s < 3; ++s) {
      int sl = (s + 1) % 3;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < np; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < np; ++d) {
              int i = widx(s, a, b), j = widx(s, c, d);
              if (i >= j) continue;
              if (du > 0 && b == d) {
                std::vector<Rat> v(du, Rat(0));
                bool nz = false;
                for (int kk = 0; kk < du; ++kk) {
                  const Rat& p = up.basis[kk].comp[s].at(c, a);
                  if (p == 0) continue;
                  v[kk] = Rat(um.metric[s][c] * lm.metric[sl][b]) * p * w_scale;
                  nz = true;
                }
                if (nz) emit_phi(i, j, v, true);
              }
              if (dl > 0 && a == c) {
                std::vector<Rat> v(dl, Rat(0));
                bool nz = false;
                for (int kk = 0; kk < dl; ++kk) {
                  const Rat& p = low.basis[kk].comp[sl].at(d, b);
                  if (p == 0) continue;
                  v[kk] = Rat(um.metric[s][a] * lm.metric[sl][d]) * p * w_scale;
                  nz = true;
                }
                if (nz) emit_phi(i, j, v, false);
              }
            }
    }
  }

  void emit_phi(int i, int j, const std::vector<Rat>& v, bool upper) {
    const Mat& gi = upper ? gram_up_inv : gram_low_inv;
    const auto& projs = upper ? proj_up : proj_low;
    int d = upper ? du : dl;
    int off = upper ? 0 : off_tl;
    std::vector<Rat> phi(d, Rat(0));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        if (gi.at(r, c) != 0 && v[c] != 0) phi[r] += gi.at(r, c) * v[c];
    for (int m = 0; m < int(projs.size()); ++m) {
      std::vector<Rat> pm(d, Rat(0));
      if (projs.size() == 1) {
        pm = phi;
      } else {
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            if (projs[m].at(r, c) != 0 && phi[c] != 0)
              pm[r] += projs[m].at(r, c) * phi[c];
      }
      for (int k = 0; k < d; ++k) {
        if (pm[k] == 0) continue;
        AffCoef c;
        if (upper)
          c.u.emplace_back(m, pm[k]);
        else
          c.l.emplace_back(m, pm[k]);
        add_aff(i, j, off + k, c);
      }
    }
  }

  // affine bracket of basis pair, any order
  std::map<int, AffCoef> abracket(int i, int j) const {
    std::map<int, AffCoef> out;
    if (i == j) return out;
    int sg = 1;
    if (i > j) { std::swap(i, j); sg = -1; }
    for (const auto& [k, c] : aff[pid(i, j)]) {
      AffCoef e;
      aff_add(e, c, Rat(sg));
      out[k] = e;
    }
    return out;
  }

  // Jacobiator of a basis triple as affine coefficients. Quadratic terms
  // must not arise for the triples harvested here.
  std::map<int, AffCoef> jacobiator(int i, int j, int k) const {
    std::map<int, AffCoef> res;
    auto accumulate = [&](int x, const std::map<int, AffCoef>& inner, int sg) {
      for (const auto& [m, cm] : inner) {
        auto outer = abracket(x, m);
        for (const auto& [t, ct] : outer) {
          if (!cm.numeric() && !ct.numeric())
            throw std::logic_error("quadratic term in calibration triple");
          AffCoef& dst = res[t];
          if (cm.numeric()) {
            aff_add(dst, ct, Rat(sg) * cm.a0);
          } else {
            aff_add(dst, cm, Rat(sg) * ct.a0);
          }
        }
      }
    };
    accumulate(i, abracket(j, k), 1);
    accumulate(j, abracket(k, i), 1);
    accumulate(k, abracket(i, j), 1);
    return res;
  }

  // Solve the linear system the Jacobi identity imposes on the unknowns.
  // Enumeration stops once the system pins every unknown (with a safety
  // margin of extra equations); any residual inconsistency would be caught
  // by the full Jacobi verification afterwards.
  std::pair<std::vector<Rat>, std::vector<Rat>> calibrate() const {
    int ku = du > 0 ? int(blocks_up.size()) : 0;
    int kl = dl > 0 ? int(blocks_low.size()) : 0;
    int nu = ku + kl;
    if (nu == 0) return {{}, {}};
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    int margin = 0;
    int cur_rank = 0;
    auto current_rank = [&]() {
      Mat M(int(rows.size()), nu);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < nu; ++c) M.at(int(r), c) = rows[r][c];
      return rank(M);
    };
    auto done = [&]() { return cur_rank == nu && margin >= 64; };
    auto harvest = [&](int i, int j, int k) {
      auto J = jacobiator(i, j, k);
      for (const auto& [tgt, c] : J) {
        (void)tgt;
        if (c.numeric() && c.a0 == 0) continue;
        std::vector<Rat> r(nu, Rat(0));
        for (const auto& [m, cf] : c.u) r[m] += cf;
        for (const auto& [m, cf] : c.l) r[ku + m] += cf;
        bool zero = true;
        for (const Rat& x : r) zero &= x == 0;
        if (zero && c.a0 != 0)
          throw std::runtime_error("calibration: unsatisfiable constant equation");
        if (zero) continue;
        if (cur_rank == nu) { ++margin; }
        rows.push_back(r);
        rhs.push_back(-c.a0);
        if (cur_rank < nu) cur_rank = current_rank();
      }
    };
    int w = n * np;
    // same-sector pairs bracketed against another sector, plus fully mixed
    // triples
    for (int s = 0; s < 3 && !done(); ++s)
      for (int dt = 1; dt <= 2 && !done(); ++dt) {
        int t = (s + dt) % 3;
        for (int a = 0; a < w && !done(); ++a)
          for (int b = a + 1; b < w && !done(); ++b)
            for (int c = 0; c < w && !done(); ++c)
              harvest(off_w[s] + a, off_w[s] + b, off_w[t] + c);
      }
    for (int a = 0; a < w && !done(); ++a)
      for (int b = 0; b < w && !done(); ++b)
        for (int c = 0; c < w && !done(); ++c)
          harvest(off_w[0] + a, off_w[1] + b, off_w[2] + c);

    if (rows.empty())
      return {std::vector<Rat>(ku, Rat(0)), std::vector<Rat>(kl, Rat(0))};
    if (cur_rank != nu)
      throw std::runtime_error("calibration system underdetermined");
    Mat M(int(rows.size()), nu);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < nu; ++c) M.at(int(r), c) = rows[r][c];
    auto sol = solve(M, rhs);
    if (!sol) throw std::runtime_error("calibration system inconsistent");
    std::vector<Rat> cu(sol->begin(), sol->begin() + ku);
    std::vector<Rat> cl(sol->begin() + ku, sol->end());
    return {cu, cl};
  }

  LieAlgebra finish(const std::vector<Rat>& cu, const std::vector<Rat>& cl) {
    LieAlgebra L;
    L.up_model = um;
    L.low_model = lm;
    L.up = up;
    L.low = low;
    L.n = n;
    L.np = np;
    L.du = du;
    L.dl = dl;
    L.wdim = wdim;
    L.dim = N;
    L.off_tl = off_tl;
    L.off_w = off_w;
    if (um.family == lm.family)
      L.family = um.family;
    else
      L.family = "mixed";
    L.scalars.up = cu;
    L.scalars.low = cl;
    L.scalars.per_ideal_up = blocks_up.size() > 1;
    L.scalars.per_ideal_low = blocks_low.size() > 1;
    L.scalars.bracket_scale = w_scale;
    L.table.assign(aff.size(), {});
    for (size_t p = 0; p < aff.size(); ++p) {
      for (const auto& [k, c] : aff[p]) {
        Rat v = c.a0;
        for (const auto& [m, cf] : c.u) v += cf * cu[m];
        for (const auto& [m, cf] : c.l) v += cf * cl[m];
        if (v != 0) L.table[p].emplace_back(k, v);
      }
    }
    attach_int_table(L);
    return L;
  }

  // Integer mirror of the table; bounds keep every downstream int64
  // accumulation far from overflow.
  static void attach_int_table(LieAlgebra& L) {
    long long D = 1;
    const long long DCAP = 10000, ECAP = 1000000;
    for (const auto& r : L.table)
      for (const auto& [k, c] : r) {
        (void)k;
        if (!c.get_den().fits_slong_p()) return;
        long long d = c.get_den().get_si();
        D = std::lcm(D, d);
        if (D > DCAP) return;
      }
    std::vector<std::vector<std::pair<int, long long>>> it(L.table.size());
    for (size_t p = 0; p < L.table.size(); ++p)
      for (const auto& [k, c] : L.table[p]) {
        Rat scaled = c * Rat(long(D));
        if (!scaled.get_num().fits_slong_p()) return;
        long long v = scaled.get_num().get_si();
        if (v > ECAP || v < -ECAP) return;
        it[p].emplace_back(k, v);
      }
    L.denom = D;
    L.itable = std::move(it);
    L.has_int = true;
  }
};

}  // namespace detail

inline LieAlgebra build_algebra(const TrialityModel& up, const TrialityModel& low,
                                const Rat& w_metric_scale = Rat(1),
                                bool force_per_ideal = false) {
  detail::MagicBuilder b(up, low, w_metric_scale, force_per_ideal);
  b.build_table();
  try {
    auto [cu, cl] = b.calibrate();
    return b.finish(cu, cl);
  } catch (const std::runtime_error&) {
    if (force_per_ideal) throw;
  }
  // global two-scalar calibration failed: one scalar per minimal ideal
  detail::MagicBuilder b2(up, low, w_metric_scale, true);
  b2.build_table();
  auto [cu, cl] = b2.calibrate();
  return b2.finish(cu, cl);
}

// Global calibration scalars (c_up, c_low) for a pair of models.
inline std::pair<Rat, Rat> calibrate_scalars(const TrialityModel& up,
                                             const TrialityModel& low) {
  LieAlgebra L = build_algebra(up, low);
  if (L.scalars.per_ideal_up || L.scalars.per_ideal_low)
    throw std::runtime_error("calibration needed per-ideal scalars");
  return {L.scalars.c_up(), L.scalars.c_low()};
}

// Full Jacobi identity over all basis triples i < j < k.
inline IdentityReport verify_jacobi(const LieAlgebra& L) {
  IdentityReport rep;
  rep.subject = "jacobi(" + L.up_model.name + "," + L.low_model.name + ")";
  IdentityCheck chk;
  chk.name = "jacobi";
  chk.pass = true;
  chk.residual = 0;
  int N = L.dim;

  if (L.has_int) {
    // per-index sparse rows of ad: ad_rows[i] = list of (j, k, val)
    std::vector<std::vector<std::array<long long, 3>>> ad_rows(N);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        for (const auto& [k, v] : L.itable[L.pid(i, j)]) {
          ad_rows[i].push_back({(long long)j, (long long)k, v});
          ad_rows[j].push_back({(long long)i, (long long)k, -v});
        }
    std::vector<std::vector<std::pair<int, long long>>> by_pair(L.itable.size());
    std::vector<long long> acc(N, 0);
    std::vector<int> touched;
    touched.reserve(64);
    auto apply = [&](int x, const std::vector<std::pair<int, long long>>& v,
                     long long sg) {
      // acc += sg * [e_x, v]
      for (const auto& [m, c] : v) {
        if (m == x) continue;
        const auto& r = x < m ? L.itable[L.pid(x, m)] : L.itable[L.pid(m, x)];
        long long s2 = x < m ? sg : -sg;
        for (const auto& [k, w] : r) {
          if (acc[k] == 0) touched.push_back(k);
          acc[k] += s2 * c * w;
        }
      }
    };
    for (int i = 0; i < N && chk.pass; ++i)
      for (int j = i + 1; j < N && chk.pass; ++j) {
        const auto& rij = L.itable[L.pid(i, j)];
        for (int k = j + 1; k < N; ++k) {
          touched.clear();
          apply(i, L.itable[L.pid(j, k)], 1);
          apply(j, L.itable[L.pid(i, k)], -1);
          apply(k, rij, 1);
          bool bad = false;
          for (int t : touched)
            if (acc[t] != 0) bad = true;
          if (bad) {
            chk.pass = false;
            long long worst = 0;
            for (int t : touched)
              worst = std::max(worst, acc[t] < 0 ? -acc[t] : acc[t]);
            Rat res = Rat(long(worst)) / (Rat(long(L.denom)) * Rat(long(L.denom)));
            chk.residual = res;
            chk.witness = "(" + L.label(i) + ", " + L.label(j) + ", " + L.label(k) + ")";
            for (int t : touched) acc[t] = 0;
            break;
          }
          for (int t : touched) acc[t] = 0;
        }
      }
  } else {
    std::vector<Rat> acc(N, Rat(0));
    std::vector<int> touched;
    auto apply = [&](int x, const std::vector<std::pair<int, Rat>>& v, int sg) {
      for (const auto& [m, c] : v) {
        if (m == x) continue;
        const auto& r = x < m ? L.table[L.pid(x, m)] : L.table[L.pid(m, x)];
        int s2 = x < m ? sg : -sg;
        for (const auto& [k, w] : r) {
          if (acc[k] == 0) touched.push_back(k);
          acc[k] += Rat(s2) * c * w;
        }
      }
    };
    for (int i = 0; i < N && chk.pass; ++i)
      for (int j = i + 1; j < N && chk.pass; ++j)
        for (int k = j + 1; k < N; ++k) {
          touched.clear();
          apply(i, L.bracket(j, k), 1);
          apply(j, L.bracket(i, k), -1);
          apply(k, L.bracket(i, j), 1);
          Rat worst = 0;
          for (int t : touched) worst = std::max(worst, rat_abs(acc[t]));
          if (worst != 0) {
            chk.pass = false;
            chk.residual = worst;
            chk.witness = "(" + L.label(i) + ", " + L.label(j) + ", " + L.label(k) + ")";
          }
          for (int t : touched) acc[t] = 0;
          if (!chk.pass) break;
        }
  }
  rep.checks.push_back(chk);
  return rep;
}

// Killing form B(e_i, e_j) = tr(ad e_i . ad e_j).
inline Mat killing_form(const LieAlgebra& L) {
  int N = L.dim;
  Mat B(N, N);
  if (L.has_int) {
    std::vector<std::vector<std::array<long long, 3>>> ad_rows(N);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        for (const auto& [k, v] : L.itable[L.pid(i, j)]) {
          ad_rows[i].push_back({(long long)j, (long long)k, v});
          ad_rows[j].push_back({(long long)i, (long long)k, -v});
        }
    std::vector<long long> dense(size_t(N) * N);
    Rat den = Rat(1) / (Rat(long(L.denom)) * Rat(long(L.denom)));
    for (int i = 0; i < N; ++i) {
      std::fill(dense.begin(), dense.end(), 0);
      for (const auto& e : ad_rows[i]) dense[size_t(e[1]) * N + e[0]] = e[2];
      for (int j = i; j < N; ++j) {
        long long s = 0;
        // B_ij = sum_k,l c_{ik}^l c_{jl}^k with c_{jl}^k from ad_rows[j]
        for (const auto& e : ad_rows[j]) s += e[2] * dense[size_t(e[0]) * N + e[1]];
        if (s != 0) {
          Rat v = Rat(long(s)) * den;
          B.at(i, j) = v;
          if (j != i) B.at(j, i) = v;
        }
      }
    }
  } else {
    std::vector<Mat> ad(N, Mat(N, N));
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        for (const auto& [k, v] : L.table[L.pid(i, j)]) {
          ad[i].at(k, j) += v;
          ad[j].at(k, i) -= v;
        }
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        Rat s = trace(ad[i] * ad[j]);
        B.at(i, j) = s;
        if (j != i) B.at(j, i) = s;
      }
  }
  return B;
}

struct KillingStructure {
  IdentityReport report;
  Rat lambda;        // W block = lambda x (product pairing)
  Rat det_t_up, det_t_low;
  bool nondegenerate = false;
};

// Block structure of the Killing form: the five sectors are mutually
// orthogonal, each W block is a common multiple lambda of the product
// pairing, and the whole form is nondegenerate.
inline KillingStructure verify_killing_structure(const LieAlgebra& L, const Mat& B) {
  KillingStructure out;
  out.report.subject = "killing(" + L.up_model.name + "," + L.low_model.name + ")";
  int N = L.dim;

  IdentityCheck blk;
  blk.name = "block_orthogonal";
  blk.pass = true;
  blk.residual = 0;
  for (int i = 0; i < N && blk.pass; ++i)
    for (int j = 0; j < N; ++j)
      if (L.sector_of(i) != L.sector_of(j) && B.at(i, j) != 0) {
        blk.pass = false;
        blk.residual = rat_abs(B.at(i, j));
        blk.witness = "(" + L.label(i) + ", " + L.label(j) + ")";
        break;
      }
  out.report.checks.push_back(blk);

  IdentityCheck lam;
  lam.name = "w_block_scalar";
  lam.pass = true;
  lam.residual = 0;
  bool have = false;
  if (L.wdim > 0) {
    for (int s = 0; s < 3 && lam.pass; ++s)
      for (int a = 0; a < L.n && lam.pass; ++a)
        for (int b = 0; b < L.np && lam.pass; ++b) {
          int i = L.widx(s, a, b);
          for (int c = 0; c < L.n && lam.pass; ++c)
            for (int d = 0; d < L.np; ++d) {
              int j = L.widx(s, c, d);
              Rat expect = (a == c && b == d) ? out.lambda * L.w_metric(s, a, b) : Rat(0);
              if (!have && i == j) {
                out.lambda = B.at(i, j) / L.w_metric(s, a, b);
                have = true;
                continue;
              }
              if (B.at(i, j) != expect) {
                lam.pass = false;
                lam.residual = rat_abs(B.at(i, j) - expect);
                lam.witness = "(" + L.label(i) + ", " + L.label(j) + ")";
                break;
              }
            }
        }
    if (have && out.lambda == 0) {
      lam.pass = false;
      lam.residual = 0;
      lam.witness = "lambda = 0";
    }
  }
  out.report.checks.push_back(lam);

  IdentityCheck nd;
  nd.name = "nondegenerate";
  nd.residual = 0;
  {
    Mat Bu(L.du, L.du), Bl(L.dl, L.dl);
    for (int i = 0; i < L.du; ++i)
      for (int j = 0; j < L.du; ++j) Bu.at(i, j) = B.at(i, j);
    for (int i = 0; i < L.dl; ++i)
      for (int j = 0; j < L.dl; ++j) Bl.at(i, j) = B.at(L.off_tl + i, L.off_tl + j);
    out.det_t_up = L.du > 0 ? det(Bu) : Rat(1);
    out.det_t_low = L.dl > 0 ? det(Bl) : Rat(1);
    bool wd = L.wdim == 0 || (have && out.lambda != 0);
    nd.pass = out.det_t_up != 0 && out.det_t_low != 0 && wd && blk.pass && lam.pass;
    if (!nd.pass) nd.witness = "degenerate block";
    out.nondegenerate = nd.pass;
  }
  out.report.checks.push_back(nd);

  IdentityCheck inv;
  inv.name = "ad_invariance_sample";
  inv.pass = true;
  inv.residual = 0;
  {
    int stride = std::max(1, N / 6);
    for (int i = 0; i < N && inv.pass; i += stride)
      for (int j = 0; j < N && inv.pass; j += stride)
        for (int k = 0; k < N; k += stride) {
          // B([i,j],k) + B(j,[i,k]) = 0
          Rat s = 0;
          for (const auto& [m, c] : L.bracket(i, j)) s += c * B.at(m, k);
          for (const auto& [m, c] : L.bracket(i, k)) s += c * B.at(j, m);
          if (s != 0) {
            inv.pass = false;
            inv.residual = rat_abs(s);
            inv.witness = "(" + L.label(i) + ", " + L.label(j) + ", " + L.label(k) + ")";
            break;
          }
        }
  }
  out.report.checks.push_back(inv);
  return out;
}

inline KillingStructure verify_killing_structure(const LieAlgebra& L) {
  return verify_killing_structure(L, killing_form(L));
}

}  // namespace tri
