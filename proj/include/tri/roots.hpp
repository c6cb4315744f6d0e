#pragma once

// Split Cartan subalgebras and root systems, over the rationals only. For
// the split models the torus-supported elements of each t factor form a
// Cartan subalgebra whose adjoint action diagonalizes with rational
// eigenvalues; the five sectors are ad-stable, so the eigenspace refinement
// runs per sector in sector-local coordinates. The fully trivial pair
// (both factors one-dimensional) has empty t and is handled by a generic
// element search on the three-dimensional algebra instead.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tri/magic.hpp"
#include "tri/matrix.hpp"
#include "tri/models.hpp"
#include "tri/rational.hpp"

namespace tri {

// Hyperbolic coordinate pairs carrying the split torus of each model.
inline std::vector<std::pair<int, int>> torus_pairs(const std::string& name) {
  if (name == "O44") return {{0, 4}, {1, 5}, {2, 6}, {3, 7}};
  if (name == "O22") return {{0, 2}, {1, 3}};
  if (name == "O11") return {{0, 1}};
  if (name == "O1" || name == "O1m") return {};
  throw std::runtime_error("no split torus data for model " + name);
}

inline bool split_capable(const std::string& name) {
  return name == "O1" || name == "O1m" || name == "O11" || name == "O22" ||
         name == "O44";
}

struct RootDatum {
  int rank = 0;
  int root_count = 0;
  std::vector<std::vector<Rat>> cartan;  // full-coordinate basis vectors
  std::vector<std::vector<Rat>> roots;   // weight rows w.r.t. cartan basis
  std::map<Rat, int> length_histogram;   // squared length -> multiplicity
};

namespace detail {

// Torus-supported subspace of one t factor, as coordinate vectors.
inline std::vector<std::vector<Rat>> factor_cartan(const TrialityAlgebra& t,
                                                   const std::vector<std::pair<int, int>>& pairs) {
  int d = t.dim;
  if (d == 0) return {};
  int n = t.model.n;
  auto allowed = [&](int i, int j) {
    for (const auto& [a, b] : pairs)
      if ((i == a && j == b) || (i == b && j == a)) return true;
    return false;
  };
  std::vector<std::vector<Rat>> rows;
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (allowed(i, j)) continue;
        std::vector<Rat> row(d, Rat(0));
        bool nz = false;
        for (int c = 0; c < d; ++c) {
          row[c] = t.basis[c].comp[f].at(i, j);
          nz |= row[c] != 0;
        }
        if (nz) rows.push_back(row);
      }
  if (rows.empty()) {  // no conditions: whole factor
    std::vector<std::vector<Rat>> id;
    for (int c = 0; c < d; ++c) {
      std::vector<Rat> v(d, Rat(0));
      v[c] = 1;
      id.push_back(v);
    }
    return id;
  }
  Mat M(int(rows.size()), d);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < d; ++c) M.at(int(r), c) = rows[r][c];
  return kernel_basis(M);
}

struct SectorSpace {
  std::vector<std::vector<Rat>> vecs;  // sector-local coordinates
  std::vector<Rat> weight;
};

// eigenvalues of a torus-supported matrix: +-M[i][j] per hyperbolic pair
inline std::vector<Rat> torus_eigenvalues(const Mat& M,
                                          const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Rat> out;
  for (const auto& [i, j] : pairs) {
    out.push_back(M.at(i, j));
    out.push_back(-M.at(i, j));
  }
  return out;
}

inline void dedup(std::vector<Rat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Refine the sector decomposition by the action matrix A (sector-local).
inline std::vector<SectorSpace> refine(const std::vector<SectorSpace>& spaces,
                                       const Mat& A, const std::vector<Rat>& cands) {
  std::vector<SectorSpace> out;
  int size = A.rows;
  for (const auto& S : spaces) {
    int k = int(S.vecs.size());
    Mat B(size, k);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < size; ++r) B.at(r, c) = S.vecs[c][r];
    // action in S coordinates: B C = A B
    Mat C(k, k);
    for (int c = 0; c < k; ++c) {
      std::vector<Rat> img(size, Rat(0));
      for (int r = 0; r < size; ++r)
        for (int m = 0; m < size; ++m)
          if (A.at(r, m) != 0 && S.vecs[c][m] != 0) img[r] += A.at(r, m) * S.vecs[c][m];
      auto sol = solve(B, img);
      if (!sol)
        throw std::runtime_error("sector not stable under Cartan action");
      for (int r = 0; r < k; ++r) C.at(r, c) = (*sol)[r];
    }
    int found = 0;
    for (const Rat& mu : cands) {
      Mat Cm = C;
      for (int r = 0; r < k; ++r) Cm.at(r, r) -= mu;
      auto ker = kernel_basis(Cm);
      if (ker.empty()) continue;
      SectorSpace T;
      T.weight = S.weight;
      T.weight.push_back(mu);
      for (const auto& kv : ker) {
        std::vector<Rat> lifted(size, Rat(0));
        for (int c = 0; c < k; ++c)
          if (kv[c] != 0)
            for (int r = 0; r < size; ++r) lifted[r] += kv[c] * S.vecs[c][r];
        T.vecs.push_back(lifted);
      }
      found += int(T.vecs.size());
      out.push_back(std::move(T));
      if (found == k) break;
    }
    if (found != k)
      throw std::runtime_error(
          "rational simultaneous diagonalization failure: sector splits " +
          std::to_string(found) + " of " + std::to_string(k));
  }
  return out;
}

inline bool rat_sqrt(const Rat& x, Rat& out) {
  if (x < 0) return false;
  mpz_class num = x.get_num(), den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  out = Rat(rn, rd);
  out.canonicalize();
  return true;
}

// Root extraction for the trivial pair: find a regular element with
// rational eigenvalues among small deterministic candidates.
inline RootDatum roots_trivial_pair(const LieAlgebra& L) {
  int N = L.dim;
  std::vector<std::vector<Rat>> cands;
  for (int i = 0; i < N; ++i) {
    std::vector<Rat> v(N, Rat(0));
    v[i] = 1;
    cands.push_back(v);
  }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      std::vector<Rat> v(N, Rat(0));
      v[i] = 1;
      v[j] = 1;
      cands.push_back(v);
    }
  for (const auto& x : cands) {
    Mat A = ad_matrix(L, x);
    if (int(kernel_basis(A).size()) != 1) continue;
    Rat tr2 = trace(A * A);
    Rat mu2 = tr2 / 2, mu;
    if (mu2 <= 0 || !rat_sqrt(mu2, mu)) continue;
    std::vector<Rat> evs = {Rat(0), mu, -mu};
    int total = 0;
    RootDatum out;
    out.rank = 1;
    out.cartan = {x};
    bool ok = true;
    for (const Rat& ev : evs) {
      Mat Am = A;
      for (int r = 0; r < N; ++r) Am.at(r, r) -= ev;
      auto ker = kernel_basis(Am);
      total += int(ker.size());
      if (ev != 0) {
        if (ker.size() != 1) { ok = false; break; }
        out.roots.push_back({ev});
      }
    }
    if (!ok || total != N) continue;
    out.root_count = int(out.roots.size());
    Rat gram = 2 * mu * mu;  // trace over the two root spaces
    for (const auto& r : out.roots) out.length_histogram[r[0] * r[0] / gram]++;
    return out;
  }
  throw std::runtime_error(
      "rational simultaneous diagonalization failure: no regular element with "
      "rational spectrum");
}

}  // namespace detail

inline RootDatum rank_and_roots(const LieAlgebra& L, bool split_only = true) {
  if (split_only &&
      (!split_capable(L.up_model.name) || !split_capable(L.low_model.name)))
    throw std::runtime_error("root extraction needs split models, got " +
                             L.up_model.name + "," + L.low_model.name);
  if (L.du == 0 && L.dl == 0) return detail::roots_trivial_pair(L);

  auto up_pairs = torus_pairs(L.up_model.name);
  auto low_pairs = torus_pairs(L.low_model.name);
  std::vector<std::vector<Rat>> cart_up = detail::factor_cartan(L.up, up_pairs);
  std::vector<std::vector<Rat>> cart_low = detail::factor_cartan(L.low, low_pairs);
  int rank = int(cart_up.size() + cart_low.size());

  RootDatum out;
  out.rank = rank;
  std::vector<std::vector<Rat>> hs;  // full coordinates
  for (const auto& v : cart_up) {
    std::vector<Rat> h(L.dim, Rat(0));
    for (int i = 0; i < L.du; ++i) h[i] = v[i];
    hs.push_back(h);
  }
  for (const auto& v : cart_low) {
    std::vector<Rat> h(L.dim, Rat(0));
    for (int i = 0; i < L.dl; ++i) h[L.off_tl + i] = v[i];
    hs.push_back(h);
  }
  out.cartan = hs;

  // Cartan must be abelian
  for (int r = 0; r < rank; ++r) {
    Mat A = ad_matrix(L, hs[r]);
    for (int s = r + 1; s < rank; ++s) {
      std::vector<Rat> img = matvec(A, hs[s]);
      for (const Rat& x : img)
        if (x != 0) throw std::runtime_error("torus subspace is not abelian");
    }
  }

  // per-Cartan-element slot matrices and eigenvalue candidate data
  struct HData {
    Mat ad;                       // full adjoint
    std::array<std::vector<Rat>, 3> eig_up, eig_low;  // per slot
  };
  std::vector<HData> hd;
  for (int r = 0; r < rank; ++r) {
    HData d;
    d.ad = ad_matrix(L, hs[r]);
    for (int s = 0; s < 3; ++s) {
      Mat Mu(L.n, L.n), Ml(L.np, L.np);
      for (int c = 0; c < L.du; ++c)
        if (hs[r][c] != 0) Mu = Mu + hs[r][c] * L.up.basis[c].comp[s];
      for (int c = 0; c < L.dl; ++c)
        if (hs[r][L.off_tl + c] != 0)
          Ml = Ml + hs[r][L.off_tl + c] * L.low.basis[c].comp[s];
      d.eig_up[s] = detail::torus_eigenvalues(Mu, up_pairs);
      d.eig_low[s] = detail::torus_eigenvalues(Ml, low_pairs);
      if (d.eig_up[s].empty()) d.eig_up[s].push_back(Rat(0));
      if (d.eig_low[s].empty()) d.eig_low[s].push_back(Rat(0));
    }
    hd.push_back(std::move(d));
  }

  // sectors: (offset, size) with candidate eigenvalue generator per h
  struct Sector {
    int off, size;
    std::vector<std::vector<Rat>> cands;  // per Cartan element
  };
  std::vector<Sector> sectors;
  if (L.du > 0) {
    Sector s{0, L.du, {}};
    for (int r = 0; r < rank; ++r) {
      std::vector<Rat> c;
      for (const Rat& a : hd[r].eig_up[0])
        for (const Rat& b : hd[r].eig_up[0]) c.push_back(a - b);
      detail::dedup(c);
      s.cands.push_back(c);
    }
    sectors.push_back(std::move(s));
  }
  if (L.dl > 0) {
    Sector s{L.off_tl, L.dl, {}};
    for (int r = 0; r < rank; ++r) {
      std::vector<Rat> c;
      for (const Rat& a : hd[r].eig_low[0])
        for (const Rat& b : hd[r].eig_low[0]) c.push_back(a - b);
      detail::dedup(c);
      s.cands.push_back(c);
    }
    sectors.push_back(std::move(s));
  }
  for (int ws = 0; ws < 3; ++ws) {
    Sector s{L.off_w[ws], L.n * L.np, {}};
    for (int r = 0; r < rank; ++r) {
      std::vector<Rat> c;
      for (const Rat& a : hd[r].eig_up[ws])
        for (const Rat& b : hd[r].eig_low[(ws + 1) % 3]) c.push_back(a + b);
      detail::dedup(c);
      s.cands.push_back(c);
    }
    sectors.push_back(std::move(s));
  }

  std::vector<detail::SectorSpace> all_spaces;
  std::vector<int> space_sector_off;
  for (const auto& sec : sectors) {
    std::vector<detail::SectorSpace> spaces(1);
    for (int i = 0; i < sec.size; ++i) {
      std::vector<Rat> v(sec.size, Rat(0));
      v[i] = 1;
      spaces[0].vecs.push_back(v);
    }
    for (int r = 0; r < rank; ++r) {
      Mat A(sec.size, sec.size);
      for (int i = 0; i < sec.size; ++i)
        for (int j = 0; j < sec.size; ++j)
          A.at(i, j) = hd[r].ad.at(sec.off + i, sec.off + j);
      spaces = detail::refine(spaces, A, sec.cands[r]);
    }
    for (auto& sp : spaces) {
      all_spaces.push_back(std::move(sp));
      space_sector_off.push_back(sec.off);
    }
  }

  // Killing Gram on the Cartan from the weight decomposition:
  // B(h_r, h_s) = sum over spaces dim * w_r * w_s
  Mat G(rank, rank);
  for (const auto& sp : all_spaces)
    for (int r = 0; r < rank; ++r)
      for (int s = 0; s < rank; ++s)
        G.at(r, s) += Rat(long(sp.vecs.size())) * sp.weight[r] * sp.weight[s];
  auto Gi = inverse(G);
  if (!Gi) throw std::runtime_error("Killing form degenerate on Cartan");

  int zero_dim = 0;
  std::vector<std::vector<Rat>> zero_vecs;  // full coordinates
  for (size_t idx = 0; idx < all_spaces.size(); ++idx) {
    const auto& sp = all_spaces[idx];
    bool zero = true;
    for (const Rat& w : sp.weight) zero &= w == 0;
    if (zero) {
      zero_dim += int(sp.vecs.size());
      for (const auto& v : sp.vecs) {
        std::vector<Rat> full(L.dim, Rat(0));
        for (size_t i = 0; i < v.size(); ++i) full[space_sector_off[idx] + int(i)] = v[i];
        zero_vecs.push_back(full);
      }
      continue;
    }
    if (sp.vecs.size() != 1)
      throw std::runtime_error("root space of dimension " +
                               std::to_string(sp.vecs.size()));
    out.roots.push_back(sp.weight);
  }
  if (zero_dim != rank)
    throw std::runtime_error("zero weight space has dimension " +
                             std::to_string(zero_dim) + ", rank is " +
                             std::to_string(rank));
  {
    Mat Z(L.dim, zero_dim);
    for (int c = 0; c < zero_dim; ++c)
      for (int r2 = 0; r2 < L.dim; ++r2) Z.at(r2, c) = zero_vecs[c][r2];
    for (const auto& h : hs)
      if (!solve(Z, h))
        throw std::runtime_error("zero weight space does not match the Cartan");
  }

  out.root_count = int(out.roots.size());
  for (const auto& lam : out.roots) {
    Rat len = 0;
    for (int r = 0; r < rank; ++r)
      for (int s = 0; s < rank; ++s) len += lam[r] * Gi->at(r, s) * lam[s];
    out.length_histogram[len]++;
  }
  return out;
}

struct Identification {
  std::string label;
  int dim = 0, rank = 0, root_count = 0;
  std::map<Rat, int> length_histogram;
};

namespace detail {

struct Profile {
  const char* label;
  int dim, rank, root_count;
  std::vector<std::pair<Rat, int>> hist;
};

inline const std::vector<Profile>& known_profiles() {
  static const std::vector<Profile> table = {
      {"A1", 3, 1, 2, {{frac(1, 2), 2}}},
      {"A2", 8, 2, 6, {{frac(1, 3), 6}}},
      {"C3", 21, 3, 18, {{frac(1, 8), 12}, {frac(1, 4), 6}}},
      {"F4", 52, 4, 48, {{frac(1, 18), 24}, {frac(1, 9), 24}}},
      {"A2+A2", 16, 4, 12, {{frac(1, 3), 12}}},
      {"A5", 35, 5, 30, {{frac(1, 6), 30}}},
      {"D6", 66, 6, 60, {{frac(1, 10), 60}}},
      {"E6", 78, 6, 72, {{frac(1, 12), 72}}},
      {"E7", 133, 7, 126, {{frac(1, 18), 126}}},
      {"E8", 248, 8, 240, {{frac(1, 30), 240}}},
  };
  return table;
}

}  // namespace detail

// Match dimension and root profile against the ten algebras the square
// produces. The ten dimensions are distinct, so the dimension picks the
// candidate; the full profile is then asserted.
inline Identification identify(const LieAlgebra& L) {
  RootDatum datum;
  if (L.du == 0 && L.dl == 0) {
    try {
      datum = rank_and_roots(L);
    } catch (const std::runtime_error&) {
      // compact realization: redo the extraction on the mixed-signature one
      LieAlgebra Lm = build_algebra(o1_mixed_variant(), build_model("O1"));
      datum = rank_and_roots(Lm);
    }
  } else {
    datum = rank_and_roots(L);
  }
  Identification id;
  id.dim = L.dim;
  id.rank = datum.rank;
  id.root_count = datum.root_count;
  id.length_histogram = datum.length_histogram;
  auto describe = [&]() {
    std::string s = "dim " + std::to_string(id.dim) + ", rank " +
                    std::to_string(id.rank) + ", " +
                    std::to_string(id.root_count) + " roots, lengths {";
    bool first = true;
    for (const auto& [len, cnt] : id.length_histogram) {
      if (!first) s += ", ";
      s += rat_str(len) + ":" + std::to_string(cnt);
      first = false;
    }
    return s + "}";
  };
  for (const auto& p : detail::known_profiles()) {
    if (p.dim != id.dim) continue;
    bool ok = p.rank == id.rank && p.root_count == id.root_count &&
              p.hist.size() == id.length_histogram.size();
    if (ok)
      for (const auto& [len, cnt] : p.hist)
        ok &= id.length_histogram.count(len) && id.length_histogram.at(len) == cnt;
    if (!ok)
      throw std::runtime_error("profile mismatch for dimension " +
                               std::to_string(id.dim) + ": " + describe());
    id.label = p.label;
    return id;
  }
  throw std::runtime_error("no known algebra of " + describe());
}

}  // namespace tri
