#pragma once
// Dense exact-rational matrices and the elimination routines the rest of the
// library leans on: RREF, kernel bases, solving, inversion, Bareiss
// determinants and congruence signatures. Sizes here are small (<= a few
// hundred rows), dense storage is fine.

#include <cassert>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tri/rational.hpp"

namespace tri {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool is_zero() const {
    for (const Rat& x : a)
      if (x != 0) return false;
    return true;
  }
};

inline Mat operator*(const Mat& A, const Mat& B) {
  assert(A.cols == B.rows);
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Rat& v = A.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < B.cols; ++j)
        if (B.at(k, j) != 0) C.at(i, j) += v * B.at(k, j);
    }
  return C;
}

inline Mat operator+(const Mat& A, const Mat& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

inline Mat operator-(const Mat& A, const Mat& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

inline Mat operator*(const Rat& s, const Mat& A) {
  Mat C = A;
  for (Rat& x : C.a) x *= s;
  return C;
}

inline Rat trace(const Mat& A) {
  assert(A.rows == A.cols);
  Rat t = 0;
  for (int i = 0; i < A.rows; ++i) t += A.at(i, i);
  return t;
}

inline Mat commutator(const Mat& A, const Mat& B) { return A * B - B * A; }

// In-place reduced row echelon form; returns pivot column list.
inline std::vector<int> rref_inplace(Mat& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(piv, j));
    Rat inv = Rat(1) / M.at(r, c);
    for (int j = c; j < M.cols; ++j) M.at(r, j) *= inv;
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      Rat f = M.at(i, c);
      for (int j = c; j < M.cols; ++j) M.at(i, j) -= f * M.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(const Mat& M) {
  Mat R = M;
  return int(rref_inplace(R).size());
}

// Kernel basis in echelon-pivot form: one vector per free column f, with
// entry 1 at f and -R[r][f] at pivot columns. Downstream code relies on this
// normalization to read coordinates off the free columns directly.
inline std::vector<std::vector<Rat>> kernel_basis(const Mat& M) {
  Mat R = M;
  std::vector<int> pivots = rref_inplace(R);
  std::vector<bool> is_piv(M.cols, false);
  for (int p : pivots) is_piv[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (int f = 0; f < M.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(M.cols, Rat(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -R.at(int(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<int> free_columns(const Mat& M) {
  Mat R = M;
  std::vector<int> pivots = rref_inplace(R);
  std::vector<bool> is_piv(M.cols, false);
  for (int p : pivots) is_piv[p] = true;
  std::vector<int> free;
  for (int c = 0; c < M.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  return free;
}

// Solve M x = b exactly (free variables set to 0); nullopt if inconsistent.
inline std::optional<std::vector<Rat>> solve(const Mat& M, const std::vector<Rat>& b) {
  assert(int(b.size()) == M.rows);
  Mat aug(M.rows, M.cols + 1);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.cols) = b[i];
  }
  std::vector<int> pivots = rref_inplace(aug);
  for (int p : pivots)
    if (p == M.cols) return std::nullopt;
  std::vector<Rat> x(M.cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(int(r), M.cols);
  for (int i = 0; i < M.rows; ++i) {
    Rat s = 0;
    for (int j = 0; j < M.cols; ++j)
      if (x[j] != 0) s += M.at(i, j) * x[j];
    if (s != b[i]) return std::nullopt;
  }
  return x;
}

inline std::optional<Mat> inverse(const Mat& M) {
  if (M.rows != M.cols) return std::nullopt;
  int n = M.rows;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<int> pivots = rref_inplace(aug);
  if (int(pivots.size()) != n) return std::nullopt;
  for (int r = 0; r < n; ++r)
    if (pivots[r] != r) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

inline std::vector<Rat> matvec(const Mat& M, const std::vector<Rat>& v) {
  assert(int(v.size()) == M.cols);
  std::vector<Rat> out(M.rows, Rat(0));
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j)
      if (M.at(i, j) != 0 && v[j] != 0) out[i] += M.at(i, j) * v[j];
  return out;
}

// Fraction-free determinant: clear denominators per row, run integer Bareiss,
// divide the scaling back out. Keeps intermediate growth polynomial.
inline Rat det(const Mat& M) {
  if (M.rows != M.cols) throw std::invalid_argument("det: square matrix required");
  int n = M.rows;
  if (n == 0) return Rat(1);
  std::vector<std::vector<mpz_class>> A(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (int i = 0; i < n; ++i) {
    mpz_class lcm = 1;
    for (int j = 0; j < n; ++j) {
      mpz_class d = M.at(i, j).get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    }
    for (int j = 0; j < n; ++j) {
      Rat scaled = M.at(i, j) * Rat(lcm);
      assert(scaled.get_den() == 1);
      A[i][j] = scaled.get_num();
    }
    scale *= lcm;
  }
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (A[i][k] != 0) { piv = i; break; }
      if (piv < 0) return Rat(0);
      std::swap(A[k], A[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class num = A[i][j] * A[k][k] - A[i][k] * A[k][j];
        mpz_divexact(A[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      A[i][k] = 0;
    }
    prev = A[k][k];
  }
  Rat d(A[n - 1][n - 1] * sign, scale);
  d.canonicalize();
  return d;
}

struct Signature {
  int pos = 0, neg = 0, zero = 0;
};

// Exact congruence diagonalization of a symmetric matrix. Zero diagonals with
// a nonzero off-diagonal partner are handled by a row+column addition first.
inline Signature signature_full(const Mat& M) {
  if (M.rows != M.cols) throw std::invalid_argument("signature: square matrix required");
  int n = M.rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (M.at(i, j) != M.at(j, i))
        throw std::invalid_argument("signature: symmetric matrix required");
  Mat A = M;
  Signature sig;
  int k = 0;
  while (k < n) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (A.at(i, i) != 0) { p = i; break; }
    if (p < 0) {
      int qi = -1, qj = -1;
      for (int i = k; i < n && qi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (A.at(i, j) != 0) { qi = i; qj = j; break; }
      if (qi < 0) {
        sig.zero = n - k;
        break;
      }
      for (int t = 0; t < n; ++t) A.at(qi, t) += A.at(qj, t);
      for (int t = 0; t < n; ++t) A.at(t, qi) += A.at(t, qj);
      continue;
    }
    if (p != k) {
      for (int t = 0; t < n; ++t) std::swap(A.at(k, t), A.at(p, t));
      for (int t = 0; t < n; ++t) std::swap(A.at(t, k), A.at(t, p));
    }
    Rat d = A.at(k, k);
    if (d > 0) ++sig.pos; else ++sig.neg;
    for (int i = k + 1; i < n; ++i) {
      if (A.at(i, k) == 0) continue;
      Rat f = A.at(i, k) / d;
      for (int t = 0; t < n; ++t) A.at(i, t) -= f * A.at(k, t);
      for (int t = 0; t < n; ++t) A.at(t, i) -= f * A.at(t, k);
    }
    ++k;
  }
  return sig;
}

// (positive count, negative count); degenerate input rejected.
inline std::pair<int, int> congruence_signature(const Mat& M) {
  Signature s = signature_full(M);
  if (s.zero != 0) throw std::invalid_argument("congruence_signature: degenerate form");
  return {s.pos, s.neg};
}

}  // namespace tri
