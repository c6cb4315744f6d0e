#pragma once
// Small dense multi-index tensors over Rat. Axis lengths stay <= 8 and order
// <= 4 in practice, so row-major dense storage with explicit strides is the
// right trade. Pairings (metric inverses) are always passed explicitly.

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tri/matrix.hpp"
#include "tri/rational.hpp"

namespace tri {

struct Tensor {
  std::vector<int> shape;
  std::vector<Rat> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> sh) : shape(std::move(sh)) {
    size_t n = 1;
    for (int s : shape) n *= size_t(s);
    data.assign(n, Rat(0));
  }

  int order() const { return int(shape.size()); }

  size_t flat(const std::vector<int>& idx) const {
    assert(idx.size() == shape.size());
    size_t f = 0;
    for (size_t k = 0; k < shape.size(); ++k) {
      assert(idx[k] >= 0 && idx[k] < shape[k]);
      f = f * shape[k] + idx[k];
    }
    return f;
  }

  Rat& at(const std::vector<int>& idx) { return data[flat(idx)]; }
  const Rat& at(const std::vector<int>& idx) const { return data[flat(idx)]; }

  bool operator==(const Tensor& o) const {
    return shape == o.shape && data == o.data;
  }

  bool is_zero() const {
    for (const Rat& x : data)
      if (x != 0) return false;
    return true;
  }

  Rat max_abs() const {
    Rat m = 0;
    for (const Rat& x : data) {
      Rat a = rat_abs(x);
      if (a > m) m = a;
    }
    return m;
  }

  Tensor operator-(const Tensor& o) const {
    assert(shape == o.shape);
    Tensor r = *this;
    for (size_t i = 0; i < data.size(); ++i) r.data[i] -= o.data[i];
    return r;
  }

  Tensor operator+(const Tensor& o) const {
    assert(shape == o.shape);
    Tensor r = *this;
    for (size_t i = 0; i < data.size(); ++i) r.data[i] += o.data[i];
    return r;
  }

  friend Tensor operator*(const Rat& s, const Tensor& t) {
    Tensor r = t;
    for (Rat& x : r.data) x *= s;
    return r;
  }
};

namespace detail {
inline bool next_index(std::vector<int>& idx, const std::vector<int>& shape) {
  for (int k = int(shape.size()) - 1; k >= 0; --k) {
    if (++idx[k] < shape[k]) return true;
    idx[k] = 0;
  }
  return false;
}
}  // namespace detail

// Contract axis1 of t1 against axis2 of t2 through an explicit pairing
// matrix. Result shape: surviving axes of t1 followed by surviving axes of t2.
inline Tensor contract(const Tensor& t1, int axis1, const Tensor& t2, int axis2,
                       const Mat& pairing) {
  if (axis1 < 0 || axis1 >= t1.order() || axis2 < 0 || axis2 >= t2.order())
    throw std::invalid_argument("contract: axis out of range");
  if (t1.shape[axis1] != pairing.rows || t2.shape[axis2] != pairing.cols)
    throw std::invalid_argument("contract: pairing shape mismatch");
  std::vector<int> rshape;
  for (int k = 0; k < t1.order(); ++k)
    if (k != axis1) rshape.push_back(t1.shape[k]);
  for (int k = 0; k < t2.order(); ++k)
    if (k != axis2) rshape.push_back(t2.shape[k]);
  Tensor out(rshape);

  std::vector<int> i1(t1.order(), 0), i2(t2.order(), 0);
  std::vector<int> ridx(rshape.size(), 0);
  if (rshape.empty()) {
    // full scalar result
    Rat s = 0;
    std::vector<int> u(1, 0), v(1, 0);
    for (int a = 0; a < pairing.rows; ++a)
      for (int b = 0; b < pairing.cols; ++b) {
        if (pairing.at(a, b) == 0) continue;
        u[0] = a; v[0] = b;
        s += t1.at(u) * pairing.at(a, b) * t2.at(v);
      }
    out.data[0] = s;
    return out;
  }

  // iterate the output multi-index, sum over the contracted pair
  bool more = true;
  std::fill(ridx.begin(), ridx.end(), 0);
  while (more) {
    int pos = 0;
    for (int k = 0; k < t1.order(); ++k)
      if (k != axis1) i1[k] = ridx[pos++];
    for (int k = 0; k < t2.order(); ++k)
      if (k != axis2) i2[k] = ridx[pos++];
    Rat s = 0;
    for (int a = 0; a < pairing.rows; ++a) {
      i1[axis1] = a;
      const Rat& x = t1.at(i1);
      if (x == 0) continue;
      for (int b = 0; b < pairing.cols; ++b) {
        if (pairing.at(a, b) == 0) continue;
        i2[axis2] = b;
        const Rat& y = t2.at(i2);
        if (y != 0) s += x * pairing.at(a, b) * y;
      }
    }
    out.at(ridx) = s;
    more = detail::next_index(ridx, rshape);
  }
  return out;
}

// Idempotent skew-symmetrizer on an axis pair: (t - t with the axes swapped)/2.
inline Tensor skew_project(const Tensor& t, int ax1, int ax2) {
  if (ax1 < 0 || ax1 >= t.order() || ax2 < 0 || ax2 >= t.order() || ax1 == ax2)
    throw std::invalid_argument("skew_project: bad axis pair");
  if (t.shape[ax1] != t.shape[ax2])
    throw std::invalid_argument("skew_project: unequal axis lengths");
  Tensor out(t.shape);
  std::vector<int> idx(t.order(), 0), sw(t.order(), 0);
  bool more = true;
  Rat half = frac(1, 2);
  while (more) {
    sw = idx;
    std::swap(sw[ax1], sw[ax2]);
    out.at(idx) = half * (t.at(idx) - t.at(sw));
    more = detail::next_index(idx, t.shape);
  }
  return out;
}

inline Mat diag_metric(const std::vector<Rat>& g) {
  Mat m(int(g.size()), int(g.size()));
  for (size_t i = 0; i < g.size(); ++i) m.at(int(i), int(i)) = g[i];
  return m;
}

// Diagonal +-1 metrics are their own inverses only entrywise; invert properly.
inline Mat diag_metric_inverse(const std::vector<Rat>& g) {
  Mat m(int(g.size()), int(g.size()));
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) throw std::invalid_argument("metric inverse: zero diagonal");
    m.at(int(i), int(i)) = Rat(1) / g[i];
  }
  return m;
}

}  // namespace tri
