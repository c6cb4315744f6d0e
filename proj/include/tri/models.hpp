#pragma once
// The seven built-in triality models. Index convention, fixed once for the
// whole library: tau(a,b,c) is the coefficient of x_a y_b z_c in the defining
// trinomial, all indices 0-based. Every identity and every golden value in
// the test suite is anchored to this transcription.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "tri/tensor.hpp"

namespace tri {

struct TrialityModel {
  std::string name;
  int n = 0;
  // diagonal entries of g1, g2, g3; always +-1 for the built-ins
  std::array<std::vector<int>, 3> metric;
  Tensor tau;  // shape (n,n,n)
  std::string family;  // "compact" | "split"
  // original 1-based variable labels per slot (restrictions re-index densely)
  std::array<std::vector<int>, 3> coord_labels;

  int tval(int a, int b, int c) const {
    const Rat& r = tau.data[size_t(a) * n * n + size_t(b) * n + c];
    return int(r.get_num().get_si());
  }

  Mat metric_mat(int f) const {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = metric[f][i];
    return m;
  }
  // diagonal +-1, so equal to the inverse; kept separate for clarity at call sites
  Mat metric_inv_mat(int f) const { return metric_mat(f); }
};

namespace detail {

struct TauTerm { int s, a, b; };  // contribution s * x_a y_b (1-based) to one z row

// one row per z_c, eight terms each, 1-based indices as in the trinomials
inline const std::array<std::array<TauTerm, 8>, 8>& o8_rows() {
  static const std::array<std::array<TauTerm, 8>, 8> rows = {{
    {{{1,1,1}, {-1,2,2}, {1,3,3}, {1,4,4}, {-1,5,5}, {-1,6,6}, {-1,7,7}, {-1,8,8}}},
    {{{1,1,2}, {1,2,1}, {-1,3,4}, {1,4,3}, {-1,5,6}, {1,6,5}, {-1,7,8}, {1,8,7}}},
    {{{-1,1,3}, {1,2,4}, {1,3,1}, {1,4,2}, {-1,5,7}, {1,6,8}, {1,7,5}, {-1,8,6}}},
    {{{-1,1,4}, {-1,2,3}, {-1,3,2}, {1,4,1}, {-1,5,8}, {-1,6,7}, {1,7,6}, {1,8,5}}},
    {{{-1,1,5}, {-1,2,6}, {-1,3,7}, {-1,4,8}, {-1,5,1}, {1,6,2}, {-1,7,3}, {-1,8,4}}},
    {{{-1,1,6}, {1,2,5}, {1,3,8}, {-1,4,7}, {-1,5,2}, {-1,6,1}, {-1,7,4}, {1,8,3}}},
    {{{1,1,7}, {1,2,8}, {-1,3,5}, {-1,4,6}, {-1,5,3}, {-1,6,4}, {1,7,1}, {-1,8,2}}},
    {{{-1,1,8}, {1,2,7}, {-1,3,6}, {1,4,5}, {1,5,4}, {-1,6,3}, {-1,7,2}, {-1,8,1}}},
  }};
  return rows;
}

inline const std::array<std::array<TauTerm, 8>, 8>& o44_rows() {
  static const std::array<std::array<TauTerm, 8>, 8> rows = {{
    {{{1,1,1}, {-1,2,2}, {1,3,3}, {1,4,4}, {1,5,5}, {1,6,6}, {1,7,7}, {1,8,8}}},
    {{{1,1,2}, {1,2,1}, {-1,3,4}, {1,4,3}, {1,5,6}, {-1,6,5}, {1,7,8}, {-1,8,7}}},
    {{{-1,1,3}, {1,2,4}, {1,3,1}, {1,4,2}, {1,5,7}, {-1,6,8}, {-1,7,5}, {1,8,6}}},
    {{{-1,1,4}, {-1,2,3}, {-1,3,2}, {1,4,1}, {1,5,8}, {1,6,7}, {-1,7,6}, {-1,8,5}}},
    {{{1,1,5}, {1,2,6}, {1,3,7}, {1,4,8}, {1,5,1}, {-1,6,2}, {1,7,3}, {1,8,4}}},
    {{{1,1,6}, {-1,2,5}, {-1,3,8}, {1,4,7}, {1,5,2}, {1,6,1}, {1,7,4}, {-1,8,3}}},
    {{{-1,1,7}, {-1,2,8}, {1,3,5}, {1,4,6}, {1,5,3}, {1,6,4}, {-1,7,1}, {1,8,2}}},
    {{{1,1,8}, {-1,2,7}, {1,3,6}, {-1,4,5}, {-1,5,4}, {1,6,3}, {1,7,2}, {1,8,1}}},
  }};
  return rows;
}

inline Tensor tau_from_rows(const std::array<std::array<TauTerm, 8>, 8>& rows) {
  Tensor t({8, 8, 8});
  for (int c = 0; c < 8; ++c)
    for (const TauTerm& term : rows[c])
      t.at({term.a - 1, term.b - 1, c}) = term.s;
  return t;
}

inline std::string family_from_metric(const std::array<std::vector<int>, 3>& metric) {
  for (const auto& g : metric)
    for (int v : g)
      if (v < 0) return "split";
  return "compact";
}

}  // namespace detail

// Sub-model on the kept index sets (one per slot, equal sizes). Metric
// nondegeneracy of the restriction is automatic for diagonal +-1 metrics but
// checked all the same.
inline TrialityModel restrict_model(const TrialityModel& m,
                                    const std::array<std::vector<int>, 3>& keep,
                                    const std::string& new_name = "") {
  size_t sz = keep[0].size();
  if (keep[1].size() != sz || keep[2].size() != sz)
    throw std::invalid_argument("restrict_model: kept index sets must have equal sizes");
  TrialityModel r;
  r.name = new_name.empty() ? m.name + "|restricted" : new_name;
  r.n = int(sz);
  for (int f = 0; f < 3; ++f) {
    for (int idx : keep[f]) {
      if (idx < 0 || idx >= m.n)
        throw std::invalid_argument("restrict_model: index out of range");
      if (m.metric[f][idx] == 0)
        throw std::invalid_argument("restrict_model: degenerate restricted metric");
      r.metric[f].push_back(m.metric[f][idx]);
      r.coord_labels[f].push_back(m.coord_labels[f][idx]);
    }
  }
  r.tau = Tensor({r.n, r.n, r.n});
  for (int a = 0; a < r.n; ++a)
    for (int b = 0; b < r.n; ++b)
      for (int c = 0; c < r.n; ++c)
        r.tau.at({a, b, c}) = m.tau.at({keep[0][a], keep[1][b], keep[2][c]});
  r.family = detail::family_from_metric(r.metric);
  return r;
}

// Coefficient-level composition check: contracting any one colour out of
// tau x tau and symmetrizing must reproduce twice the product of the other
// two metrics. This is the trinomial identity grad(F).grad(F) = (y.y)(z.z)
// and its two cyclic mates; built-in construction refuses models failing it.
inline bool composition_holds(const TrialityModel& m) {
  int n = m.n;
  auto g = [&](int f, int i) { return m.metric[f][i]; };
  for (int ver = 0; ver < 3; ++ver) {
    // ver 0 contracts colour 3 (free a,a',b,b'), 1 contracts colour 1, 2 colour 2
    for (int i = 0; i < n; ++i)
      for (int ip = 0; ip < n; ++ip)
        for (int j = 0; j < n; ++j)
          for (int jp = 0; jp < n; ++jp) {
            long num = 0;  // accumulate with the +-1 metric folded in
            for (int k = 0; k < n; ++k) {
              int t1 = 0, t2 = 0, t3 = 0, t4 = 0, gk = 1;
              if (ver == 0) {
                t1 = m.tval(i, j, k); t2 = m.tval(ip, jp, k);
                t3 = m.tval(ip, j, k); t4 = m.tval(i, jp, k);
                gk = g(2, k);
              } else if (ver == 1) {
                t1 = m.tval(k, i, j); t2 = m.tval(k, ip, jp);
                t3 = m.tval(k, ip, j); t4 = m.tval(k, i, jp);
                gk = g(0, k);
              } else {
                t1 = m.tval(j, k, i); t2 = m.tval(jp, k, ip);
                t3 = m.tval(j, k, ip); t4 = m.tval(jp, k, i);
                gk = g(1, k);
              }
              num += gk * (t1 * t2 + t3 * t4);
            }
            int f1 = ver == 0 ? 0 : (ver == 1 ? 1 : 2);
            int f2 = ver == 0 ? 1 : (ver == 1 ? 2 : 0);
            long rhs = (i == ip && j == jp) ? 2L * g(f1, i) * g(f2, j) : 0;
            if (num != rhs) return false;
          }
  }
  return true;
}

inline void verify_composition_or_throw(const TrialityModel& m) {
  if (!composition_holds(m))
    throw std::runtime_error("model " + m.name + " fails the composition identity");
}

inline TrialityModel build_model(const std::string& name) {
  TrialityModel m;
  auto same_keep = [](std::vector<int> k) {
    return std::array<std::vector<int>, 3>{k, k, k};
  };
  if (name == "O8" || name == "O44") {
    m.name = name;
    m.n = 8;
    m.tau = detail::tau_from_rows(name == "O8" ? detail::o8_rows() : detail::o44_rows());
    std::vector<int> g(8, 1);
    if (name == "O44") for (int i = 4; i < 8; ++i) g[i] = -1;
    std::vector<int> labels = {1, 2, 3, 4, 5, 6, 7, 8};
    for (int f = 0; f < 3; ++f) { m.metric[f] = g; m.coord_labels[f] = labels; }
    m.family = name == "O8" ? "compact" : "split";
  } else if (name == "O4") {
    // the first four coordinates of the split model carry the Euclidean metric
    m = restrict_model(build_model("O44"), same_keep({0, 1, 2, 3}), "O4");
  } else if (name == "O22") {
    m = restrict_model(build_model("O44"), same_keep({0, 1, 6, 7}), "O22");
  } else if (name == "O2") {
    m = restrict_model(build_model("O4"), same_keep({0, 1}), "O2");
  } else if (name == "O11") {
    m = restrict_model(build_model("O22"), same_keep({0, 3}), "O11");
  } else if (name == "O1") {
    m = restrict_model(build_model("O2"), same_keep({0}), "O1");
  } else {
    throw std::invalid_argument("unknown model name: " + name);
  }
  verify_composition_or_throw(m);
  return m;
}

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"O1", "O11", "O2", "O22",
                                                 "O4", "O44", "O8"};
  return names;
}

// Internal 1-dimensional variant with slot metrics (1), (-1), (-1). Still a
// triality; pairing it with O1 realizes the 3-dimensional algebra in its
// split form, which is what rational root extraction needs for the (1,1)
// entry. Not a public model name.
inline TrialityModel o1_mixed_variant() {
  TrialityModel m = build_model("O1");
  m.name = "O1m";
  m.metric[1] = {-1};
  m.metric[2] = {-1};
  m.family = "split";
  verify_composition_or_throw(m);
  return m;
}

}  // namespace tri
