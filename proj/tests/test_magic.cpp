#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tri/magic.hpp"

using namespace tri;

namespace {

LieAlgebra build_pair(const std::string& up, const std::string& low) {
  return build_algebra(build_model(up), build_model(low));
}

}  // namespace

TEST_CASE("dimension table over the split models", "[magic]") {
  const char* names[4] = {"O1", "O11", "O22", "O44"};
  const int dims[4][4] = {{3, 8, 21, 52},
                          {8, 16, 35, 78},
                          {21, 35, 66, 133},
                          {52, 78, 133, 248}};
  const int tdim[4] = {0, 2, 9, 28};
  const int nval[4] = {1, 2, 4, 8};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      LieAlgebra L = build_pair(names[i], names[j]);
      INFO("pair (" << names[i] << "," << names[j] << ")");
      CHECK(L.dim == dims[i][j]);
      CHECK(L.dim == 3 * nval[i] * nval[j] + tdim[i] + tdim[j]);
      CHECK(L.du == tdim[i]);
      CHECK(L.dl == tdim[j]);
      CHECK(L.wdim == 3 * nval[i] * nval[j]);
      // O1 has a definite metric, so pairs touching it are compact or mixed
      const char* fam = (i == 0 && j == 0) ? "compact"
                        : (i == 0 || j == 0) ? "mixed"
                                             : "split";
      CHECK(L.family == fam);
    }
}

TEST_CASE("calibration scalars depend only on the slot dimension", "[magic]") {
  // c = -2 (n + 4) for the unscaled pairing
  auto c22 = calibrate_scalars(build_model("O11"), build_model("O11"));
  CHECK(c22.first == Rat(-12));
  CHECK(c22.second == Rat(-12));
  auto c42 = calibrate_scalars(build_model("O22"), build_model("O11"));
  CHECK(c42.first == Rat(-16));
  CHECK(c42.second == Rat(-12));
  auto c84 = calibrate_scalars(build_model("O44"), build_model("O22"));
  CHECK(c84.first == Rat(-24));
  CHECK(c84.second == Rat(-16));
  // compact models calibrate to the same constants
  auto cc = calibrate_scalars(build_model("O2"), build_model("O4"));
  CHECK(cc.first == Rat(-12));
  CHECK(cc.second == Rat(-16));
  // one-dimensional slots have no preserver scalar at all
  LieAlgebra L11 = build_pair("O1", "O1");
  CHECK(L11.scalars.up.empty());
  CHECK(L11.scalars.low.empty());
}

TEST_CASE("structure table bookkeeping", "[magic]") {
  LieAlgebra L = build_pair("O11", "O22");
  CHECK(L.dim == 35);
  CHECK(L.off_tu == 0);
  CHECK(L.off_tl == L.du);
  CHECK(L.off_w[0] == L.du + L.dl);
  CHECK(L.off_w[1] == L.off_w[0] + L.n * L.np);
  CHECK(L.off_w[2] == L.off_w[1] + L.n * L.np);
  CHECK(int(L.table.size()) == L.dim * (L.dim - 1) / 2);
  CHECK(L.bracket(3, 3).empty());
  CHECK(L.sector_of(0) == 0);
  CHECK(L.sector_of(L.off_tl) == 1);
  CHECK(L.sector_of(L.off_w[1]) == 3);
  CHECK(L.label(L.off_w[0]) == "W1(0,0)");
  // rows are sorted sparse vectors over distinct targets
  for (const auto& row : L.table) {
    for (size_t e = 1; e < row.size(); ++e) REQUIRE(row[e - 1].first < row[e].first);
    for (const auto& [tgt, cf] : row) {
      REQUIRE(tgt >= 0);
      REQUIRE(tgt < L.dim);
      REQUIRE(cf != 0);
    }
  }
}

TEST_CASE("bracket extension is antisymmetric and bilinear", "[magic]") {
  LieAlgebra L = build_pair("O11", "O11");
  std::mt19937 rng(1123);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Rat> v(L.dim, Rat(0)), w(L.dim, Rat(0));
    for (int i = 0; i < L.dim; ++i) {
      v[i] = Rat(coef(rng));
      w[i] = Rat(coef(rng));
    }
    Mat adv = ad_matrix(L, v);
    Mat adw = ad_matrix(L, w);
    std::vector<Rat> a = matvec(adv, w);
    std::vector<Rat> b = matvec(adw, v);
    for (int i = 0; i < L.dim; ++i) REQUIRE(a[i] + b[i] == Rat(0));
  }
  // the W pairing entries are unit up to the configured scale
  for (int s = 0; s < 3; ++s)
    for (int a = 0; a < L.n; ++a)
      for (int b = 0; b < L.np; ++b) {
        Rat m = L.w_metric(s, a, b);
        REQUIRE((m == Rat(1) || m == Rat(-1)));
      }
}

TEST_CASE("Jacobi identity holds for representative pairs", "[magic]") {
  for (auto [u, l] : {std::pair<const char*, const char*>{"O1", "O1"},
                      {"O1", "O44"},
                      {"O11", "O11"},
                      {"O22", "O11"},
                      {"O22", "O22"}}) {
    LieAlgebra L = build_pair(u, l);
    IdentityReport rep = verify_jacobi(L);
    INFO("pair (" << u << "," << l << ")");
    CHECK(rep.pass());
    CHECK(rep.max_residual() == Rat(0));
  }
  // a compact pair goes through the same machinery
  LieAlgebra C = build_pair("O2", "O2");
  CHECK(C.family == "compact");
  CHECK(verify_jacobi(C).pass());
}

TEST_CASE("Jacobi verification detects a corrupted entry", "[magic]") {
  LieAlgebra L = build_pair("O11", "O11");
  REQUIRE(verify_jacobi(L).pass());
  size_t victim = 0;
  while (L.table[victim].empty()) ++victim;
  L.table[victim][0].second += Rat(1);
  if (L.has_int) L.itable[victim][0].second += L.denom;
  IdentityReport rep = verify_jacobi(L);
  CHECK_FALSE(rep.pass());
  CHECK(rep.max_residual() != Rat(0));
  bool witnessed = false;
  for (const auto& c : rep.checks)
    if (!c.pass && !c.witness.empty()) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("Killing form block scalar across the table", "[magic]") {
  struct Row {
    const char *up, *low;
    long lambda;
  };
  const Row rows[] = {{"O1", "O1", -2},    {"O1", "O2", -12},
                      {"O11", "O11", -24}, {"O2", "O2", -24},
                      {"O22", "O11", -48}, {"O22", "O22", -80},
                      {"O44", "O11", -96}, {"O44", "O44", -240}};
  for (const Row& r : rows) {
    LieAlgebra L = build_pair(r.up, r.low);
    KillingStructure ks = verify_killing_structure(L);
    INFO("pair (" << r.up << "," << r.low << ")");
    CHECK(ks.report.pass());
    CHECK(ks.lambda == Rat(r.lambda));
    CHECK(ks.nondegenerate);
  }
}

TEST_CASE("Killing signatures of the small real forms", "[magic]") {
  struct Row {
    const char *up, *low;
    int pos, neg;
  };
  const Row rows[] = {{"O1", "O1", 0, 3},    {"O1", "O11", 5, 3},
                      {"O2", "O2", 0, 16},   {"O11", "O11", 10, 6},
                      {"O22", "O11", 20, 15}, {"O22", "O22", 36, 30}};
  for (const Row& r : rows) {
    LieAlgebra L = build_pair(r.up, r.low);
    auto [p, n] = congruence_signature(killing_form(L));
    INFO("pair (" << r.up << "," << r.low << ")");
    CHECK(p == r.pos);
    CHECK(n == r.neg);
  }
  // the mixed one-dimensional variant realizes the split three-dimensional form
  LieAlgebra M = build_algebra(o1_mixed_variant(), build_model("O1"));
  auto [p, n] = congruence_signature(killing_form(M));
  CHECK(p == 2);
  CHECK(n == 1);
  CHECK(verify_jacobi(M).pass());
}

TEST_CASE("per-ideal calibration fallback can be forced", "[magic]") {
  LieAlgebra L = build_algebra(build_model("O22"), build_model("O11"), Rat(1), true);
  CHECK(L.scalars.per_ideal_up);
  CHECK_FALSE(L.scalars.per_ideal_low);
  REQUIRE(L.scalars.up.size() == 3);  // one scalar per minimal ideal
  for (const Rat& c : L.scalars.up) CHECK(c == Rat(-16));
  REQUIRE(L.scalars.low.size() == 1);
  CHECK(L.scalars.low[0] == Rat(-12));
  CHECK(verify_jacobi(L).pass());
  // one-dimensional slots carry no scalar; the convenience helper reports zero
  auto c11 = calibrate_scalars(build_model("O1"), build_model("O1"));
  CHECK(c11.first == Rat(0));
  CHECK(c11.second == Rat(0));
}

TEST_CASE("rescaling the W pairing rescales the calibration", "[magic]") {
  LieAlgebra L4 = build_algebra(build_model("O22"), build_model("O11"), Rat(4));
  CHECK(L4.scalars.bracket_scale == Rat(4));
  CHECK(L4.scalars.c_up() == Rat(-4));   // -16 / 4
  CHECK(L4.scalars.c_low() == Rat(-3));  // -12 / 4
  CHECK(verify_jacobi(L4).pass());
  CHECK(verify_killing_structure(L4).report.pass());
}
