#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tri/cube.hpp"

using namespace tri;

namespace {

Cube make_cube(std::initializer_list<long> vals) {
  Cube k;
  auto it = vals.begin();
  for (int i = 0; i < 8; ++i) k.t[i] = mpz_class(*it++);
  return k;
}

Cube random_cube(std::mt19937& rng, int span = 9) {
  std::uniform_int_distribution<int> d(-span, span);
  Cube k;
  for (auto& v : k.t) v = d(rng);
  return k;
}

// product of elementary shears, determinant exactly one
M2<mpz_class> random_unimodular(std::mt19937& rng) {
  std::uniform_int_distribution<int> sh(-3, 3);
  std::uniform_int_distribution<int> cnt(1, 4);
  M2<mpz_class> u = {{{1, 0}, {0, 1}}};
  int steps = cnt(rng);
  for (int s = 0; s < steps; ++s) {
    long k = sh(rng);
    M2<mpz_class> e = (s % 2 == 0) ? M2<mpz_class>{{{1, k}, {0, 1}}}
                                   : M2<mpz_class>{{{1, 0}, {k, 1}}};
    u = detail::m2mul(u, e);
  }
  return u;
}

}  // namespace

TEST_CASE("worked example forms and discriminant", "[cube]") {
  Cube k = make_cube({3, -1, 0, -1, 2, -1, 2, 3});
  CHECK(k.tau(0, 0, 0) == 3);
  CHECK(k.tau(1, 1, 1) == 3);
  CHECK(k.tau(0, 1, 0) == 0);

  auto F = recover_forms(k);
  CHECK(F[0].a == -3);
  CHECK(F[0].b == 9);
  CHECK(F[0].c == 8);
  CHECK(F[1].a == -1);
  CHECK(F[1].b == 13);
  CHECK(F[1].c == 2);
  CHECK(F[2].a == 6);
  CHECK(F[2].b == 9);
  CHECK(F[2].c == -4);

  auto G = detail::contractions(k.t);
  const long g1[2][2] = {{-6, 9}, {9, 16}};
  const long g2[2][2] = {{-2, 13}, {13, 4}};
  const long g3[2][2] = {{12, 9}, {9, -8}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(G[0][i][j] == g1[i][j]);
      CHECK(G[1][i][j] == g2[i][j]);
      CHECK(G[2][i][j] == g3[i][j]);
    }
  for (int s = 0; s < 3; ++s) CHECK(detail::det2(G[s]) == -177);

  CHECK(discriminants(k) == 177);
  CHECK(disc_quartic(k) == 177);
  auto kp = kappa(k);
  REQUIRE(kp.has_value());
  CHECK(*kp == frac(1, 354));
  CHECK(verify_cleared_identities(k).pass());
}

TEST_CASE("discriminant equals the quartic expansion", "[cube]") {
  std::mt19937 rng(8128);
  for (int trial = 0; trial < 200; ++trial) {
    Cube k = random_cube(rng);
    CHECK(disc_quartic(k) == discriminants(k));
  }
}

TEST_CASE("kappa needs a nondegenerate cube and scales inversely to the fourth power",
          "[cube]") {
  CHECK_FALSE(kappa(make_cube({0, 0, 0, 0, 0, 0, 0, 0})).has_value());
  CHECK_FALSE(kappa(make_cube({1, 0, 0, 0, 0, 0, 0, 0})).has_value());

  Cube k = make_cube({3, -1, 0, -1, 2, -1, 2, 3});
  Cube k2 = k;
  for (auto& v : k2.t) v *= 2;
  auto a = kappa(k), b = kappa(k2);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(*b * Rat(16) == *a);
  CHECK(discriminants(k2) == 16 * discriminants(k));
}

TEST_CASE("slot action transforms one contraction and fixes the others", "[cube]") {
  std::mt19937 rng(60902);
  int interesting = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Cube k = random_cube(rng);
    int slot = 1 + int(rng() % 3);
    M2<mpz_class> u = random_unimodular(rng);
    Cube moved = apply_slot(k, slot, u);

    auto G = detail::contractions(k.t);
    auto H = detail::contractions(moved.t);
    mpz_class d = discriminants(k);
    if (d != 0) ++interesting;
    CHECK(discriminants(moved) == d);
    for (int s = 0; s < 3; ++s) {
      M2<mpz_class> expect = G[s];
      if (s == slot - 1)
        expect = detail::m2mul(detail::m2mul(u, G[s]), detail::m2transpose(u));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) REQUIRE(H[s][i][j] == expect[i][j]);
    }
  }
  CHECK(interesting > 900);  // the sample is overwhelmingly nondegenerate
}

TEST_CASE("identity checks flag a broken relation", "[cube]") {
  Cube k = make_cube({3, -1, 0, -1, 2, -1, 2, 3});
  IdentityReport good = verify_cleared_identities(k);
  REQUIRE(good.checks.size() == 4);  // discriminant agreement plus three mains
  for (const auto& c : good.checks) CHECK(c.residual == Rat(0));
  // the wrong normalization scalar fails on this concrete cube as well
  CHECK(detail::cleared_residual(k.t, 1, true) != 0);
}

TEST_CASE("grid verification proves the polynomial identities", "[cube]") {
  UniversalReport real = verify_universal_identities(false);
  CHECK(real.pass);
  CHECK(real.cubes_checked == 390625);  // 5^8
  CHECK(real.witness.empty());

  UniversalReport ctrl = verify_universal_identities(true);
  CHECK_FALSE(ctrl.pass);
  CHECK_FALSE(ctrl.witness.empty());
  CHECK(ctrl.cubes_checked < real.cubes_checked);  // stops at the witness
}
