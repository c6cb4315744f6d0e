#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "tri/models.hpp"

using namespace tri;

TEST_CASE("the seven built-in models have the advertised shape", "[models]") {
  const std::map<std::string, std::pair<int, std::string>> expect = {
      {"O1", {1, "compact"}},  {"O11", {2, "split"}}, {"O2", {2, "compact"}},
      {"O22", {4, "split"}},   {"O4", {4, "compact"}}, {"O44", {8, "split"}},
      {"O8", {8, "compact"}}};
  REQUIRE(model_names().size() == 7);
  for (const auto& name : model_names()) {
    TrialityModel m = build_model(name);
    INFO("model " << name);
    auto it = expect.find(name);
    REQUIRE(it != expect.end());
    CHECK(m.n == it->second.first);
    CHECK(m.family == it->second.second);
    CHECK(m.tau.shape == std::vector<int>({m.n, m.n, m.n}));
    for (int f = 0; f < 3; ++f) {
      REQUIRE(int(m.metric[f].size()) == m.n);
      REQUIRE(int(m.coord_labels[f].size()) == m.n);
    }
  }
  CHECK_THROWS_AS(build_model("O16"), std::invalid_argument);
}

TEST_CASE("metrics and original coordinate labels", "[models]") {
  TrialityModel o44 = build_model("O44");
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i < 8; ++i) CHECK(o44.metric[f][i] == (i < 4 ? 1 : -1));

  TrialityModel o22 = build_model("O22");
  for (int f = 0; f < 3; ++f) {
    CHECK(o22.metric[f] == std::vector<int>({1, 1, -1, -1}));
    CHECK(o22.coord_labels[f] == std::vector<int>({1, 2, 7, 8}));
  }

  TrialityModel o11 = build_model("O11");
  for (int f = 0; f < 3; ++f) {
    CHECK(o11.metric[f] == std::vector<int>({1, -1}));
    CHECK(o11.coord_labels[f] == std::vector<int>({1, 8}));
  }

  for (const char* name : {"O1", "O2", "O4", "O8"}) {
    TrialityModel m = build_model(name);
    for (int f = 0; f < 3; ++f)
      for (int i = 0; i < m.n; ++i) {
        CHECK(m.metric[f][i] == 1);
        CHECK(m.coord_labels[f][i] == i + 1);
      }
  }
}

TEST_CASE("each tau is a signed multiplication table with a unit", "[models]") {
  for (const auto& name : model_names()) {
    TrialityModel m = build_model(name);
    INFO("model " << name);
    CHECK(m.tval(0, 0, 0) == 1);
    int nonzero = 0;
    for (int a = 0; a < m.n; ++a)
      for (int b = 0; b < m.n; ++b) {
        int hits = 0;
        for (int c = 0; c < m.n; ++c) {
          int v = m.tval(a, b, c);
          CHECK((v == -1 || v == 0 || v == 1));
          if (v != 0) ++hits;
        }
        // exactly one basis product per pair, with sign
        CHECK(hits == 1);
        nonzero += hits;
      }
    CHECK(nonzero == m.n * m.n);
    // first-coordinate rows are diagonal with unit entries; the diagonal
    // sign patterns are part of the tables themselves
    for (int b = 0; b < m.n; ++b) {
      CHECK(m.tval(0, b, b) * m.tval(0, b, b) == 1);
      CHECK(m.tval(b, 0, b) * m.tval(b, 0, b) == 1);
      for (int c = 0; c < m.n; ++c)
        if (c != b) {
          CHECK(m.tval(0, b, c) == 0);
          CHECK(m.tval(b, 0, c) == 0);
        }
    }
    // Latin-square property: fixing any two slots determines the third
    for (int u = 0; u < m.n; ++u)
      for (int v = 0; v < m.n; ++v) {
        int by_ac = 0, by_bc = 0;
        for (int w = 0; w < m.n; ++w) {
          if (m.tval(u, w, v) != 0) ++by_ac;
          if (m.tval(w, u, v) != 0) ++by_bc;
        }
        CHECK(by_ac == 1);
        CHECK(by_bc == 1);
      }
  }
}

TEST_CASE("restrictions embed into the eight-dimensional tables", "[models]") {
  TrialityModel o44 = build_model("O44");
  TrialityModel o8 = build_model("O8");
  auto check_embed = [](const TrialityModel& sub, const TrialityModel& parent) {
    std::vector<int> k;
    for (int lbl : sub.coord_labels[0]) k.push_back(lbl - 1);
    for (int a = 0; a < sub.n; ++a)
      for (int b = 0; b < sub.n; ++b)
        for (int c = 0; c < sub.n; ++c)
          REQUIRE(sub.tval(a, b, c) == parent.tval(k[a], k[b], k[c]));
    for (int f = 0; f < 3; ++f)
      for (int i = 0; i < sub.n; ++i)
        REQUIRE(sub.metric[f][i] == parent.metric[f][k[i]]);
  };
  check_embed(build_model("O22"), o44);
  check_embed(build_model("O11"), o44);
  check_embed(build_model("O4"), o8);
  check_embed(build_model("O2"), o8);
  check_embed(build_model("O1"), o8);
}

TEST_CASE("restrict_model validates keep sets and recomputes the family",
          "[models]") {
  TrialityModel o44 = build_model("O44");
  std::array<std::vector<int>, 3> bad = {
      std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}, std::vector<int>{0, 1}};
  CHECK_THROWS_AS(restrict_model(o44, bad, "X"), std::invalid_argument);

  std::array<std::vector<int>, 3> keep = {std::vector<int>{0, 4},
                                          std::vector<int>{0, 4},
                                          std::vector<int>{0, 4}};
  TrialityModel r = restrict_model(o44, keep, "R");
  CHECK(r.name == "R");
  CHECK(r.n == 2);
  CHECK(r.family == "split");
  CHECK(r.coord_labels[0] == std::vector<int>({1, 5}));
}

TEST_CASE("one-dimensional mixed variant is a split triality", "[models]") {
  TrialityModel m = o1_mixed_variant();  // throws if composition broke
  CHECK(m.n == 1);
  CHECK(m.family == "split");
  CHECK(m.metric[0] == std::vector<int>({1}));
  CHECK(m.metric[1] == std::vector<int>({-1}));
  CHECK(m.metric[2] == std::vector<int>({-1}));
  CHECK(composition_holds(m));
}

TEST_CASE("composition check has teeth", "[models]") {
  TrialityModel m = build_model("O2");
  CHECK(composition_holds(m));
  m.tau.at({0, 1, 1}) = Rat(-1);  // flip one product sign
  CHECK_FALSE(composition_holds(m));
  CHECK_THROWS_AS(verify_composition_or_throw(m), std::runtime_error);
}
