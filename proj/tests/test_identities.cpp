#include <catch2/catch_amalgamated.hpp>

#include "tri/identities.hpp"
#include "tri/models.hpp"

using namespace tri;

TEST_CASE("composition identity holds exactly for every model", "[identities]") {
  for (const auto& name : model_names()) {
    TrialityModel m = build_model(name);
    IdentityReport rep = verify_composition(m);
    INFO("model " << name);
    REQUIRE(rep.checks.size() == 3);
    CHECK(rep.pass());
    CHECK(rep.max_residual() == Rat(0));
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.pass);
      CHECK(c.residual == Rat(0));
    }
  }
}

TEST_CASE("structure relations hold exactly for every model", "[identities]") {
  for (const auto& name : model_names()) {
    TrialityModel m = build_model(name);
    IdentityReport rep = verify_structure_relations(m);
    INFO("model " << name);
    REQUIRE(rep.checks.size() == 27);  // nine relations, three colour rotations
    CHECK(rep.pass());
    CHECK(rep.max_residual() == Rat(0));
  }
}

TEST_CASE("structure relations cover all three colour rotations", "[identities]") {
  IdentityReport rep = verify_structure_relations(build_model("O2"));
  int plain = 0, rot1 = 0, rot2 = 0;
  for (const auto& c : rep.checks) {
    if (c.name.size() > 5 && c.name.substr(c.name.size() - 5) == ".rot1")
      ++rot1;
    else if (c.name.size() > 5 && c.name.substr(c.name.size() - 5) == ".rot2")
      ++rot2;
    else
      ++plain;
  }
  CHECK(plain == 9);
  CHECK(rot1 == 9);
  CHECK(rot2 == 9);
}

TEST_CASE("dimension obstruction scalar", "[identities]") {
  // n^2 (n-1) (n-2) (n-4) (n-8)
  CHECK(hurwitz_scalar(3) == 90);
  CHECK(hurwitz_scalar(5) == -900);
  CHECK(hurwitz_scalar(0) == 0);
  CHECK(hurwitz_scalar(1) == 0);
  CHECK(hurwitz_scalar(2) == 0);
  CHECK(hurwitz_scalar(4) == 0);
  CHECK(hurwitz_scalar(8) == 0);
  for (const auto& name : model_names()) {
    TrialityModel m = build_model(name);
    IdentityReport rep = hurwitz_obstruction(m);
    INFO("model " << name);
    CHECK(rep.pass());
    CHECK(rep.max_residual() == Rat(0));
  }
}

TEST_CASE("Lie normalization of the skew box is a quarter of the plain one",
          "[identities]") {
  for (const char* name : {"O2", "O11", "O4"}) {
    TrialityModel m = build_model(name);
    for (int colour = 1; colour <= 3; ++colour) {
      Tensor plain = skew_box(m, colour);
      Tensor lie = skew_box_lie(m, colour);
      CHECK(frac(1, 4) * plain == lie);
      CHECK_FALSE(plain.is_zero());
    }
  }
}

TEST_CASE("relation checks detect a corrupted table", "[identities]") {
  TrialityModel m = build_model("O11");
  m.tau.at({1, 1, 0}) = -m.tau.at({1, 1, 0});
  IdentityReport comp = verify_composition(m);
  CHECK_FALSE(comp.pass());
  CHECK(comp.max_residual() != Rat(0));
  bool some_witness = false;
  for (const auto& c : comp.checks)
    if (!c.pass && !c.witness.empty()) some_witness = true;
  CHECK(some_witness);
  CHECK_FALSE(verify_structure_relations(m).pass());
}
