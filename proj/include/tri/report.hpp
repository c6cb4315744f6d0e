#pragma once

// JSON views of verification results. Rationals are rendered as "p/q"
// strings so the output stays exact and byte-stable; timing never goes
// into JSON.

#include <map>
#include <string>

#include "json.hpp"

#include "tri/identities.hpp"
#include "tri/magic.hpp"
#include "tri/rational.hpp"
#include "tri/roots.hpp"

namespace tri {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const IdentityCheck& c) {
  ordered_json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["residual"] = rat_str(c.residual);
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

inline ordered_json to_json(const IdentityReport& r) {
  ordered_json j;
  j["subject"] = r.subject;
  j["pass"] = r.pass();
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

inline ordered_json histogram_json(const std::map<Rat, int>& h) {
  ordered_json j = ordered_json::object();
  for (const auto& [len, cnt] : h) j[rat_str(len)] = cnt;
  return j;
}

// Report for one built pair. id may be null when no split torus is
// available for root extraction.
inline ordered_json magic_report_json(const LieAlgebra& L, bool jacobi_pass,
                                      const KillingStructure& ks,
                                      const Identification* id) {
  ordered_json j;
  j["n"] = L.n;
  j["n_prime"] = L.np;
  j["family"] = L.family;
  j["dim"] = L.dim;
  if (id) {
    j["rank"] = id->rank;
    j["root_count"] = id->root_count;
    j["length_histogram"] = histogram_json(id->length_histogram);
    j["label"] = id->label;
  } else {
    j["rank"] = nullptr;
    j["root_count"] = nullptr;
    j["length_histogram"] = nullptr;
    j["label"] = nullptr;
  }
  j["jacobi"] = jacobi_pass;
  ordered_json k;
  k["block_orthogonal"] = ks.report.checks.at(0).pass;
  k["lambda"] = rat_str(ks.lambda);
  k["nondegenerate"] = ks.nondegenerate;
  j["killing"] = k;
  return j;
}

}  // namespace tri
