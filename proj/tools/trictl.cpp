// trictl: command line front end for the exact triality / magic square /
// cube toolkit. Exit codes: 0 all checks pass, 1 a verification failed,
// 2 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tri/cube.hpp"
#include "tri/identities.hpp"
#include "tri/magic.hpp"
#include "tri/models.hpp"
#include "tri/parallel.hpp"
#include "tri/report.hpp"
#include "tri/roots.hpp"

using namespace tri;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double>(dt).count();
}

bool known_model(const std::string& name) {
  for (const auto& n : model_names())
    if (n == name) return true;
  return false;
}

// resolve --model NAME / --all into a model list; exit code 2 on bad usage
int select_models(const std::string& name, bool all, std::vector<std::string>& out) {
  if (all == !name.empty()) {
    std::cerr << "error: give exactly one of --model NAME or --all\n";
    return 2;
  }
  if (all) {
    out = model_names();
    return 0;
  }
  if (!known_model(name)) {
    std::cerr << "error: unknown model " << name << " (known:";
    for (const auto& n : model_names()) std::cerr << " " << n;
    std::cerr << ")\n";
    return 2;
  }
  out = {name};
  return 0;
}

void print_report(const IdentityReport& rep, bool verbose_fail_only = true) {
  for (const auto& c : rep.checks) {
    if (c.pass && verbose_fail_only) continue;
    std::printf("  %-34s %s residual %s%s\n", c.name.c_str(),
                c.pass ? "pass" : "FAIL", rat_str(c.residual).c_str(),
                c.witness.empty() ? "" : (" at " + c.witness).c_str());
  }
}

int cmd_models_verify(const std::string& name, bool all) {
  std::vector<std::string> names;
  if (int rc = select_models(name, all, names)) return rc;
  std::vector<std::string> lines(names.size());
  std::vector<int> status(names.size(), 0);
  std::vector<std::vector<IdentityReport>> fails(names.size());
  parallel_for(int(names.size()), [&](int i) {
    TrialityModel m = build_model(names[i]);
    IdentityReport comp = verify_composition(m);
    IdentityReport rel = verify_structure_relations(m);
    IdentityReport hur = hurwitz_obstruction(m);
    bool ok = comp.pass() && rel.pass() && hur.pass();
    std::ostringstream os;
    os << "model " << m.name << " (n=" << m.n << ", " << m.family
       << "): composition " << (comp.pass() ? "pass" : "FAIL") << ", relations "
       << (rel.pass() ? "pass" : "FAIL") << " (" << rel.checks.size()
       << " checks), hurwitz " << (hur.pass() ? "pass" : "FAIL");
    lines[i] = os.str();
    status[i] = ok ? 0 : 1;
    if (!ok) fails[i] = {comp, rel, hur};
  });
  int rc = 0;
  for (size_t i = 0; i < names.size(); ++i) {
    std::printf("%s\n", lines[i].c_str());
    for (const auto& rep : fails[i]) print_report(rep);
    rc |= status[i];
  }
  return rc;
}

int cmd_tau(const std::string& name, bool all) {
  std::vector<std::string> names;
  if (int rc = select_models(name, all, names)) return rc;
  for (const auto& nm : names) {
    TrialityModel m = build_model(nm);
    TrialityAlgebra t = triality_algebra(m);
    int nonzero = 0;
    for (int a = 0; a < m.n; ++a)
      for (int b = 0; b < m.n; ++b)
        for (int c = 0; c < m.n; ++c)
          if (m.tval(a, b, c) != 0) ++nonzero;
    std::printf("model %-4s n=%d family=%-7s tau_dim=%-2d nonzero=%d\n",
                m.name.c_str(), m.n, m.family.c_str(), t.dim, nonzero);
    if (names.size() == 1)
      for (int a = 0; a < m.n; ++a)
        for (int b = 0; b < m.n; ++b)
          for (int c = 0; c < m.n; ++c)
            if (m.tval(a, b, c) != 0)
              std::printf("  tau(%d,%d,%d) = %d\n", a, b, c, m.tval(a, b, c));
  }
  return 0;
}

int check_pair_names(const std::string& up, const std::string& low) {
  if (!known_model(up) || !known_model(low)) {
    std::cerr << "error: unknown model in pair (" << up << ", " << low << ")\n";
    return 2;
  }
  return 0;
}

std::string scalars_text(const Calibration& c) {
  auto side = [](const std::vector<Rat>& v, bool per_ideal) {
    if (v.empty()) return std::string("none (t empty)");
    if (!per_ideal) return rat_str(v[0]) + " (global)";
    std::string s = "per-ideal [";
    for (size_t i = 0; i < v.size(); ++i)
      s += (i ? ", " : "") + rat_str(v[i]);
    return s + "]";
  };
  return "c_up = " + side(c.up, c.per_ideal_up) +
         ", c_low = " + side(c.low, c.per_ideal_low) +
         ", bracket scale = " + rat_str(c.bracket_scale);
}

int cmd_magic_build(const std::string& up, const std::string& low,
                    const std::string& json_path) {
  if (int rc = check_pair_names(up, low)) return rc;
  auto t0 = std::chrono::steady_clock::now();
  LieAlgebra L;
  try {
    L = build_algebra(build_model(up), build_model(low));
  } catch (const std::exception& e) {
    std::cerr << "build failed: " << e.what() << "\n";
    return 1;
  }
  std::printf("pair (%s, %s)  n=%d n'=%d  family=%s\n", up.c_str(), low.c_str(),
              L.n, L.np, L.family.c_str());
  std::printf("dim %d = t_up %d + t_low %d + W %d\n", L.dim, L.du, L.dl, L.wdim);
  std::printf("calibration: %s\n", scalars_text(L.scalars).c_str());

  IdentityReport jac = verify_jacobi(L);
  std::printf("jacobi: %s\n", jac.pass() ? "pass" : "FAIL");
  if (!jac.pass()) print_report(jac);

  KillingStructure ks = verify_killing_structure(L);
  std::printf("killing: block orthogonal %s, lambda = %s, nondegenerate %s\n",
              ks.report.checks.at(0).pass ? "yes" : "NO",
              rat_str(ks.lambda).c_str(), ks.nondegenerate ? "yes" : "NO");
  if (!ks.report.pass()) print_report(ks.report);

  Identification id;
  bool have_id = false;
  std::string root_err;
  if (split_capable(up) && split_capable(low)) {
    try {
      id = identify(L);
      have_id = true;
    } catch (const std::exception& e) {
      root_err = e.what();
    }
  }
  if (have_id) {
    std::string hist;
    for (const auto& [len, cnt] : id.length_histogram)
      hist += (hist.empty() ? "" : ", ") + rat_str(len) + ": " + std::to_string(cnt);
    std::printf("roots: rank %d, %d roots, lengths {%s}\n", id.rank,
                id.root_count, hist.c_str());
    std::printf("label: %s\n", id.label.c_str());
  } else if (!root_err.empty()) {
    std::printf("roots: extraction failed: %s\n", root_err.c_str());
  } else {
    std::printf("roots: not extracted (pair has no split torus data)\n");
  }

  if (!json_path.empty()) {
    ordered_json j =
        magic_report_json(L, jac.pass(), ks, have_id ? &id : nullptr);
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return 2;
    }
    out << j.dump(2) << "\n";
  }
  std::printf("elapsed: %.2f s\n", seconds_since(t0));
  bool ok = jac.pass() && ks.report.pass() && root_err.empty();
  return ok ? 0 : 1;
}

int cmd_magic_jacobi(const std::string& up, const std::string& low) {
  if (int rc = check_pair_names(up, low)) return rc;
  auto t0 = std::chrono::steady_clock::now();
  LieAlgebra L;
  try {
    L = build_algebra(build_model(up), build_model(low));
  } catch (const std::exception& e) {
    std::cerr << "build failed: " << e.what() << "\n";
    return 1;
  }
  IdentityReport jac = verify_jacobi(L);
  std::printf("pair (%s, %s) dim %d: jacobi %s\n", up.c_str(), low.c_str(),
              L.dim, jac.pass() ? "pass" : "FAIL");
  if (!jac.pass()) print_report(jac);
  std::printf("elapsed: %.2f s\n", seconds_since(t0));
  return jac.pass() ? 0 : 1;
}

int cmd_magic_killing(const std::string& up, const std::string& low) {
  if (int rc = check_pair_names(up, low)) return rc;
  auto t0 = std::chrono::steady_clock::now();
  LieAlgebra L;
  try {
    L = build_algebra(build_model(up), build_model(low));
  } catch (const std::exception& e) {
    std::cerr << "build failed: " << e.what() << "\n";
    return 1;
  }
  KillingStructure ks = verify_killing_structure(L);
  std::printf("pair (%s, %s) dim %d\n", up.c_str(), low.c_str(), L.dim);
  std::printf("killing: block orthogonal %s, lambda = %s, nondegenerate %s\n",
              ks.report.checks.at(0).pass ? "yes" : "NO",
              rat_str(ks.lambda).c_str(), ks.nondegenerate ? "yes" : "NO");
  print_report(ks.report, false);
  std::printf("elapsed: %.2f s\n", seconds_since(t0));
  return ks.report.pass() ? 0 : 1;
}

int cmd_magic_identify(const std::string& up, const std::string& low) {
  if (int rc = check_pair_names(up, low)) return rc;
  auto t0 = std::chrono::steady_clock::now();
  try {
    LieAlgebra L = build_algebra(build_model(up), build_model(low));
    Identification id = identify(L);
    std::string hist;
    for (const auto& [len, cnt] : id.length_histogram)
      hist += (hist.empty() ? "" : ", ") + rat_str(len) + ": " + std::to_string(cnt);
    std::printf("pair (%s, %s): %s  (dim %d, rank %d, %d roots, lengths {%s})\n",
                up.c_str(), low.c_str(), id.label.c_str(), id.dim, id.rank,
                id.root_count, hist.c_str());
    std::printf("elapsed: %.2f s\n", seconds_since(t0));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "identify failed: " << e.what() << "\n";
    return 1;
  }
}

int cmd_magic_table() {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> split_names = {"O1", "O11", "O22", "O44"};
  const int ns[4] = {1, 2, 4, 8};
  int dims[16];
  std::string errs[16];
  parallel_for(16, [&](int idx) {
    int r = idx / 4, c = idx % 4;
    try {
      LieAlgebra L =
          build_algebra(build_model(split_names[r]), build_model(split_names[c]));
      dims[idx] = L.dim;
    } catch (const std::exception& e) {
      dims[idx] = -1;
      errs[idx] = e.what();
    }
  });
  int rc = 0;
  std::printf("dims (row: up factor n, column: low factor n)\n");
  std::printf("%6s", "");
  for (int c = 0; c < 4; ++c) std::printf("%7d", ns[c]);
  std::printf("\n");
  for (int r = 0; r < 4; ++r) {
    std::printf("%6d", ns[r]);
    for (int c = 0; c < 4; ++c) std::printf("%7d", dims[r * 4 + c]);
    std::printf("\n");
  }
  std::printf("\nlabels (by dimension profile)\n");
  std::printf("%6s", "");
  for (int c = 0; c < 4; ++c) std::printf("%7d", ns[c]);
  std::printf("\n");
  for (int r = 0; r < 4; ++r) {
    std::printf("%6d", ns[r]);
    for (int c = 0; c < 4; ++c) {
      const char* label = "?";
      for (const auto& p : detail::known_profiles())
        if (p.dim == dims[r * 4 + c]) label = p.label;
      std::printf("%7s", label);
      if (dims[r * 4 + c] < 0) rc = 1;
    }
    std::printf("\n");
  }
  for (int i = 0; i < 16; ++i)
    if (!errs[i].empty()) std::printf("build (%d,%d) failed: %s\n", ns[i / 4],
                                      ns[i % 4], errs[i].c_str());
  std::printf("elapsed: %.2f s\n", seconds_since(t0));
  return rc;
}

int cmd_cube_analyze(const std::string& entries) {
  Cube K;
  {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : entries) {
      if (ch == ',') {
        toks.push_back(cur);
        cur.clear();
      } else if (!isspace(static_cast<unsigned char>(ch))) {
        cur += ch;
      }
    }
    toks.push_back(cur);
    if (toks.size() != 8) {
      std::cerr << "error: need 8 comma separated integers, got " << toks.size()
                << "\n";
      return 2;
    }
    try {
      for (int i = 0; i < 8; ++i) K.t[i] = mpz_class(toks[i]);
    } catch (const std::invalid_argument&) {
      std::cerr << "error: entries must be integers\n";
      return 2;
    }
  }
  std::string cs;
  for (int i = 0; i < 8; ++i) cs += (i ? ", " : "") + K.t[i].get_str();
  std::printf("cube (%s)\n", cs.c_str());
  auto F = recover_forms(K);
  for (int s = 0; s < 3; ++s)
    std::printf("form %d: %s x^2 + %s xy + %s y^2   disc %s\n", s + 1,
                F[s].a.get_str().c_str(), F[s].b.get_str().c_str(),
                F[s].c.get_str().c_str(), F[s].disc().get_str().c_str());
  IdentityReport rep = verify_cleared_identities(K);
  bool disc_ok = rep.checks.at(0).pass;
  if (disc_ok) {
    mpz_class d = F[0].disc();
    std::printf("discriminant: %s (quartic expansion %s)\n", d.get_str().c_str(),
                disc_quartic(K).get_str().c_str());
  }
  if (auto kap = kappa(K))
    std::printf("kappa: %s\n", rat_str(*kap).c_str());
  else
    std::printf("kappa: none (degenerate cube)\n");
  std::printf("identities:");
  for (const auto& c : rep.checks)
    std::printf(" %s %s", c.name.c_str(), c.pass ? "pass" : "FAIL");
  std::printf("\n");
  return rep.pass() && disc_quartic(K) == F[0].disc() ? 0 : 1;
}

int cmd_cube_universal() {
  auto t0 = std::chrono::steady_clock::now();
  UniversalReport real = verify_universal_identities(false);
  std::printf("grid {0..4}^8: %ld cubes, identities %s\n", real.cubes_checked,
              real.pass ? "hold" : ("FAIL at " + real.witness).c_str());
  UniversalReport ctrl = verify_universal_identities(true);
  std::printf("wrong-scalar control (+1 in place of -1/2): %s\n",
              ctrl.pass ? "NOT detected (test has no power)"
                        : ("fails at " + ctrl.witness + " as required").c_str());
  std::printf("elapsed: %.2f s\n", seconds_since(t0));
  return real.pass && !ctrl.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rational verification of trialities, magic square "
               "algebras and 2x2x2 cubes"};
  app.require_subcommand(1);

  std::string model_name, up, low, json_path, cube_entries;
  bool all = false;

  CLI::App* models = app.add_subcommand("models", "triality model checks");
  models->require_subcommand(1);
  CLI::App* mverify =
      models->add_subcommand("verify", "composition, structure relations, "
                                       "dimension obstruction");
  mverify->add_option("--model", model_name, "model name");
  mverify->add_flag("--all", all, "verify every model");

  CLI::App* tau = app.add_subcommand("tau", "print structure tensor data");
  tau->add_option("--model", model_name, "model name");
  tau->add_flag("--all", all, "all models");

  CLI::App* magic = app.add_subcommand("magic", "pair algebra operations");
  magic->require_subcommand(1);
  CLI::App* mbuild = magic->add_subcommand("build", "build and verify one pair");
  CLI::App* mjac = magic->add_subcommand("jacobi", "Jacobi identity only");
  CLI::App* mkill = magic->add_subcommand("killing", "Killing form structure");
  CLI::App* mident = magic->add_subcommand("identify", "root system label");
  CLI::App* mtable = magic->add_subcommand("table", "dimension table, all pairs");
  for (CLI::App* c : {mbuild, mjac, mkill, mident}) {
    c->add_option("--up", up, "upper factor model")->required();
    c->add_option("--low", low, "lower factor model")->required();
  }
  mbuild->add_option("--json", json_path, "write JSON report to this path");

  CLI::App* cube = app.add_subcommand("cube", "2x2x2 integer cubes");
  cube->require_subcommand(1);
  CLI::App* canalyze = cube->add_subcommand("analyze", "forms and identities "
                                                       "of one cube");
  canalyze->add_option("entries", cube_entries, "A,B,C,D,E,F,G,H")->required();
  CLI::App* cuniv =
      cube->add_subcommand("universal", "grid proof of the polynomial laws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (models->parsed() && mverify->parsed()) return cmd_models_verify(model_name, all);
  if (tau->parsed()) return cmd_tau(model_name, all);
  if (magic->parsed()) {
    if (mbuild->parsed()) return cmd_magic_build(up, low, json_path);
    if (mjac->parsed()) return cmd_magic_jacobi(up, low);
    if (mkill->parsed()) return cmd_magic_killing(up, low);
    if (mident->parsed()) return cmd_magic_identify(up, low);
    if (mtable->parsed()) return cmd_magic_table();
  }
  if (cube->parsed()) {
    if (canalyze->parsed()) return cmd_cube_analyze(cube_entries);
    if (cuniv->parsed()) return cmd_cube_universal();
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
