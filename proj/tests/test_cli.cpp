#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = "TF_THREADS=1 " + std::string(TRICTL_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_file(const char* stem) {
  return std::string("cli_test_") + stem + "_" + std::to_string(getpid()) + ".json";
}

}  // namespace

TEST_CASE("models verify covers all built-ins and reports pass", "[cli]") {
  RunResult r = run_cli("models verify --all");
  CHECK(r.code == 0);
  for (const char* name : {"O1", "O11", "O2", "O22", "O4", "O44", "O8"})
    CHECK(r.out.find("model " + std::string(name) + " ") != std::string::npos);
  CHECK(r.out.find("hurwitz pass") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  RunResult one = run_cli("models verify --model O44");
  CHECK(one.code == 0);
  CHECK(one.out.find("model O44") != std::string::npos);
  CHECK(one.out.find("model O8") == std::string::npos);
}

TEST_CASE("usage errors exit with code two", "[cli]") {
  CHECK(run_cli("models verify").code == 2);             // neither selector
  CHECK(run_cli("models verify --model O16").code == 2);  // unknown model
  CHECK(run_cli("tau").code == 2);
  CHECK(run_cli("magic build --up O2").code == 2);        // missing --low
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("magic build --up O5 --low O2").code == 2);
}

TEST_CASE("tau table lists the preserver dimensions", "[cli]") {
  RunResult r = run_cli("tau --all");
  CHECK(r.code == 0);
  CHECK(r.out.find("O1 ") != std::string::npos);
  CHECK(r.out.find("tau_dim=0") != std::string::npos);
  CHECK(r.out.find("tau_dim=2") != std::string::npos);
  CHECK(r.out.find("tau_dim=9") != std::string::npos);
  CHECK(r.out.find("tau_dim=28") != std::string::npos);

  RunResult one = run_cli("tau --model O2");
  CHECK(one.code == 0);
  CHECK(one.out.find("tau_dim=2") != std::string::npos);
  CHECK(one.out.find("tau(0,0,0) = 1") != std::string::npos);
}

TEST_CASE("magic build emits the full report and exact JSON", "[cli]") {
  std::string path = tmp_file("a");
  RunResult r = run_cli("magic build --up O1 --low O1 --json " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("dim 3") != std::string::npos);
  CHECK(r.out.find("jacobi: pass") != std::string::npos);
  CHECK(r.out.find("label: A1") != std::string::npos);

  auto j = nlohmann::json::parse(slurp(path));
  const char* keys[] = {"n",    "n_prime",          "family", "dim",
                        "rank", "root_count",       "length_histogram",
                        "label", "jacobi",          "killing"};
  CHECK(j.size() == 10);
  for (const char* k : keys) REQUIRE(j.contains(k));
  CHECK(j["n"] == 1);
  CHECK(j["n_prime"] == 1);
  CHECK(j["family"] == "compact");
  CHECK(j["dim"] == 3);
  CHECK(j["rank"] == 1);
  CHECK(j["root_count"] == 2);
  CHECK(j["label"] == "A1");
  CHECK(j["jacobi"] == true);
  CHECK(j["length_histogram"]["1/2"] == 2);
  REQUIRE(j["killing"].size() == 3);
  CHECK(j["killing"]["block_orthogonal"] == true);
  CHECK(j["killing"]["lambda"] == "-2");
  CHECK(j["killing"]["nondegenerate"] == true);
  std::remove(path.c_str());
}

TEST_CASE("JSON output is byte-stable across runs", "[cli]") {
  std::string p1 = tmp_file("b1"), p2 = tmp_file("b2");
  REQUIRE(run_cli("magic build --up O11 --low O11 --json " + p1).code == 0);
  REQUIRE(run_cli("magic build --up O11 --low O11 --json " + p2).code == 0);
  std::string s1 = slurp(p1), s2 = slurp(p2);
  CHECK_FALSE(s1.empty());
  CHECK(s1 == s2);
  // timing is text-only; the report must not contain it
  CHECK(s1.find("elapsed") == std::string::npos);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("compact pairs report null root data but still verify", "[cli]") {
  std::string path = tmp_file("c");
  RunResult r = run_cli("magic build --up O2 --low O2 --json " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("jacobi: pass") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["family"] == "compact");
  CHECK(j["dim"] == 16);
  CHECK(j["rank"].is_null());
  CHECK(j["root_count"].is_null());
  CHECK(j["length_histogram"].is_null());
  CHECK(j["label"].is_null());
  CHECK(j["jacobi"] == true);
  std::remove(path.c_str());

  // explicit identification of a compact pair is a verification failure
  CHECK(run_cli("magic identify --up O2 --low O2").code == 1);
}

TEST_CASE("magic subcommands agree with the library values", "[cli]") {
  RunResult jac = run_cli("magic jacobi --up O11 --low O1");
  CHECK(jac.code == 0);
  CHECK(jac.out.find("pass") != std::string::npos);

  RunResult kil = run_cli("magic killing --up O11 --low O11");
  CHECK(kil.code == 0);
  CHECK(kil.out.find("-24") != std::string::npos);

  RunResult ident = run_cli("magic identify --up O22 --low O11");
  CHECK(ident.code == 0);
  CHECK(ident.out.find("A5") != std::string::npos);
}

TEST_CASE("magic table prints the dimension square with labels", "[cli]") {
  RunResult r = run_cli("magic table");
  CHECK(r.code == 0);
  for (const char* d : {"3", "8", "21", "52", "16", "35", "78", "66", "133", "248"})
    CHECK(r.out.find(d) != std::string::npos);
  for (const char* l : {"A1", "A2", "C3", "F4", "A5", "D6", "E6", "E7", "E8"})
    CHECK(r.out.find(l) != std::string::npos);
}

TEST_CASE("cube analyze prints forms, kappa and identity status", "[cli]") {
  RunResult r = run_cli("cube analyze 3,-1,0,-1,2,-1,2,3");
  CHECK(r.code == 0);
  CHECK(r.out.find("177") != std::string::npos);
  CHECK(r.out.find("1/354") != std::string::npos);
  CHECK(r.out.find("main3 pass") != std::string::npos);

  CHECK(run_cli("cube analyze 1,2,3").code == 2);          // wrong arity
  CHECK(run_cli("cube analyze 1,2,x,4,5,6,7,8").code == 2);  // not integers
}

TEST_CASE("cube universal runs the grid and its control", "[cli]") {
  RunResult r = run_cli("cube universal");
  CHECK(r.code == 0);
  CHECK(r.out.find("identities hold") != std::string::npos);
  CHECK(r.out.find("wrong-scalar control") != std::string::npos);
}
