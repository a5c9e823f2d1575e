#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsionlab/boundary_models.hpp"
#include "torsionlab/spectral_models.hpp"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#ifndef TORSIONLAB_CLI
#error "TORSIONLAB_CLI must name the command-line binary"
#endif

using Json = nlohmann::json;

namespace {

std::string temp_path() {
  char name[] = "/tmp/torsionlab_cli_XXXXXX";
  const int fd = mkstemp(name);
  REQUIRE(fd >= 0);
  close(fd);
  return name;
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string err_path = temp_path();
  const std::string cmd = env + " " + TORSIONLAB_CLI + " " + args + " 2>" + err_path;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream e(err_path);
  r.err.assign(std::istreambuf_iterator<char>(e), std::istreambuf_iterator<char>());
  std::remove(err_path.c_str());
  return r;
}

std::string write_temp(const std::string& text) {
  const std::string path = temp_path();
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("preset torsion") {
  const Run r = run("torsion --preset circle --theta 1.5707963 --beta k --json");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["log_torsion"].get<double>() == doctest::Approx(0.693147).epsilon(1e-6));
  CHECK(r.err.empty());
}

TEST_CASE("beta outside the span warns but still reports") {
  const Run r = run("torsion --preset torus2 --beta 1,2,4 --json");
  CHECK(r.code == 0);
  CHECK(r.err.find("beta not in span{1,k}") != std::string::npos);
  CHECK(Json::parse(r.out).contains("log_torsion"));
}

TEST_CASE("input files") {
  const std::string good = write_temp(R"({"dimension": 1, "rank": 2, "generators": 1,
    "rep": [[[0.0, -1.0], [1.0, 0.0]]],
    "cells": [{"dim": 0, "boundary": []},
              {"dim": 1, "boundary": [{"cell": 0, "coeff": 1, "word": [[0, 1]]},
                                      {"cell": 0, "coeff": -1, "word": []}]}]})");
  const Run ok = run("torsion --input " + good + " --json");
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["log_torsion"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  std::remove(good.c_str());

  const std::string bad = write_temp("{\"dimension\": 1, \"rank\": ");
  CHECK(run("torsion --input " + bad).code == 2);
  std::remove(bad.c_str());
  CHECK(run("torsion --input /nonexistent/complex.json").code == 2);
  CHECK(run("torsion --preset circle --input x.json").code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run("--help").code == 0);
  CHECK(run("torsion --no-such-flag").code == 2);
  CHECK(run("torsion --preset moebius").code == 2);
  CHECK(run("zeta --model circle", "TORSIONLAB_QUAD_EPS=abc").code == 2);
  const Run na = run("torsion --preset circle --theta 0 --allow-non-acyclic");
  CHECK(na.code == 3);
  CHECK(na.err.find("degree") != std::string::npos);
  CHECK(run("torsion --preset circle --theta 0").code == 3);
  CHECK(run("zeta --model circle --s 0.5").code == 4);
  CHECK(run("gluing --split 2").code == 5);
  CHECK(run("verify --suite combinatorial --tol 1e-30").code == 1);
  CHECK(run("verify --suite combinatorial").code == 0);
  CHECK(run("model-torsion --model sphere2 --identities").code == 0);
  CHECK(run("model-torsion --model sphere2 --identities --tol 1e-30").code == 1);
  CHECK(run("zeta --model circle --s 2", "TORSIONLAB_QUAD_EPS=1e-10").code == 0);
}

TEST_CASE("output formats") {
  const Run csv = run("model-torsion --model sphere2 --csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("key,value\n", 0) == 0);
  CHECK(csv.out.find("log_residue_torsion,2\n") != std::string::npos);
  const Run pretty = run("model-torsion --model sphere2");
  REQUIRE(pretty.code == 0);
  CHECK(pretty.out.find("log_residue_torsion") != std::string::npos);
  const Run verify = run("verify --suite boundary");
  CHECK(verify.code == 0);
  CHECK(verify.out.find("PASS ") != std::string::npos);
  CHECK(verify.out.find(" passed\n") != std::string::npos);
}

TEST_CASE("deterministic output") {
  for (const char* args : {"verify --suite combinatorial --json", "model-torsion --model sphere2 --json",
                           "torsion --preset torus2 --metric random --seed 9 --json",
                           "gluing --geometry cylinder --json"}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json numbers are bit-exact against in-process values") {
  using namespace torsionlab;
  const Run s = run("model-torsion --model sphere2 --beta k --json");
  REQUIRE(s.code == 0);
  const Json js = Json::parse(s.out);
  const TorsionReport rs = residue_torsion(build_model({ClosedKind::Sphere2, 2 * std::numbers::pi, 0.0, 1, 2}),
                                           BetaWeight::degree(2));
  CHECK(js["log_residue_torsion"].get<double>() == rs.log_residue_torsion);
  CHECK(js["log_analytic_torsion"].get<double>() == rs.log_analytic_torsion);
  for (int k = 0; k <= 2; ++k) {
    CHECK(js["degrees"][k]["zeta0"].get<double>() == rs.degrees[static_cast<size_t>(k)].zeta0);
    CHECK(js["degrees"][k]["zeta_prime0"].get<double>() == rs.degrees[static_cast<size_t>(k)].zeta_prime0);
  }

  const Run z = run("zeta --model torus --n 2 --L 6.283185307179586 --degree 1 --s 0.75 --json");
  REQUIRE(z.code == 0);
  const ZetaEval ze = degree_zeta(build_model({ClosedKind::Torus, 2 * std::numbers::pi, 0.0, 1, 2}), 1, 0.75, false);
  CHECK(Json::parse(z.out)["value"].get<double>() == ze.value.real());

  const Run b = run("model-torsion --model interval --R 1 --condition absolute --rank 2 --json");
  REQUIRE(b.code == 0);
  const BoundaryTorsionReport rb =
      boundary_residue_torsion(build_interval(1.0, BoundaryCondition::absolute(), 2), BetaWeight::degree(1));
  CHECK(Json::parse(b.out)["weighted_zeta_sum"].get<double>() == rb.weighted_zeta_sum);
}
