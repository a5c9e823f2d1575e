#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsionlab/report.hpp"
#include "torsionlab/verify.hpp"

#include <numbers>

using namespace torsionlab;

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-2.0 / 3) == "-0.666666666666667");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("json keeps full double precision") {
  const ClosedModel s = build_model({ClosedKind::Sphere2, 1.0, 0.0, 1, 2});
  const TorsionReport r = residue_torsion(s, BetaWeight::degree(2));
  const Json j = Json::parse(to_json(r).dump());
  CHECK(j["kind"] == "closed-model");
  CHECK(j["log_residue_torsion"].get<double>() == r.log_residue_torsion);
  CHECK(j["degrees"][0]["zeta0"].get<double>() == r.degrees[0].zeta0);
  CHECK(j["degrees"].size() == 3);
}

TEST_CASE("csv flattens nested keys") {
  const Json j = Json::parse(R"({"a": 1.5, "b": {"c": [1, 2]}, "d": "x", "e": true})");
  const std::string csv = to_csv(j);
  CHECK(csv.find("a,1.5\n") != std::string::npos);
  CHECK(csv.find("b.c[0],1\n") != std::string::npos);
  CHECK(csv.find("b.c[1],2\n") != std::string::npos);
  CHECK(csv.find("d,x\n") != std::string::npos);
  CHECK(csv.find("e,true\n") != std::string::npos);
}

TEST_CASE("pretty output uses fifteen digits") {
  const Json j = {{"value", std::numbers::pi}};
  const std::string text = to_pretty(j);
  CHECK(text.find("3.14159265358979") != std::string::npos);
  CHECK(text.find("3.141592653589793") == std::string::npos);
}

TEST_CASE("verify report ordering is stable") {
  const VerifyResult a = run_verify("combinatorial", std::nullopt, 5);
  const VerifyResult b = run_verify("combinatorial", std::nullopt, 5);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.all_passed());
  for (const VerifyCase& c : a.cases) {
    const bool known = c.provenance == "oracle" || c.provenance == "reference-value" || c.provenance == "definition";
    CHECK_MESSAGE(known, c.id);
  }
}
