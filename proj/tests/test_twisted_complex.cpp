#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsionlab/errors.hpp"
#include "torsionlab/twisted_complex.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace torsionlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

TwistedComplex build(const PresetSpec& spec) {
  auto [cells, rho] = preset(spec);
  return build_twisted_boundary(cells, rho);
}

constexpr const char* kCircleJson = R"({
  "dimension": 1, "rank": 2, "generators": 1,
  "rep": [[[0.0, -1.0], [1.0, 0.0]]],
  "cells": [
    {"dim": 0, "boundary": []},
    {"dim": 1, "boundary": [{"cell": 0, "coeff": 1, "word": [[0, 1]]},
                            {"cell": 0, "coeff": -1, "word": []}]}
  ]
})";

}  // namespace

TEST_CASE("circle at quarter turn gives the rotation minus identity") {
  auto [cells, rho] = parse_complex_json(kCircleJson);
  const TwistedComplex c = build_twisted_boundary(cells, rho);
  const Matrix d1 = c.boundary(1);
  REQUIRE(d1.rows() == 2);
  REQUIRE(d1.cols() == 2);
  Matrix expected(2, 2);
  expected << -1, -1, 1, -1;
  CHECK(max_abs(d1 - expected) == doctest::Approx(0.0));
}

TEST_CASE("trivial rank one representation reproduces integer boundaries") {
  const TwistedComplex c = build({PresetKind::Torus2, 0.0, 0.0, 0.0, 1, true});
  CHECK(c.boundary(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.boundary(2).cwiseAbs().maxCoeff() == 0.0);
  const TwistedComplex iv = build({PresetKind::Interval, 1.0, 1.0, 0.3, 1, false});
  for (int k = 1; k <= iv.dimension(); ++k) {
    const Matrix d = iv.boundary(k);
    for (Eigen::Index i = 0; i < d.size(); ++i) CHECK(d.data()[i] == std::round(d.data()[i]));
  }
}

TEST_CASE("torus blocks compose to zero and shapes chain") {
  for (double a : {0.4, 1.0, 2.2}) {
    for (double b : {0.3, 1.7}) {
      const TwistedComplex c = build({PresetKind::Torus2, 1.0, a, b, 2, false});
      CHECK(c.boundary(1).rows() == 2 * c.cells(0));
      CHECK(c.boundary(1).cols() == 2 * c.cells(1));
      CHECK(c.boundary(2).rows() == 2 * c.cells(1));
      CHECK(c.boundary(2).cols() == 2 * c.cells(2));
      // brute-force product of the constructed blocks
      const Matrix prod = c.boundary(1) * c.boundary(2);
      const double scale = 1.0 + inf_norm(c.boundary(1)) * inf_norm(c.boundary(2));
      CHECK(max_abs(prod) <= 1e-12 * scale);
      const ValidationReport r = validate(c);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("word evaluation is a homomorphism") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_int_distribution<int> pick(0, 2), sign(0, 1), len(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix r3 = Matrix::Identity(3, 3);
    r3.topLeftCorner(2, 2) = rotation2(ang(gen));
    Matrix s3 = Matrix::Identity(3, 3);
    s3.bottomRightCorner(2, 2) = rotation2(ang(gen));
    const Representation rho(3, {r3, s3, r3 * s3});
    auto word = [&] {
      GroupWord w;
      for (int i = len(gen); i > 0; --i) w.push_back({pick(gen), sign(gen) ? 1 : -1});
      return w;
    };
    const GroupWord w1 = word(), w2 = word();
    GroupWord w12 = w1;
    w12.insert(w12.end(), w2.begin(), w2.end());
    CHECK(max_abs(rho.evaluate(w12) - rho.evaluate(w1) * rho.evaluate(w2)) < 1e-13);
  }
}

TEST_CASE("non-orthogonal generator images are rejected") {
  Matrix g(2, 2);
  g << 1.0, 0.1, 0.0, 1.0;
  CHECK(code_of([&] { Representation(2, {g}); }) == ErrorCode::BadRepresentation);
}

TEST_CASE("boundary data that fails to compose is rejected") {
  // triangle whose 2-cell boundary uses one edge twice
  const char* text = R"({"dimension": 2, "rank": 1, "generators": 0, "rep": [],
    "cells": [
      {"dim": 0, "boundary": []}, {"dim": 0, "boundary": []},
      {"dim": 1, "boundary": [{"cell": 1, "coeff": 1, "word": []}, {"cell": 0, "coeff": -1, "word": []}]},
      {"dim": 2, "boundary": [{"cell": 0, "coeff": 2, "word": []}]}
    ]})";
  auto [cells, rho] = parse_complex_json(text);
  CHECK(code_of([&] { build_twisted_boundary(cells, rho); }) == ErrorCode::NonChainComplex);
}

TEST_CASE("shape mismatch in raw boundaries") {
  std::vector<Matrix> bd{Matrix(0, 1), Matrix::Ones(2, 2)};
  CHECK(code_of([&] { TwistedComplex(1, {1, 1}, bd); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("json round trip and strict schema") {
  auto [cells, rho] = parse_complex_json(kCircleJson);
  const std::string again = complex_to_json(cells, rho);
  auto [cells2, rho2] = parse_complex_json(again);
  CHECK(max_abs(build_twisted_boundary(cells, rho).boundary(1) -
                build_twisted_boundary(cells2, rho2).boundary(1)) == 0.0);

  SUBCASE("unknown top-level key") {
    std::string bad = kCircleJson;
    bad.insert(1, "\"extra\": 1,");
    CHECK(code_of([&] { parse_complex_json(bad); }) == ErrorCode::ParseError);
  }
  SUBCASE("unknown incidence key") {
    std::string bad = kCircleJson;
    bad.replace(bad.find("\"coeff\": -1"), 11, "\"coeff\": -1, \"sign\": 0");
    CHECK(code_of([&] { parse_complex_json(bad); }) == ErrorCode::ParseError);
  }
  SUBCASE("malformed text") { CHECK(code_of([] { parse_complex_json("{\"dimension\": "); }) == ErrorCode::ParseError); }
  SUBCASE("generator out of range") {
    std::string bad = kCircleJson;
    bad.replace(bad.find("[[0, 1]]"), 8, "[[3, 1]]");
    CHECK(code_of([&] { parse_complex_json(bad); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("presets") {
  CHECK(parse_preset_kind("circle") == PresetKind::Circle);
  CHECK(std::string(preset_kind_name(PresetKind::Torus2)) == "torus2");
  CHECK(code_of([] { parse_preset_kind("klein"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { preset({PresetKind::Circle, 0.0, 1.0, 0.3, 2, false}); }) == ErrorCode::NotAcyclicPreset);
  CHECK_NOTHROW(preset({PresetKind::Circle, 0.0, 1.0, 0.3, 2, true}));
  const TwistedComplex pt = build({PresetKind::Point, 1.0, 1.0, 0.3, 1, false});
  CHECK(pt.dimension() == 0);
  CHECK(pt.chain_dim(0) == 1);
}

TEST_CASE("validate reports residuals without throwing") {
  std::vector<Matrix> bd{Matrix(0, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1)};
  const ValidationReport r = validate(1, {1, 1, 1}, bd);
  CHECK_FALSE(r.ok());
  REQUIRE(r.flagged_degrees.size() == 1);
  CHECK(r.flagged_degrees[0] == 2);
  CHECK(r.max_residual == doctest::Approx(1.0));
}
