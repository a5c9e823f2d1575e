#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "torsionlab/boundary_models.hpp"
#include "torsionlab/errors.hpp"

#include <numbers>

using namespace torsionlab;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

double z0(const BoundaryModel& m, int k) { return boundary_degree_zeta(m, k, 0.0, false).value.real(); }

}  // namespace

TEST_CASE("condition and geometry names") {
  CHECK(parse_boundary_condition("relative").name() == "relative");
  CHECK(parse_boundary_condition("A").name() == "absolute");
  CHECK(parse_boundary_condition("mixed").mixed());
  CHECK(parse_boundary_condition("mixed-right").name() == "mixed-right");
  CHECK(parse_boundary_condition("mixed").dual().name() == "mixed-right");
  CHECK(parse_boundary_geometry("cylinder") == BoundaryGeometry::Cylinder);
  CHECK(code_of([] { parse_boundary_condition("robin"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { build_interval(0.0, BoundaryCondition::relative()); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { build_cylinder(1.0, -2.0, BoundaryCondition::relative()); }) == ErrorCode::BadParameter);
}

TEST_CASE("interval betti numbers and euler characteristics") {
  const BoundaryModel r = build_interval(1.0, BoundaryCondition::relative());
  const BoundaryModel a = build_interval(1.0, BoundaryCondition::absolute());
  const BoundaryModel m = build_interval(1.0, parse_boundary_condition("mixed"));
  CHECK(r.betti == std::vector<int>{0, 1});
  CHECK(a.betti == std::vector<int>{1, 0});
  CHECK(m.betti == std::vector<int>{0, 0});
  CHECK(r.chi == -1.0);
  CHECK(a.chi == 1.0);
  CHECK(m.chi == 0.0);
}

TEST_CASE("interval spectra against the riemann closed form") {
  for (double R : {1.0, 2.5}) {
    const BoundaryModel r = build_interval(R, BoundaryCondition::relative());
    for (double s : {0.0, 0.75, 2.0}) {
      const double closed = std::pow(kPi / R, -2 * s) * oracle::riemann_zeta(2 * s);
      CHECK(std::abs(boundary_degree_zeta(r, 0, s, false).value.real() - closed) <= 1e-9);
    }
  }
  CHECK(std::abs(z0(build_interval(1.0, BoundaryCondition::relative()), 0) + 0.5) <= 1e-12);
}

TEST_CASE("weighted sums under both multiplicity conventions") {
  const BoundaryModel a1 = build_interval(1.0, BoundaryCondition::absolute(), 1);
  const BoundaryModel a2 = build_interval(1.0, BoundaryCondition::absolute(), 2);
  CHECK(std::abs(-z0(a1, 1) - 0.5) <= 1e-8);
  CHECK(std::abs(-z0(a2, 1) - 1.0) <= 1e-8);
  const BoundaryTorsionReport r2 = boundary_residue_torsion(a2, BetaWeight::degree(1));
  CHECK(std::abs(r2.weighted_zeta_sum - 1.0) <= 1e-8);
  const BoundaryModel cyl = build_cylinder(1.0, 2 * kPi, BoundaryCondition::relative());
  const BoundaryTorsionReport c = boundary_residue_torsion(cyl, BetaWeight::degree(2));
  CHECK(std::abs(c.weighted_zeta_sum + 1.0) <= 1e-8);
}

TEST_CASE("cylinder betti numbers") {
  const BoundaryModel r = build_cylinder(1.0, 2 * kPi, BoundaryCondition::relative());
  const BoundaryModel a = build_cylinder(1.0, 2 * kPi, BoundaryCondition::absolute());
  CHECK(r.betti == std::vector<int>{0, 1, 1});
  CHECK(a.betti == std::vector<int>{1, 1, 0});
  CHECK(r.chi == 0.0);
  CHECK(a.chi == 0.0);
}

TEST_CASE("cylinder degree-zero trace is a product of direct sums") {
  const BoundaryModel r = build_cylinder(1.0, 2 * kPi, BoundaryCondition::relative());
  for (double t : {0.3, 1.0, 2.0}) {
    long double dir = 0.0L, circ = 0.0L;
    for (long m = 1; m < 200; ++m) dir += std::exp(-t * (m * kPi) * (m * kPi));
    for (long m = -200; m <= 200; ++m) circ += std::exp(-t * static_cast<double>(m * m));
    CHECK(r.traces[0].trace(t) == doctest::Approx(static_cast<double>(dir * circ)).epsilon(1e-12));
  }
}

TEST_CASE("duality and the sign law on both geometries") {
  const std::vector<std::pair<BoundaryModel, BoundaryModel>> pairs{
      {build_interval(1.3, BoundaryCondition::relative()), build_interval(1.3, BoundaryCondition::absolute())},
      {build_interval(1.0, BoundaryCondition::relative(), 2), build_interval(1.0, BoundaryCondition::absolute(), 2)},
      {build_cylinder(1.0, 2 * kPi, BoundaryCondition::relative()),
       build_cylinder(1.0, 2 * kPi, BoundaryCondition::absolute())},
      {build_cylinder(0.7, 3.0, BoundaryCondition::relative(), 2),
       build_cylinder(0.7, 3.0, BoundaryCondition::absolute(), 2)}};
  for (const auto& [rel, abs] : pairs) {
    const IdentityReport rep = duality_check(rel, abs);
    CHECK_MESSAGE(rep.all_passed(), rel.name);
    const int n = rel.dim;
    for (double s : {0.0, 0.75, 2.0}) {
      double wr = 0, wa = 0;
      for (int k = 0; k <= n; ++k) {
        const double zr = boundary_degree_zeta(rel, k, s, false).value.real();
        const double za = boundary_degree_zeta(abs, n - k, s, false).value.real();
        CHECK(std::abs(zr - za) <= 1e-8);
        wr += (k % 2 ? -1 : 1) * k * zr;
        wa += (k % 2 ? -1 : 1) * k * boundary_degree_zeta(abs, k, s, false).value.real();
      }
      CHECK(std::abs(wr - (n % 2 ? 1 : -1) * wa) <= 1e-8);
    }
  }
  CHECK(code_of([] {
          duality_check(build_interval(1.0, BoundaryCondition::relative()),
                            build_cylinder(1.0, 1.0, BoundaryCondition::absolute()));
        }) == ErrorCode::BadParameter);
}

TEST_CASE("weighted assembly equals the closed form") {
  for (const BoundaryCondition& bc : {BoundaryCondition::relative(), BoundaryCondition::absolute()}) {
    for (const BoundaryModel& m : {build_interval(1.0, bc), build_interval(2.0, bc, 2), build_cylinder(1.0, 2 * kPi, bc),
                                   build_cylinder(1.5, 4.0, bc, 2)}) {
      const BoundaryTorsionReport r = boundary_residue_torsion(m, BetaWeight::degree(m.dim));
      CHECK(std::abs(r.weighted_assembly - r.weighted_closed_form) <= 1e-8);
      CHECK(std::abs(r.weighted_closed_form - 0.5 * m.dim * m.chi) <= 1e-12);
      CHECK(std::abs(r.unweighted_assembly - r.unweighted_closed_form) <= 1e-8);
      CHECK(std::abs(r.alternating_zeta_sum) <= 1e-8);
    }
  }
}

TEST_CASE("gluing on both supported partitions") {
  for (BoundaryGeometry g : {BoundaryGeometry::Interval, BoundaryGeometry::Cylinder}) {
    for (const BoundaryCondition& bc : {BoundaryCondition::relative(), BoundaryCondition::absolute()}) {
      for (double split : {0.3, 0.5}) {
        GluingSpec spec;
        spec.geometry = g;
        spec.outer = bc;
        spec.split = split;
        const GluingReport r = gluing_check(spec);
        CHECK(r.passed);
        CHECK(r.discrepancy <= 1e-8);
      }
    }
  }
  GluingSpec bad;
  bad.split = 1.0;
  CHECK(code_of([&] { gluing_check(bad); }) == ErrorCode::UnsupportedPartition);
  bad.split = 0.5;
  bad.outer = parse_boundary_condition("mixed");
  CHECK(code_of([&] { gluing_check(bad); }) == ErrorCode::UnsupportedPartition);
}
