#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/spectral_models.hpp"

#include <numbers>
#include <random>

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

ClosedModel circle(double theta, int rank) { return build_model({ClosedKind::Circle, 2 * kPi, theta, rank, 2}); }
ClosedModel torus(int n) { return build_model({ClosedKind::Torus, 2 * kPi, 0.0, 1, n}); }
ClosedModel sphere() { return build_model({ClosedKind::Sphere2, 2 * kPi, 0.0, 1, 2}); }
ClosedModel point() { return build_model({ClosedKind::Point, 2 * kPi, 0.0, 1, 2}); }

std::vector<ClosedModel> all_models() {
  return {circle(0.0, 1), circle(kPi, 1), circle(0.7, 2), circle(2.5, 4), torus(2), torus(3),
          torus(4), sphere(), point()};
}

}  // namespace

TEST_CASE("model construction") {
  const ClosedModel c = circle(0.0, 1);
  CHECK(c.betti == std::vector<int>{1, 1});
  CHECK(degree_zeta(c, 0, 0.0, false).value.real() == doctest::Approx(2 * oracle::riemann_zeta(0.0)).epsilon(1e-13));
  const ClosedModel t = build_model({ClosedKind::Torus, 1.0, 0.0, 1, 2});
  CHECK(t.betti == std::vector<int>{1, 2, 1});
  CHECK(sphere().betti == std::vector<int>{1, 0, 1});
  CHECK(circle(0.7, 2).betti == std::vector<int>{0, 0});
  CHECK(point().betti == std::vector<int>{1});
  CHECK(parse_closed_kind("sphere2") == ClosedKind::Sphere2);
  CHECK(std::string(closed_kind_name(ClosedKind::Torus)) == "torus");
}

TEST_CASE("invalid model parameters") {
  CHECK(code_of([] { circle(1.0, 1); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { circle(1.0, 3); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { build_model({ClosedKind::Circle, -1.0, 0.0, 1, 2}); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { build_model({ClosedKind::Torus, 1.0, 0.0, 1, 7}); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { build_model({ClosedKind::Torus, 1.0, 0.0, 2, 2}); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { parse_closed_kind("klein"); }) == ErrorCode::ParseError);
}

TEST_CASE("sphere zeta values") {
  const ClosedModel s = sphere();
  // 2(ζ_H(-1, 3/2) + 1/8) with ζ_H(-1, a) = -B₂(a)/2
  const double a = 1.5;
  const double oracle_value = 2 * (-(a * a - a + 1.0 / 6) / 2 + 0.125);
  CHECK(std::abs(degree_zeta(s, 0, 0.0, false).value.real() - oracle_value) <= 1e-8);
  CHECK(std::abs(degree_zeta(s, 0, 0.0, false).value.real() + 2.0 / 3) <= 1e-8);
  CHECK(std::abs(degree_zeta(s, 0, 2.0, false).value.real() - 1.0) <= 1e-9);
  CHECK(std::abs(degree_zeta(s, 1, 2.0, false).value.real() - 2.0) <= 1e-9);
  CHECK(std::abs(degree_zeta(s, 2, 2.0, false).value.real() - 1.0) <= 1e-9);
}

TEST_CASE("even-dimensional values of the residue torsion") {
  for (const ClosedModel& m : {sphere(), torus(2), torus(4), point()}) {
    const double chi = [&] {
      double c = 0;
      for (int k = 0; k <= m.dim; ++k) c += (k % 2 ? -1 : 1) * m.betti[static_cast<size_t>(k)];
      return c;
    }();
    const TorsionReport one = residue_torsion(m, BetaWeight::ones(m.dim));
    const TorsionReport k = residue_torsion(m, BetaWeight::degree(m.dim));
    CHECK(std::abs(one.log_residue_torsion - m.rank * chi) <= 1e-8);
    CHECK(std::abs(k.log_residue_torsion - 0.5 * m.dim * m.rank * chi) <= 1e-8);
    CHECK(k.has_expected);
    CHECK(std::abs(k.expected_residue - k.log_residue_torsion) <= 1e-8);
    const TorsionReport mix = residue_torsion(m, BetaWeight::linear(m.dim, 0.7, -1.3));
    CHECK(mix.log_residue_torsion ==
          doctest::Approx(0.7 * one.log_residue_torsion - 1.3 * k.log_residue_torsion).epsilon(1e-12));
  }
  CHECK(std::abs(residue_torsion(sphere(), BetaWeight::ones(2)).log_residue_torsion - 2.0) <= 1e-7);
  CHECK(std::abs(residue_torsion(sphere(), BetaWeight::degree(2)).log_residue_torsion - 2.0) <= 1e-7);
}

TEST_CASE("odd-dimensional models have vanishing residues") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const ClosedModel& m : {circle(0.0, 1), circle(kPi, 1), circle(0.7, 2), torus(3), torus(5)}) {
    for (int k = 0; k <= m.dim; ++k) {
      const double z0 = degree_zeta(m, k, 0.0, false).value.real();
      CHECK(std::abs(z0 + m.betti[static_cast<size_t>(k)]) <= 1e-8);
      CHECK(std::abs(residue_log_trace(m, k)) <= 1e-8);
    }
    for (int trial = 0; trial < 20; ++trial) {
      BetaWeight b{std::vector<double>(static_cast<size_t>(m.dim + 1))};
      for (double& v : b.values) v = u(gen);
      CHECK(std::abs(residue_torsion(m, b).log_residue_torsion) <= 1e-8);
    }
  }
}

TEST_CASE("analytic torsion of the character circle") {
  for (double theta : {0.7, kPi / 2, 2.5}) {
    const TorsionReport r = analytic_torsion(circle(theta, 2), BetaWeight::degree(1), true);
    CHECK(std::abs(r.log_analytic_torsion - std::log(4 * std::sin(theta / 2) * std::sin(theta / 2))) <= 1e-8);
  }
  CHECK(code_of([] { analytic_torsion(sphere(), BetaWeight::degree(2), true); }) == ErrorCode::NotAcyclic);
  CHECK_NOTHROW(analytic_torsion(sphere(), BetaWeight::degree(2), false));
}

TEST_CASE("surface combination") {
  CHECK(std::abs(surface_combination(torus(2))) <= 1e-7);
  CHECK(std::abs(surface_combination(sphere()) + 4.0) <= 1e-7);
  CHECK(code_of([] { surface_combination(torus(3)); }) == ErrorCode::BadParameter);
}

TEST_CASE("identity suite on every model") {
  for (const ClosedModel& m : all_models()) {
    // s = n/2 is a pole in dimension 4
    const IdentityReport r =
        m.dim == 4 ? identity_suite(m, {0.0, 0.75, 2.5}) : identity_suite(m);
    CHECK_MESSAGE(r.all_passed(), m.name);
    CHECK(!r.checks.empty());
    for (const IdentityCheck& c : r.checks) CHECK(c.discrepancy <= 1e-8);
  }
}

TEST_CASE("heat-trace duality and betti symmetry") {
  for (const ClosedModel& m : all_models()) {
    for (int k = 0; k <= m.dim; ++k) {
      CHECK(m.betti[static_cast<size_t>(k)] == m.betti[static_cast<size_t>(m.dim - k)]);
      for (double t : {0.05, 0.5, 2.0})
        CHECK(m.traces[static_cast<size_t>(k)].trace(t) ==
              doctest::Approx(m.traces[static_cast<size_t>(m.dim - k)].trace(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("torus degree traces are binomial multiples of the lattice trace") {
  const ClosedModel t = torus(3);
  for (double tt : {0.3, 1.5}) {
    const double base = oracle::torus_heat_direct(3, 2 * kPi, tt);
    const int binom[4] = {1, 3, 3, 1};
    for (int k = 0; k <= 3; ++k)
      CHECK(t.traces[static_cast<size_t>(k)].trace(tt) == doctest::Approx(binom[k] * base).epsilon(1e-12));
  }
}
