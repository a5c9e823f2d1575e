#include "torsionlab/verify.hpp"

#include "torsionlab/errors.hpp"
#include "torsionlab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace torsionlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) { return format_number(x); }

class Collector {
 public:
  Collector(std::string suite, std::optional<double> tol) : suite_(std::move(suite)), tol_(tol) {}

  void add(const std::string& id, const std::string& description, double measured, double expected,
           double tolerance, const std::string& provenance, bool exact = false) {
    VerifyCase c;
    c.id = suite_ + "." + id;
    c.suite = suite_;
    c.description = description;
    c.measured = measured;
    c.expected = expected;
    c.discrepancy = std::abs(measured - expected);
    c.tolerance = (tol_ && !exact) ? *tol_ : tolerance;
    c.provenance = provenance;
    c.passed = std::isfinite(measured) && c.discrepancy <= c.tolerance;
    cases.push_back(c);
  }

  /// Runs `body`; an exception becomes a failed case named `id`.
  void guard(const std::string& id, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      VerifyCase c;
      c.id = suite_ + "." + id;
      c.suite = suite_;
      c.description = "evaluation raised an error";
      c.measured = std::nan("");
      c.provenance = "definition";
      c.note = e.what();
      cases.push_back(c);
    }
  }

  std::vector<VerifyCase> cases;

 private:
  std::string suite_;
  std::optional<double> tol_;
};

TwistedComplex preset_complex(const PresetSpec& spec) {
  const auto [cells, rho] = preset(spec);
  return build_twisted_boundary(cells, rho);
}

PresetSpec circle_preset(double theta) {
  PresetSpec p;
  p.kind = PresetKind::Circle;
  p.theta = theta;
  return p;
}

PresetSpec torus_preset() {
  PresetSpec p;
  p.kind = PresetKind::Torus2;
  return p;
}

double reference_circle(double theta) { return std::log(4.0 * std::pow(std::sin(0.5 * theta), 2)); }

const std::vector<double> kThetas = {0.7, kPi / 2.0, 2.5};

void combinatorial_suite(Collector& c, std::uint64_t seed) {
  for (double theta : kThetas) {
    const std::string tag = "circle-theta-" + fmt(theta);
    c.guard(tag, [&] {
      const TwistedComplex cx = preset_complex(circle_preset(theta));
      const double lr = log_reidemeister(cx, ChainMetric::identity(cx));
      c.add(tag + ".laplacian-vs-minors", "log torsion from Laplacians against pivot minors", lr,
            determinant_oracle(cx), 1e-10, "oracle");
      c.add(tag + ".closed-form", "log torsion against log(4 sin^2(theta/2))", lr,
            reference_circle(theta), 1e-10, "oracle");
    });
  }
  c.guard("torus2", [&] {
    const TwistedComplex cx = preset_complex(torus_preset());
    c.add("torus2.laplacian-vs-minors", "torus preset log torsion against pivot minors",
          log_reidemeister(cx, ChainMetric::identity(cx)), determinant_oracle(cx), 1e-10, "oracle");
    c.add("torus2.chain-residual", "boundary of boundary vanishes", validate(cx).max_residual, 0.0,
          1e-12, "definition");
  });
  c.guard("trivial-circle-betti", [&] {
    PresetSpec p = circle_preset(0.0);
    p.rank = 1;
    p.allow_non_acyclic = true;
    const TwistedComplex cx = preset_complex(p);
    const std::vector<int> b = betti(cx, ChainMetric::identity(cx));
    c.add("trivial-circle-betti.b0", "b0 of the trivial circle", b.at(0), 1.0, 0.0, "definition", true);
    c.add("trivial-circle-betti.b1", "b1 of the trivial circle", b.at(1), 1.0, 0.0, "definition", true);
  });
  c.guard("beta-grid", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(0, 6);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    int wrong = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int n = dim(rng);
      const double lambda = coef(rng), mu = coef(rng);
      BetaWeight b = BetaWeight::linear(n, lambda, mu);
      bool in_span = true;
      if (i % 2 == 1 && n >= 2) {
        std::uniform_int_distribution<int> pick(0, n);
        b.values[static_cast<size_t>(pick(rng))] += (0.001 + std::abs(coef(rng))) * (i % 4 == 1 ? 1.0 : -1.0);
        in_span = false;
      }
      const BetaClassification cl = classify_beta(b);
      if (cl.satisfies_recurrence != in_span) ++wrong;
      if (in_span)
        worst = std::max({worst, std::abs(cl.lambda - lambda), n >= 1 ? std::abs(cl.mu - mu) : 0.0});
    }
    c.add("beta-grid.misclassified", "misclassified weights over 1000 random draws", wrong, 0.0, 0.0,
          "definition", true);
    c.add("beta-grid.reconstruction", "largest lambda/mu reconstruction error", worst, 0.0, 1e-12,
          "definition", true);
  });
  c.guard("telescoping", [&] {
    int mismatched = 0;
    for (int n = 0; n <= 10; ++n)
      if (expanded_gamma_coefficients(n) != second_difference_gamma_coefficients(n)) ++mismatched;
    c.add("telescoping.n0-10", "expanded gamma coefficients equal second differences", mismatched, 0.0,
          0.0, "oracle", true);
  });
}

void variation_suite(Collector& c, std::uint64_t seed) {
  const std::vector<std::pair<std::string, PresetSpec>> presets = {{"circle", circle_preset(1.0)},
                                                                   {"torus2", torus_preset()}};
  for (const auto& [name, spec] : presets) {
    const TwistedComplex cx = preset_complex(spec);
    const int n = cx.dimension();
    const std::vector<std::pair<std::string, BetaWeight>> betas = {
        {"one", BetaWeight::ones(n)},
        {"k", BetaWeight::degree(n)},
        {"lin", BetaWeight::linear(n, 0.4, -1.3)},
        {"list", [&] {
           BetaWeight b = BetaWeight::degree(n);
           for (int k = 0; k <= n; ++k) b.values[static_cast<size_t>(k)] = 1.0 + k * k;
           return b;
         }()}};
    for (const auto& [bname, beta] : betas) {
      const std::string tag = name + ".beta-" + bname;
      c.guard(tag, [&, &beta = beta] {
        const VariationReport v = variation_check(cx, random_metric_path(cx, seed), beta, 0.5, 1e-4);
        c.add(tag + ".discrepancy", "metric-variation identity at step 1e-4", v.discrepancy, 0.0, 1e-6,
              "oracle");
        const bool quadratic = v.at_roundoff || (v.convergence_ratio >= 3.0 && v.convergence_ratio <= 5.0);
        c.add(tag + ".halving", "discrepancy ratio under step halving (4 expected, or at roundoff)",
              quadratic ? 4.0 : v.convergence_ratio, 4.0, 0.0, "oracle", true);
        c.cases.back().note = "ratio " + fmt(v.convergence_ratio) + (v.at_roundoff ? " (roundoff)" : "");
        c.add(tag + ".laplacian-derivative", "four-term Laplacian derivative against finite difference",
              v.laplacian_residual, 0.0, 1e-6, "oracle");
      });
    }
  }
}

void closed_suite(Collector& c, std::uint64_t seed) {
  c.guard("engine-circle", [&] {
    const HeatTrace h = theta_expansion({FactorKind::Circle, 2.0 * kPi, 0.0, 1});
    for (double s : {-1.0, 0.0, 0.75, 2.0, 3.0})
      c.add("engine-circle.s" + fmt(s), "circle zeta against 2 zeta_R(2s)", mellin_zeta(h, s).value.real(),
            2.0 * riemann_zeta(2.0 * s), 1e-9, "oracle");
    c.add("engine-circle.d0", "circle zeta'(0) against -2 log 2pi", mellin_zeta(h, 0.0, true).derivative->real(),
          -2.0 * std::log(2.0 * kPi), 1e-8, "oracle");
  });
  c.guard("engine-dirichlet", [&] {
    const HeatTrace h = theta_expansion({FactorKind::Dirichlet, kPi, 0.0, 1});
    for (double s : {-1.0, 0.0, 0.75, 2.0})
      c.add("engine-dirichlet.s" + fmt(s), "Dirichlet interval zeta against zeta_R(2s)",
            mellin_zeta(h, s).value.real(), riemann_zeta(2.0 * s), 1e-9, "oracle");
    c.add("engine-dirichlet.d0", "Dirichlet interval zeta'(0) against 2 zeta_R'(0)",
          mellin_zeta(h, 0.0, true).derivative->real(), 2.0 * riemann_zeta_prime0(), 1e-8, "oracle");
  });
  c.guard("theta-consistency", [&] {
    const std::vector<std::pair<std::string, FactorSpec>> factors = {
        {"circle", {FactorKind::Circle, 2.0 * kPi, 0.0, 1}},
        {"circle-character", {FactorKind::Circle, 1.0, 1.0, 1}},
        {"dirichlet", {FactorKind::Dirichlet, kPi, 0.0, 1}},
        {"neumann", {FactorKind::Neumann, 1.0, 0.0, 1}},
        {"mixed", {FactorKind::Mixed, 1.0, 0.0, 1}},
        {"lattice2", {FactorKind::Lattice, 1.0, 0.0, 2}}};
    for (const auto& [name, f] : factors) {
      const HeatTrace h = theta_expansion(f);
      for (double t : {0.05, 1.0})
        c.add("theta-consistency." + name + ".t" + fmt(t), "eigenvalue sum against image sum",
              h.consistency_residual(t), 0.0, 1e-10, "oracle");
    }
  });

  const ClosedModel s2 = build_model({ClosedKind::Sphere2});
  c.guard("sphere2", [&] {
    c.add("sphere2.zeta0", "zeta_0(0) against 2(zeta_H(-1,3/2) + 1/8)", degree_zeta(s2, 0, 0.0, false).value.real(),
          2.0 * (hurwitz_zeta(-1.0, 1.5) + 0.125), 1e-8, "oracle");
    c.add("sphere2.zeta0-at-2", "zeta_0(2) against the telescoping sum 1", degree_zeta(s2, 0, 2.0, false).value.real(),
          1.0, 1e-9, "oracle");
    c.add("sphere2.residue-beta-one", "residue torsion, beta = 1", residue_torsion(s2, BetaWeight::ones(2)).log_residue_torsion,
          2.0, 1e-7, "reference-value");
    c.add("sphere2.residue-beta-k", "residue torsion, beta = k",
          residue_torsion(s2, BetaWeight::degree(2)).log_residue_torsion, 2.0, 1e-7, "reference-value");
    c.add("sphere2.surface-combination", "res0/2 - res1 + 3 res2/2", surface_combination(s2), -4.0, 1e-7,
          "reference-value");
  });
  c.guard("torus2-surface", [&] {
    c.add("torus2.surface-combination", "res0/2 - res1 + 3 res2/2 on the flat 2-torus",
          surface_combination(build_model({ClosedKind::Torus, 1.0, 0.0, 1, 2})), 0.0, 1e-7, "reference-value");
  });

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const std::vector<std::pair<std::string, ClosedModelSpec>> odd = {
      {"circle", {ClosedKind::Circle, 2.0 * kPi, 0.0, 1, 1}},
      {"circle-character", {ClosedKind::Circle, 2.0 * kPi, 0.7, 2, 1}},
      {"torus3", {ClosedKind::Torus, 1.0, 0.0, 1, 3}}};
  for (const auto& [name, spec] : odd) {
    c.guard("odd-vanishing." + name, [&, &name = name, &spec = spec] {
      const ClosedModel m = build_model(spec);
      for (int k = 0; k <= m.dim; ++k)
        c.add("odd-vanishing." + name + ".k" + std::to_string(k), "zeta_k(0) + b_k",
              degree_zeta(m, k, 0.0, false).value.real() + m.betti[static_cast<size_t>(k)], 0.0, 1e-8,
              "reference-value");
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        BetaWeight b = BetaWeight::ones(m.dim);
        for (double& v : b.values) v = coef(rng);
        worst = std::max(worst, std::abs(residue_torsion(m, b).log_residue_torsion));
      }
      c.add("odd-vanishing." + name + ".random-beta", "largest |residue torsion| over 20 random beta", worst,
            0.0, 1e-8, "reference-value");
    });
  }

  for (double theta : kThetas) {
    const std::string tag = "spectral-vs-combinatorial.theta-" + fmt(theta);
    c.guard(tag, [&] {
      const ClosedModel m = build_model({ClosedKind::Circle, 2.0 * kPi, theta, 2, 1});
      const double analytic = analytic_torsion(m, BetaWeight::degree(1), true).log_analytic_torsion;
      const TwistedComplex cx = preset_complex(circle_preset(theta));
      c.add(tag + ".vs-laplacian", "analytic torsion against combinatorial torsion", analytic,
            log_reidemeister(cx, ChainMetric::identity(cx)), 1e-8, "oracle");
      c.add(tag + ".vs-minors", "analytic torsion against pivot minors", analytic, determinant_oracle(cx), 1e-8,
            "oracle");
    });
  }

  const std::vector<std::pair<std::string, ClosedModelSpec>> models = {
      {"circle", {ClosedKind::Circle, 2.0 * kPi, 0.0, 1, 1}},
      {"circle-character", {ClosedKind::Circle, 3.0, kPi / 2.0, 2, 1}},
      {"torus2", {ClosedKind::Torus, 1.0, 0.0, 1, 2}},
      {"torus3", {ClosedKind::Torus, 1.0, 0.0, 1, 3}},
      {"sphere2", {ClosedKind::Sphere2}}};
  for (const auto& [name, spec] : models) {
    c.guard("identities." + name, [&, &name = name, &spec = spec] {
      const ClosedModel m = build_model(spec);
      const IdentityReport rep = identity_suite(m);
      for (const IdentityCheck& chk : rep.checks)
        c.add("identities." + name + "." + chk.name + " @" + fmt(chk.s), chk.name, chk.lhs, chk.rhs, 1e-8,
              "oracle");
      c.add("analytic-beta-one." + name, "analytic torsion with beta = 1",
            analytic_torsion(m, BetaWeight::ones(m.dim)).log_analytic_torsion, 0.0, 1e-8, "reference-value");
      const double t1 = residue_torsion(m, BetaWeight::ones(m.dim)).log_residue_torsion;
      const double tk = residue_torsion(m, BetaWeight::degree(m.dim)).log_residue_torsion;
      const double lam = 0.7, mu = -1.9;
      c.add("linearity." + name, "residue torsion is linear in beta",
            residue_torsion(m, BetaWeight::linear(m.dim, lam, mu)).log_residue_torsion, lam * t1 + mu * tk, 1e-10,
            "definition");
    });
  }
}

void boundary_suite(Collector& c) {
  c.guard("interval-weighted", [&] {
    const double one = boundary_residue_torsion(build_interval(1.0, BoundaryCondition::absolute(), 1),
                                                BetaWeight::degree(1)).weighted_zeta_sum;
    const double two = boundary_residue_torsion(build_interval(1.0, BoundaryCondition::absolute(), 2),
                                                BetaWeight::degree(1)).weighted_zeta_sum;
    c.add("interval-weighted.multiplicity-one", "interval absolute weighted zeta sum, multiplicity one", one, 0.5,
          1e-8, "oracle");
    c.add("interval-weighted.doubled", "interval absolute weighted zeta sum, doubled multiplicity", two, 1.0, 1e-8,
          "reference-value");
  });
  c.guard("cylinder-weighted", [&] {
    c.add("cylinder-weighted.relative", "cylinder relative weighted zeta sum",
          boundary_residue_torsion(build_cylinder(1.0, 2.0 * kPi, BoundaryCondition::relative()),
                                   BetaWeight::degree(2)).weighted_zeta_sum,
          -1.0, 1e-8, "reference-value");
  });
  struct Geo {
    std::string name;
    std::function<BoundaryModel(const BoundaryCondition&)> make;
  };
  const std::vector<Geo> geos = {
      {"interval", [](const BoundaryCondition& b) { return build_interval(1.3, b); }},
      {"cylinder", [](const BoundaryCondition& b) { return build_cylinder(0.8, 2.0 * kPi, b); }},
      {"cylinder-short", [](const BoundaryCondition& b) { return build_cylinder(1.0, 1.5, b); }}};
  for (const Geo& g : geos) {
    c.guard("sign-law." + g.name, [&] {
      const BoundaryModel rel = g.make(BoundaryCondition::relative());
      const BoundaryModel abs = g.make(BoundaryCondition::absolute());
      const IdentityReport rep = duality_check(rel, abs);
      for (const IdentityCheck& chk : rep.checks)
        c.add("sign-law." + g.name + "." + chk.name + " @" + fmt(chk.s), chk.name, chk.lhs, chk.rhs, 1e-8,
              "oracle");
      for (const BoundaryModel* m : {&rel, &abs}) {
        const std::string tag = "two-way." + g.name + "." + m->condition.name();
        const BoundaryTorsionReport k = boundary_residue_torsion(*m, BetaWeight::degree(m->dim));
        c.add(tag + ".weighted", "weighted assembly against n chi/2", k.weighted_assembly, k.weighted_closed_form,
              1e-8, "oracle");
        c.add(tag + ".beta-k", "residue torsion beta = k against n chi/2", k.log_residue_torsion,
              k.weighted_closed_form, 1e-8, "oracle");
        const BoundaryTorsionReport one = boundary_residue_torsion(*m, BetaWeight::ones(m->dim));
        c.add(tag + ".beta-one", "residue torsion beta = 1 against chi", one.log_residue_torsion, m->chi, 1e-8,
              "oracle");
      }
    });
  }
  c.guard("interval-values", [&] {
    c.add("interval-values.relative-beta-one", "interval relative, beta = 1",
          boundary_residue_torsion(build_interval(1.0, BoundaryCondition::relative()), BetaWeight::ones(1))
              .log_residue_torsion,
          -1.0, 1e-8, "oracle");
    c.add("interval-values.absolute-beta-k", "interval absolute, beta = k",
          boundary_residue_torsion(build_interval(1.0, BoundaryCondition::absolute()), BetaWeight::degree(1))
              .log_residue_torsion,
          0.5, 1e-8, "reference-value");
  });
  for (BoundaryGeometry geo : {BoundaryGeometry::Interval, BoundaryGeometry::Cylinder}) {
    for (const BoundaryCondition& outer : {BoundaryCondition::absolute(), BoundaryCondition::relative()}) {
      const std::string tag = std::string("gluing.") + (geo == BoundaryGeometry::Interval ? "interval" : "cylinder") +
                              "." + outer.name();
      c.guard(tag, [&] {
        GluingSpec spec;
        spec.geometry = geo;
        spec.length = 1.0;
        spec.split = 0.5;
        spec.outer = outer;
        const GluingReport r = gluing_check(spec);
        c.add(tag, "whole against pieces + interface + chi(Y)/2", r.whole, r.rhs, 1e-8, "oracle");
      });
    }
  }
  c.guard("gluing.degenerate", [&] {
    GluingSpec spec;
    spec.split = 1.0;
    bool rejected = false;
    try {
      gluing_check(spec);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::UnsupportedPartition;
    }
    c.add("gluing.degenerate", "empty piece is rejected", rejected ? 1.0 : 0.0, 1.0, 0.0, "definition", true);
  });
}

}  // namespace

bool VerifyResult::all_passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.passed; });
}

MetricPath random_metric_path(const TwistedComplex& complex, std::uint64_t seed, double spread) {
  const ChainMetric a = ChainMetric::random(complex, seed, spread);
  const ChainMetric b = ChainMetric::random(complex, seed + 0x9e3779b97f4a7c15ULL, spread);
  return [a, b](double u) {
    std::vector<Matrix> m;
    for (int k = 0; k < a.degrees(); ++k) m.push_back((1.0 - u) * a[k] + u * b[k]);
    return ChainMetric(m);
  };
}

VerifyResult run_verify(const std::string& suite, std::optional<double> tolerance, std::uint64_t seed) {
  static const std::vector<std::string> known = {"combinatorial", "variation", "closed-spectral", "boundary", "all"};
  if (std::find(known.begin(), known.end(), suite) == known.end())
    throw Error(ErrorCode::ParseError, "unknown suite '" + suite + "'");
  if (tolerance && !(*tolerance > 0.0)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");
  VerifyResult out;
  out.suite = suite;
  out.seed = seed;
  auto run = [&](const std::string& name, const std::function<void(Collector&)>& body) {
    if (suite != "all" && suite != name) return;
    Collector c(name, tolerance);
    body(c);
    out.cases.insert(out.cases.end(), c.cases.begin(), c.cases.end());
  };
  run("combinatorial", [&](Collector& c) { combinatorial_suite(c, seed); });
  run("variation", [&](Collector& c) { variation_suite(c, seed); });
  run("closed-spectral", [&](Collector& c) { closed_suite(c, seed); });
  run("boundary", [&](Collector& c) { boundary_suite(c); });
  return out;
}

Json to_json(const VerifyResult& r) {
  Json cases = Json::array();
  int failed = 0;
  for (const VerifyCase& c : r.cases) {
    if (!c.passed) ++failed;
    Json j = {{"id", c.id},
              {"suite", c.suite},
              {"description", c.description},
              {"measured", c.measured},
              {"expected", c.expected},
              {"discrepancy", c.discrepancy},
              {"tolerance", c.tolerance},
              {"provenance", c.provenance},
              {"passed", c.passed}};
    if (!c.note.empty()) j["note"] = c.note;
    cases.push_back(j);
  }
  return {{"kind", "verify"},
          {"suite", r.suite},
          {"seed", r.seed},
          {"cases_total", r.cases.size()},
          {"cases_failed", failed},
          {"all_passed", failed == 0},
          {"cases", cases}};
}

}  // namespace torsionlab
