#include "torsionlab/torsionlab.h"

#include "torsionlab/boundary_models.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/quadrature.hpp"
#include "torsionlab/report.hpp"
#include "torsionlab/spectral_models.hpp"
#include "torsionlab/torsion.hpp"
#include "torsionlab/twisted_complex.hpp"
#include "torsionlab/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

using namespace torsionlab;

struct tl_complex {
  CellStructure cells;
  Representation rho;
  TwistedComplex complex;
};

struct tl_model {
  std::variant<ClosedModel, BoundaryModel> model;
};

namespace {

thread_local std::string g_last_error;

tl_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return TL_ERR_PARSE;
    case ErrorCode::NonChainComplex: return TL_ERR_NON_CHAIN_COMPLEX;
    case ErrorCode::BadRepresentation: return TL_ERR_BAD_REPRESENTATION;
    case ErrorCode::NotAcyclicPreset: return TL_ERR_NOT_ACYCLIC_PRESET;
    case ErrorCode::ShapeMismatch: return TL_ERR_SHAPE_MISMATCH;
    case ErrorCode::ConvergenceFailure: return TL_ERR_CONVERGENCE;
    case ErrorCode::NotInvertible: return TL_ERR_NOT_INVERTIBLE;
    case ErrorCode::NotAnEigenvalue: return TL_ERR_NOT_AN_EIGENVALUE;
    case ErrorCode::NotAcyclic: return TL_ERR_NOT_ACYCLIC;
    case ErrorCode::PivotFailure: return TL_ERR_PIVOT;
    case ErrorCode::StepTooLarge: return TL_ERR_STEP_TOO_LARGE;
    case ErrorCode::PoleAtOne: return TL_ERR_POLE_AT_ONE;
    case ErrorCode::PoleHit: return TL_ERR_POLE_HIT;
    case ErrorCode::QuadratureFailure: return TL_ERR_QUADRATURE;
    case ErrorCode::BadParameter: return TL_ERR_BAD_PARAMETER;
    case ErrorCode::UnsupportedPartition: return TL_ERR_UNSUPPORTED_PARTITION;
  }
  return TL_ERR_INTERNAL;
}

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class F>
tl_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return TL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const NullArgument& e) {
    g_last_error = e.what();
    return TL_ERR_NULL_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return TL_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return TL_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = dup_string(j.dump(2)); }

void need(const void* p, const char* what) {
  if (!p) throw NullArgument(std::string(what) + " is null");
}

ChainMetric parse_metric(const std::string& spec, const TwistedComplex& complex, std::uint64_t seed) {
  if (spec.empty() || spec == "identity") return ChainMetric::identity(complex);
  if (spec.rfind("random", 0) == 0) {
    double spread = 0.5;
    if (spec.size() > 6) {
      if (spec[6] != ':') throw Error(ErrorCode::ParseError, "metric spec 'random[:spread]'");
      try {
        spread = std::stod(spec.substr(7));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad spread in metric spec '" + spec + "'");
      }
    }
    return ChainMetric::random(complex, seed, spread);
  }
  if (spec.rfind("scaled:", 0) == 0) {
    std::vector<double> scale;
    std::string rest = spec.substr(7);
    size_t pos = 0;
    while (pos <= rest.size()) {
      const size_t comma = rest.find(',', pos);
      const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        size_t used = 0;
        scale.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad scale '" + item + "' in metric spec");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return ChainMetric::scaled(complex, scale);
  }
  throw Error(ErrorCode::ParseError, "unknown metric spec '" + spec + "'");
}

Json parse_object(const char* text, const std::set<std::string>& allowed) {
  need(text, "spec");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "spec must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw Error(ErrorCode::ParseError, "unknown field '" + it.key() + "'");
  return j;
}

template <class T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

extern "C" {

const char* tl_version(void) { return "0.1.0"; }

const char* tl_status_name(tl_status status) {
  switch (status) {
    case TL_OK: return "OK";
    case TL_ERR_PARSE: return "ParseError";
    case TL_ERR_NON_CHAIN_COMPLEX: return "NonChainComplex";
    case TL_ERR_BAD_REPRESENTATION: return "BadRepresentation";
    case TL_ERR_NOT_ACYCLIC_PRESET: return "NotAcyclicPreset";
    case TL_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case TL_ERR_CONVERGENCE: return "ConvergenceFailure";
    case TL_ERR_NOT_INVERTIBLE: return "NotInvertible";
    case TL_ERR_NOT_AN_EIGENVALUE: return "NotAnEigenvalue";
    case TL_ERR_NOT_ACYCLIC: return "NotAcyclic";
    case TL_ERR_PIVOT: return "PivotFailure";
    case TL_ERR_STEP_TOO_LARGE: return "StepTooLarge";
    case TL_ERR_POLE_AT_ONE: return "PoleAtOne";
    case TL_ERR_POLE_HIT: return "PoleHit";
    case TL_ERR_QUADRATURE: return "QuadratureFailure";
    case TL_ERR_BAD_PARAMETER: return "BadParameter";
    case TL_ERR_UNSUPPORTED_PARTITION: return "UnsupportedPartition";
    case TL_ERR_NULL_ARGUMENT: return "NullArgument";
    case TL_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* tl_last_error(void) { return g_last_error.c_str(); }

void tl_string_free(char* s) { std::free(s); }

tl_status tl_complex_from_json(const char* json, tl_complex** out) {
  if (!json || !out) return TL_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    auto [cells, rho] = parse_complex_json(json);
    TwistedComplex cx = build_twisted_boundary(cells, rho);
    *out = new tl_complex{std::move(cells), std::move(rho), std::move(cx)};
  });
}

tl_status tl_complex_from_preset(const char* name, double theta, double alpha, double beta, int rank,
                                 int allow_non_acyclic, tl_complex** out) {
  if (!name || !out) return TL_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    PresetSpec spec;
    spec.kind = parse_preset_kind(name);
    spec.theta = theta;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.rank = rank;
    spec.allow_non_acyclic = allow_non_acyclic != 0;
    auto [cells, rho] = preset(spec);
    TwistedComplex cx = build_twisted_boundary(cells, rho);
    *out = new tl_complex{std::move(cells), std::move(rho), std::move(cx)};
  });
}

void tl_complex_free(tl_complex* complex) { delete complex; }

tl_status tl_complex_to_json(const tl_complex* complex, char** json) {
  if (!complex || !json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] { *json = dup_string(complex_to_json(complex->cells, complex->rho)); });
}

tl_status tl_complex_validate(const tl_complex* complex, char** report_json) {
  if (!complex || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] { emit(to_json(validate(complex->complex)), report_json); });
}

tl_status tl_complex_torsion(const tl_complex* complex, const char* beta_spec, const char* metric_spec,
                             uint64_t seed, char** report_json) {
  if (!complex || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const TwistedComplex& cx = complex->complex;
    const BetaWeight beta = parse_beta(beta_spec ? beta_spec : "k", cx.dimension());
    const ChainMetric metric = parse_metric(metric_spec ? metric_spec : "identity", cx, seed);
    emit(to_json(combinatorial_report(cx, metric, beta)), report_json);
  });
}

tl_status tl_model_create(const char* spec_json, tl_model** out) {
  if (!spec_json || !out) return TL_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    const Json j = parse_object(spec_json, {"model", "L", "theta", "rank", "n", "R", "condition"});
    const std::string name = field<std::string>(j, "model", "");
    const int rank = field<int>(j, "rank", 1);
    if (name == "interval" || name == "cylinder") {
      const double R = field<double>(j, "R", 1.0);
      const BoundaryCondition bc = parse_boundary_condition(field<std::string>(j, "condition", "relative"));
      if (name == "interval") {
        *out = new tl_model{build_interval(R, bc, rank)};
      } else {
        *out = new tl_model{build_cylinder(R, field<double>(j, "L", 2.0 * std::numbers::pi), bc, rank)};
      }
      return;
    }
    ClosedModelSpec spec;
    spec.kind = parse_closed_kind(name);
    spec.rank = rank;
    spec.length = field<double>(j, "L", spec.kind == ClosedKind::Torus ? 1.0 : 2.0 * std::numbers::pi);
    spec.theta = field<double>(j, "theta", 0.0);
    spec.dim = field<int>(j, "n", 2);
    *out = new tl_model{build_model(spec)};
  });
}

void tl_model_free(tl_model* model) { delete model; }

int tl_model_dimension(const tl_model* model) {
  if (!model) return -1;
  return std::visit([](const auto& m) { return m.dim; }, model->model);
}

tl_status tl_model_zeta(const tl_model* model, int degree, double s_re, double s_im, int with_derivative,
                        char** report_json) {
  if (!model || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const std::complex<double> s(s_re, s_im);
    ZetaEval z;
    std::string name;
    if (const auto* c = std::get_if<ClosedModel>(&model->model)) {
      z = degree_zeta(*c, degree, s, with_derivative != 0);
      name = c->name;
    } else {
      const auto& b = std::get<BoundaryModel>(model->model);
      z = boundary_degree_zeta(b, degree, s, with_derivative != 0);
      name = b.name + "/" + b.condition.name();
    }
    Json j = {{"kind", "zeta"}, {"model", name}, {"degree", degree}};
    const Json zj = to_json(z);
    for (auto it = zj.begin(); it != zj.end(); ++it) j[it.key()] = it.value();
    emit(j, report_json);
  });
}

tl_status tl_model_torsion(const tl_model* model, const char* beta_spec, char** report_json) {
  if (!model || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const std::string spec = beta_spec ? beta_spec : "k";
    if (const auto* c = std::get_if<ClosedModel>(&model->model)) {
      Json j = to_json(residue_torsion(*c, parse_beta(spec, c->dim)));
      if (c->dim == 2) j["surface_combination"] = surface_combination(*c);
      emit(j, report_json);
    } else {
      const auto& b = std::get<BoundaryModel>(model->model);
      emit(to_json(boundary_residue_torsion(b, parse_beta(spec, b.dim))), report_json);
    }
  });
}

tl_status tl_model_identities(const tl_model* model, double tolerance, char** report_json) {
  if (!model || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const double tol = tolerance > 0.0 ? tolerance : 1e-8;
    if (const auto* c = std::get_if<ClosedModel>(&model->model)) {
      emit(to_json(identity_suite(*c, {0.0, 0.75, 2.0}, tol)), report_json);
      return;
    }
    const auto& b = std::get<BoundaryModel>(model->model);
    if (b.condition.mixed())
      throw Error(ErrorCode::BadParameter, "the sign law compares pure relative and absolute conditions");
    auto rebuild = [&](const BoundaryCondition& bc) {
      return b.geometry == BoundaryGeometry::Interval ? build_interval(b.length, bc, b.rank)
                                                      : build_cylinder(b.length, b.circle, bc, b.rank);
    };
    const BoundaryModel rel = rebuild(BoundaryCondition::relative());
    const BoundaryModel abs = rebuild(BoundaryCondition::absolute());
    emit(to_json(duality_check(rel, abs, {0.0, 0.75, 2.0}, tol)), report_json);
  });
}

tl_status tl_gluing_check(const char* spec_json, double tolerance, char** report_json) {
  if (!spec_json || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const Json j = parse_object(spec_json, {"geometry", "R", "L", "split", "condition", "rank"});
    GluingSpec spec;
    spec.geometry = parse_boundary_geometry(field<std::string>(j, "geometry", "interval"));
    spec.length = field<double>(j, "R", 1.0);
    spec.circle = field<double>(j, "L", 2.0 * std::numbers::pi);
    spec.split = field<double>(j, "split", 0.5 * spec.length);
    spec.outer = parse_boundary_condition(field<std::string>(j, "condition", "absolute"));
    spec.rank = field<int>(j, "rank", 1);
    emit(to_json(gluing_check(spec, tolerance > 0.0 ? tolerance : 1e-8)), report_json);
  });
}

tl_status tl_verify(const char* suite, double tolerance, uint64_t seed, char** report_json, int* all_passed) {
  if (!suite || !report_json) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const std::optional<double> tol = tolerance > 0.0 ? std::optional<double>(tolerance) : std::nullopt;
    const VerifyResult r = run_verify(suite, tol, seed);
    if (all_passed) *all_passed = r.all_passed() ? 1 : 0;
    emit(to_json(r), report_json);
  });
}

tl_status tl_render(const char* report_json, const char* format, char** out) {
  if (!report_json || !format || !out) return TL_ERR_NULL_ARGUMENT;
  return guarded([&] {
    Json j;
    try {
      j = Json::parse(report_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    const std::string f = format;
    if (f == "json") *out = dup_string(j.dump(2) + "\n");
    else if (f == "csv") *out = dup_string(to_csv(j));
    else if (f == "pretty") *out = dup_string(to_pretty(j));
    else throw Error(ErrorCode::ParseError, "unknown format '" + f + "'");
  });
}

tl_status tl_set_quadrature_eps(double eps) {
  return guarded([&] { set_quadrature_tolerance(eps); });
}

double tl_quadrature_eps(void) { return quadrature_tolerance(); }

}  // extern "C"
