#include "torsionlab/torsionlab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kNotAcyclic = 3, kPole = 4, kOther = 5 };

int exit_for(tl_status st) {
  switch (st) {
    case TL_OK: return kOk;
    case TL_ERR_PARSE: return kParse;
    case TL_ERR_NOT_ACYCLIC:
    case TL_ERR_NOT_ACYCLIC_PRESET: return kNotAcyclic;
    case TL_ERR_POLE_HIT:
    case TL_ERR_POLE_AT_ONE: return kPole;
    default: return kOther;
  }
}

int fail(tl_status st) {
  std::cerr << "error: " << tl_last_error() << "\n";
  return exit_for(st);
}

struct Output {
  bool json = false;
  bool csv = false;
};

/// Takes ownership of `report`.
int print(char* report, const Output& out) {
  const char* format = out.json ? "json" : out.csv ? "csv" : "pretty";
  char* text = nullptr;
  const tl_status st = tl_render(report, format, &text);
  tl_string_free(report);
  if (st != TL_OK) return fail(st);
  std::cout << text;
  tl_string_free(text);
  return kOk;
}

void warn_beta(const char* report) {
  const Json j = Json::parse(report);
  if (j.contains("classification") && !j["classification"].value("in_span_one_k", true))
    std::cerr << "warning: beta not in span{1,k}\n";
}

struct ModelFlags {
  std::string model = "circle";
  int n = 2;
  double L = 0.0, R = 1.0, theta = 0.0;
  int rank = 1;
  std::string condition = "relative";
  CLI::Option* L_opt = nullptr;
  CLI::Option* R_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* cond_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "circle | torus | sphere2 | point | interval | cylinder")->required();
    n_opt = cmd->add_option("--n", n, "torus dimension");
    L_opt = cmd->add_option("--L", L, "circle circumference / torus side");
    R_opt = cmd->add_option("--R", R, "interval length");
    theta_opt = cmd->add_option("--theta", theta, "circle character angle");
    cmd->add_option("--rank", rank, "bundle rank")->default_val(1);
    cond_opt = cmd->add_option("--condition", condition, "relative | absolute | mixed | mixed-right");
  }

  std::string spec() const {
    Json j = {{"model", model}, {"rank", rank}};
    if (n_opt->count()) j["n"] = n;
    if (L_opt->count()) j["L"] = L;
    if (R_opt->count()) j["R"] = R;
    if (theta_opt->count()) j["theta"] = theta;
    if (cond_opt->count()) j["condition"] = condition;
    return j.dump();
  }
};

struct ModelHandle {
  tl_model* model = nullptr;
  ~ModelHandle() { tl_model_free(model); }
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial, analytic and residue torsion of twisted complexes and model spectra"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  double tol = 0.0;
  std::uint64_t seed = 12345;
  app.add_flag("--json", out.json, "JSON output");
  app.add_flag("--csv", out.csv, "CSV output (key,value)");
  app.add_option("--tol", tol, "tolerance override");
  app.add_option("--seed", seed, "seed for random metrics and cases");

  auto* torsion = app.add_subcommand("torsion", "torsion of a finite twisted complex");
  std::string preset_name, input_path, beta_spec = "k", metric = "identity";
  double theta = 1.0, alpha = 1.0, beta_angle = 0.3;
  int rank = 2;
  bool allow_non_acyclic = false;
  auto* preset_opt = torsion->add_option("--preset", preset_name, "circle | torus2 | interval | point");
  auto* input_opt = torsion->add_option("--input", input_path, "complex JSON file");
  preset_opt->excludes(input_opt);
  torsion->add_option("--theta", theta, "circle holonomy angle")->default_val(1.0);
  torsion->add_option("--alpha", alpha, "torus first holonomy angle")->default_val(1.0);
  torsion->add_option("--beta-angle", beta_angle, "torus second holonomy angle")->default_val(0.3);
  torsion->add_option("--rank", rank, "representation rank")->default_val(2);
  torsion->add_flag("--allow-non-acyclic", allow_non_acyclic, "permit trivial holonomy");
  torsion->add_option("--beta", beta_spec, "1 | k | lin:l,m | comma list")->default_val("k");
  torsion->add_option("--metric", metric, "identity | random[:spread] | scaled:h0,h1,...")->default_val("identity");

  auto* zeta = app.add_subcommand("zeta", "spectral zeta function of a model");
  ModelFlags zflags;
  zflags.attach(zeta);
  int degree = 0;
  double s = 0.0, s_imag = 0.0;
  bool derivative = false;
  zeta->add_option("--degree", degree, "form degree")->default_val(0);
  zeta->add_option("--s", s, "real part of s")->default_val(0.0);
  zeta->add_option("--s-imag", s_imag, "imaginary part of s")->default_val(0.0);
  zeta->add_flag("--derivative", derivative, "also report zeta'(s)");

  auto* model_torsion = app.add_subcommand("model-torsion", "residue and analytic torsion of a model");
  ModelFlags mflags;
  mflags.attach(model_torsion);
  std::string model_beta = "k";
  bool identities = false;
  model_torsion->add_option("--beta", model_beta, "1 | k | lin:l,m | comma list")->default_val("k");
  model_torsion->add_flag("--identities", identities, "run the zeta identity checks instead");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify->add_option("--suite", suite, "combinatorial | variation | closed-spectral | boundary | all")
      ->default_val("all");

  auto* gluing = app.add_subcommand("gluing", "check the gluing formula on a split model");
  std::string geometry = "interval", outer = "absolute";
  double gR = 1.0, gL = 6.283185307179586, split = 0.5;
  int grank = 1;
  gluing->add_option("--geometry", geometry, "interval | cylinder")->default_val("interval");
  gluing->add_option("--R", gR, "length")->default_val(1.0);
  gluing->add_option("--L", gL, "circle circumference")->default_val(6.283185307179586);
  gluing->add_option("--split", split, "cut position")->default_val(0.5);
  gluing->add_option("--condition", outer, "outer condition: relative | absolute")->default_val("absolute");
  gluing->add_option("--rank", grank, "bundle rank")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  if (const char* eps = std::getenv("TORSIONLAB_QUAD_EPS")) {
    char* end = nullptr;
    const double v = std::strtod(eps, &end);
    if (end == eps || *end != '\0') {
      std::cerr << "error: TORSIONLAB_QUAD_EPS is not a number\n";
      return kParse;
    }
    if (tl_status st = tl_set_quadrature_eps(v); st != TL_OK) return fail(st);
  }

  char* report = nullptr;

  if (torsion->parsed()) {
    tl_complex* cx = nullptr;
    tl_status st;
    if (input_opt->count()) {
      std::string text;
      if (!read_file(input_path, text)) {
        std::cerr << "error: cannot read " << input_path << "\n";
        return kParse;
      }
      st = tl_complex_from_json(text.c_str(), &cx);
    } else {
      st = tl_complex_from_preset(preset_opt->count() ? preset_name.c_str() : "circle", theta, alpha, beta_angle,
                                  rank, allow_non_acyclic ? 1 : 0, &cx);
    }
    if (st != TL_OK) return fail(st);
    st = tl_complex_torsion(cx, beta_spec.c_str(), metric.c_str(), seed, &report);
    tl_complex_free(cx);
    if (st != TL_OK) return fail(st);
    warn_beta(report);
    return print(report, out);
  }

  if (zeta->parsed() || model_torsion->parsed()) {
    const ModelFlags& f = zeta->parsed() ? zflags : mflags;
    ModelHandle h;
    if (tl_status st = tl_model_create(f.spec().c_str(), &h.model); st != TL_OK) return fail(st);
    tl_status st;
    if (zeta->parsed()) {
      st = tl_model_zeta(h.model, degree, s, s_imag, derivative ? 1 : 0, &report);
    } else if (identities) {
      st = tl_model_identities(h.model, tol, &report);
    } else {
      st = tl_model_torsion(h.model, model_beta.c_str(), &report);
    }
    if (st != TL_OK) return fail(st);
    if (model_torsion->parsed() && !identities) warn_beta(report);
    if (identities) {
      const bool ok = Json::parse(report).value("all_passed", false);
      const int code = print(report, out);
      return code != kOk ? code : (ok ? kOk : kVerifyFailed);
    }
    return print(report, out);
  }

  if (verify->parsed()) {
    int all_passed = 0;
    if (tl_status st = tl_verify(suite.c_str(), tol, seed, &report, &all_passed); st != TL_OK) return fail(st);
    if (out.json || out.csv) {
      const int code = print(report, out);
      return code != kOk ? code : (all_passed ? kOk : kVerifyFailed);
    }
    const Json j = Json::parse(report);
    tl_string_free(report);
    char buf[512];
    for (const auto& c : j["cases"]) {
      const double measured = c["measured"].is_number() ? c["measured"].get<double>() : std::nan("");
      std::snprintf(buf, sizeof buf, "%s %s measured=%.15g expected=%.15g diff=%.3g tol=%.3g [%s]",
                    c["passed"].get<bool>() ? "PASS" : "FAIL", c["id"].get<std::string>().c_str(), measured,
                    c["expected"].get<double>(), c["discrepancy"].is_number() ? c["discrepancy"].get<double>() : 0.0,
                    c["tolerance"].get<double>(), c["provenance"].get<std::string>().c_str());
      std::cout << buf;
      if (c.contains("note")) std::cout << " " << c["note"].get<std::string>();
      std::cout << "\n";
    }
    std::cout << j["cases_total"].get<int>() - j["cases_failed"].get<int>() << "/" << j["cases_total"].get<int>()
              << " passed\n";
    return all_passed ? kOk : kVerifyFailed;
  }

  if (gluing->parsed()) {
    const Json spec = {{"geometry", geometry}, {"R", gR}, {"L", gL}, {"split", split}, {"condition", outer},
                       {"rank", grank}};
    if (tl_status st = tl_gluing_check(spec.dump().c_str(), tol, &report); st != TL_OK) return fail(st);
    const bool ok = Json::parse(report).value("passed", false);
    const int code = print(report, out);
    return code != kOk ? code : (ok ? kOk : kVerifyFailed);
  }
  return kOther;
}
