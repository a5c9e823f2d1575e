#include "torsionlab/report.hpp"

#include <cstdio>
#include <sstream>

namespace torsionlab {

namespace {

Json degree_terms(const std::vector<DegreeTerms>& degrees) {
  Json arr = Json::array();
  for (const DegreeTerms& d : degrees) {
    arr.push_back({{"degree", d.degree},
                   {"betti", d.betti},
                   {"zeta0", d.zeta0},
                   {"zeta0_error", d.zeta0_error},
                   {"zeta_prime0", d.zeta_prime0},
                   {"zeta_prime0_error", d.zeta_prime0_error},
                   {"residue", d.residue}});
  }
  return arr;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

void pretty(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    if (v.is_structured()) {
      os << pad << key << ":\n";
      pretty(v, indent + 2, os);
    } else if (v.is_number_float()) {
      os << pad << key << ": " << format_number(v.get<double>()) << "\n";
    } else if (v.is_string()) {
      os << pad << key << ": " << v.get<std::string>() << "\n";
    } else {
      os << pad << key << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json to_json(const BetaWeight& beta) { return beta.values; }

Json to_json(const BetaClassification& c) {
  return {{"in_span_one_k", c.satisfies_recurrence},
          {"lambda", c.lambda},
          {"mu", c.mu},
          {"second_differences", c.residual}};
}

Json to_json(const ValidationReport& r) {
  return {{"ok", r.ok()},
          {"rank", r.rank},
          {"chain_dims", r.chain_dims},
          {"shapes_chain", r.shapes_chain},
          {"residual", r.residual},
          {"tolerance", r.tolerance},
          {"flagged_degrees", r.flagged_degrees},
          {"max_residual", r.max_residual}};
}

Json to_json(const CombinatorialReport& r) {
  Json j = {{"kind", "combinatorial"},
            {"dimension", r.dimension},
            {"rank", r.rank},
            {"beta", to_json(r.beta)},
            {"classification", to_json(r.classification)},
            {"betti", r.betti},
            {"acyclic", r.acyclic},
            {"tr_log", r.tr_log},
            {"spectra", r.spectra},
            {"chi", r.euler.chi},
            {"chi_derived", r.euler.chi_derived},
            {"log_torsion", r.log_torsion},
            {"log_reidemeister", r.log_reidemeister}};
  if (r.oracle_available) j["determinant_oracle"] = r.oracle;
  return j;
}

Json to_json(const ZetaEval& z) {
  Json j = {{"s", z.s.real()},
            {"s_imag", z.s.imag()},
            {"value", z.value.real()},
            {"value_imag", z.value.imag()},
            {"abs_error", z.abs_error},
            {"exact_coefficient_path", z.exact_coefficient_path}};
  if (z.derivative) {
    j["derivative"] = z.derivative->real();
    j["derivative_imag"] = z.derivative->imag();
    j["derivative_abs_error"] = z.derivative_abs_error;
  }
  return j;
}

Json to_json(const TorsionReport& r) {
  Json j = {{"kind", "closed-model"},
            {"model", r.model},
            {"dimension", r.dim},
            {"rank", r.rank},
            {"beta", to_json(r.beta)},
            {"classification", to_json(r.classification)},
            {"degrees", degree_terms(r.degrees)},
            {"chi", r.euler.chi},
            {"chi_derived", r.euler.chi_derived},
            {"log_residue_torsion", r.log_residue_torsion},
            {"log_analytic_torsion", r.log_analytic_torsion},
            {"error_bound", r.error_bound}};
  if (r.has_expected) j["expected_residue_torsion"] = r.expected_residue;
  return j;
}

Json to_json(const BoundaryTorsionReport& r) {
  Json j = {{"kind", "boundary-model"},
            {"model", r.model},
            {"dimension", r.dim},
            {"rank", r.rank},
            {"beta", to_json(r.beta)},
            {"classification", to_json(r.classification)},
            {"degrees", degree_terms(r.degrees)},
            {"chi", r.chi},
            {"chi_derived", r.chi_derived},
            {"weighted_zeta_sum", r.weighted_zeta_sum},
            {"alternating_zeta_sum", r.alternating_zeta_sum},
            {"weighted_assembly", r.weighted_assembly},
            {"weighted_closed_form", r.weighted_closed_form},
            {"unweighted_assembly", r.unweighted_assembly},
            {"unweighted_closed_form", r.unweighted_closed_form},
            {"log_residue_torsion", r.log_residue_torsion}};
  if (r.has_expected) j["expected_residue_torsion"] = r.expected_residue;
  return j;
}

Json to_json(const IdentityReport& r) {
  Json checks = Json::array();
  for (const IdentityCheck& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"point", c.s},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"discrepancy", c.discrepancy},
                      {"passed", c.passed}});
  }
  return {{"model", r.model}, {"tolerance", r.tolerance}, {"all_passed", r.all_passed()}, {"checks", checks}};
}

Json to_json(const GluingReport& r) {
  return {{"kind", "gluing"},
          {"geometry", r.geometry},
          {"outer", r.outer},
          {"split", r.split},
          {"whole", r.whole},
          {"first_piece", r.first},
          {"second_piece", r.second},
          {"interface", r.interface},
          {"half_chi_interface", r.half_chi_interface},
          {"rhs", r.rhs},
          {"discrepancy", r.discrepancy},
          {"passed", r.passed}};
}

std::string to_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : rows) os << k << "," << v << "\n";
  return os.str();
}

std::string to_pretty(const Json& report) {
  std::ostringstream os;
  pretty(report, 0, os);
  return os.str();
}

}  // namespace torsionlab
