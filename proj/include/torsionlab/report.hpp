#pragma once

#include "torsionlab/boundary_models.hpp"
#include "torsionlab/spectral_models.hpp"
#include "torsionlab/torsion.hpp"
#include "torsionlab/zeta.hpp"

#include <json.hpp>

#include <string>

namespace torsionlab {

using Json = nlohmann::ordered_json;

Json to_json(const BetaWeight& beta);
Json to_json(const BetaClassification& c);
Json to_json(const ValidationReport& r);
Json to_json(const CombinatorialReport& r);
Json to_json(const ZetaEval& z);
Json to_json(const TorsionReport& r);
Json to_json(const BoundaryTorsionReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const GluingReport& r);

/// key,value lines with 15 significant digits.
std::string to_csv(const Json& flat_report);

/// Indented `key: value` text with 15 significant digits.
std::string to_pretty(const Json& report);

/// 15 significant digits, no trailing noise.
std::string format_number(double x);

}  // namespace torsionlab
