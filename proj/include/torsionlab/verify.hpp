#pragma once

#include "torsionlab/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

struct VerifyCase {
  std::string id;
  std::string suite;
  std::string description;
  double measured = 0.0;
  double expected = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  /// oracle | reference-value | definition
  std::string provenance;
  bool passed = false;
  std::string note;
};

struct VerifyResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCase> cases;
  bool all_passed() const;
};

/// Suites: combinatorial, closed-spectral, boundary, variation, all.
/// `tolerance` overrides every non-exact case tolerance.
VerifyResult run_verify(const std::string& suite, std::optional<double> tolerance, std::uint64_t seed);

Json to_json(const VerifyResult& r);

/// h(u) = (1-u) A + u B between two seeded random metrics.
MetricPath random_metric_path(const TwistedComplex& complex, std::uint64_t seed, double spread = 0.4);

}  // namespace torsionlab
