#pragma once

// Run reports: invariant summary, residual ledger, threshold report.
// Serialization is deterministic (fixed key order, reals at 17 significant
// digits, no timestamps), so identical inputs give byte-identical output.

#include <json.hpp>

#include <string>
#include <vector>

#include "cmc/definition.hpp"
#include "cmc/identities.hpp"
#include "cmc/thresholds.hpp"

namespace cmc {

inline constexpr const char* kToolName = "cmclab";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunReport {
  nlohmann::ordered_json surface;  // definition echo with resolved domain
  SurfaceInvariants invariants;
  double cmc_deviation = 0.0;
  std::vector<ResidualReport> residuals;
  ThresholdReport thresholds;
  int exit_code = 0;
  std::string status;  // "pass" | "residual-failure"
};

SurfaceInvariants surface_invariants(const SurfaceGrid& g);

nlohmann::ordered_json residual_to_json(const ResidualReport& r);
nlohmann::ordered_json thresholds_to_json(const ThresholdReport& t);
nlohmann::ordered_json report_to_json(const RunReport& r);

std::string human_table(const RunReport& r);

}  // namespace cmc
