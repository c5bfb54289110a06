#pragma once

// Batch front end.  Each command returns the process exit code:
// 0 = pass, 1 = residual failure, 2 = input error.

#include <iosfwd>
#include <optional>
#include <string>

#include "cmc/report.hpp"

namespace cmc {

struct VerifyOptions {
  bool refine = false;             // also run the h/2 grid and report orders
  bool published_simons = false;   // treat the published S-equation form as
                                   // primary (its known discrepancy is
                                   // downgraded to a warning)
  std::optional<int> grid_nx, grid_ny;
  std::optional<int> jet_order;
  TolerancePolicy tol;
  std::string out_path;            // JSON report destination ("" = none)
  bool json_stdout = false;        // print JSON instead of the table
};

int cmd_verify(const std::string& def_path, const VerifyOptions& opt,
               std::ostream& out, std::ostream& err);

// Internal entry point used by tests: build the report for a loaded
// definition without touching the filesystem.
RunReport run_verify(const SurfaceDefinition& def, const VerifyOptions& opt);

struct RootsOptions {
  double h_min = 0.6;
  double h_max = 10.0;
  int count = 64;
  bool log_spacing = false;
  std::string out_path;
};

int cmd_roots(const RootsOptions& opt, std::ostream& out, std::ostream& err);

struct GenerateOptions {
  std::string kind;
  double c = 1.0;
  double H = 1.0;
  double t0 = 0.0;
  std::optional<int> grid_nx, grid_ny;
  bool complete = true;
  bool closed = false;
  std::string out_path;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err);

struct ConvergenceOptions {
  int levels = 2;
  long node_limit = 1024L * 1024L;  // per level
  std::optional<int> grid_nx, grid_ny;
  TolerancePolicy tol;
  std::string out_path;
};

int cmd_convergence(const std::string& def_path, const ConvergenceOptions& opt,
                    std::ostream& out, std::ostream& err);

}  // namespace cmc
