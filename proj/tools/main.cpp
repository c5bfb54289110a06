// Command-line front end: verify, roots, generate, convergence.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "cmc/commands.hpp"

namespace {

bool parse_grid(const std::string& s, int& nx, int& ny) {
  const auto x = s.find('x');
  if (x == std::string::npos) return false;
  try {
    nx = std::stoi(s.substr(0, x));
    ny = std::stoi(s.substr(x + 1));
  } catch (...) {
    return false;
  }
  return nx >= 5 && ny >= 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification lab for CMC surfaces in S2xR and H2xR"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the identity ledger and classifier");
  std::string v_def;
  std::string v_grid, v_out;
  cmc::VerifyOptions vopt;
  int v_jet = 0;
  double v_tol_analytic = 0.0, v_tol_exact = 0.0;
  verify->add_option("definition", v_def, "surface definition JSON ('-' = stdin)")
      ->required();
  verify->add_flag("--refine", vopt.refine, "also run the h/2 grid and report orders");
  verify->add_flag("--published-simons", vopt.published_simons,
                   "treat the published S-equation form as primary");
  verify->add_option("--grid", v_grid, "override grid as NxM");
  verify->add_option("--jet-order", v_jet, "override jet order (3..6)");
  verify->add_option("--tol-analytic", v_tol_analytic, "tolerance for stencil-free identities");
  verify->add_option("--tol-exact", v_tol_exact, "tolerance for identically-vanishing residuals");
  verify->add_option("--out", v_out, "write the JSON report here");
  verify->add_flag("--json", vopt.json_stdout, "print JSON instead of the table");

  // roots
  auto* roots = app.add_subcommand("roots", "tabulate L_H and M_H");
  cmc::RootsOptions ropt;
  roots->add_option("--min", ropt.h_min, "smallest H")->required();
  roots->add_option("--max", ropt.h_max, "largest H")->required();
  roots->add_option("--count", ropt.count, "number of rows")->required();
  roots->add_flag("--log", ropt.log_spacing, "log-spaced H samples");
  roots->add_option("--out", ropt.out_path, "write the JSON table here");

  // generate
  auto* gen = app.add_subcommand("generate", "write a catalog surface definition");
  cmc::GenerateOptions gopt;
  std::string g_grid;
  gen->add_option("--kind", gopt.kind, "slice | vertical_plane | cmc_cylinder | rotational_cmc_sphere")
      ->required();
  gen->add_option("--c", gopt.c, "curvature sign (+1 or -1)");
  gen->add_option("--H", gopt.H, "target mean curvature");
  gen->add_option("--t0", gopt.t0, "slice height");
  gen->add_option("--grid", g_grid, "grid as NxM");
  gen->add_flag("--closed", gopt.closed, "declare the surface closed");
  bool g_not_complete = false;
  gen->add_flag("--not-complete", g_not_complete, "declare the surface incomplete");
  gen->add_option("--out", gopt.out_path, "write the definition here");

  // convergence
  auto* conv = app.add_subcommand("convergence", "refinement study of the stencil identities");
  std::string c_def, c_grid;
  cmc::ConvergenceOptions copt;
  conv->add_option("definition", c_def, "surface definition JSON")->required();
  conv->add_option("--levels", copt.levels, "number of grid levels (>= 2)");
  conv->add_option("--node-limit", copt.node_limit, "max nodes per level");
  conv->add_option("--grid", c_grid, "override base grid as NxM");
  conv->add_option("--out", copt.out_path, "write the JSON table here");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    if (!v_grid.empty()) {
      int nx, ny;
      if (!parse_grid(v_grid, nx, ny)) {
        std::cerr << "input error: bad --grid (want NxM, N,M >= 5)\n";
        return 2;
      }
      vopt.grid_nx = nx;
      vopt.grid_ny = ny;
    }
    if (v_jet != 0) vopt.jet_order = v_jet;
    if (v_tol_analytic > 0.0) vopt.tol.analytic = v_tol_analytic;
    if (v_tol_exact > 0.0) vopt.tol.exact = v_tol_exact;
    vopt.out_path = v_out;
    return cmc::cmd_verify(v_def, vopt, std::cout, std::cerr);
  }
  if (roots->parsed()) return cmc::cmd_roots(ropt, std::cout, std::cerr);
  if (gen->parsed()) {
    if (!g_grid.empty()) {
      int nx, ny;
      if (!parse_grid(g_grid, nx, ny)) {
        std::cerr << "input error: bad --grid (want NxM, N,M >= 5)\n";
        return 2;
      }
      gopt.grid_nx = nx;
      gopt.grid_ny = ny;
    }
    gopt.complete = !g_not_complete;
    return cmc::cmd_generate(gopt, std::cout, std::cerr);
  }
  if (conv->parsed()) {
    if (!c_grid.empty()) {
      int nx, ny;
      if (!parse_grid(c_grid, nx, ny)) {
        std::cerr << "input error: bad --grid (want NxM, N,M >= 5)\n";
        return 2;
      }
      copt.grid_nx = nx;
      copt.grid_ny = ny;
    }
    return cmc::cmd_convergence(c_def, copt, std::cout, std::cerr);
  }
  return 2;
}
