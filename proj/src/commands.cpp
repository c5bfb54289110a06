#include "cmc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cmc {

using nlohmann::ordered_json;

namespace {

void write_output(const std::string& path, const std::string& text,
                  std::ostream& err) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) {
    err << "cannot write '" << path << "'\n";
    throw InputError("cannot write output file");
  }
  out << text;
}

bool verdict_gates_exit(const ResidualReport& r) {
  return r.role == "primary";
}

bool verdict_is_failure(const ResidualReport& r) {
  return r.verdict == "fail" || r.verdict == "rejected" ||
         r.verdict == "unresolved";
}

}  // namespace

RunReport run_verify(const SurfaceDefinition& def, const VerifyOptions& opt) {
  SurfaceDefinition d = def;
  if (opt.jet_order) d.jet_order = *opt.jet_order;
  BuiltSurface surf = build_surface(d);
  GridDomain dom = surf.domain;
  if (opt.grid_nx) dom.nx = *opt.grid_nx;
  if (opt.grid_ny) dom.ny = *opt.grid_ny;

  SurfaceGrid grid = build_grid(surf, dom);
  std::optional<SurfaceGrid> fine;
  if (opt.refine) fine = build_grid(surf, refined(dom));

  RunReport rep;
  rep.surface = definition_to_json(d, dom);
  rep.invariants = surface_invariants(grid);
  rep.residuals = identity_ledger(grid, fine ? &*fine : nullptr, opt.tol);

  // The published S-equation form never gates the exit code on its own;
  // with --published-simons it is labeled primary but its known
  // discrepancy is downgraded to a warning.
  for (auto& r : rep.residuals) {
    if (r.id == "simons_S_published") {
      if (opt.published_simons) {
        r.role = "primary-warning";
        if (verdict_is_failure(r)) {
          if (!r.note.empty()) r.note += "; ";
          r.note += "downgraded to a warning (known discrepancy)";
        }
      }
    }
  }

  rep.thresholds = classify(rep.invariants, d.c, d.complete, d.closed);

  bool any_fail = false;
  for (const auto& r : rep.residuals)
    if (verdict_gates_exit(r) && verdict_is_failure(r)) any_fail = true;
  rep.exit_code = any_fail ? 1 : 0;
  rep.status = any_fail ? "residual-failure" : "pass";
  return rep;
}

int cmd_verify(const std::string& def_path, const VerifyOptions& opt,
               std::ostream& out, std::ostream& err) {
  SurfaceDefinition def;
  RunReport rep;
  try {
    def = load_definition(def_path);
    rep = run_verify(def, opt);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const expr::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ChartDomainError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateImmersionError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const GridError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ProfileClosureError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }

  const std::string json = dump_json_17(report_to_json(rep));
  try {
    write_output(opt.out_path, json, err);
  } catch (const InputError&) {
    return 2;
  }
  if (opt.json_stdout)
    out << json;
  else
    out << human_table(rep);
  return rep.exit_code;
}

int cmd_roots(const RootsOptions& opt, std::ostream& out, std::ostream& err) {
  if (!(opt.h_max > opt.h_min) || opt.count < 1) {
    err << "input error: empty H range\n";
    return 2;
  }
  ordered_json rows = ordered_json::array();
  out << "H               L_H             p(L_H)      M_H             q(M_H)\n";
  for (int i = 0; i < opt.count; ++i) {
    const double f = opt.count == 1 ? 0.0 : static_cast<double>(i) / (opt.count - 1);
    const double H = opt.log_spacing
                         ? opt.h_min * std::pow(opt.h_max / opt.h_min, f)
                         : opt.h_min + f * (opt.h_max - opt.h_min);
    ordered_json row;
    row["H"] = H;
    char buf[160];
    std::string lcol = "n/a", lres = "-", mcol = "n/a", mres = "-";
    if (H > 0.5) {
      const double l = L_H(H);
      row["L_H"] = l;
      row["p_residual"] = std::abs(p_H(l, H));
      std::snprintf(buf, sizeof buf, "%.10e", l);
      lcol = buf;
      std::snprintf(buf, sizeof buf, "%.1e", std::abs(p_H(l, H)));
      lres = buf;
    } else {
      row["L_H"] = nullptr;
      row["p_residual"] = nullptr;
    }
    if (H > mh_min_H()) {
      const double m = M_H(H);
      row["M_H"] = m;
      row["q_residual"] = std::abs(q_H(m, H));
      std::snprintf(buf, sizeof buf, "%.10e", m);
      mcol = buf;
      std::snprintf(buf, sizeof buf, "%.1e", std::abs(q_H(m, H)));
      mres = buf;
    } else {
      row["M_H"] = nullptr;
      row["q_residual"] = nullptr;
    }
    std::snprintf(buf, sizeof buf, "%-15.9g %-15s %-11s %-15s %s\n", H,
                  lcol.c_str(), lres.c_str(), mcol.c_str(), mres.c_str());
    out << buf;
    rows.push_back(row);
  }
  ordered_json doc;
  doc["schema"] = 1;
  doc["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
  doc["rows"] = rows;
  try {
    write_output(opt.out_path, dump_json_17(doc), err);
  } catch (const InputError&) {
    return 2;
  }
  return 0;
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
  auto kind = catalog_kind_from_string(opt.kind);
  if (!kind || *kind == CatalogKind::Custom) {
    err << "input error: unknown catalog kind '" << opt.kind << "'\n";
    return 2;
  }
  SurfaceDefinition def;
  def.kind = *kind;
  def.c = opt.c;
  def.H = opt.H;
  def.t0 = opt.t0;
  def.complete = opt.complete;
  def.closed = opt.closed;

  try {
    BuiltSurface surf = build_surface(def);
    GridDomain dom = surf.domain;
    if (opt.grid_nx) dom.nx = *opt.grid_nx;
    if (opt.grid_ny) dom.ny = *opt.grid_ny;
    SurfaceGrid grid = build_grid(surf, dom);
    const SurfaceInvariants inv = surface_invariants(grid);

    ordered_json doc = definition_to_json(def, dom);
    if (surf.profile) {
      // Embed the profile table at the grid's s-nodes.
      ordered_json tab;
      ordered_json s_arr = ordered_json::array(), rho_arr = ordered_json::array(),
                   t_arr = ordered_json::array(), sig_arr = ordered_json::array();
      for (int i = 0; i < dom.nx; ++i) {
        const double s = dom.x(i);
        const auto st = surf.profile->state(s);
        s_arr.push_back(s);
        rho_arr.push_back(st.rho);
        t_arr.push_back(st.t);
        sig_arr.push_back(st.sigma);
      }
      tab["arc_length_total"] = surf.profile->arc_length();
      tab["s"] = s_arr;
      tab["rho"] = rho_arr;
      tab["t"] = t_arr;
      tab["sigma"] = sig_arr;
      doc["profile"] = tab;
    }

    try {
      write_output(opt.out_path, dump_json_17(doc), err);
    } catch (const InputError&) {
      return 2;
    }
    if (opt.out_path.empty()) out << dump_json_17(doc);

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "kind %s  c %+g  H_median %.12g  cmc_deviation %.3e  sup|S| %.12g\n",
                  to_string(def.kind).c_str(), def.c, inv.H_median,
                  inv.cmc_deviation, inv.sup_abs_S);
    out << buf;
    return 0;
  } catch (const ProfileClosureError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_convergence(const std::string& def_path, const ConvergenceOptions& opt,
                    std::ostream& out, std::ostream& err) {
  if (opt.levels < 2) {
    err << "input error: need at least 2 levels\n";
    return 2;
  }
  SurfaceDefinition def;
  try {
    def = load_definition(def_path);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    BuiltSurface surf = build_surface(def);
    GridDomain dom = surf.domain;
    if (opt.grid_nx) dom.nx = *opt.grid_nx;
    if (opt.grid_ny) dom.ny = *opt.grid_ny;

    std::vector<GridDomain> doms{dom};
    for (int l = 1; l < opt.levels; ++l) doms.push_back(refined(doms.back()));
    for (const auto& d : doms)
      if (static_cast<long>(d.nx) * d.ny > opt.node_limit) {
        err << "input error: level exceeds the node limit (" << d.nx << "x"
            << d.ny << " > " << opt.node_limit << " nodes)\n";
        return 2;
      }

    std::vector<SurfaceGrid> grids;
    grids.reserve(doms.size());
    for (const auto& d : doms) grids.push_back(build_grid(surf, d));

    // Ledgers for consecutive pairs.
    std::vector<std::vector<ResidualReport>> pairs;
    for (int l = 0; l + 1 < opt.levels; ++l)
      pairs.push_back(identity_ledger(grids[l], &grids[l + 1], opt.tol));

    ordered_json doc;
    doc["schema"] = 1;
    doc["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
    doc["surface"] = definition_to_json(def, dom);
    doc["levels"] = opt.levels;

    out << "identity              level  sup          order     verdict\n";
    bool any_fail = false;
    ordered_json idarr = ordered_json::array();
    for (size_t k = 0; k < pairs[0].size(); ++k) {
      ordered_json ent;
      ent["id"] = pairs[0][k].id;
      ent["kind"] = pairs[0][k].kind;
      ordered_json lv = ordered_json::array();
      std::string final_verdict = "pass";
      for (size_t l = 0; l < pairs.size(); ++l) {
        const ResidualReport& r = pairs[l][k];
        ordered_json row;
        row["sup"] = r.sup;
        row["sup_fine"] = r.sup_fine ? ordered_json(*r.sup_fine) : ordered_json(nullptr);
        row["order"] = r.order ? ordered_json(*r.order) : ordered_json(nullptr);
        row["verdict"] = r.verdict;
        lv.push_back(row);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-21s %-6zu %-12.3e %-9s %s\n",
                      r.id.c_str(), l, r.sup,
                      r.order ? std::to_string(*r.order).substr(0, 6).c_str() : "-",
                      r.verdict.c_str());
        out << buf;
        if (r.verdict == "fail" || r.verdict == "rejected") final_verdict = "fail";
      }
      ent["levels"] = lv;
      ent["verdict"] = final_verdict;
      idarr.push_back(ent);
      if (final_verdict == "fail" && pairs[0][k].role == "primary") any_fail = true;
    }
    doc["identities"] = idarr;
    doc["status"] = any_fail ? "residual-failure" : "pass";
    doc["exit_code"] = any_fail ? 1 : 0;

    try {
      write_output(opt.out_path, dump_json_17(doc), err);
    } catch (const InputError&) {
      return 2;
    }
    return any_fail ? 1 : 0;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cmc
