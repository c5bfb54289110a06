#include "cmc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cmc {

using nlohmann::ordered_json;

SurfaceInvariants surface_invariants(const SurfaceGrid& g) {
  SurfaceInvariants inv;
  const auto dev = g.cmc_deviation();
  inv.H_median = dev.median_H;
  inv.cmc_deviation = dev.max_deviation;
  bool first = true;
  for (const auto& sd : g.nodes) {
    const double absS = std::sqrt(sd.S2);
    const double nu2 = sd.nu * sd.nu;
    const double phiTT = sd.T_on.dot(sd.phi_on * sd.T_on);
    if (first) {
      inv.sup_A2 = sd.A2;
      inv.sup_abs_S = inv.inf_abs_S = absS;
      inv.sup_A2_5nu2 = sd.A2 + 5.0 * nu2;
      inv.sup_phi2_5nu2 = sd.phi2 + 5.0 * nu2;
      inv.inf_phiTT = phiTT;
      first = false;
      continue;
    }
    inv.sup_A2 = std::max(inv.sup_A2, sd.A2);
    inv.sup_abs_S = std::max(inv.sup_abs_S, absS);
    inv.inf_abs_S = std::min(inv.inf_abs_S, absS);
    inv.sup_A2_5nu2 = std::max(inv.sup_A2_5nu2, sd.A2 + 5.0 * nu2);
    inv.sup_phi2_5nu2 = std::max(inv.sup_phi2_5nu2, sd.phi2 + 5.0 * nu2);
    inv.inf_phiTT = std::min(inv.inf_phiTT, phiTT);
  }
  return inv;
}

ordered_json residual_to_json(const ResidualReport& r) {
  ordered_json j;
  j["id"] = r.id;
  j["kind"] = r.kind;
  j["sup"] = r.sup;
  j["mean"] = r.mean;
  j["grid"] = ordered_json{{"nx", r.nx}, {"ny", r.ny}, {"hx", r.hx}, {"hy", r.hy}};
  j["sup_fine"] = r.sup_fine ? ordered_json(*r.sup_fine) : ordered_json(nullptr);
  j["order"] = r.order ? ordered_json(*r.order) : ordered_json(nullptr);
  j["verdict"] = r.verdict;
  j["role"] = r.role;
  j["note"] = r.note;
  return j;
}

ordered_json thresholds_to_json(const ThresholdReport& t) {
  ordered_json j;
  j["H"] = t.H;
  j["c"] = t.c;
  j["declared"] = ordered_json{{"complete", t.complete}, {"closed", t.closed}};
  j["L_H"] = t.L ? ordered_json(*t.L) : ordered_json(nullptr);
  j["M_H"] = t.M ? ordered_json(*t.M) : ordered_json(nullptr);
  j["p_residual"] = t.L ? ordered_json(t.p_residual) : ordered_json(nullptr);
  j["q_residual"] = t.M ? ordered_json(t.q_residual) : ordered_json(nullptr);
  ordered_json arr = ordered_json::array();
  for (const auto& v : t.theorems) {
    ordered_json tj;
    tj["id"] = v.id;
    tj["statement"] = v.statement;
    tj["verdict"] = v.verdict;
    tj["conclusion"] = v.conclusion;
    if (!v.reason.empty()) tj["reason"] = v.reason;
    ordered_json vals = ordered_json::array();
    for (const auto& h : v.values) {
      vals.push_back(ordered_json{{"name", h.name},
                                  {"value", h.value},
                                  {"bound", h.bound},
                                  {"strict", h.strict},
                                  {"satisfied", h.satisfied},
                                  {"margin", h.margin}});
    }
    tj["hypotheses"] = vals;
    arr.push_back(tj);
  }
  j["theorems"] = arr;
  j["caveat"] = t.caveat;
  return j;
}

ordered_json report_to_json(const RunReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
  j["surface"] = r.surface;
  j["invariants"] = ordered_json{{"H_median", r.invariants.H_median},
                                 {"cmc_deviation", r.invariants.cmc_deviation},
                                 {"sup_A2", r.invariants.sup_A2},
                                 {"sup_abs_S", r.invariants.sup_abs_S},
                                 {"inf_abs_S", r.invariants.inf_abs_S},
                                 {"sup_A2_plus_5nu2", r.invariants.sup_A2_5nu2},
                                 {"sup_phi2_plus_5nu2", r.invariants.sup_phi2_5nu2},
                                 {"inf_phiTT", r.invariants.inf_phiTT}};
  ordered_json arr = ordered_json::array();
  for (const auto& res : r.residuals) arr.push_back(residual_to_json(res));
  j["residuals"] = arr;
  j["thresholds"] = thresholds_to_json(r.thresholds);
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  return j;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string pad_to(std::string s, size_t w) {
  if (s.size() < w) s += std::string(w - s.size(), ' ');
  return s;
}

}  // namespace

std::string human_table(const RunReport& r) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << "\n";
  os << "H median            " << sci(r.invariants.H_median) << "\n";
  os << "cmc deviation       " << sci(r.invariants.cmc_deviation) << "\n";
  os << "sup |A|^2           " << sci(r.invariants.sup_A2) << "\n";
  os << "sup |S|             " << sci(r.invariants.sup_abs_S) << "\n";
  os << "sup |A|^2+5nu^2     " << sci(r.invariants.sup_A2_5nu2) << "\n";
  os << "sup |phi|^2+5nu^2   " << sci(r.invariants.sup_phi2_5nu2) << "\n";
  os << "inf <phi T,T>       " << sci(r.invariants.inf_phiTT) << "\n\n";

  os << pad_to("identity", 22) << pad_to("sup", 12) << pad_to("mean", 12)
     << pad_to("order", 10) << pad_to("verdict", 12) << "note\n";
  for (const auto& res : r.residuals) {
    std::string order = res.order ? sci(*res.order).substr(0, 8) : "-";
    os << pad_to(res.id, 22) << pad_to(sci(res.sup), 12)
       << pad_to(sci(res.mean), 12) << pad_to(order, 10)
       << pad_to(res.verdict, 12) << res.note << "\n";
  }
  os << "\n";
  if (r.thresholds.L) os << "L_H = " << sci(*r.thresholds.L) << "  ";
  if (r.thresholds.M) os << "M_H = " << sci(*r.thresholds.M);
  if (r.thresholds.L || r.thresholds.M) os << "\n";
  for (const auto& v : r.thresholds.theorems) {
    os << pad_to(v.id, 28) << pad_to(v.verdict, 24);
    if (v.verdict == "hypotheses-satisfied") os << "conclusion: " << v.conclusion;
    else if (!v.reason.empty()) os << v.reason;
    os << "\n";
  }
  os << "status: " << r.status << "\n";
  return os.str();
}

}  // namespace cmc
