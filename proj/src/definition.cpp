#include "cmc/definition.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cmc {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw InputError("definition error at " + path + ": " + why);
}

const ordered_json& need(const ordered_json& j, const char* key,
                         const std::string& path) {
  if (!j.contains(key)) bad(path + "." + key, "missing");
  return j.at(key);
}

double need_number(const ordered_json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_number()) bad(path + "." + key, "expected a number");
  return v.get<double>();
}

int need_int(const ordered_json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool need_bool(const ordered_json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_boolean()) bad(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string need_string(const ordered_json& j, const char* key,
                        const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_string()) bad(path + "." + key, "expected a string");
  return v.get<std::string>();
}

GridDomain parse_domain(const ordered_json& j, const std::string& path) {
  GridDomain d;
  const auto& x = need(j, "x", path);
  const auto& y = need(j, "y", path);
  if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
    bad(path + ".x", "expected [a, b]");
  if (!y.is_array() || y.size() != 2 || !y[0].is_number() || !y[1].is_number())
    bad(path + ".y", "expected [a, b]");
  d.x0 = x[0].get<double>();
  d.x1 = x[1].get<double>();
  d.y0 = y[0].get<double>();
  d.y1 = y[1].get<double>();
  d.nx = need_int(j, "nx", path);
  d.ny = need_int(j, "ny", path);
  if (d.nx < 5) bad(path + ".nx", "need at least 5 nodes");
  if (d.ny < 5) bad(path + ".ny", "need at least 5 nodes");
  if (!(d.x1 > d.x0)) bad(path + ".x", "empty range");
  if (!(d.y1 > d.y0)) bad(path + ".y", "empty range");
  d.periodic_x = j.contains("periodic_x") ? need_bool(j, "periodic_x", path) : false;
  d.periodic_y = j.contains("periodic_y") ? need_bool(j, "periodic_y", path) : false;
  return d;
}

}  // namespace

SurfaceDefinition parse_definition(const ordered_json& doc) {
  if (!doc.is_object()) bad("$", "expected an object");
  if (doc.contains("schema") &&
      (!doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != 1))
    bad("$.schema", "unsupported schema version (expected 1)");

  SurfaceDefinition def;
  const double c = need_number(doc, "c", "$");
  if (c != 1.0 && c != -1.0) bad("$.c", "must be +1 or -1");
  def.c = c;

  const auto& source = need(doc, "source", "$");
  if (!source.is_object()) bad("$.source", "expected an object");
  if (source.contains("catalog") == source.contains("custom"))
    bad("$.source", "give exactly one of 'catalog' or 'custom'");

  if (source.contains("catalog")) {
    const auto& cat = source.at("catalog");
    const std::string kind = need_string(cat, "kind", "$.source.catalog");
    auto k = catalog_kind_from_string(kind);
    if (!k || *k == CatalogKind::Custom)
      bad("$.source.catalog.kind", "unknown catalog kind '" + kind + "'");
    def.kind = *k;
    if (def.kind == CatalogKind::CmcCylinder ||
        def.kind == CatalogKind::RotationalCmcSphere) {
      def.H = need_number(cat, "H", "$.source.catalog");
      if (!(def.H > 0.0)) bad("$.source.catalog.H", "must be > 0");
    }
    if (def.kind == CatalogKind::Slice && cat.contains("t0"))
      def.t0 = need_number(cat, "t0", "$.source.catalog");
    if (def.kind == CatalogKind::CmcCylinder && def.c != 1.0)
      bad("$.c", "cmc_cylinder lives in S2xR (c = +1)");
    if (def.kind == CatalogKind::VerticalPlane && def.c != -1.0)
      bad("$.c", "vertical_plane lives in H2xR (c = -1)");
    if (def.kind == CatalogKind::RotationalCmcSphere && def.c == -1.0 &&
        !(def.H > 0.5))
      bad("$.source.catalog.H", "rotational sphere in H2xR needs H > 1/2");
  } else {
    def.kind = CatalogKind::Custom;
    const auto& cus = source.at("custom");
    def.u_src = need_string(cus, "u", "$.source.custom");
    def.v_src = need_string(cus, "v", "$.source.custom");
    def.t_src = need_string(cus, "t", "$.source.custom");
    if (cus.contains("params")) {
      const auto& p = cus.at("params");
      if (!p.is_object()) bad("$.source.custom.params", "expected an object");
      for (auto it = p.begin(); it != p.end(); ++it) {
        if (!it.value().is_number())
          bad("$.source.custom.params." + it.key(), "expected a number");
        def.param_names.push_back(it.key());
        def.param_values.push_back(it.value().get<double>());
      }
    }
    // Expressions must parse under the declared parameters.
    try {
      expr::parse(def.u_src, def.param_names);
      expr::parse(def.v_src, def.param_names);
      expr::parse(def.t_src, def.param_names);
    } catch (const expr::ParseError& e) {
      bad("$.source.custom", e.what());
    }
  }

  if (doc.contains("domain"))
    def.domain = parse_domain(doc.at("domain"), "$.domain");

  if (doc.contains("declared")) {
    const auto& d = doc.at("declared");
    if (!d.is_object()) bad("$.declared", "expected an object");
    def.complete = d.contains("complete") ? need_bool(d, "complete", "$.declared") : false;
    def.closed = d.contains("closed") ? need_bool(d, "closed", "$.declared") : false;
  }

  if (doc.contains("jet_order")) {
    def.jet_order = need_int(doc, "jet_order", "$");
    if (def.jet_order < 3 || def.jet_order > 6)
      bad("$.jet_order", "must be between 3 and 6");
  }
  return def;
}

SurfaceDefinition load_definition(const std::string& path_or_dash) {
  std::string text;
  if (path_or_dash == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path_or_dash);
    if (!in) throw InputError("cannot open definition file '" + path_or_dash + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("definition is not valid JSON: ") + e.what());
  }
  return parse_definition(doc);
}

nlohmann::ordered_json definition_to_json(const SurfaceDefinition& def,
                                          const GridDomain& dom) {
  ordered_json j;
  j["schema"] = 1;
  j["c"] = def.c;
  if (def.kind == CatalogKind::Custom) {
    ordered_json cus;
    cus["u"] = def.u_src;
    cus["v"] = def.v_src;
    cus["t"] = def.t_src;
    ordered_json params = ordered_json::object();
    for (size_t i = 0; i < def.param_names.size(); ++i)
      params[def.param_names[i]] = def.param_values[i];
    cus["params"] = params;
    j["source"] = ordered_json{{"custom", cus}};
  } else {
    ordered_json cat;
    cat["kind"] = to_string(def.kind);
    if (def.kind == CatalogKind::CmcCylinder ||
        def.kind == CatalogKind::RotationalCmcSphere)
      cat["H"] = def.H;
    if (def.kind == CatalogKind::Slice) cat["t0"] = def.t0;
    j["source"] = ordered_json{{"catalog", cat}};
  }
  j["domain"] = ordered_json{{"x", {dom.x0, dom.x1}}, {"y", {dom.y0, dom.y1}},
                             {"nx", dom.nx},          {"ny", dom.ny},
                             {"periodic_x", dom.periodic_x},
                             {"periodic_y", dom.periodic_y}};
  j["declared"] = ordered_json{{"complete", def.complete}, {"closed", def.closed}};
  j["jet_order"] = def.jet_order;
  return j;
}

BuiltSurface build_surface(const SurfaceDefinition& def) {
  BuiltSurface out;
  out.def = def;
  GridDomain dom = def.domain.value_or(default_domain(def.kind));

  switch (def.kind) {
    case CatalogKind::Slice:
      out.map = slice_map(def.t0);
      break;
    case CatalogKind::VerticalPlane:
      out.map = vertical_plane_map();
      break;
    case CatalogKind::CmcCylinder:
      out.map = cmc_cylinder_map(def.H);
      break;
    case CatalogKind::RotationalCmcSphere: {
      auto profile = std::make_shared<RotationalProfile>(def.c, def.H);
      out.profile = profile;
      if (!def.domain) {
        const GridDomain base = default_domain(def.kind);
        dom = rotational_sphere_domain(*profile, base.nx, base.ny);
      }
      out.map = std::make_unique<RotationalSphereMap>(profile);
      break;
    }
    case CatalogKind::Custom:
      out.map = custom_map(def.u_src, def.v_src, def.t_src, def.param_names,
                           def.param_values);
      break;
  }
  out.domain = dom;
  return out;
}

SurfaceGrid build_grid(const BuiltSurface& surf) {
  return build_grid(surf, surf.domain);
}

SurfaceGrid build_grid(const BuiltSurface& surf, const GridDomain& dom) {
  return build_surface_grid(*surf.map, dom, surf.def.c, surf.def.jet_order);
}

namespace {

std::string format_real_17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + ordered_json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(el, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_real_17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json_17(const ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace cmc
