#pragma once

// Surface-definition documents (schema 1): ambient sign, a catalog or
// custom source, the parameter domain, declared completeness/closedness
// flags and the jet order.

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmc/catalog.hpp"

namespace cmc {

struct SurfaceDefinition {
  double c = 1.0;
  CatalogKind kind = CatalogKind::Custom;

  // Catalog sources.
  double H = 1.0;
  double t0 = 0.0;

  // Custom sources.
  std::string u_src, v_src, t_src;
  std::vector<std::string> param_names;
  std::vector<double> param_values;

  std::optional<GridDomain> domain;  // defaulted per kind when absent
  bool complete = false;
  bool closed = false;
  int jet_order = 3;
};

// Parse and validate a definition document; InputError diagnostics name
// the offending JSON path.
SurfaceDefinition parse_definition(const nlohmann::ordered_json& doc);
SurfaceDefinition load_definition(const std::string& path_or_dash);

// Definition echo with the resolved domain.
nlohmann::ordered_json definition_to_json(const SurfaceDefinition& def,
                                          const GridDomain& resolved);

struct BuiltSurface {
  SurfaceDefinition def;
  GridDomain domain;                        // resolved
  std::unique_ptr<ImmersionMap> map;
  std::shared_ptr<const RotationalProfile> profile;  // spheres only
};

// Resolve the domain (integrating the profile for spheres) and construct
// the immersion map.
BuiltSurface build_surface(const SurfaceDefinition& def);

SurfaceGrid build_grid(const BuiltSurface& surf);
SurfaceGrid build_grid(const BuiltSurface& surf, const GridDomain& dom);

// Serialize JSON with reals printed to 17 significant digits.
std::string dump_json_17(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace cmc
