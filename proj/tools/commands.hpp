#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace warpgeo::cli {

struct Outcome {
  nlohmann::json report;
  nlohmann::json rows = nlohmann::json::array();  // CSV view
  std::vector<std::string> columns;                // leading CSV columns, in order
  bool pass = true;
};

struct CatalogArgs {
  std::string action;  // classify | solve | audit | complete
  std::optional<double> t;
  std::optional<double> tFrom;
  std::optional<double> tTo;
  int steps = 21;
};

Outcome cmd_verify_base(const RunConfig& cfg);
Outcome cmd_build(const RunConfig& cfg);
Outcome cmd_curvature(const RunConfig& cfg);
Outcome cmd_verify_metric(const RunConfig& cfg);
Outcome cmd_constants(const RunConfig& cfg);
Outcome cmd_catalog(const RunConfig& cfg, const CatalogArgs& args);

}  // namespace warpgeo::cli
