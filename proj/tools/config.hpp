#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace warpgeo::cli {

struct BaseConfig {
  std::string cls;  // positive | null | negative; empty: taken from the sign of d0
  double alpha0 = 1.0;
  std::optional<double> H0;
  int n = 3;
  double domainScale = 0.0;  // chart ball radius, 0 = default
};

struct WarpConfig {
  std::string kind = "linear";  // linear | exponential | type9 | polynomial | catalog
  int type = 0;                 // catalog type
  std::optional<double> d0;
  std::optional<double> b0;
  std::optional<double> K;
  double c2 = 0.0;
  double c3 = 0.0;
  double t0 = 0.0;
  double sWindow = 0.2;
  double defect = 0.0;  // relative defect of the dilatation factor
};

struct SampleConfig {
  int count = 5;
  std::uint64_t seed = 42;
};

struct Tolerances {
  double ad = 1e-8;
  double fd = 1e-5;
  double ode = 1e-6;
  double relative = 1e-3;  // FD identities normalized by their own scale
};

struct OutputConfig {
  std::string format = "json";
  std::string path;  // empty: stdout
  bool canonical = false;
};

struct RunConfig {
  BaseConfig base;
  WarpConfig warp;
  SampleConfig sample;
  Tolerances tol;
  OutputConfig output;

  void validate() const;
};

// JSON file; nested objects or dotted keys ("base.alpha0"). Unknown keys are
// rejected.
RunConfig load_config(const std::string& path);
void apply_config(RunConfig& cfg, const nlohmann::json& j);

}  // namespace warpgeo::cli
