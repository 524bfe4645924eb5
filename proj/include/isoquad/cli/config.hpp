#pragma once

#include <string>

#include <json.hpp>

#include "isoquad/continuation.hpp"
#include "isoquad/search.hpp"

namespace isoquad::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct DeformSettings {
  int S = 10;
  double T0 = 0.06;
  /// Steps whose residual exceeds this are flagged as broken down.
  double breakdown_tol = 1e-2;
};

/// Full experiment configuration. Built-in defaults, then a JSON file, then
/// command-line flags, each overriding the previous.
struct RunConfig {
  Quadrilateral star = presets::kSkewed;
  Discretization disc;
  SearchConfig search;
  TraceConfig trace;
  DeformSettings deform;

  /// Pushes the shared discretization into the search and trace configs.
  void sync();
};

/// Parses "qstar", "qstar2", "square" or four comma-separated numbers.
Quadrilateral parse_star(const std::string& text);

/// Reads either a plain config object or a manifest carrying one under
/// "config" and merges the keys present into `cfg`.
void merge_json(RunConfig& cfg, const nlohmann::json& j);
void load_config_file(RunConfig& cfg, const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace isoquad::cli
