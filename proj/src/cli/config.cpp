#include "isoquad/cli/config.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace isoquad::cli {

using nlohmann::json;

namespace {

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

FirstOrderSign parse_sign(const std::string& s) {
  if (s == "reported") return FirstOrderSign::kReported;
  if (s == "consistent") return FirstOrderSign::kConsistent;
  throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown first-order sign '{}'", s));
}

}  // namespace

void RunConfig::sync() {
  search.disc = disc;
  trace.disc = disc;
}

Quadrilateral parse_star(const std::string& text) {
  if (text == "qstar") return presets::kSkewed;
  if (text == "qstar2") return presets::kSkewedAlt;
  if (text == "square") return presets::kUnitSquare;
  std::array<double, 4> v{};
  std::stringstream ss(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 4) break;
    try {
      std::size_t used = 0;
      v[n] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot parse '{}' as a number", item));
    }
    ++n;
  }
  if (n != 4 || std::getline(ss, item, ','))
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("star '{}' needs alpha,beta,gamma,delta or a preset name", text));
  return Quadrilateral::from_params(v);
}

void merge_json(RunConfig& cfg, const json& root) {
  const json& j = root.contains("config") ? root.at("config") : root;
  try {
    if (j.contains("star")) {
      const json& s = j.at("star");
      if (s.is_string()) {
        cfg.star = parse_star(s.get<std::string>());
      } else {
        take(s, "alpha", cfg.star.alpha);
        take(s, "beta", cfg.star.beta);
        take(s, "gamma", cfg.star.gamma);
        take(s, "delta", cfg.star.delta);
      }
    }
    if (j.contains("scheme")) cfg.disc.scheme = parse_scheme(j.at("scheme").get<std::string>());
    take(j, "kappa", cfg.disc.kappa);
    if (j.contains("first_order_sign"))
      cfg.disc.sign = parse_sign(j.at("first_order_sign").get<std::string>());
    if (j.contains("search")) {
      const json& s = j.at("search");
      take(s, "l", cfg.search.l);
      take(s, "h", cfg.search.h);
      take(s, "epsilon", cfg.search.epsilon);
      take(s, "prefilter", cfg.search.area_prefilter);
      take(s, "area_tol", cfg.search.area_tol);
    }
    if (j.contains("trace")) {
      const json& t = j.at("trace");
      if (t.contains("method")) cfg.trace.method = parse_method(t.at("method").get<std::string>());
      if (t.contains("explicit"))
        cfg.trace.explicit_param = parse_param(t.at("explicit").get<std::string>());
      take(t, "T", cfg.trace.T);
      take(t, "M", cfg.trace.M);
      take(t, "fd_increment", cfg.trace.fd_increment);
      take(t, "singular_tol", cfg.trace.singular_tol);
    }
    if (j.contains("deform")) {
      const json& d = j.at("deform");
      take(d, "S", cfg.deform.S);
      take(d, "T0", cfg.deform.T0);
      take(d, "breakdown_tol", cfg.deform.breakdown_tol);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("bad config value: {}", e.what()));
  }
  cfg.sync();
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot open config '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("config '{}': {}", path, e.what()));
  }
  merge_json(cfg, j);
}

json to_json(const RunConfig& cfg) {
  return json{
      {"star",
       {{"alpha", cfg.star.alpha},
        {"beta", cfg.star.beta},
        {"gamma", cfg.star.gamma},
        {"delta", cfg.star.delta}}},
      {"scheme", std::string(to_string(cfg.disc.scheme))},
      {"kappa", cfg.disc.kappa},
      {"first_order_sign", cfg.disc.sign == FirstOrderSign::kReported ? "reported" : "consistent"},
      {"search",
       {{"l", cfg.search.l},
        {"h", cfg.search.h},
        {"epsilon", cfg.search.epsilon},
        {"prefilter", cfg.search.area_prefilter},
        {"area_tol", cfg.search.area_tol}}},
      {"trace",
       {{"method", std::string(to_string(cfg.trace.method))},
        {"explicit", std::string(to_string(cfg.trace.explicit_param))},
        {"T", cfg.trace.T},
        {"M", cfg.trace.M},
        {"fd_increment", cfg.trace.fd_increment},
        {"singular_tol", cfg.trace.singular_tol}}},
      {"deform",
       {{"S", cfg.deform.S}, {"T0", cfg.deform.T0}, {"breakdown_tol", cfg.deform.breakdown_tol}}},
  };
}

}  // namespace isoquad::cli
