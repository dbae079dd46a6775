#include "config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "warpgeo/errors.hpp"

namespace warpgeo::cli {

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix, std::map<std::string, nlohmann::json>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out[prefix] = j;
  }
}

template <class T>
T get(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument("config key " + key + " has the wrong type");
  }
}

}  // namespace

void apply_config(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config root must be an object");
  std::map<std::string, nlohmann::json> flat;
  flatten(j, "", flat);
  using Setter = std::function<void(const nlohmann::json&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"base.class", [&](auto& v, auto& k) { c.base.cls = get<std::string>(v, k); }},
      {"base.alpha0", [&](auto& v, auto& k) { c.base.alpha0 = get<double>(v, k); }},
      {"base.H0", [&](auto& v, auto& k) { c.base.H0 = get<double>(v, k); }},
      {"base.n", [&](auto& v, auto& k) { c.base.n = get<int>(v, k); }},
      {"base.domainScale", [&](auto& v, auto& k) { c.base.domainScale = get<double>(v, k); }},
      {"warp.kind", [&](auto& v, auto& k) { c.warp.kind = get<std::string>(v, k); }},
      {"warp.type", [&](auto& v, auto& k) { c.warp.type = get<int>(v, k); }},
      {"warp.d0", [&](auto& v, auto& k) { c.warp.d0 = get<double>(v, k); }},
      {"warp.b0", [&](auto& v, auto& k) { c.warp.b0 = get<double>(v, k); }},
      {"warp.K", [&](auto& v, auto& k) { c.warp.K = get<double>(v, k); }},
      {"warp.c2", [&](auto& v, auto& k) { c.warp.c2 = get<double>(v, k); }},
      {"warp.c3", [&](auto& v, auto& k) { c.warp.c3 = get<double>(v, k); }},
      {"warp.t0", [&](auto& v, auto& k) { c.warp.t0 = get<double>(v, k); }},
      {"warp.sWindow", [&](auto& v, auto& k) { c.warp.sWindow = get<double>(v, k); }},
      {"warp.defect", [&](auto& v, auto& k) { c.warp.defect = get<double>(v, k); }},
      {"sample.count", [&](auto& v, auto& k) { c.sample.count = get<int>(v, k); }},
      {"sample.seed", [&](auto& v, auto& k) { c.sample.seed = get<std::uint64_t>(v, k); }},
      {"tolerances.ad", [&](auto& v, auto& k) { c.tol.ad = get<double>(v, k); }},
      {"tolerances.fd", [&](auto& v, auto& k) { c.tol.fd = get<double>(v, k); }},
      {"tolerances.ode", [&](auto& v, auto& k) { c.tol.ode = get<double>(v, k); }},
      {"tolerances.relative", [&](auto& v, auto& k) { c.tol.relative = get<double>(v, k); }},
      {"output.format", [&](auto& v, auto& k) { c.output.format = get<std::string>(v, k); }},
      {"output.path", [&](auto& v, auto& k) { c.output.path = get<std::string>(v, k); }},
      {"output.canonical", [&](auto& v, auto& k) { c.output.canonical = get<bool>(v, k); }},
  };
  for (const auto& [key, value] : flat) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw InvalidArgument("unknown config key " + key);
    it->second(value, key);
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config " + path + ": " + e.what());
  }
  RunConfig c;
  apply_config(c, j);
  return c;
}

void RunConfig::validate() const {
  if (!(tol.ad > 0.0 && tol.fd > 0.0 && tol.ode > 0.0 && tol.relative > 0.0))
    throw InvalidArgument("tolerances must be positive");
  if (sample.count < 1) throw InvalidArgument("point count must be at least 1");
  if (output.format != "json" && output.format != "csv") throw InvalidArgument("format must be json or csv");
  if (!(base.alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  if (!base.cls.empty() && base.cls != "positive" && base.cls != "null" && base.cls != "negative")
    throw InvalidArgument("class must be positive, null or negative");
}

}  // namespace warpgeo::cli
