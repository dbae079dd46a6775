#include "report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo::cli {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  return fmt::format("{:.17g}", v);
}

void dump(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string padEnd = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump(it.value(), indent, depth + 1, out);
      }
      out += nl + padEnd + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& e) { return e.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += nl + pad;
        first = false;
        dump(e, indent, depth + 1, out);
      }
      if (!flat) out += nl + padEnd;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, std::isfinite(j.get<double>()) ? number(j.get<double>()) : "");
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  out += "\n";
  return out;
}

std::string to_csv(const nlohmann::json& rows, const std::vector<std::string>& leading) {
  std::vector<std::string> columns = leading;
  std::vector<std::vector<std::pair<std::string, std::string>>> flat;
  for (const auto& r : rows) {
    flat.emplace_back();
    flatten(r, "", flat.back());
    for (const auto& [k, v] : flat.back())
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : flat) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      for (const auto& [k, v] : row)
        if (k == columns[i]) out += v;
    }
    out += "\n";
  }
  return out;
}

void write_output(const OutputConfig& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.path);
  if (!f) throw InvalidArgument("cannot write " + o.path);
  f << text;
}

}  // namespace warpgeo::cli
