#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace warpgeo::cli {

// Floats with 17 significant digits; non-finite values become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

// Rows are objects; nested keys are flattened with dots, columns ordered by
// first appearance after the given leading columns.
std::string to_csv(const nlohmann::json& rows, const std::vector<std::string>& leading = {});

void write_output(const OutputConfig& out, const std::string& text);

}  // namespace warpgeo::cli
