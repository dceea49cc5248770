#pragma once

#include <string>

#include <json.hpp>

#include "splace/system.hpp"

namespace splace {

// System JSON schema: {"A": matrix | [matrix...], "cov_w": matrix |
// [matrix...] | "zero", "cov_x0": matrix, "k": int, "n": int,
// "sigma": number}. Matrices are arrays of row arrays.

LtvSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const LtvSystem& system);

LtvSystem load_system_file(const std::string& path);

}  // namespace splace
