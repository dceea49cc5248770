#include "splace/system_json.hpp"

#include <fstream>

namespace splace {

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw DimensionMismatch("matrix must be an array of row arrays");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) {
      throw DimensionMismatch("ragged matrix rows");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

// A matrix field that may also be a sequence of matrices.
std::vector<Eigen::MatrixXd> matrices_from_json(const nlohmann::json& j) {
  std::vector<Eigen::MatrixXd> out;
  if (j.is_array() && !j.empty() && j.front().is_array() &&
      !j.front().empty() && j.front().front().is_array()) {
    for (const auto& m : j) out.push_back(matrix_from_json(m));
  } else {
    out.push_back(matrix_from_json(j));
  }
  return out;
}

nlohmann::json matrices_to_json(const std::vector<Eigen::MatrixXd>& ms) {
  if (ms.size() == 1) return matrix_to_json(ms.front());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

}  // namespace

LtvSystem system_from_json(const nlohmann::json& j) {
  LtvSystem system;
  system.n = j.at("n").get<int>();
  system.k = j.at("k").get<int>();
  system.sigma = j.at("sigma").get<double>();
  system.dynamics = matrices_from_json(j.at("A"));
  system.cov_x0 = matrix_from_json(j.at("cov_x0"));
  const auto& w = j.at("cov_w");
  if (w.is_string()) {
    if (w.get<std::string>() != "zero") {
      throw DimensionMismatch("cov_w string value must be \"zero\"");
    }
    system.zero_process_noise = true;
  } else {
    system.cov_w = matrices_from_json(w);
  }
  return validate(std::move(system));
}

nlohmann::json system_to_json(const LtvSystem& system) {
  nlohmann::json j;
  j["n"] = system.n;
  j["k"] = system.k;
  j["sigma"] = system.sigma;
  j["A"] = matrices_to_json(system.dynamics);
  j["cov_x0"] = matrix_to_json(system.cov_x0);
  if (system.zero_process_noise) {
    j["cov_w"] = "zero";
  } else {
    j["cov_w"] = matrices_to_json(system.cov_w);
  }
  return j;
}

LtvSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open system file: " + path);
  nlohmann::json j;
  in >> j;
  return system_from_json(j);
}

}  // namespace splace
