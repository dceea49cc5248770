#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splace/placement.hpp"
#include "splace/system.hpp"

namespace splace {

/// Exhaustive table of the log det error over every subset of [n],
/// indexed by bitmask (bit m-1 <-> sensor m).
struct OracleTable {
  int n = 0;
  std::vector<double> values;  // 2^n entries, ascending bitmask order

  double at(const SensorSet& sensors) const {
    return values.at(sensors.bitmask());
  }
};

// Hard cap on exhaustive enumeration; practical use stays at n <= 10.
inline constexpr int kOracleMaxSensors = 20;

OracleTable enumerate_all(const LogdetObjective& objective);

// Minimum-cardinality subset with value <= budget; ties resolved by
// smallest bitmask. Throws Infeasible when no subset qualifies.
SensorSet optimal_p1(const OracleTable& table, double budget);

// Value-minimizing subset of cardinality <= r; ties by smallest bitmask.
SensorSet optimal_p2(const OracleTable& table, int r);

struct SupermodularityViolation {
  std::uint32_t subset = 0;    // S
  std::uint32_t superset = 0;  // S'
  int element = 0;             // a, 1-based
  double excess = 0.0;
};

// Checks every (S subset of S', a not in S') triple for diminishing
// returns of the error reduction, with the given slack.
std::vector<SupermodularityViolation> verify_supermodularity(
    const OracleTable& table, double slack = 1e-9);

// CSV export, header "bitmask,logdet".
void write_oracle_csv(const OracleTable& table, const std::string& path);

}  // namespace splace
