#include "splace/oracle.hpp"

#include <bit>
#include <fstream>

namespace splace {

namespace {

constexpr double kValueTieTol = 1e-12;

}  // namespace

OracleTable enumerate_all(const LogdetObjective& objective) {
  if (objective.n > kOracleMaxSensors) {
    throw TooLarge("exhaustive enumeration capped at n <= " +
                   std::to_string(kOracleMaxSensors));
  }
  OracleTable table;
  table.n = objective.n;
  const std::uint32_t count = 1u << objective.n;
  table.values.resize(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    table.values[mask] =
        objective.value(SensorSet::from_bitmask(mask, objective.n));
  }
  return table;
}

SensorSet optimal_p1(const OracleTable& table, double budget) {
  int best_card = table.n + 1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < table.values.size(); ++mask) {
    if (table.values[mask] <= budget) {
      const int card = std::popcount(mask);
      // Ascending mask order makes the first hit the smallest bitmask.
      if (card < best_card) {
        best_card = card;
        best_mask = mask;
      }
    }
  }
  if (best_card > table.n) {
    throw Infeasible("no subset meets the budget");
  }
  return SensorSet::from_bitmask(best_mask, table.n);
}

SensorSet optimal_p2(const OracleTable& table, int r) {
  if (r < 0 || r > table.n) throw InvalidBudget("require 0 <= r <= n");
  bool found = false;
  double best_value = 0.0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < table.values.size(); ++mask) {
    if (std::popcount(mask) > r) continue;
    if (!found || table.values[mask] < best_value - kValueTieTol) {
      found = true;
      best_value = table.values[mask];
      best_mask = mask;
    }
  }
  return SensorSet::from_bitmask(best_mask, table.n);
}

std::vector<SupermodularityViolation> verify_supermodularity(
    const OracleTable& table, double slack) {
  std::vector<SupermodularityViolation> violations;
  const std::uint32_t count = 1u << table.n;
  for (int a = 1; a <= table.n; ++a) {
    const std::uint32_t bit = 1u << (a - 1);
    for (std::uint32_t sup = 0; sup < count; ++sup) {
      if (sup & bit) continue;
      // Subsets of sup via the standard submask walk.
      for (std::uint32_t sub = sup;; sub = (sub - 1) & sup) {
        const double gain_small =
            table.values[sub] - table.values[sub | bit];
        const double gain_large =
            table.values[sup] - table.values[sup | bit];
        // Error reduction must diminish as the set grows.
        if (gain_small < gain_large - slack) {
          violations.push_back({sub, sup, a, gain_large - gain_small});
        }
        if (sub == 0) break;
      }
    }
  }
  return violations;
}

void write_oracle_csv(const OracleTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << "bitmask,logdet\n";
  out.precision(12);
  for (std::uint32_t mask = 0; mask < table.values.size(); ++mask) {
    out << mask << "," << table.values[mask] << "\n";
  }
}

}  // namespace splace
