#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "splace/stacked.hpp"
#include "splace/system.hpp"

namespace splace {

/// The log det error as a set function, in the form shared by both
/// noise paths:
///
///   value(S) = offset - log det(base + sum_{m in S} U_m^T U_m),
///
/// where base = sigma^2 * (prior covariance)^{-1} and U_m stacks the
/// k+1 update rows of sensor m (rows of the L_j blocks on the general
/// path, rows of the Phi_m products on the reduced path).
struct LogdetObjective {
  int n = 0;
  int dim = 0;         // n(k+1), or n on the reduced path
  double offset = 0.0; // 2 * dim * log(sigma)
  Eigen::MatrixXd base;
  std::vector<Eigen::MatrixXd> sensor_rows;  // n entries, (k+1) x dim each

  double value(const SensorSet& sensors) const;
};

LogdetObjective make_logdet_objective(const LtvSystem& system,
                                      const StackedMaps& maps);

/// Incremental evaluator behind the greedy loops: keeps the Cholesky
/// factor of the current information matrix and prices a candidate by
/// chaining k+1 rank-one updates on a copy of the factor instead of
/// refactoring from scratch.
class GainEvaluator {
 public:
  explicit GainEvaluator(const LogdetObjective& objective);

  // Marginal error reduction of adding `sensor` (1-based); >= 0.
  double gain(int sensor) const;

  void add(int sensor);

  // Current log det error at the committed set.
  double current_value() const { return objective_->offset - logdet_; }

 private:
  const LogdetObjective* objective_;
  Eigen::MatrixXd chol_;  // lower factor
  double logdet_ = 0.0;
};

enum class PlacementStatus { Ok, BudgetInfeasible };

std::string to_string(PlacementStatus status);

struct TraceEntry {
  int iteration = 0;   // 1-based
  int selected = 0;    // sensor index, 1-based
  double logdet = 0.0; // value after the selection
  double gain = 0.0;   // marginal reduction achieved
};

struct PlacementResult {
  SensorSet chosen;                  // ascending
  std::vector<int> selection_order;  // greedy pick order
  double achieved_logdet = 0.0;
  std::vector<TraceEntry> trace;
  std::optional<double> guarantee;
  PlacementStatus status = PlacementStatus::Ok;
  long evaluations = 0;  // marginal-gain evaluations performed
};

struct GreedyOptions {
  bool lazy = false;
  int threads = 1;
};

/// Minimal sensor set for a log det budget: greedy additions until
/// value(S) <= budget or S = [n]. Infeasible budgets return the full
/// set with status BudgetInfeasible. The guarantee field carries the
/// multiplicative cardinality factor
///   F = 1 + log((value(empty) - value(full)) / (budget - value(full))).
PlacementResult greedy_p1(const LogdetObjective& objective, double budget,
                          const GreedyOptions& options = {});

/// Best log det under a cardinality budget: exactly l greedy additions
/// (l >= r; l = r is the headline 1 - 1/e case). The guarantee field
/// carries the factor 1 - e^{-l/r}.
PlacementResult greedy_p2(const LogdetObjective& objective, int r, int l,
                          const GreedyOptions& options = {});

double guarantee_factor_p1(double logdet_empty, double logdet_full,
                           double budget);

}  // namespace splace
