#include "splace/placement.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <queue>
#include <thread>

#include "splace/chol_update.hpp"
#include "splace/estimation.hpp"

namespace splace {

namespace {

// Marginal gains within this absolute distance count as ties; the
// smallest sensor index wins. Keeps the chain example's {3,5} output
// reproducible across eager and lazy modes.
constexpr double kTieTol = 1e-12;

}  // namespace

std::string to_string(PlacementStatus status) {
  return status == PlacementStatus::Ok ? "ok" : "budget_infeasible";
}

double LogdetObjective::value(const SensorSet& sensors) const {
  Eigen::MatrixXd m = base;
  for (int s : sensors.indices()) {
    const Eigen::MatrixXd& rows = sensor_rows.at(s - 1);
    m.noalias() += rows.transpose() * rows;
  }
  return offset - chol_logdet(m);
}

LogdetObjective make_logdet_objective(const LtvSystem& system,
                                      const StackedMaps& maps) {
  LogdetObjective obj;
  obj.n = system.n;
  const double sigma_sq = system.sigma * system.sigma;
  if (system.zero_process_noise) {
    obj.dim = system.n;
    obj.base = sigma_sq * system.cov_x0.inverse();
    const auto phis = transition_products(system);
    obj.sensor_rows.reserve(system.n);
    for (int m = 0; m < system.n; ++m) {
      Eigen::MatrixXd rows(system.k + 1, system.n);
      for (int j = 0; j <= system.k; ++j) rows.row(j) = phis[j].row(m);
      obj.sensor_rows.push_back(std::move(rows));
    }
  } else {
    obj.dim = system.stacked_dim();
    obj.base = sigma_sq * prior_z_inverse(system);
    obj.sensor_rows.reserve(system.n);
    for (int m = 0; m < system.n; ++m) {
      Eigen::MatrixXd rows(system.k + 1, obj.dim);
      for (int j = 0; j <= system.k; ++j) rows.row(j) = maps.blocks[j].row(m);
      obj.sensor_rows.push_back(std::move(rows));
    }
  }
  obj.offset = 2.0 * obj.dim * std::log(system.sigma);
  return obj;
}

GainEvaluator::GainEvaluator(const LogdetObjective& objective)
    : objective_(&objective) {
  Eigen::LLT<Eigen::MatrixXd> llt(objective.base);
  if (llt.info() != Eigen::Success) {
    throw CholeskyFailure("objective base matrix is not positive definite");
  }
  chol_ = llt.matrixL();
  logdet_ = 2.0 * chol_.diagonal().array().log().sum();
}

double GainEvaluator::gain(int sensor) const {
  Eigen::MatrixXd factor = chol_;
  Eigen::VectorXd row;
  const Eigen::MatrixXd& rows = objective_->sensor_rows.at(sensor - 1);
  for (Eigen::Index j = 0; j < rows.rows(); ++j) {
    row = rows.row(j);
    chol_rank1_update(factor, row);
  }
  return 2.0 * factor.diagonal().array().log().sum() - logdet_;
}

void GainEvaluator::add(int sensor) {
  Eigen::VectorXd row;
  const Eigen::MatrixXd& rows = objective_->sensor_rows.at(sensor - 1);
  for (Eigen::Index j = 0; j < rows.rows(); ++j) {
    row = rows.row(j);
    chol_rank1_update(chol_, row);
  }
  logdet_ = 2.0 * chol_.diagonal().array().log().sum();
}

namespace {

struct Selection {
  int sensor = 0;
  double gain = 0.0;
};

// One eager iteration: price every remaining candidate, keep the best.
// Candidates are visited in ascending index order, so with the
// strict-improvement comparison the smallest index wins ties.
Selection eager_select(const GainEvaluator& evaluator,
                       const std::vector<int>& candidates, int threads,
                       long& evaluations) {
  std::vector<double> gains(candidates.size());
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(candidates.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      gains[i] = evaluator.gain(candidates[i]);
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (candidates.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(candidates.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) {
          gains[i] = evaluator.gain(candidates[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  evaluations += static_cast<long>(candidates.size());

  Selection best{candidates.front(), gains.front()};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (gains[i] > best.gain + kTieTol) {
      best = {candidates[i], gains[i]};
    }
  }
  return best;
}

// Minoux lazy selection: cached gains are upper bounds by diminishing
// returns, so stale entries whose bound cannot beat (or tie within
// kTieTol) the best fresh gain are never re-evaluated.
class LazySelector {
 public:
  explicit LazySelector(int n) {
    for (int s = 1; s <= n; ++s) entries_.push_back({1e300, s, -1});
  }

  void remove(int sensor) { removed_.push_back(sensor); }

  Selection select(const GainEvaluator& evaluator, int iteration,
                   long& evaluations) {
    std::optional<Selection> best;
    std::vector<Entry> fresh;
    while (!heap_empty()) {
      Entry top = heap_pop();
      if (best && top.gain <= best->gain - kTieTol) {
        entries_.push_back(top);  // cannot beat nor tie the incumbent
        break;
      }
      if (top.stamp != iteration) {
        top.gain = evaluator.gain(top.sensor);
        ++evaluations;
        top.stamp = iteration;
      }
      if (!best || top.gain > best->gain + kTieTol ||
          (top.gain > best->gain - kTieTol && top.sensor < best->sensor)) {
        if (best) fresh.push_back({best->gain, best->sensor, iteration});
        best = {top.sensor, top.gain};
      } else {
        fresh.push_back(top);
      }
    }
    for (const auto& e : fresh) entries_.push_back(e);
    remove(best->sensor);
    return *best;
  }

 private:
  struct Entry {
    double gain;
    int sensor;
    int stamp;  // iteration at which the gain was computed
  };

  bool heap_empty() {
    prune();
    return entries_.empty();
  }

  Entry heap_pop() {
    prune();
    auto it = std::max_element(
        entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
          return a.gain < b.gain || (a.gain == b.gain && a.sensor > b.sensor);
        });
    Entry top = *it;
    entries_.erase(it);
    return top;
  }

  void prune() {
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const Entry& e) {
                                    return std::find(removed_.begin(),
                                                     removed_.end(),
                                                     e.sensor) != removed_.end();
                                  }),
                   entries_.end());
    removed_.clear();
  }

  std::vector<Entry> entries_;
  std::vector<int> removed_;
};

// Shared greedy loop; `done` decides termination before each addition.
template <typename DoneFn>
PlacementResult greedy_core(const LogdetObjective& objective,
                            const GreedyOptions& options, DoneFn done,
                            int max_additions) {
  PlacementResult result;
  GainEvaluator evaluator(objective);
  LazySelector lazy(objective.n);
  std::vector<int> remaining;
  for (int s = 1; s <= objective.n; ++s) remaining.push_back(s);

  double value = evaluator.current_value();
  int iteration = 0;
  while (!done(value) && iteration < max_additions && !remaining.empty()) {
    ++iteration;
    Selection pick;
    if (options.lazy) {
      pick = lazy.select(evaluator, iteration, result.evaluations);
    } else {
      pick = eager_select(evaluator, remaining, options.threads,
                          result.evaluations);
      lazy.remove(pick.sensor);
    }
    evaluator.add(pick.sensor);
    value = evaluator.current_value();
    remaining.erase(
        std::find(remaining.begin(), remaining.end(), pick.sensor));
    result.selection_order.push_back(pick.sensor);
    result.trace.push_back({iteration, pick.sensor, value, pick.gain});
  }

  std::vector<int> sorted = result.selection_order;
  std::sort(sorted.begin(), sorted.end());
  result.chosen = SensorSet(std::move(sorted), objective.n);
  result.achieved_logdet = value;
  return result;
}

}  // namespace

PlacementResult greedy_p1(const LogdetObjective& objective, double budget,
                          const GreedyOptions& options) {
  if (!std::isfinite(budget)) throw InvalidBudget("budget must be finite");
  PlacementResult result = greedy_core(
      objective, options, [budget](double v) { return v <= budget; },
      objective.n);
  if (result.achieved_logdet > budget) {
    result.status = PlacementStatus::BudgetInfeasible;
  } else {
    const double empty = objective.value(SensorSet());
    const double full = objective.value(SensorSet::full(objective.n));
    if (budget > full) {
      result.guarantee = guarantee_factor_p1(empty, full, budget);
    }
  }
  return result;
}

PlacementResult greedy_p2(const LogdetObjective& objective, int r, int l,
                          const GreedyOptions& options) {
  if (r < 1 || r > objective.n || l < r || l > objective.n) {
    throw InvalidBudget("require 1 <= r <= l <= n");
  }
  PlacementResult result = greedy_core(
      objective, options, [](double) { return false; }, l);
  result.guarantee = 1.0 - std::exp(-static_cast<double>(l) / r);
  return result;
}

double guarantee_factor_p1(double logdet_empty, double logdet_full,
                           double budget) {
  if (!(budget > logdet_full)) {
    throw DegenerateBudget("budget must exceed the full-set value");
  }
  return 1.0 + std::log((logdet_empty - logdet_full) / (budget - logdet_full));
}

}  // namespace splace
