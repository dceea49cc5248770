// Command-line surface: generate or load systems, evaluate errors and
// bounds, run greedy placements, and dump oracle tables / sweep data.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "splace/bounds.hpp"
#include "splace/estimation.hpp"
#include "splace/oracle.hpp"
#include "splace/placement.hpp"
#include "splace/system_json.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 2 usage, 3 infeasible budget, 4 excluded
// parameter domain (mu = 1), 5 size cap.
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitDomain = 4;
constexpr int kExitTooLarge = 5;

// All floating-point output is clipped to 12 significant digits so
// regression diffs stay stable.
double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::vector<int> parse_sensor_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

void emit(const json& j, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(output_path);
    out << j.dump(2) << "\n";
  }
}

json report_to_json(const splace::ErrorReport& report) {
  json j;
  j["logdet_error"] = round12(report.logdet_error);
  j["mmse_z"] = round12(report.mmse_z);
  j["mmse_x0"] = round12(report.mmse_x0);
  j["mmse_xk"] = round12(report.mmse_xk);
  j["path"] = splace::to_string(report.path);
  return j;
}

json placement_to_json(const splace::PlacementResult& result) {
  json j;
  j["chosen"] = result.chosen.indices();
  j["selection_order"] = result.selection_order;
  j["achieved_logdet"] = round12(result.achieved_logdet);
  json trace = json::array();
  for (const auto& entry : result.trace) {
    trace.push_back({{"iter", entry.iteration},
                     {"selected", entry.selected},
                     {"logdet", round12(entry.logdet)},
                     {"gain", round12(entry.gain)}});
  }
  j["trace"] = std::move(trace);
  j["guarantee"] =
      result.guarantee ? json(round12(*result.guarantee)) : json(nullptr);
  j["status"] = splace::to_string(result.status);
  return j;
}

splace::LtvSystem identity_cov_system(Eigen::MatrixXd dynamics, int k,
                                      double sigma, bool zero_process_noise) {
  splace::LtvSystem system;
  system.n = static_cast<int>(dynamics.rows());
  system.k = k;
  system.sigma = sigma;
  system.dynamics = {std::move(dynamics)};
  system.cov_x0 = Eigen::MatrixXd::Identity(system.n, system.n);
  if (zero_process_noise) {
    system.zero_process_noise = true;
  } else {
    system.cov_w = {Eigen::MatrixXd::Identity(system.n, system.n)};
  }
  return splace::validate(std::move(system));
}

int default_threads() {
  if (const char* env = std::getenv("SENSOR_PLACE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor placement for optimal Kalman filtering"};
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "worker thread cap")
      ->check(CLI::PositiveNumber);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a system as JSON");
  gen->require_subcommand(1);
  int gen_n = 5, gen_k = 5, gen_rows = 3, gen_cols = 3;
  double gen_sigma = 1.0, gen_coupling = 0.25;
  bool identity_cov = false, zero_w = false;
  std::string out_path;

  auto* chain = gen->add_subcommand("chain", "integrator chain dynamics");
  chain->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  chain->add_option("--k", gen_k)->check(CLI::NonNegativeNumber);
  chain->add_option("--sigma", gen_sigma);
  chain->add_flag("--identity-cov", identity_cov,
                  "identity covariances, sigma = 1");
  chain->add_flag("--zero-process-noise", zero_w);
  chain->add_option("-o,--output", out_path);

  auto* grid = gen->add_subcommand("grid", "diffusion grid dynamics");
  grid->add_option("--rows", gen_rows)->required()->check(CLI::PositiveNumber);
  grid->add_option("--cols", gen_cols)->required()->check(CLI::PositiveNumber);
  grid->add_option("--coupling", gen_coupling)->required();
  grid->add_option("--k", gen_k)->check(CLI::NonNegativeNumber);
  grid->add_option("--sigma", gen_sigma);
  grid->add_flag("--identity-cov", identity_cov);
  grid->add_flag("--zero-process-noise", zero_w);
  grid->add_option("-o,--output", out_path);

  // ---- eval ----
  auto* eval = app.add_subcommand("eval", "error report for a sensor set");
  std::string system_path, sensors_text;
  eval->add_option("--system", system_path)->required();
  eval->add_option("--sensors", sensors_text, "comma-separated, 1-based");

  // ---- place ----
  auto* place = app.add_subcommand("place", "greedy sensor placement");
  std::string place_mode;
  double budget = 0.0;
  int card_r = 0, card_l = 0;
  bool lazy = false;
  place->add_option("--system", system_path)->required();
  place->add_option("--mode", place_mode)
      ->required()
      ->check(CLI::IsMember({"p1", "p2"}));
  auto* budget_opt = place->add_option("--budget", budget, "p1 logdet budget");
  auto* r_opt = place->add_option("--r", card_r, "p2 cardinality budget");
  place->add_option("--l", card_l, "p2 additions (default r)");
  place->add_flag("--lazy", lazy, "Minoux lazy evaluation");

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "fundamental-limit bounds");
  std::string target_text = "x0";
  std::optional<double> alpha;
  bounds->add_option("--system", system_path)->required();
  bounds->add_option("--sensors", sensors_text);
  bounds->add_option("--target", target_text)
      ->check(CLI::IsMember({"x0", "xk"}));
  bounds->add_option("--alpha", alpha, "desired mmse level");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "greedy value sweep as CSV");
  std::string sweep_mode = "p2";
  int r_from = 0, r_to = 0, step = 1;
  sweep->add_option("--system", system_path)->required();
  sweep->add_option("--mode", sweep_mode)->check(CLI::IsMember({"p2"}));
  sweep->add_option("--r-from", r_from)->required();
  sweep->add_option("--r-to", r_to)->required();
  sweep->add_option("--step", step)->check(CLI::PositiveNumber);
  sweep->add_option("-o,--output", out_path);

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "exhaustive subset table");
  std::string dump_path;
  bool check_supermod = false;
  std::vector<std::string> optimal_args;
  oracle->add_option("--system", system_path)->required();
  oracle->add_option("--dump", dump_path, "write bitmask,logdet CSV");
  oracle->add_flag("--check-supermodularity", check_supermod);
  oracle->add_option("--optimal", optimal_args, "p1 <R> | p2 <r>")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      Eigen::MatrixXd a;
      if (chain->parsed()) {
        a = splace::gen_integrator_chain(gen_n);
      } else {
        a = splace::gen_diffusion_grid(gen_rows, gen_cols, gen_coupling);
      }
      if (identity_cov) gen_sigma = 1.0;
      const auto system =
          identity_cov_system(std::move(a), gen_k, gen_sigma, zero_w);
      emit(splace::system_to_json(system), out_path);
      return 0;
    }

    const auto system = splace::load_system_file(system_path);

    if (eval->parsed()) {
      const splace::SensorSet sensors(parse_sensor_list(sensors_text),
                                      system.n);
      const auto maps = splace::build_stacked_maps(system);
      const auto atoms = splace::build_information_atoms(maps);
      emit(report_to_json(splace::mmse_report(system, atoms, sensors)), "");
      return 0;
    }

    if (place->parsed()) {
      const auto maps = splace::build_stacked_maps(system);
      const auto objective = splace::make_logdet_objective(system, maps);
      splace::GreedyOptions options{lazy, threads};
      splace::PlacementResult result;
      if (place_mode == "p1") {
        if (budget_opt->count() == 0 || r_opt->count() > 0) {
          std::cerr << "p1 takes --budget, not --r\n";
          return kExitUsage;
        }
        result = splace::greedy_p1(objective, budget, options);
      } else {
        if (r_opt->count() == 0 || budget_opt->count() > 0) {
          std::cerr << "p2 takes --r, not --budget\n";
          return kExitUsage;
        }
        if (card_l == 0) card_l = card_r;
        result = splace::greedy_p2(objective, card_r, card_l, options);
      }
      emit(placement_to_json(result), "");
      return result.status == splace::PlacementStatus::Ok ? 0
                                                          : kExitInfeasible;
    }

    if (bounds->parsed()) {
      const splace::SensorSet sensors(parse_sensor_list(sensors_text),
                                      system.n);
      const auto maps = splace::build_stacked_maps(system);
      const auto summary = splace::noise_prior_summary(system);
      const auto target = target_text == "x0" ? splace::BoundTarget::X0
                                              : splace::BoundTarget::XK;
      const auto report = splace::theorem1_bounds(summary, maps, sensors,
                                                  target, system.sigma);
      json j;
      j["target"] = target_text;
      j["lower"] = round12(report.lower);
      j["upper"] = round12(report.upper);
      j["l_i"] = round12(report.l_i);
      j["u_i"] = round12(report.u_i);
      j["vacuous"] = report.vacuous_lower;
      if (alpha) {
        const double min_sensors = splace::corollary1_min_sensors(
            summary, *alpha, system.k, system.n, system.sigma, report.l_i);
        j["cor1_min_sensors"] = round12(min_sensors);
        j["cor1_min_sensors_ceiled"] =
            static_cast<long>(std::ceil(min_sensors));
        try {
          const double min_interval = splace::corollary2_min_interval(
              summary, *alpha, system.n, system.sigma, sensors.size(),
              report.l_i);
          j["cor2_min_interval"] = round12(min_interval);
          j["cor2_min_interval_ceiled"] =
              static_cast<long>(std::ceil(min_interval));
        } catch (const splace::InfeasibleAlpha&) {
          j["cor2_infeasible"] = true;
        }
      }
      emit(j, "");
      return 0;
    }

    if (sweep->parsed()) {
      if (r_from > r_to || r_from < 0 || r_to > system.n) {
        std::cerr << "invalid sweep range\n";
        return kExitUsage;
      }
      const auto maps = splace::build_stacked_maps(system);
      const auto objective = splace::make_logdet_objective(system, maps);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
      }
      *out << "r,logdet,runtime_ms\n";
      for (int r = r_from; r <= r_to; r += step) {
        const auto start = std::chrono::steady_clock::now();
        double value;
        if (r == 0) {
          value = objective.value(splace::SensorSet());
        } else {
          value = splace::greedy_p2(objective, r, r,
                                    splace::GreedyOptions{lazy, threads})
                      .achieved_logdet;
        }
        const double ms =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
        char line[128];
        std::snprintf(line, sizeof(line), "%d,%.12g,%.12g\n", r,
                      round12(value), round12(ms));
        *out << line;
      }
      return 0;
    }

    if (oracle->parsed()) {
      const auto maps = splace::build_stacked_maps(system);
      const auto objective = splace::make_logdet_objective(system, maps);
      splace::OracleTable table;
      try {
        table = splace::enumerate_all(objective);
      } catch (const splace::TooLarge& e) {
        std::cerr << e.what() << "\n";
        return kExitTooLarge;
      }
      if (!dump_path.empty()) {
        splace::write_oracle_csv(table, dump_path);
      }
      if (check_supermod) {
        const auto violations = splace::verify_supermodularity(table);
        std::cout << "violations: " << violations.size() << "\n";
        if (!violations.empty()) return 1;
      }
      if (!optimal_args.empty()) {
        json j;
        if (optimal_args[0] == "p1") {
          try {
            const auto best =
                splace::optimal_p1(table, std::stod(optimal_args[1]));
            j["chosen"] = best.indices();
            j["logdet"] = round12(table.at(best));
          } catch (const splace::Infeasible&) {
            std::cerr << "budget infeasible\n";
            return kExitInfeasible;
          }
        } else if (optimal_args[0] == "p2") {
          const auto best =
              splace::optimal_p2(table, std::stoi(optimal_args[1]));
          j["chosen"] = best.indices();
          j["logdet"] = round12(table.at(best));
        } else {
          std::cerr << "--optimal mode must be p1 or p2\n";
          return kExitUsage;
        }
        emit(j, "");
      }
      return 0;
    }
  } catch (const splace::MuEqualsOne& e) {
    std::cerr << e.what() << "\n";
    return kExitDomain;
  } catch (const splace::TooLarge& e) {
    std::cerr << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
