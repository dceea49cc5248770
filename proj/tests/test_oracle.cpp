#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "splace/estimation.hpp"
#include "splace/oracle.hpp"
#include "test_helpers.hpp"

using namespace splace;
using namespace splace::testing;

namespace {

LogdetObjective objective_for(const LtvSystem& system) {
  return make_logdet_objective(system, system.zero_process_noise
                                           ? StackedMaps{}
                                           : build_stacked_maps(system));
}

}  // namespace

TEST_CASE("a one-sensor system enumerates two subsets") {
  LtvSystem system;
  system.n = 1;
  system.k = 0;
  system.dynamics = {Eigen::MatrixXd::Constant(1, 1, 0.5)};
  system.cov_x0 = Eigen::MatrixXd::Identity(1, 1);
  system.cov_w = {Eigen::MatrixXd::Identity(1, 1)};
  const auto table = enumerate_all(objective_for(validate(std::move(system))));
  REQUIRE(table.values.size() == 2);
  CHECK(table.values[0] == doctest::Approx(0.0));
  CHECK(table.values[1] == doctest::Approx(std::log(0.5)));
}

TEST_CASE("chain table values match the closed form") {
  const auto system = chain_instance();
  const auto maps = build_stacked_maps(system);
  const auto atoms = build_information_atoms(maps);
  const auto table = enumerate_all(make_logdet_objective(system, maps));
  REQUIRE(table.values.size() == 32);
  CHECK(table.at(SensorSet()) == doctest::Approx(0.0));
  CHECK(table.at(SensorSet::full(5)) ==
        doctest::Approx(-31.478865452998843).epsilon(1e-10));
  for (std::uint32_t mask = 0; mask < 32; ++mask) {
    CHECK(table.values[mask] ==
          doctest::Approx(logdet_error(system, atoms,
                                       SensorSet::from_bitmask(mask, 5)))
              .epsilon(1e-9));
  }
}

TEST_CASE("cardinality-optimal subsets of the chain") {
  const auto table = enumerate_all(objective_for(chain_instance()));
  CHECK(optimal_p2(table, 1) == SensorSet({5}, 5));
  CHECK(optimal_p2(table, 2) == SensorSet({3, 5}, 5));
  CHECK(optimal_p2(table, 3) == SensorSet({2, 4, 5}, 5));
  CHECK(optimal_p2(table, 4) == SensorSet({2, 3, 4, 5}, 5));
  CHECK(optimal_p2(table, 5) == SensorSet::full(5));
  CHECK(table.at(SensorSet({2, 4, 5}, 5)) ==
        doctest::Approx(-24.645787936055587).epsilon(1e-10));
}

TEST_CASE("budget-optimal subsets of the chain") {
  const auto table = enumerate_all(objective_for(chain_instance()));
  // The value of {2,4}; {3,5} beats it with the same cardinality and a
  // larger bitmask, so the minimum-cardinality winner is {2,4} itself.
  const auto at_budget = optimal_p1(table, -18.047803215636808);
  CHECK(at_budget.size() == 2);
  CHECK(table.at(at_budget) <= -18.047803215636808);
  CHECK(optimal_p1(table, 0.0) == SensorSet());
  CHECK(optimal_p1(table, -31.0) == SensorSet::full(5));
  CHECK_THROWS_AS(optimal_p1(table, -1000.0), Infeasible);
}

TEST_CASE("diminishing returns holds across the whole chain table") {
  const auto table = enumerate_all(objective_for(chain_instance()));
  CHECK(verify_supermodularity(table).empty());
}

TEST_CASE("diminishing returns holds on random instances") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 8; ++trial) {
    const auto system = random_system(rng, 4, 3);
    const auto table = enumerate_all(objective_for(system));
    CHECK(verify_supermodularity(table).empty());
  }
}

TEST_CASE("a doctored table is caught by the supermodularity check") {
  auto table = enumerate_all(objective_for(chain_instance(3, 3)));
  // Make the full set implausibly good; adding the last sensor then
  // gains more from the larger base set.
  table.values.back() -= 100.0;
  CHECK(!verify_supermodularity(table).empty());
}

TEST_CASE("enumeration refuses n above the hard cap") {
  LogdetObjective objective;
  objective.n = kOracleMaxSensors + 1;
  CHECK_THROWS_AS(enumerate_all(objective), TooLarge);
}

TEST_CASE("csv export round-trips through a text parse") {
  const auto table = enumerate_all(objective_for(chain_instance(3, 3)));
  const std::string path = "oracle_test_tmp.csv";
  write_oracle_csv(table, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "bitmask,logdet");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string mask, value;
    REQUIRE(std::getline(fields, mask, ','));
    REQUIRE(std::getline(fields, value));
    CHECK(std::stoul(mask) == static_cast<unsigned>(rows));
    CHECK(std::stod(value) ==
          doctest::Approx(table.values[rows]).epsilon(1e-11));
    ++rows;
  }
  CHECK(rows == 8);
  in.close();
  std::remove(path.c_str());
}
