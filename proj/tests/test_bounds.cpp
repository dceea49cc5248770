#include <doctest.h>

#include <cmath>
#include <random>

#include "splace/bounds.hpp"
#include "splace/estimation.hpp"
#include "test_helpers.hpp"

using namespace splace;
using namespace splace::testing;

namespace {

LtvSystem scalar_half() {
  LtvSystem system;
  system.n = 1;
  system.k = 0;
  system.dynamics = {Eigen::MatrixXd::Constant(1, 1, 0.5)};
  system.cov_x0 = Eigen::MatrixXd::Identity(1, 1);
  system.cov_w = {Eigen::MatrixXd::Identity(1, 1)};
  system.sigma = 1.0;
  return validate(std::move(system));
}

// Random stable system with isotropic covariances, where the sandwich
// bound is tight enough to check directly.
LtvSystem random_isotropic(std::mt19937& rng, int n, int k) {
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  LtvSystem system;
  system.n = n;
  system.k = k;
  system.sigma = scale(rng);
  system.dynamics = {random_dynamics(rng, n, 0.2, 0.9)};
  system.cov_x0 = scale(rng) * Eigen::MatrixXd::Identity(n, n);
  system.cov_w = {scale(rng) * Eigen::MatrixXd::Identity(n, n)};
  return validate(std::move(system));
}

}  // namespace

TEST_CASE("scalar sandwich hand values") {
  const auto system = scalar_half();
  const auto summary = noise_prior_summary(system);
  const auto maps = build_stacked_maps(system);

  const auto one = theorem1_bounds(summary, maps, SensorSet({1}, 1),
                                   BoundTarget::X0, system.sigma);
  CHECK(one.lower == doctest::Approx(0.5));
  CHECK(one.upper == doctest::Approx(1.0));
  CHECK(one.l_i == 1.0);
  CHECK(!one.vacuous_lower);

  // With no sensors the lower bound collapses to n * sigma_0^2.
  const auto empty = theorem1_bounds(summary, maps, SensorSet(),
                                     BoundTarget::X0, system.sigma);
  CHECK(empty.lower == doctest::Approx(1.0));

  // At k = 0 the final map is square, so the x_k bound is non-vacuous and
  // coincides with the x_0 one.
  const auto xk = theorem1_bounds(summary, maps, SensorSet({1}, 1),
                                  BoundTarget::XK, system.sigma);
  CHECK(!xk.vacuous_lower);
  CHECK(xk.lower == doctest::Approx(0.5));
  CHECK(xk.upper == doctest::Approx(1.0));
}

TEST_CASE("x_k lower bound is flagged vacuous for k >= 1") {
  const auto system = chain_instance();
  const auto report =
      theorem1_bounds(noise_prior_summary(system), build_stacked_maps(system),
                      SensorSet({1, 2}, 5), BoundTarget::XK, system.sigma);
  CHECK(report.vacuous_lower);
  CHECK(report.lower == 0.0);
  CHECK(report.l_i == 0.0);
  CHECK(report.upper > 0.0);
}

TEST_CASE("the sandwich contains the achieved mmse") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> dims(1, 4);
    const int n = dims(rng);
    const auto system = random_isotropic(rng, n, dims(rng));
    const auto maps = build_stacked_maps(system);
    const auto atoms = build_information_atoms(maps);
    const auto sensors = random_sensor_set(rng, n);
    const auto report = mmse_report(system, atoms, sensors);
    const auto bounds = theorem1_bounds(noise_prior_summary(system), maps,
                                        sensors, BoundTarget::X0, system.sigma);
    CHECK(report.mmse_x0 >= bounds.lower - 1e-9);
    CHECK(report.mmse_x0 <= bounds.upper + 1e-9);
  }
}

TEST_CASE("the lower bound decreases as sensors are added") {
  const auto system = chain_instance();
  const auto summary = noise_prior_summary(system);
  const auto maps = build_stacked_maps(system);
  double previous = 1e300;
  for (int size = 0; size <= 5; ++size) {
    std::vector<int> indices;
    for (int i = 1; i <= size; ++i) indices.push_back(i);
    const auto report = theorem1_bounds(summary, maps, SensorSet(indices, 5),
                                        BoundTarget::X0, system.sigma);
    CHECK(report.lower < previous);
    CHECK(report.lower > 0.0);
    previous = report.lower;
  }
}

TEST_CASE("bounds refuse mu equal to one") {
  LtvSystem system;
  system.n = 2;
  system.k = 1;
  system.dynamics = {Eigen::MatrixXd::Identity(2, 2)};
  system.cov_x0 = Eigen::MatrixXd::Identity(2, 2);
  system.cov_w = {Eigen::MatrixXd::Identity(2, 2)};
  system = validate(std::move(system));
  const auto summary = noise_prior_summary(system);
  CHECK_THROWS_AS(theorem1_bounds(summary, build_stacked_maps(system),
                                  SensorSet({1}, 2), BoundTarget::X0, 1.0),
                  MuEqualsOne);
  CHECK_THROWS_AS(corollary1_min_sensors(summary, 0.5, 1, 2, 1.0, 1.0),
                  MuEqualsOne);
  CHECK_THROWS_AS(corollary2_min_interval(summary, 0.5, 2, 1.0, 1, 1.0),
                  MuEqualsOne);
}

TEST_CASE("minimum sensor count hand values") {
  const auto summary = noise_prior_summary(scalar_half());
  // (n sigma^2 l / alpha - sigma^2 / sigma_0^2) / geometric_sum.
  CHECK(corollary1_min_sensors(summary, 0.5, 0, 1, 1.0, 1.0) ==
        doctest::Approx(1.0));
  // alpha at the prior level needs no sensors at all.
  CHECK(corollary1_min_sensors(summary, 1.0, 0, 1, 1.0, 1.0) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(corollary1_min_sensors(summary, 0.0, 0, 1, 1.0, 1.0), Error);
}

TEST_CASE("minimum sensor count decreases in alpha and increases in n") {
  const auto summary = noise_prior_summary(chain_instance());
  double previous = 1e300;
  for (double alpha : {0.1, 0.2, 0.5, 1.0}) {
    const double count = corollary1_min_sensors(summary, alpha, 5, 5, 1.0, 1.0);
    CHECK(count < previous);
    previous = count;
  }
  CHECK(corollary1_min_sensors(summary, 0.2, 5, 10, 1.0, 1.0) >
        corollary1_min_sensors(summary, 0.2, 5, 5, 1.0, 1.0));
}

TEST_CASE("minimum interval hand values and infeasibility") {
  const auto summary = noise_prior_summary(scalar_half());
  // alpha = 1/2 with one sensor is reached exactly at k = 0.
  CHECK(corollary2_min_interval(summary, 0.5, 1, 1.0, 1, 1.0) ==
        doctest::Approx(0.0));
  // Demanding far below the single-sensor limit has no finite horizon.
  CHECK_THROWS_AS(corollary2_min_interval(summary, 0.1, 1, 1.0, 1, 1.0),
                  InfeasibleAlpha);
  CHECK_THROWS_AS(corollary2_min_interval(summary, 0.5, 1, 1.0, 0, 1.0), Error);
}

TEST_CASE("minimum interval grows as alpha shrinks toward the limit") {
  const auto summary = noise_prior_summary(scalar_half());
  double previous = -1e300;
  for (double alpha : {0.9, 0.7, 0.5, 0.45}) {
    const double k_needed = corollary2_min_interval(summary, alpha, 1, 1.0, 1, 1.0);
    CHECK(k_needed > previous);
    previous = k_needed;
  }
}
