#include "splace/estimation.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace splace {

std::string to_string(ErrorPath path) {
  return path == ErrorPath::General ? "general" : "reduced_zero_process_noise";
}

double chol_logdet(const Eigen::MatrixXd& spd) {
  Eigen::LLT<Eigen::MatrixXd> llt(spd);
  if (llt.info() != Eigen::Success) {
    // One jitter retry absorbs benign rounding on large k.
    const double jitter = 1e-12 * spd.trace() / spd.rows();
    Eigen::MatrixXd bumped = spd;
    bumped.diagonal().array() += jitter;
    llt.compute(bumped);
    if (llt.info() != Eigen::Success) {
      throw CholeskyFailure("matrix is numerically indefinite");
    }
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

Eigen::MatrixXd prior_z_inverse(const LtvSystem& system) {
  if (system.zero_process_noise) {
    throw ZeroProcessNoise("prior of z undefined; use the reduced path");
  }
  const int n = system.n;
  const int d = system.stacked_dim();
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(d, d);
  inv.topLeftCorner(n, n) = system.cov_x0.inverse();
  for (int j = 0; j < system.k; ++j) {
    inv.block((j + 1) * n, (j + 1) * n, n, n) = system.w_cov(j).inverse();
  }
  return inv;
}

namespace {

// Stacks the sensor rows of each map block into the c(k+1) x dim
// measurement matrix of the covariance-form expression.
Eigen::MatrixXd stack_sensor_rows(const std::vector<Eigen::MatrixXd>& blocks,
                                  const SensorSet& sensors) {
  const Eigen::Index dim = blocks.front().cols();
  Eigen::MatrixXd stacked(
      static_cast<Eigen::Index>(blocks.size()) * sensors.size(), dim);
  Eigen::Index row = 0;
  for (const auto& block : blocks) {
    for (int m : sensors.indices()) {
      stacked.row(row++) = block.row(m - 1);
    }
  }
  return stacked;
}

Eigen::MatrixXd covariance_form(const Eigen::MatrixXd& prior,
                                const std::vector<Eigen::MatrixXd>& blocks,
                                const SensorSet& sensors, double sigma) {
  if (sensors.empty()) return prior;
  const Eigen::MatrixXd obs = stack_sensor_rows(blocks, sensors);
  const Eigen::MatrixXd gram =
      obs * prior * obs.transpose() +
      sigma * sigma * Eigen::MatrixXd::Identity(obs.rows(), obs.rows());
  const Eigen::MatrixXd gain =
      prior * obs.transpose() * gram.ldlt().solve(obs * prior);
  return prior - gain;
}

}  // namespace

Eigen::MatrixXd error_covariance_direct(const LtvSystem& system,
                                        const SensorSet& sensors) {
  const Eigen::MatrixXd prior = prior_covariance_z(system);
  const StackedMaps maps = build_stacked_maps(system);
  return covariance_form(prior, maps.blocks, sensors, system.sigma);
}

Eigen::MatrixXd error_covariance_direct_reduced(const LtvSystem& system,
                                                const SensorSet& sensors) {
  return covariance_form(system.cov_x0, transition_products(system), sensors,
                         system.sigma);
}

double logdet_error(const LtvSystem& system, const InformationAtoms& atoms,
                    const SensorSet& sensors) {
  const int d = system.stacked_dim();
  Eigen::MatrixXd m = information_matrix(atoms, sensors);
  m += system.sigma * system.sigma * prior_z_inverse(system);
  return 2.0 * d * std::log(system.sigma) - chol_logdet(m);
}

double logdet_error_reduced(const LtvSystem& system, const SensorSet& sensors) {
  Eigen::MatrixXd m = reduced_observability(system, sensors);
  m += system.sigma * system.sigma * system.cov_x0.inverse();
  return 2.0 * system.n * std::log(system.sigma) - chol_logdet(m);
}

ErrorReport mmse_report(const LtvSystem& system, const InformationAtoms& atoms,
                        const SensorSet& sensors) {
  ErrorReport report;
  const double sigma_sq = system.sigma * system.sigma;
  if (system.zero_process_noise) {
    report.path = ErrorPath::ReducedZeroProcessNoise;
    Eigen::MatrixXd m = reduced_observability(system, sensors);
    m += sigma_sq * system.cov_x0.inverse();
    report.logdet_error =
        2.0 * system.n * std::log(system.sigma) - chol_logdet(m);
    const Eigen::MatrixXd cov =
        sigma_sq *
        m.llt().solve(Eigen::MatrixXd::Identity(system.n, system.n));
    // z reduces to x_0, so the two traces coincide.
    report.mmse_z = cov.trace();
    report.mmse_x0 = report.mmse_z;
    const Eigen::MatrixXd phi_k = transition_products(system).back();
    report.mmse_xk = (phi_k * cov * phi_k.transpose()).trace();
  } else {
    report.path = ErrorPath::General;
    const int d = system.stacked_dim();
    Eigen::MatrixXd m = information_matrix(atoms, sensors);
    m += sigma_sq * prior_z_inverse(system);
    report.logdet_error = 2.0 * d * std::log(system.sigma) - chol_logdet(m);
    const Eigen::MatrixXd cov =
        sigma_sq * m.llt().solve(Eigen::MatrixXd::Identity(d, d));
    report.mmse_z = cov.trace();
    report.mmse_x0 = cov.topLeftCorner(system.n, system.n).trace();
    const StackedMaps maps = build_stacked_maps(system);
    const Eigen::MatrixXd& lk = maps.blocks.back();
    report.mmse_xk = (lk * cov * lk.transpose()).trace();
  }
  return report;
}

double log_ellipsoid_volume(const LtvSystem& system, double logdet_error,
                            double epsilon) {
  const double half_d = system.stacked_dim() / 2.0;
  return half_d * std::log(epsilon * M_PI) - std::lgamma(half_d + 1.0) +
         0.5 * logdet_error;
}

}  // namespace splace
