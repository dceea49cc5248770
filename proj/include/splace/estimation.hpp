#pragma once

#include <Eigen/Dense>
#include <string>

#include "splace/stacked.hpp"
#include "splace/system.hpp"

namespace splace {

enum class ErrorPath { General, ReducedZeroProcessNoise };

std::string to_string(ErrorPath path);

/// Error statistics of the optimal linear estimator for one sensor set.
struct ErrorReport {
  double logdet_error = 0.0;  // log det of the error covariance (natural log)
  double mmse_z = 0.0;        // tr(Sigma_z)
  double mmse_x0 = 0.0;       // tr(L_0 Sigma L_0^T)
  double mmse_xk = 0.0;       // tr(L_k Sigma L_k^T)
  ErrorPath path = ErrorPath::General;
};

/// log det of an SPD matrix via Cholesky. Retries once with jitter
/// 1e-12 * (trace/dim) * I, then throws CholeskyFailure.
double chol_logdet(const Eigen::MatrixXd& spd);

/// Blockwise inverse of the prior covariance of z_{k-1}: each n x n
/// block is inverted on its own.
Eigen::MatrixXd prior_z_inverse(const LtvSystem& system);

/// Covariance-form error covariance,
///   C(z) - C(z) O^T (O C(z) O^T + sigma^2 I)^{-1} O C(z),
/// with O stacking the sensor rows of every L_j. Retained as the
/// cross-check oracle for the information-form path; builds the
/// |S|(k+1)-row stacked matrix explicitly.
Eigen::MatrixXd error_covariance_direct(const LtvSystem& system,
                                        const SensorSet& sensors);

/// Zero-process-noise analogue of error_covariance_direct, built on
/// the reduced stacked map (rows of C Phi_m); n x n.
Eigen::MatrixXd error_covariance_direct_reduced(const LtvSystem& system,
                                                const SensorSet& sensors);

/// Closed-form log det error:
///   2 n(k+1) log(sigma) - log det(O_{k,S} + sigma^2 C(z)^{-1}).
double logdet_error(const LtvSystem& system, const InformationAtoms& atoms,
                    const SensorSet& sensors);

/// Reduced-path log det error (n-dimensional):
///   2 n log(sigma) - log det(O~_{k,S} + sigma^2 C(x_0)^{-1}).
double logdet_error_reduced(const LtvSystem& system, const SensorSet& sensors);

/// Full error report via the information form; dispatches to the
/// reduced path when the process noise is zero.
ErrorReport mmse_report(const LtvSystem& system, const InformationAtoms& atoms,
                        const SensorSet& sensors);

/// Log volume of the epsilon-confidence ellipsoid:
///   (d/2) log(eps*pi) - lgamma(d/2 + 1) + logdet_error / 2,
/// with d = n(k+1).
double log_ellipsoid_volume(const LtvSystem& system, double logdet_error,
                            double epsilon);

}  // namespace splace
