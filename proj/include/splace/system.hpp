#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "splace/errors.hpp"

namespace splace {

/// A linear time-variant estimation instance over the observation
/// interval [0, k]:
///
///   x_{t+1} = A_t x_t + w_t,    y_t = C x_t + v_t,
///
/// with C(v_t) = sigma^2 I and sensors selecting rows of the identity.
/// Dynamics and process-noise covariances may be shared across time
/// (stored once) or given per step.
struct LtvSystem {
  int n = 0;  // state dimension
  int k = 0;  // last index of the observation interval [0, k]

  // Size 1 when time-invariant, else k matrices A_0..A_{k-1}.
  std::vector<Eigen::MatrixXd> dynamics;

  Eigen::MatrixXd cov_x0;

  // Empty iff zero_process_noise; otherwise size 1 (shared) or k.
  std::vector<Eigen::MatrixXd> cov_w;
  bool zero_process_noise = false;

  double sigma = 1.0;  // measurement noise standard deviation

  const Eigen::MatrixXd& A(int t) const {
    return dynamics.size() == 1 ? dynamics.front() : dynamics.at(t);
  }
  const Eigen::MatrixXd& w_cov(int t) const {
    return cov_w.size() == 1 ? cov_w.front() : cov_w.at(t);
  }

  // Dimension of the stacked vector z_{k-1} = (x_0, w_0, ..., w_{k-1}).
  int stacked_dim() const { return n * (k + 1); }
};

/// An ordered sensor placement: strictly increasing 1-based state
/// indices, so {3,5} means states 3 and 5 are measured directly.
class SensorSet {
 public:
  SensorSet() = default;

  // Validates range [1, n], strict ordering and absence of duplicates.
  SensorSet(std::vector<int> indices, int n);

  static SensorSet full(int n);
  static SensorSet from_bitmask(std::uint32_t mask, int n);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int sensor) const;
  SensorSet with(int sensor) const;  // copy with one more sensor
  std::uint32_t bitmask() const;

  bool operator==(const SensorSet& other) const = default;

 private:
  std::vector<int> indices_;
};

/// The scalar summaries entering the fundamental-limit bounds:
/// maximum diagonal elements of C(x_0), C(x_0)^{-1} and the C(w)
/// blocks, and the peak spectral norm mu of the dynamics.
struct NoisePriorSummary {
  double sigma0_sq = 0.0;
  double sigma0_inv_sq = 0.0;
  double sigmaw_sq = 0.0;  // 0 when the process noise is zero
  double mu = 0.0;
};

/// Checks all LtvSystem invariants and returns the system with its
/// covariances symmetrized (asymmetry up to 1e-10 is averaged away;
/// anything larger is rejected).
LtvSystem validate(LtvSystem system);

/// Block-diagonal prior covariance of z_{k-1}:
/// diag(C(x_0), C(w_0), ..., C(w_{k-1})).
/// Throws ZeroProcessNoise when the reduced path applies instead.
Eigen::MatrixXd prior_covariance_z(const LtvSystem& system);

NoisePriorSummary noise_prior_summary(const LtvSystem& system);

/// n-node integrator chain dynamics: -1 on the diagonal, 1 on the
/// first subdiagonal.
Eigen::MatrixXd gen_integrator_chain(int n);

/// Symmetric row-stochastic diffusion on a rows x cols 4-neighbor
/// grid; each node keeps 1 - coupling * degree and exchanges
/// `coupling` with every neighbor. Requires coupling * max_degree < 1.
Eigen::MatrixXd gen_diffusion_grid(int rows, int cols, double coupling);

}  // namespace splace
