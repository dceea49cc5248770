#include "splace/system.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace splace {

namespace {

constexpr double kAsymmetryTol = 1e-10;

// Symmetrizes in place when the asymmetry is rounding-level, otherwise
// rejects. Hand-entered JSON covariances routinely carry such noise.
void check_spd(Eigen::MatrixXd& m, const std::string& name) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(name + " is not square");
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryTol) {
    throw NotPositiveDefinite(name + " is not symmetric (asymmetry " +
                              std::to_string(asym) + ")");
  }
  m = ((m + m.transpose()) / 2.0).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(name + " is not positive definite");
  }
}

double spectral_norm(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace

SensorSet::SensorSet(std::vector<int> indices, int n) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > n) {
      throw DimensionMismatch("sensor index " + std::to_string(indices[i]) +
                              " outside [1, " + std::to_string(n) + "]");
    }
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw DimensionMismatch("sensor indices must be strictly increasing");
    }
  }
  indices_ = std::move(indices);
}

SensorSet SensorSet::full(int n) {
  SensorSet s;
  s.indices_.resize(n);
  for (int i = 0; i < n; ++i) s.indices_[i] = i + 1;
  return s;
}

SensorSet SensorSet::from_bitmask(std::uint32_t mask, int n) {
  SensorSet s;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) s.indices_.push_back(i + 1);
  }
  return s;
}

bool SensorSet::contains(int sensor) const {
  return std::binary_search(indices_.begin(), indices_.end(), sensor);
}

SensorSet SensorSet::with(int sensor) const {
  SensorSet s = *this;
  s.indices_.insert(
      std::lower_bound(s.indices_.begin(), s.indices_.end(), sensor), sensor);
  return s;
}

std::uint32_t SensorSet::bitmask() const {
  std::uint32_t mask = 0;
  for (int i : indices_) mask |= 1u << (i - 1);
  return mask;
}

LtvSystem validate(LtvSystem system) {
  if (system.n < 1) throw DimensionMismatch("state dimension must be >= 1");
  if (system.k < 0) throw DimensionMismatch("interval index k must be >= 0");
  if (!(system.sigma > 0.0)) {
    throw NonPositiveSigma("sigma must be positive");
  }
  if (system.dynamics.empty()) {
    throw DimensionMismatch("dynamics missing");
  }
  if (system.dynamics.size() != 1 &&
      system.dynamics.size() != static_cast<std::size_t>(system.k)) {
    throw DimensionMismatch("dynamics sequence must have k matrices");
  }
  for (const auto& a : system.dynamics) {
    if (a.rows() != system.n || a.cols() != system.n) {
      throw DimensionMismatch("dynamics matrix has wrong shape");
    }
  }
  check_spd(system.cov_x0, "cov_x0");
  if (system.zero_process_noise) {
    if (!system.cov_w.empty()) {
      throw DimensionMismatch("cov_w given together with zero process noise");
    }
  } else {
    if (system.cov_w.empty()) {
      throw DimensionMismatch("cov_w missing");
    }
    if (system.cov_w.size() != 1 &&
        system.cov_w.size() != static_cast<std::size_t>(system.k)) {
      throw DimensionMismatch("cov_w sequence must have k matrices");
    }
    for (std::size_t i = 0; i < system.cov_w.size(); ++i) {
      check_spd(system.cov_w[i], "cov_w[" + std::to_string(i) + "]");
    }
  }
  return system;
}

Eigen::MatrixXd prior_covariance_z(const LtvSystem& system) {
  if (system.zero_process_noise) {
    throw ZeroProcessNoise("prior of z undefined; use the reduced path");
  }
  const int d = system.stacked_dim();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  cov.topLeftCorner(system.n, system.n) = system.cov_x0;
  for (int j = 0; j < system.k; ++j) {
    cov.block((j + 1) * system.n, (j + 1) * system.n, system.n, system.n) =
        system.w_cov(j);
  }
  return cov;
}

NoisePriorSummary noise_prior_summary(const LtvSystem& system) {
  NoisePriorSummary s;
  s.sigma0_sq = system.cov_x0.diagonal().maxCoeff();
  s.sigma0_inv_sq = system.cov_x0.inverse().diagonal().maxCoeff();
  s.sigmaw_sq = 0.0;
  for (const auto& w : system.cov_w) {
    s.sigmaw_sq = std::max(s.sigmaw_sq, w.diagonal().maxCoeff());
  }
  s.mu = 0.0;
  for (const auto& a : system.dynamics) {
    s.mu = std::max(s.mu, spectral_norm(a));
  }
  return s;
}

Eigen::MatrixXd gen_integrator_chain(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = -1.0;
  for (int i = 0; i + 1 < n; ++i) a(i + 1, i) = 1.0;
  return a;
}

Eigen::MatrixXd gen_diffusion_grid(int rows, int cols, double coupling) {
  if (!(coupling > 0.0 && coupling < 1.0)) {
    throw InvalidCoupling("coupling must lie in (0, 1)");
  }
  const int n = rows * cols;
  const auto idx = [cols](int r, int c) { return r * cols + c; };
  int max_degree = 0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int degree = 0;
      const int dr[] = {-1, 1, 0, 0};
      const int dc[] = {0, 0, -1, 1};
      for (int q = 0; q < 4; ++q) {
        const int rr = r + dr[q];
        const int cc = c + dc[q];
        if (rr >= 0 && rr < rows && cc >= 0 && cc < cols) {
          a(idx(r, c), idx(rr, cc)) = coupling;
          ++degree;
        }
      }
      a(idx(r, c), idx(r, c)) = 1.0 - coupling * degree;
      max_degree = std::max(max_degree, degree);
    }
  }
  if (!(coupling * max_degree < 1.0)) {
    throw InvalidCoupling("coupling * max node degree must be < 1");
  }
  return a;
}

}  // namespace splace
