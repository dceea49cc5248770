#include "splace/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace splace {

namespace {

constexpr double kMuTol = 1e-9;
constexpr double kVacuousTol = 1e-12;

void require_mu_not_one(double mu) {
  if (std::abs(mu - 1.0) <= kMuTol) {
    throw MuEqualsOne("bounds are undefined at mu = 1");
  }
}

// sum_{m=0..k} mu^{2m} = (1 - mu^{2(k+1)}) / (1 - mu^2).
double geometric_sum(double mu, int k) {
  const double mu_sq = mu * mu;
  return (1.0 - std::pow(mu_sq, k + 1)) / (1.0 - mu_sq);
}

}  // namespace

BoundsReport theorem1_bounds(const NoisePriorSummary& summary,
                             const StackedMaps& maps, const SensorSet& sensors,
                             BoundTarget target, double sigma) {
  require_mu_not_one(summary.mu);
  if (!(sigma > 0.0)) throw NonPositiveSigma("sigma must be positive");

  BoundsReport report;
  report.target = target;
  const int n = maps.n;
  if (target == BoundTarget::X0) {
    report.l_i = 1.0;
    report.u_i = summary.sigma0_sq;
  } else {
    const Eigen::MatrixXd& lk = maps.blocks.back();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        lk.transpose() * lk, Eigen::EigenvaluesOnly);
    report.l_i = eig.eigenvalues().minCoeff();
    report.u_i = (maps.k + 1) * eig.eigenvalues().maxCoeff() *
                 std::max(summary.sigma0_sq, summary.sigmaw_sq);
    // The Gram matrix is singular whenever k >= 1 (L_k is wide), which
    // makes the lower bound trivially true; flag it honestly.
    if (report.l_i <= kVacuousTol) {
      report.l_i = std::max(report.l_i, 0.0);
      report.vacuous_lower = true;
    }
  }

  const double sigma_sq = sigma * sigma;
  const double denom = sensors.size() * geometric_sum(summary.mu, maps.k) +
                       sigma_sq * summary.sigma0_inv_sq;
  report.lower =
      report.vacuous_lower ? 0.0 : n * sigma_sq * report.l_i / denom;
  report.upper = n * report.u_i;
  return report;
}

double corollary1_min_sensors(const NoisePriorSummary& summary, double alpha,
                              int k, int n, double sigma, double l_i) {
  require_mu_not_one(summary.mu);
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  const double sigma_sq = sigma * sigma;
  return (n * sigma_sq * l_i / alpha - sigma_sq * summary.sigma0_inv_sq) /
         geometric_sum(summary.mu, k);
}

double corollary2_min_interval(const NoisePriorSummary& summary, double alpha,
                               int n, double sigma, int card_s, double l_i) {
  require_mu_not_one(summary.mu);
  if (summary.mu <= 0.0) throw Error("corollary requires mu > 0");
  if (card_s < 1) throw Error("corollary requires at least one sensor");
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  const double sigma_sq = sigma * sigma;
  const double arg =
      1.0 - (n * sigma_sq * l_i / alpha - sigma_sq * summary.sigma0_inv_sq) *
                (1.0 - summary.mu * summary.mu) / card_s;
  if (!(arg > 0.0)) {
    throw InfeasibleAlpha(
        "no finite interval achieves this error with the given sensors");
  }
  return std::log(arg) / (2.0 * std::log(summary.mu)) - 1.0;
}

}  // namespace splace
