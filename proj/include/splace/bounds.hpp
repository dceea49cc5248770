#pragma once

#include "splace/stacked.hpp"
#include "splace/system.hpp"

namespace splace {

enum class BoundTarget { X0, XK };

/// The mmse sandwich for x_i, i in {0, k}:
///   n sigma^2 l_i / (|S| (1-mu^{2(k+1)})/(1-mu^2) + sigma^2 sigma_0^{-2})
///     <= mmse(x_i) <= n u_i.
/// For target XK with k >= 1 the Gram matrix L_k^T L_k is structurally
/// singular (L_k is wide), so l_k = 0 and the lower bound is vacuous;
/// the report flags this instead of hiding it.
struct BoundsReport {
  BoundTarget target = BoundTarget::X0;
  double lower = 0.0;
  double upper = 0.0;
  double l_i = 0.0;
  double u_i = 0.0;
  bool vacuous_lower = false;
};

BoundsReport theorem1_bounds(const NoisePriorSummary& summary,
                             const StackedMaps& maps, const SensorSet& sensors,
                             BoundTarget target, double sigma);

/// Minimum sensor count needed to reach mmse(x_i) = alpha:
///   (n sigma^2 l_i / alpha - sigma^2 sigma_0^{-2}) (1-mu^2)/(1-mu^{2(k+1)}).
/// Real-valued; the caller ceils it. May be <= 0 (no constraint).
double corollary1_min_sensors(const NoisePriorSummary& summary, double alpha,
                              int k, int n, double sigma, double l_i);

/// Minimum interval index k needed to reach mmse(x_i) = alpha with
/// |S| sensors:
///   log(1 - (n sigma^2 l_i/alpha - sigma^2 sigma_0^{-2})(1-mu^2)/|S|)
///     / (2 log mu) - 1.
/// Throws InfeasibleAlpha when the log argument is non-positive.
double corollary2_min_interval(const NoisePriorSummary& summary, double alpha,
                               int n, double sigma, int card_s, double l_i);

}  // namespace splace
