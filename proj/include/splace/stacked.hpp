#pragma once

#include <Eigen/Dense>
#include <vector>

#include "splace/system.hpp"

namespace splace {

/// The block maps L_0..L_k with L_0 = [I, 0] and, for i >= 1,
/// L_i = [A_{i-1}...A_0, A_{i-1}...A_1, ..., A_{i-1}, I, 0].
/// Each block is n x n(k+1); x_i = L_i z_{k-1}.
struct StackedMaps {
  int n = 0;
  int k = 0;
  std::vector<Eigen::MatrixXd> blocks;
};

/// Per-sensor information contributions O_{k,{m}} = sum_j L_j^T I^(m) L_j,
/// each a sum of k+1 rank-one terms built from row m of every L_j.
/// The information matrix of a set is the sum of its atoms.
struct InformationAtoms {
  int n = 0;
  int k = 0;
  std::vector<Eigen::MatrixXd> atoms;  // n matrices, n(k+1) x n(k+1)
};

StackedMaps build_stacked_maps(const LtvSystem& system);

InformationAtoms build_information_atoms(const StackedMaps& maps);

// O_{k,S} = sum over m in S of atoms[m]; zero for the empty set.
Eigen::MatrixXd information_matrix(const InformationAtoms& atoms,
                                   const SensorSet& sensors);

// State transition products Phi_0 = I, Phi_m = A_{m-1}...A_0 for
// m in [1, k].
std::vector<Eigen::MatrixXd> transition_products(const LtvSystem& system);

// Reduced (zero-process-noise) observability Gramian:
// sum_{m=0..k} Phi_m^T C_S^T C_S Phi_m, an n x n PSD matrix.
Eigen::MatrixXd reduced_observability(const LtvSystem& system,
                                      const SensorSet& sensors);

}  // namespace splace
