#include "splace/stacked.hpp"

namespace splace {

StackedMaps build_stacked_maps(const LtvSystem& system) {
  const int n = system.n;
  const int k = system.k;
  const int d = system.stacked_dim();
  StackedMaps maps{n, k, {}};
  maps.blocks.reserve(k + 1);

  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, d);
  block.leftCols(n) = Eigen::MatrixXd::Identity(n, n);
  maps.blocks.push_back(block);

  // Non-trivial prefix of L_i is A_{i-1} times that of L_{i-1},
  // followed by a fresh identity block.
  for (int i = 1; i <= k; ++i) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, d);
    next.leftCols(i * n) = system.A(i - 1) * maps.blocks.back().leftCols(i * n);
    next.middleCols(i * n, n) = Eigen::MatrixXd::Identity(n, n);
    maps.blocks.push_back(std::move(next));
  }
  return maps;
}

InformationAtoms build_information_atoms(const StackedMaps& maps) {
  const int d = maps.n * (maps.k + 1);
  InformationAtoms atoms{maps.n, maps.k, {}};
  atoms.atoms.reserve(maps.n);
  for (int m = 0; m < maps.n; ++m) {
    Eigen::MatrixXd atom = Eigen::MatrixXd::Zero(d, d);
    for (const auto& block : maps.blocks) {
      atom.noalias() += block.row(m).transpose() * block.row(m);
    }
    atoms.atoms.push_back(std::move(atom));
  }
  return atoms;
}

Eigen::MatrixXd information_matrix(const InformationAtoms& atoms,
                                   const SensorSet& sensors) {
  const int d = atoms.n * (atoms.k + 1);
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(d, d);
  for (int m : sensors.indices()) {
    info += atoms.atoms.at(m - 1);
  }
  return info;
}

std::vector<Eigen::MatrixXd> transition_products(const LtvSystem& system) {
  std::vector<Eigen::MatrixXd> phis;
  phis.reserve(system.k + 1);
  phis.push_back(Eigen::MatrixXd::Identity(system.n, system.n));
  for (int m = 1; m <= system.k; ++m) {
    phis.push_back(system.A(m - 1) * phis.back());
  }
  return phis;
}

Eigen::MatrixXd reduced_observability(const LtvSystem& system,
                                      const SensorSet& sensors) {
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(system.n, system.n);
  for (const auto& phi : transition_products(system)) {
    for (int m : sensors.indices()) {
      gram.noalias() += phi.row(m - 1).transpose() * phi.row(m - 1);
    }
  }
  return gram;
}

}  // namespace splace
