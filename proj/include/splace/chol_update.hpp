#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace splace {

// Rank-one update of a lower-triangular Cholesky factor:
// on return L L^T equals the old L L^T + x x^T. The vector x is
// consumed as workspace.
inline void chol_rank1_update(Eigen::MatrixXd& L, Eigen::VectorXd& x) {
  const Eigen::Index d = L.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double ljj = L(j, j);
    const double xj = x(j);
    const double r = std::hypot(ljj, xj);
    const double c = r / ljj;
    const double s = xj / ljj;
    L(j, j) = r;
    if (j + 1 < d) {
      auto col = L.col(j).tail(d - j - 1);
      auto xt = x.tail(d - j - 1);
      col = (col + s * xt) / c;
      xt = c * xt - s * col;
    }
  }
}

}  // namespace splace
