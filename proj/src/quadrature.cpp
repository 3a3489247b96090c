#include "algebroid/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "algebroid/error.hpp"

namespace algebroid {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "quadrature needs at least one node");
  const Eigen::Index N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 1; i < N; ++i) {
    const double b = static_cast<double>(i) / std::sqrt(4.0 * static_cast<double>(i * i) - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule rule;
  for (Eigen::Index i = 0; i < N; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes.push_back(0.5 * (es.eigenvalues()(i) + 1.0));
    rule.weights.push_back(v0 * v0);
  }
  return rule;
}

}  // namespace algebroid
