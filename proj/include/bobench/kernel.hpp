#pragma once

#include <cmath>

#include "bobench/types.hpp"

namespace bobench {

/// Squared-Exponential kernel hyperparameters.
struct SeKernel {
  double signal_variance = 1.0;  // sigma_f^2
  double lengthscale = 1.0;      // ell
};

/// k(x, x') = sf2 * exp(-||x - x'||^2 / (2 ell^2))
template <typename DerivedA, typename DerivedB>
double se_kernel(const Eigen::MatrixBase<DerivedA>& x,
                 const Eigen::MatrixBase<DerivedB>& y, const SeKernel& k) {
  const double r2 = (x - y).squaredNorm();
  return k.signal_variance * std::exp(-0.5 * r2 / (k.lengthscale * k.lengthscale));
}

/// Gram matrix of the rows of X.
template <typename Derived>
Matrix<typename Derived::Scalar> se_kernel_matrix(
    const Eigen::MatrixBase<Derived>& X, const SeKernel& k) {
  using Scalar = typename Derived::Scalar;
  const Index n = X.rows();
  // ||xi - xj||^2 = ||xi||^2 + ||xj||^2 - 2 xi.xj
  Vector<Scalar> sq = X.rowwise().squaredNorm();
  Matrix<Scalar> r2 =
      sq.rowwise().replicate(n) + sq.transpose().colwise().replicate(n) -
      Scalar(2) * (X * X.transpose());
  const Scalar inv = Scalar(-0.5) / (k.lengthscale * k.lengthscale);
  return (r2.cwiseMax(Scalar(0)) * inv).array().exp().matrix() *
         Scalar(k.signal_variance);
}

/// Cross-covariance vector k(x, X) against the rows of X.
template <typename DerivedX, typename DerivedP>
Vector<typename DerivedX::Scalar> se_kernel_vector(
    const Eigen::MatrixBase<DerivedX>& X,
    const Eigen::MatrixBase<DerivedP>& x, const SeKernel& k) {
  using Scalar = typename DerivedX::Scalar;
  Vector<Scalar> r2 =
      (X.rowwise() - x.transpose()).rowwise().squaredNorm();
  const Scalar inv = Scalar(-0.5) / (k.lengthscale * k.lengthscale);
  return (r2 * inv).array().exp().matrix() * Scalar(k.signal_variance);
}

}  // namespace bobench
