#pragma once

#include <cmath>
#include <stdexcept>

#include "bobench/types.hpp"

namespace bobench {

/// Inverse-distance-weighting uncertainty of x against the rows of X:
///   z(x) = (2/pi) atan(1 / sum_i p_i(x)),  p_i(x) = exp(-r_i^2) / r_i^2,
/// with r_i = ||x - X_i||. Returns 0 when x coincides with a data row
/// (squared distance <= 1e-12). Values lie in [0, 1).
template <typename DerivedX, typename DerivedP>
double idw_uncertainty(const Eigen::MatrixBase<DerivedX>& X,
                       const Eigen::MatrixBase<DerivedP>& x) {
  if (X.rows() < 1)
    throw std::logic_error("idw_uncertainty: empty point set");
  const Vectord r2 = (X.rowwise() - x.transpose()).rowwise().squaredNorm();
  if (r2.minCoeff() <= 1e-12) return 0.0;
  const double sum = ((-r2.array()).exp() / r2.array()).sum();
  return (2.0 / M_PI) * std::atan(1.0 / sum);
}

/// Immutable snapshot of the evaluated points for one iteration.
class IdwField {
 public:
  explicit IdwField(Matrixd points) : X_(std::move(points)) {
    if (X_.rows() < 1) throw std::logic_error("IdwField: empty point set");
  }

  double z(const Vectord& x) const { return idw_uncertainty(X_, x); }

  const Matrixd& points() const { return X_; }

 private:
  Matrixd X_;
};

}  // namespace bobench
