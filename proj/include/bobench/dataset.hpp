#pragma once

#include <stdexcept>

#include "bobench/types.hpp"

namespace bobench {

/// Ordered evaluated pairs in unit-cube coordinates; the first n0 rows are
/// the shared initial design.
struct Dataset {
  Matrixd X;  // n x d
  Vectord y;  // n
  Index n0 = 0;

  Index size() const { return X.rows(); }
  Index dim() const { return X.cols(); }

  void append(const Vectord& x, double value) {
    X.conservativeResize(X.rows() + 1, Eigen::NoChange);
    X.row(X.rows() - 1) = x.transpose();
    y.conservativeResize(y.size() + 1);
    y[y.size() - 1] = value;
  }

  /// Index of the incumbent (best observation so far, minimization).
  Index incumbent_index() const {
    if (y.size() == 0) throw std::logic_error("Dataset: empty");
    Index i = 0;
    y.minCoeff(&i);
    return i;
  }

  double best_value() const { return y[incumbent_index()]; }
  Vectord incumbent() const { return X.row(incumbent_index()).transpose(); }
};

}  // namespace bobench
