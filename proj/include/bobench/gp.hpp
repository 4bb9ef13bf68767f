#pragma once

#include <optional>
#include <utility>

#include "bobench/kernel.hpp"
#include "bobench/rng.hpp"
#include "bobench/types.hpp"

namespace bobench {

/// MLE search configuration. Hyperparameters are optimized in log space over
/// the stated boxes; a pinned value removes that coordinate from the search.
struct FitOptions {
  int restarts = 10;
  int max_local_steps = 50;
  double tolerance = 1e-6;
  double lengthscale_lo = 0.01, lengthscale_hi = 10.0;
  double signal_variance_lo = 1e-4, signal_variance_hi = 1e4;
  double noise_variance_lo = 1e-8, noise_variance_hi = 1e-1;
  std::optional<double> pin_signal_variance;
  std::optional<double> pin_lengthscale;
  std::optional<double> pin_noise_variance;
  bool standardize = true;
};

/// Fitted SE-kernel GP: hyperparameters, Cholesky factor of
/// K + (noise + jitter) I on standardized targets, and the cached solve
/// against the targets. Immutable once fitted; predictions are const.
class GpModel {
 public:
  /// Fit hyperparameters by maximizing the log marginal likelihood with
  /// multistart local ascent. Throws on non-finite targets or on Cholesky
  /// failure after jitter escalation.
  static GpModel fit(const Matrixd& X, const Vectord& y, RandomStream& rng,
                     const FitOptions& opts = {});

  /// Build a model at pinned hyperparameters (no MLE).
  static GpModel make(const Matrixd& X, const Vectord& y, const SeKernel& k,
                      double noise_variance, bool standardize = true);

  /// Posterior mean and standard deviation at x, in target units.
  std::pair<double, double> predict(const Vectord& x) const;

  /// Posterior mean only (the exploitative score); never touches sigma.
  double predict_mean(const Vectord& x) const;

  /// Log marginal likelihood of the (standardized) targets at the fitted
  /// hyperparameters.
  double log_marginal_likelihood() const { return lml_; }

  const SeKernel& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  double jitter() const { return jitter_; }
  double target_mean() const { return target_mean_; }
  double target_sd() const { return target_sd_; }
  const Matrixd& train_inputs() const { return X_; }
  const Matrixd& factor() const { return L_; }
  Index size() const { return X_.rows(); }

 private:
  GpModel() = default;

  SeKernel kernel_;
  double noise_variance_ = 0.0;
  double jitter_ = 0.0;
  Matrixd X_;
  Vectord y_std_;
  Matrixd L_;      // lower Cholesky of K + (noise + jitter) I
  Vectord alpha_;  // (K + noise I)^{-1} y_std via the factor
  double target_mean_ = 0.0;
  double target_sd_ = 1.0;
  double lml_ = 0.0;
};

/// Log marginal likelihood of y under an SE-kernel GP with the given
/// hyperparameters:  -1/2 y^T alpha - sum log diag(L) - n/2 log(2 pi).
/// Throws on Cholesky failure after jitter escalation.
double log_marginal_likelihood(const Matrixd& X, const Vectord& y,
                               const SeKernel& k, double noise_variance);

namespace detail {
/// Cholesky of K + (noise + jitter) I with jitter escalation
/// 1e-10 -> 1e-4 (x10 per retry). Returns the factor and the jitter used.
std::pair<Matrixd, double> robust_cholesky(const Matrixd& K,
                                           double noise_variance);
}  // namespace detail

}  // namespace bobench
