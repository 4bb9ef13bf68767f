#include "bobench/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "bobench/local_search.hpp"
#include "bobench/sampling.hpp"

namespace bobench {

namespace detail {

std::pair<Matrixd, double> robust_cholesky(const Matrixd& K,
                                           double noise_variance) {
  const Index n = K.rows();
  for (double jitter = 1e-10; jitter <= 1.0001e-4; jitter *= 10.0) {
    Matrixd A = K;
    A.diagonal().array() += noise_variance + jitter;
    Eigen::LLT<Matrixd> llt(A);
    if (llt.info() == Eigen::Success &&
        llt.matrixLLT().diagonal().minCoeff() > 0.0) {
      return {Matrixd(llt.matrixL()), jitter};
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrixd> es(K);
  std::ostringstream msg;
  msg << "Cholesky failed after jitter escalation to 1e-4 (n=" << n
      << ", eigenvalue range [" << es.eigenvalues().minCoeff() << ", "
      << es.eigenvalues().maxCoeff() << "], condition estimate "
      << es.eigenvalues().maxCoeff() /
             std::max(es.eigenvalues().minCoeff(), 1e-300)
      << ")";
  throw std::runtime_error(msg.str());
}

}  // namespace detail

namespace {

double lml_from_factor(const Matrixd& L, const Vectord& y,
                       const Vectord& alpha) {
  const double n = static_cast<double>(y.size());
  return -0.5 * y.dot(alpha) - L.diagonal().array().log().sum() -
         0.5 * n * std::log(2.0 * M_PI);
}

}  // namespace

double log_marginal_likelihood(const Matrixd& X, const Vectord& y,
                               const SeKernel& k, double noise_variance) {
  const Matrixd K = se_kernel_matrix(X, k);
  auto [L, jitter] = detail::robust_cholesky(K, noise_variance);
  (void)jitter;
  Vectord alpha = L.triangularView<Eigen::Lower>().solve(y);
  L.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
  return lml_from_factor(L, y, alpha);
}

GpModel GpModel::make(const Matrixd& X, const Vectord& y, const SeKernel& k,
                      double noise_variance, bool standardize) {
  if (X.rows() != y.size())
    throw std::invalid_argument("GpModel: X rows and y size differ");
  GpModel m;
  m.X_ = X;
  m.kernel_ = k;
  m.noise_variance_ = noise_variance;
  if (standardize) {
    m.target_mean_ = y.mean();
    const double var =
        (y.array() - m.target_mean_).square().sum() / std::max<Index>(y.size(), 1);
    m.target_sd_ = var > 1e-24 ? std::sqrt(var) : 1.0;
  } else {
    m.target_mean_ = 0.0;
    m.target_sd_ = 1.0;
  }
  m.y_std_ = (y.array() - m.target_mean_) / m.target_sd_;

  const Matrixd K = se_kernel_matrix(X, k);
  auto [L, jitter] = detail::robust_cholesky(K, noise_variance);
  m.L_ = std::move(L);
  m.jitter_ = jitter;
  m.alpha_ = m.L_.triangularView<Eigen::Lower>().solve(m.y_std_);
  m.L_.triangularView<Eigen::Lower>().transpose().solveInPlace(m.alpha_);
  m.lml_ = lml_from_factor(m.L_, m.y_std_, m.alpha_);
  return m;
}

GpModel GpModel::fit(const Matrixd& X, const Vectord& y, RandomStream& rng,
                     const FitOptions& opts) {
  if (X.rows() < 2) throw std::invalid_argument("GpModel::fit: need n >= 2");
  if (!y.allFinite())
    throw std::invalid_argument("GpModel::fit: non-finite targets");

  double mean = 0.0, sd = 1.0;
  if (opts.standardize) {
    mean = y.mean();
    const double var = (y.array() - mean).square().sum() / y.size();
    sd = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  const Vectord y_std = (y.array() - mean) / sd;

  // free coordinates in log space: 0 = sf2, 1 = ell, 2 = lam2
  std::vector<int> free_idx;
  double fixed[3] = {opts.pin_signal_variance.value_or(1.0),
                     opts.pin_lengthscale.value_or(1.0),
                     opts.pin_noise_variance.value_or(0.0)};
  const double lo_all[3] = {std::log(opts.signal_variance_lo),
                            std::log(opts.lengthscale_lo),
                            std::log(opts.noise_variance_lo)};
  const double hi_all[3] = {std::log(opts.signal_variance_hi),
                            std::log(opts.lengthscale_hi),
                            std::log(opts.noise_variance_hi)};
  if (!opts.pin_signal_variance) free_idx.push_back(0);
  if (!opts.pin_lengthscale) free_idx.push_back(1);
  if (!opts.pin_noise_variance) free_idx.push_back(2);

  auto unpack = [&](const Vectord& u) {
    double p[3] = {fixed[0], fixed[1], fixed[2]};
    for (size_t j = 0; j < free_idx.size(); ++j)
      p[free_idx[j]] = std::exp(u[static_cast<Index>(j)]);
    return std::tuple<SeKernel, double>(SeKernel{p[0], p[1]}, p[2]);
  };

  auto objective = [&](const Vectord& u) -> double {
    auto [k, lam2] = unpack(u);
    try {
      return -bobench::log_marginal_likelihood(X, y_std, k, lam2);
    } catch (const std::runtime_error&) {
      return std::numeric_limits<double>::max() / 4;
    }
  };

  const Index nf = static_cast<Index>(free_idx.size());
  SeKernel best_kernel{fixed[0], fixed[1]};
  double best_lam2 = fixed[2];
  double best_neg = std::numeric_limits<double>::max();

  if (nf == 0) {
    return make(X, y, best_kernel, best_lam2, opts.standardize);
  }

  Vectord lo(nf), hi(nf);
  for (Index j = 0; j < nf; ++j) {
    lo[j] = lo_all[free_idx[j]];
    hi[j] = hi_all[free_idx[j]];
  }

  // default start (sf2 = 1, ell = 0.5, lam2 = 1e-6), projected into the box
  std::vector<Vectord> starts;
  {
    const double def[3] = {std::log(1.0), std::log(0.5), std::log(1e-6)};
    Vectord u0(nf);
    for (Index j = 0; j < nf; ++j)
      u0[j] = std::clamp(def[free_idx[j]], lo[j], hi[j]);
    starts.push_back(u0);
  }
  RandomStream lhs_rng = rng.child(0x6c6d6cULL);
  const Design box = lhs(opts.restarts, nf, lhs_rng);
  for (Index i = 0; i < box.n(); ++i) {
    Vectord u = lo + box.points.row(i).transpose().cwiseProduct(hi - lo);
    starts.push_back(std::move(u));
  }

  for (const Vectord& u0 : starts) {
    const LocalSearchResult res = projected_bfgs(
        objective, lo, hi, u0, opts.max_local_steps, opts.tolerance);
    if (res.value < best_neg) {
      best_neg = res.value;
      auto [k, lam2] = unpack(res.x);
      best_kernel = k;
      best_lam2 = lam2;
    }
  }
  return make(X, y, best_kernel, best_lam2, opts.standardize);
}

std::pair<double, double> GpModel::predict(const Vectord& x) const {
  const Vectord ks = se_kernel_vector(X_, x, kernel_);
  const double mu_std = ks.dot(alpha_);
  const Vectord v = L_.triangularView<Eigen::Lower>().solve(ks);
  const double s2 =
      std::max(kernel_.signal_variance - v.squaredNorm(), 0.0);
  return {target_mean_ + target_sd_ * mu_std, target_sd_ * std::sqrt(s2)};
}

double GpModel::predict_mean(const Vectord& x) const {
  const Vectord ks = se_kernel_vector(X_, x, kernel_);
  return target_mean_ + target_sd_ * ks.dot(alpha_);
}

}  // namespace bobench
