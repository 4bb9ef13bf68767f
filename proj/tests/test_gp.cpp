#include <doctest.h>

#include <cmath>

#include "bobench/gp.hpp"
#include "bobench/sampling.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace bobench;

namespace {

Matrixd random_inputs(Index n, Index d, RandomStream& rng) {
  Matrixd X(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < d; ++k) X(i, k) = rng.uniform();
  return X;
}

Vectord random_targets(Index n, RandomStream& rng) {
  Vectord y(n);
  for (Index i = 0; i < n; ++i) y[i] = rng.normal();
  return y;
}

}  // namespace

TEST_CASE("Cholesky predictions equal the direct-inverse evaluation") {
  RandomStream rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(11));  // up to 12
    const Index d = 1 + static_cast<Index>(rng.below(4));
    const Matrixd X = random_inputs(n, d, rng);
    const Vectord y = random_targets(n, rng);
    const SeKernel k{0.5 + rng.uniform(), 0.1 + 0.9 * rng.uniform()};
    const double lam2 = 1e-6 + 1e-3 * rng.uniform();
    const GpModel model = GpModel::make(X, y, k, lam2, /*standardize=*/false);
    for (int probe = 0; probe < 5; ++probe) {
      Vectord x(d);
      for (Index kk = 0; kk < d; ++kk) x[kk] = rng.uniform();
      const auto [mu, sigma] = model.predict(x);
      const auto [mu_ref, s2_ref] = oracle::gp_predict_direct(
          X, y, k, lam2 + model.jitter(), x);
      CHECK(close_abs(mu, mu_ref, 1e-8));
      CHECK(close_abs(sigma * sigma, std::max(s2_ref, 0.0), 1e-8));
    }
  }
}

TEST_CASE("log marginal likelihood closed form at n = 1") {
  Matrixd X(1, 1);
  X << 0.3;
  Vectord y(1);
  y << 0.0;
  // sf2 + lam2 = 1 => lml = -0.5 log(2 pi) (up to the 1e-10 jitter)
  const double lml = log_marginal_likelihood(X, y, SeKernel{0.5, 1.0}, 0.5);
  CHECK(close_abs(lml, -0.5 * std::log(2.0 * M_PI), 1e-9));
}

TEST_CASE("log marginal likelihood matches the dense-inverse oracle") {
  RandomStream rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrixd X = random_inputs(5, 2, rng);
    const Vectord y = random_targets(5, rng);
    const SeKernel k{1.3, 0.4};
    const double lam2 = 1e-4;
    const GpModel m = GpModel::make(X, y, k, lam2, false);
    const double direct =
        oracle::gp_lml_direct(X, y, k, lam2 + m.jitter());
    CHECK(close_abs(m.log_marginal_likelihood(), direct, 1e-8));
  }
}

TEST_CASE("noise-free model interpolates its training data") {
  RandomStream rng(303);
  const Matrixd X = random_inputs(8, 2, rng);
  Vectord y(8);
  for (Index i = 0; i < 8; ++i)
    y[i] = std::sin(3.0 * X(i, 0)) + X(i, 1);
  FitOptions opts;
  opts.pin_noise_variance = 0.0;
  const GpModel model = GpModel::fit(X, y, rng, opts);
  for (Index i = 0; i < X.rows(); ++i) {
    const auto [mu, sigma] = model.predict(X.row(i).transpose());
    CHECK(close_abs(mu, y[i], 1e-6));
    CHECK(sigma <= 1e-4);
  }
}

TEST_CASE("far from the data the prior is recovered") {
  Matrixd X(3, 1);
  X << 0.0, 0.01, 0.02;
  Vectord y(3);
  y << 1.0, 2.0, 3.0;
  const SeKernel k{2.0, 0.01};  // 20 lengthscales ~ 0.2
  const GpModel m = GpModel::make(X, y, k, 1e-8, true);
  Vectord far(1);
  far << 0.9;
  const auto [mu, sigma] = m.predict(far);
  CHECK(close_abs(mu, m.target_mean(), 1e-6));
  CHECK(close_abs(sigma, std::sqrt(k.signal_variance) * m.target_sd(), 1e-6));
}

TEST_CASE("symmetric data predicts the symmetric mean") {
  Matrixd X(2, 1);
  X << 0.0, 1.0;
  Vectord y(2);
  y << 0.0, 0.0;
  const GpModel m = GpModel::make(X, y, SeKernel{1.0, 1.0}, 0.0, false);
  Vectord mid(1);
  mid << 0.5;
  CHECK(close_abs(m.predict_mean(mid), 0.0, 1e-12));
}

TEST_CASE("constant targets collapse to the constant with sf2 at its floor") {
  Matrixd X(6, 2);
  RandomStream rng(404);
  X = random_inputs(6, 2, rng);
  const Vectord y = Vectord::Constant(6, 3.25);
  const GpModel m = GpModel::fit(X, y, rng);
  Vectord probe(2);
  probe << 0.5, 0.5;
  CHECK(close_abs(m.predict_mean(probe), 3.25, 1e-6));
  CHECK(m.kernel().signal_variance <= 2e-4);  // floor is 1e-4
}

TEST_CASE("duplicate rows survive fitting through the jitter path") {
  Matrixd X(4, 1);
  X << 0.2, 0.2, 0.7, 0.9;
  Vectord y(4);
  y << 1.0, 1.0, -1.0, 0.5;
  RandomStream rng(505);
  FitOptions opts;
  opts.pin_noise_variance = 1e-4;
  const GpModel m = GpModel::fit(X, y, rng, opts);
  CHECK(std::isfinite(m.log_marginal_likelihood()));
}

TEST_CASE("fit rejects bad inputs") {
  RandomStream rng(1);
  Matrixd X(1, 1);
  X << 0.5;
  Vectord y(1);
  y << 1.0;
  CHECK_THROWS_AS(GpModel::fit(X, y, rng), std::invalid_argument);
  Matrixd X2(2, 1);
  X2 << 0.1, 0.9;
  Vectord bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(GpModel::fit(X2, bad, rng), std::invalid_argument);
}

TEST_CASE("MLE improves on the default start for sin(2 pi x)") {
  int improved = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    RandomStream rng(static_cast<std::uint64_t>(1000 + s));
    Matrixd X(20, 1);
    Vectord y(20);
    for (Index i = 0; i < 20; ++i) {
      X(i, 0) = rng.uniform();
      y[i] = std::sin(2.0 * M_PI * X(i, 0));
    }
    const GpModel fitted = GpModel::fit(X, y, rng);
    // default start of the search: sf2 = 1, ell = 0.5, lam2 = 1e-6
    const double mean = y.mean();
    const double sd =
        std::sqrt((y.array() - mean).square().sum() / y.size());
    const Vectord y_std = (y.array() - mean) / sd;
    const double baseline =
        log_marginal_likelihood(X, y_std, SeKernel{1.0, 0.5}, 1e-6);
    if (fitted.log_marginal_likelihood() > baseline) ++improved;
  }
  CHECK(improved >= 19);  // >= 95% of seeds
}

TEST_CASE("the MLE point scores at least as well as probed points") {
  RandomStream rng(606);
  Matrixd X(10, 1);
  Vectord y(10);
  for (Index i = 0; i < 10; ++i) {
    X(i, 0) = static_cast<double>(i) / 10.0;
    y[i] = std::cos(4.0 * X(i, 0));
  }
  const GpModel fitted = GpModel::fit(X, y, rng);
  const double mean = y.mean();
  const double sd = std::sqrt((y.array() - mean).square().sum() / y.size());
  const Vectord y_std = (y.array() - mean) / sd;
  for (int probe = 0; probe < 30; ++probe) {
    const SeKernel k{std::exp(rng.uniform(-2.0, 2.0)),
                     std::exp(rng.uniform(std::log(0.01), std::log(10.0)))};
    const double lam2 = std::exp(rng.uniform(std::log(1e-8), std::log(1e-1)));
    const double probed = log_marginal_likelihood(X, y_std, k, lam2);
    CHECK(fitted.log_marginal_likelihood() >= probed - 1e-9);
  }
}

TEST_CASE("posterior variance never exceeds the prior variance") {
  RandomStream rng(707);
  const Matrixd X = random_inputs(9, 3, rng);
  const Vectord y = random_targets(9, rng);
  const SeKernel k{1.7, 0.3};
  const GpModel m = GpModel::make(X, y, k, 1e-6, false);
  for (int probe = 0; probe < 200; ++probe) {
    Vectord x(3);
    for (Index kk = 0; kk < 3; ++kk) x[kk] = rng.uniform();
    const auto [mu, sigma] = m.predict(x);
    CHECK(sigma * sigma <= k.signal_variance + 1e-10);
  }
}

TEST_CASE("adding a noise-free observation weakly shrinks sigma everywhere") {
  Matrixd X(4, 1);
  X << 0.1, 0.35, 0.6, 0.85;
  Vectord y(4);
  y << 0.3, -0.2, 0.1, 0.4;
  const SeKernel k{1.0, 0.2};
  const GpModel before = GpModel::make(X, y, k, 0.0, false);
  Matrixd X2(5, 1);
  X2 << 0.1, 0.35, 0.6, 0.85, 0.5;
  Vectord y2(5);
  y2 << 0.3, -0.2, 0.1, 0.4, 0.05;
  const GpModel after = GpModel::make(X2, y2, k, 0.0, false);
  for (int i = 0; i <= 100; ++i) {
    Vectord x(1);
    x << static_cast<double>(i) / 100.0;
    const double s_before = before.predict(x).second;
    const double s_after = after.predict(x).second;
    CHECK(s_after <= s_before + 1e-8);
  }
}

TEST_CASE("Cholesky factor reconstructs the regularized kernel matrix") {
  RandomStream rng(808);
  const Matrixd X = random_inputs(7, 2, rng);
  const Vectord y = random_targets(7, rng);
  const SeKernel k{1.1, 0.25};
  const double lam2 = 1e-3;
  const GpModel m = GpModel::make(X, y, k, lam2, false);
  Matrixd K = se_kernel_matrix(X, k);
  K.diagonal().array() += lam2 + m.jitter();
  const Matrixd recon = m.factor() * m.factor().transpose();
  CHECK((recon - K).norm() / K.norm() <= 1e-8);
}

TEST_CASE("kernel basics") {
  const SeKernel k{2.5, 0.7};
  Vectord a(2), b(2);
  a << 0.1, 0.4;
  b << 0.3, 0.9;
  CHECK(se_kernel(a, a, k) == k.signal_variance);
  CHECK(se_kernel(a, b, k) == se_kernel(b, a, k));
  CHECK(se_kernel(a, b, k) > 0.0);
  CHECK(se_kernel(a, b, k) <= k.signal_variance);
}
