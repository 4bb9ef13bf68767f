#include "bobench/acquisition.hpp"

#include <algorithm>
#include <iostream>
#include <limits>

namespace bobench {

namespace {

// child-stream tags inside one decision
constexpr std::uint64_t kCoinTag = 1;
constexpr std::uint64_t kInnerTag = 2;
constexpr std::uint64_t kSelectTag = 3;
constexpr std::uint64_t kBetaTag = 4;
constexpr std::uint64_t kExploreTag = 5;

}  // namespace

double beta_srinivas_t1(int n, double grid_size, double delta) {
  if (n < 1) throw std::invalid_argument("beta_srinivas_t1: n must be >= 1");
  if (grid_size < 1.0)
    throw std::invalid_argument("beta_srinivas_t1: grid_size must be >= 1");
  if (delta <= 0.0)
    throw std::invalid_argument("beta_srinivas_t1: delta must be positive");
  const double nn = static_cast<double>(n);
  return 2.0 * std::log(grid_size * nn * nn * M_PI * M_PI / (6.0 * delta));
}

double beta_srinivas_t2(int n, int d, double r, double a, double b,
                        double delta) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("beta_srinivas_t2: n and d must be >= 1");
  if (r <= 0.0 || a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("beta_srinivas_t2: r, a, b must be positive");
  if (delta <= 0.0)
    throw std::invalid_argument("beta_srinivas_t2: delta must be positive");
  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n);
  const double inner_log = std::log(4.0 * dd * a / delta);
  if (inner_log <= 0.0)
    throw std::invalid_argument(
        "beta_srinivas_t2: log(4 d a / delta) must be positive");
  const double arg = nn * nn * dd * b * r * std::sqrt(inner_log);
  if (arg <= 0.0)
    throw std::invalid_argument("beta_srinivas_t2: log argument <= 0");
  return 2.0 * std::log(2.0 * nn * nn * M_PI * M_PI / (3.0 * delta)) +
         2.0 * dd * std::log(arg);
}

double randomised_cb_shape(int n, double theta) {
  if (n < 1) throw std::invalid_argument("randomised_cb_shape: n must be >= 1");
  if (theta <= 0.0)
    throw std::invalid_argument("randomised_cb_shape: theta must be positive");
  const double nn = static_cast<double>(n);
  return std::log((nn * nn + 1.0) / std::sqrt(2.0 * M_PI)) /
         std::log1p(theta / 2.0);
}

double beta_randomised(int n, double theta, RandomStream& rng) {
  const double shape = randomised_cb_shape(n, theta);
  if (shape <= 0.0)
    throw std::domain_error(
        "beta_randomised: shape kappa(n) = " + std::to_string(shape) +
        " is not positive at n = " + std::to_string(n));
  return rng.gamma(shape, theta);
}

double pi_value(double mu, double sigma, double y_best) {
  if (sigma < 0.0) throw std::invalid_argument("pi_value: sigma must be >= 0");
  const double delta = y_best - mu;
  if (sigma == 0.0) return delta > 0.0 ? 1.0 : 0.0;
  return normal_cdf(delta / sigma);
}

double ei_value(double mu, double sigma, double y_best) {
  if (sigma < 0.0) throw std::invalid_argument("ei_value: sigma must be >= 0");
  if (sigma == 0.0) return 0.0;
  const double delta = y_best - mu;
  const double z = delta / sigma;
  return delta * normal_cdf(z) + sigma * normal_pdf(z);
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::cb_const: return "cb_const";
    case PolicyKind::cb_srinivas_t1: return "cb_srinivas_t1";
    case PolicyKind::cb_srinivas_t2: return "cb_srinivas_t2";
    case PolicyKind::cb_randomised: return "cb_randomised";
    case PolicyKind::eps_rs: return "eps_rs";
    case PolicyKind::eps_pf: return "eps_pf";
    case PolicyKind::pi: return "pi";
    case PolicyKind::ei: return "ei";
    case PolicyKind::pi_ei_alternating: return "pi_ei_alternating";
    case PolicyKind::pi_ei_switching: return "pi_ei_switching";
    case PolicyKind::mastering: return "mastering";
  }
  throw std::logic_error("to_string: bad PolicyKind");
}

PolicyKind policy_kind_from_string(const std::string& s) {
  for (PolicyKind k :
       {PolicyKind::cb_const, PolicyKind::cb_srinivas_t1,
        PolicyKind::cb_srinivas_t2, PolicyKind::cb_randomised,
        PolicyKind::eps_rs, PolicyKind::eps_pf, PolicyKind::pi, PolicyKind::ei,
        PolicyKind::pi_ei_alternating, PolicyKind::pi_ei_switching,
        PolicyKind::mastering}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown policy kind: " + s);
}

std::string to_string(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::exploit: return "exploit";
    case DecisionKind::explore: return "explore";
    case DecisionKind::cb: return "cb";
    case DecisionKind::random: return "random";
    case DecisionKind::pareto_random: return "pareto_random";
    case DecisionKind::pi: return "pi";
    case DecisionKind::ei: return "ei";
  }
  throw std::logic_error("to_string: bad DecisionKind");
}

DecisionKind decision_kind_from_string(const std::string& s) {
  for (DecisionKind k :
       {DecisionKind::exploit, DecisionKind::explore, DecisionKind::cb,
        DecisionKind::random, DecisionKind::pareto_random, DecisionKind::pi,
        DecisionKind::ei}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown decision kind: " + s);
}

void AcquisitionPolicy::validate() const {
  switch (kind) {
    case PolicyKind::cb_const:
      if (beta < 0.0) throw std::invalid_argument("cb_const: beta must be >= 0");
      break;
    case PolicyKind::cb_srinivas_t1:
      if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("cb_srinivas_t1: delta must be in (0,1)");
      if (grid_size < 1.0)
        throw std::invalid_argument("cb_srinivas_t1: grid_size must be >= 1");
      break;
    case PolicyKind::cb_srinivas_t2:
      if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("cb_srinivas_t2: delta must be in (0,1)");
      if (radius <= 0.0 || a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("cb_srinivas_t2: r, a, b must be positive");
      break;
    case PolicyKind::cb_randomised:
      if (theta <= 0.0)
        throw std::invalid_argument("cb_randomised: theta must be positive");
      break;
    case PolicyKind::eps_rs:
    case PolicyKind::eps_pf:
      if (epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("epsilon must be in [0,1]");
      break;
    case PolicyKind::pi:
    case PolicyKind::ei:
    case PolicyKind::pi_ei_alternating:
      break;
    case PolicyKind::pi_ei_switching:
      if (switch_fraction < 0.0 || switch_fraction > 1.0)
        throw std::invalid_argument("switch_fraction must be in [0,1]");
      break;
    case PolicyKind::mastering:
      if (!(neighborhood_width > 0.0 && neighborhood_width <= 1.0))
        throw std::invalid_argument("mastering: w must be in (0,1]");
      if (eta < 0)
        throw std::invalid_argument("mastering: eta must be >= 1 (or 0 = auto)");
      break;
  }
}

Decision decide_exploit(const GpModel& model, Index d,
                        const InnerConfig& inner, const RandomStream& rng) {
  RandomStream stream = rng.child(kInnerTag);
  const InnerResult res = minimize_over_cube(
      [&](const Vectord& x) { return model.predict_mean(x); }, d, inner,
      stream);
  return Decision{res.x, DecisionKind::exploit, res.value, std::nullopt};
}

namespace {

Decision cb_decision(const GpModel& model, Index d, double beta,
                     const InnerConfig& inner, const RandomStream& rng) {
  RandomStream stream = rng.child(kInnerTag);
  const InnerResult res = minimize_over_cube(
      [&](const Vectord& x) {
        const auto [mu, sigma] = model.predict(x);
        return lcb(mu, sigma, beta);
      },
      d, inner, stream);
  return Decision{res.x, DecisionKind::cb, res.value, beta};
}

Decision improvement_decision(const GpModel& model, const Dataset& data,
                              bool use_pi, const InnerConfig& inner,
                              const RandomStream& rng) {
  const double y_best = data.best_value();
  RandomStream stream = rng.child(kInnerTag);
  const InnerResult res = minimize_over_cube(
      [&](const Vectord& x) {
        const auto [mu, sigma] = model.predict(x);
        return use_pi ? -pi_value(mu, sigma, y_best)
                      : -ei_value(mu, sigma, y_best);
      },
      data.dim(), inner, stream);
  return Decision{res.x, use_pi ? DecisionKind::pi : DecisionKind::ei,
                  -res.value, std::nullopt};
}

Decision pareto_front_decision(const GpModel& model, const Dataset& data,
                               const InnerConfig& inner,
                               const RandomStream& rng) {
  // pool from the inner optimizer's mean sweep, scored in (mu, sigma)
  RandomStream stream = rng.child(kInnerTag);
  const InnerResult res = minimize_over_cube(
      [&](const Vectord& x) { return model.predict_mean(x); }, data.dim(),
      inner, stream);

  const size_t m = res.pool.size();
  std::vector<double> mu(m), sigma(m);
  for (size_t i = 0; i < m; ++i) {
    const auto [mi, si] = model.predict(res.pool[i].x);
    mu[i] = mi;
    sigma[i] = si;
  }
  // non-dominated under (minimize mu, maximize sigma)
  std::vector<size_t> front;
  for (size_t i = 0; i < m; ++i) {
    bool dominated = false;
    for (size_t j = 0; j < m && !dominated; ++j) {
      if (j == i) continue;
      if (mu[j] <= mu[i] && sigma[j] >= sigma[i] &&
          (mu[j] < mu[i] || sigma[j] > sigma[i]))
        dominated = true;
    }
    if (!dominated) front.push_back(i);
  }
  RandomStream pick = rng.child(kSelectTag);
  const size_t chosen = front[static_cast<size_t>(
      pick.below(static_cast<std::uint64_t>(front.size())))];
  return Decision{res.pool[chosen].x, DecisionKind::pareto_random,
                  std::numeric_limits<double>::quiet_NaN(), std::nullopt};
}

Decision random_decision(Index d, const RandomStream& rng) {
  RandomStream stream = rng.child(kSelectTag);
  Vectord x(d);
  for (Index k = 0; k < d; ++k) x[k] = stream.uniform();
  return Decision{std::move(x), DecisionKind::random,
                  std::numeric_limits<double>::quiet_NaN(), std::nullopt};
}

}  // namespace

Decision decide(const AcquisitionPolicy& policy, const GpModel& model,
                const Dataset& data, Index n, Index budget,
                const InnerConfig& inner, const RandomStream& rng) {
  policy.validate();
  const Index d = data.dim();
  const int step = static_cast<int>(n - data.n0) + 1;  // 1-based decision index

  switch (policy.kind) {
    case PolicyKind::cb_const:
      return cb_decision(model, d, policy.beta, inner, rng);
    case PolicyKind::cb_srinivas_t1:
      return cb_decision(model, d,
                         beta_srinivas_t1(step, policy.grid_size, policy.delta),
                         inner, rng);
    case PolicyKind::cb_srinivas_t2:
      return cb_decision(
          model, d,
          beta_srinivas_t2(step, static_cast<int>(d), policy.radius, policy.a,
                           policy.b, policy.delta),
          inner, rng);
    case PolicyKind::cb_randomised: {
      double shape = randomised_cb_shape(step, policy.theta);
      if (shape <= 0.0) {
        std::cerr << "[bobench] warning: randomised CB shape " << shape
                  << " at decision " << step << " clamped to 1e-3\n";
        shape = 1e-3;
      }
      RandomStream beta_stream = rng.child(kBetaTag);
      const double beta = beta_stream.gamma(shape, policy.theta);
      return cb_decision(model, d, beta, inner, rng);
    }
    case PolicyKind::eps_rs: {
      RandomStream coin = rng.child(kCoinTag);
      if (coin.uniform() < policy.epsilon) return random_decision(d, rng);
      return decide_exploit(model, d, inner, rng);
    }
    case PolicyKind::eps_pf: {
      RandomStream coin = rng.child(kCoinTag);
      if (coin.uniform() < policy.epsilon)
        return pareto_front_decision(model, data, inner, rng);
      return decide_exploit(model, d, inner, rng);
    }
    case PolicyKind::pi:
      return improvement_decision(model, data, true, inner, rng);
    case PolicyKind::ei:
      return improvement_decision(model, data, false, inner, rng);
    case PolicyKind::pi_ei_alternating: {
      const bool odd = (step % 2) == 1;
      const bool use_pi = policy.alternating_starts_with_pi ? odd : !odd;
      return improvement_decision(model, data, use_pi, inner, rng);
    }
    case PolicyKind::pi_ei_switching: {
      const bool use_ei =
          static_cast<double>(n) < policy.switch_fraction * static_cast<double>(budget);
      return improvement_decision(model, data, !use_ei, inner, rng);
    }
    case PolicyKind::mastering:
      throw std::invalid_argument(
          "decide: mastering policy requires decide_mastering");
  }
  throw std::logic_error("decide: bad PolicyKind");
}

Decision decide_mastering(const AcquisitionPolicy& policy, const GpModel& model,
                          const Dataset& data, const IdwField& idw,
                          const InnerConfig& inner, const RandomStream& rng,
                          MasteringInfo* info) {
  policy.validate();
  const Index d = data.dim();
  const Decision exploit = decide_exploit(model, d, inner, rng);

  const Vectord incumbent = data.incumbent();
  const double half = policy.neighborhood_width / 2.0;
  const bool inside =
      ((exploit.x - incumbent).cwiseAbs().array() <= half).all();
  int count = 0;
  for (Index i = 0; i < data.size(); ++i) {
    if (((data.X.row(i).transpose() - incumbent).cwiseAbs().array() <= half)
            .all())
      ++count;
  }
  const int eta = policy.eta > 0 ? policy.eta : 5 * static_cast<int>(d);
  if (info) {
    info->exploit_x = exploit.x;
    info->neighborhood_count = count;
    info->exploit_inside = inside;
  }

  if (inside && count >= eta) {
    RandomStream stream = rng.child(kExploreTag);
    const InnerResult res = minimize_over_cube(
        [&](const Vectord& x) { return -idw.z(x); }, d, inner, stream);
    return Decision{res.x, DecisionKind::explore, -res.value, std::nullopt};
  }
  return exploit;
}

}  // namespace bobench
