#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "bobench/dataset.hpp"
#include "bobench/gp.hpp"
#include "bobench/idw.hpp"
#include "bobench/inner_opt.hpp"
#include "bobench/rng.hpp"
#include "bobench/types.hpp"

namespace bobench {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }
inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

/// Lower confidence bound mu - sqrt(beta) * sigma (the optimistic estimate
/// under the minimization convention).
template <typename T>
T lcb(T mu, T sigma, T beta) {
  if (beta < T(0)) throw std::invalid_argument("lcb: beta must be >= 0");
  return mu - std::sqrt(beta) * sigma;
}

/// Finite-domain confidence-bound schedule: 2 log(|G| n^2 pi^2 / (6 delta)).
double beta_srinivas_t1(int n, double grid_size, double delta);

/// Continuous-domain confidence-bound schedule:
/// 2 log(2 n^2 pi^2 / (3 delta)) + 2 d log(n^2 d b r sqrt(log(4 d a / delta))).
double beta_srinivas_t2(int n, int d, double r, double a, double b,
                        double delta);

/// Shape parameter kappa^(n) = log((n^2+1)/sqrt(2 pi)) / log(1 + theta/2)
/// of the randomised confidence-bound schedule. May be negative at small n.
double randomised_cb_shape(int n, double theta);

/// One Gamma(kappa^(n), theta) draw. Throws when the shape comes out
/// non-positive (which the printed formula produces at n = 1).
double beta_randomised(int n, double theta, RandomStream& rng);

/// Probability of improvement Phi(delta / sigma) with delta = y_best - mu;
/// at sigma = 0 the continuity limit: 1 if delta > 0 else 0.
double pi_value(double mu, double sigma, double y_best);

/// Expected improvement delta Phi(delta/sigma) + sigma phi(delta/sigma);
/// 0 at sigma = 0.
double ei_value(double mu, double sigma, double y_best);

enum class PolicyKind {
  cb_const,
  cb_srinivas_t1,
  cb_srinivas_t2,
  cb_randomised,
  eps_rs,
  eps_pf,
  pi,
  ei,
  pi_ei_alternating,
  pi_ei_switching,
  mastering,
};

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& s);

/// One of the ten next-point strategies plus its parameters. Unused
/// parameters are ignored by validate().
struct AcquisitionPolicy {
  PolicyKind kind = PolicyKind::cb_const;
  std::string name;  // label for traces and output dirs; empty -> kind string

  double beta = 1.0;           // cb_const
  double delta = 0.1;          // srinivas schedules
  double grid_size = 1e4;      // |G|, srinivas theorem 1
  double radius = 1.0;         // r, srinivas theorem 2
  double a = 1.0, b = 1.0;     // srinivas theorem 2 constants
  double theta = 1.0;          // randomised cb scale
  double epsilon = 0.1;        // eps_rs / eps_pf
  double switch_fraction = 0.5;
  bool alternating_starts_with_pi = true;
  double neighborhood_width = 0.1;  // w, mastering
  int eta = 0;                      // mastering threshold; 0 -> 5 * d

  std::string label() const { return name.empty() ? to_string(kind) : name; }
  void validate() const;  // throws std::invalid_argument
};

enum class DecisionKind { exploit, explore, cb, random, pareto_random, pi, ei };

std::string to_string(DecisionKind kind);
DecisionKind decision_kind_from_string(const std::string& s);

struct Decision {
  Vectord x;  // unit cube
  DecisionKind kind = DecisionKind::exploit;
  double acquisition_value = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> beta_used;
};

/// Branch bookkeeping of one mastering decision, recorded into traces so the
/// branch condition can be recomputed afterwards.
struct MasteringInfo {
  Vectord exploit_x;
  int neighborhood_count = 0;
  bool exploit_inside = false;
};

/// Next point for the nine baseline policies. n is the current dataset size
/// (iteration counter), budget the total evaluation count N.
Decision decide(const AcquisitionPolicy& policy, const GpModel& model,
                const Dataset& data, Index n, Index budget,
                const InnerConfig& inner, const RandomStream& rng);

/// Pure exploitative decision: inner-optimize the GP posterior mean.
Decision decide_exploit(const GpModel& model, Index d,
                        const InnerConfig& inner, const RandomStream& rng);

/// Next point for the mastering policy's main phase: exploit the GP mean
/// unless the exploitative candidate lands in the incumbent's neighborhood
/// H_w(x+) and that neighborhood already holds at least eta evaluated points,
/// in which case the point of maximum IDW uncertainty is taken instead.
Decision decide_mastering(const AcquisitionPolicy& policy, const GpModel& model,
                          const Dataset& data, const IdwField& idw,
                          const InnerConfig& inner, const RandomStream& rng,
                          MasteringInfo* info = nullptr);

}  // namespace bobench
