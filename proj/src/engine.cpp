#include "bobench/engine.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace bobench {

namespace {

// per-iteration child tags off the run stream
constexpr std::uint64_t kIterBase = 0x10000;
constexpr std::uint64_t kFitTag = 8;
constexpr std::uint64_t kDupTag = 7;
constexpr std::uint64_t kNoiseTag = 9;
constexpr std::uint64_t kInitNoiseTag = 1;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

Dataset evaluate_initial(const TestProblem& problem, const Design& init,
                         RandomStream& init_rng) {
  Dataset data;
  data.X = init.points;
  data.n0 = init.n();
  data.y.resize(init.n());
  RandomStream noise = init_rng.child(kInitNoiseTag);
  for (Index i = 0; i < init.n(); ++i) {
    const Vectord x = problem.space.from_unit(init.points.row(i).transpose());
    data.y[i] = evaluate(problem, x, noise);
  }
  return data;
}

// Resample a decision that collides with an existing point.
bool apply_duplicate_guard(const Dataset& data, double tol, RandomStream& rng,
                           Vectord& x) {
  double min_d2 = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < data.size(); ++i)
    min_d2 = std::min(min_d2,
                      (data.X.row(i).transpose() - x).squaredNorm());
  if (min_d2 >= tol * tol) return false;
  for (Index k = 0; k < x.size(); ++k) x[k] = rng.uniform();
  return true;
}

void run_loop(const TestProblem& problem, RunTrace& trace,
              RandomStream& run_rng, const EngineConfig& cfg, Index stop_n,
              bool mastering_phase) {
  while (trace.data.size() < stop_n) {
    const Index n = trace.data.size();
    const double t0 = now_ms();
    RandomStream iter_rng = run_rng.child(kIterBase + static_cast<std::uint64_t>(n));

    RandomStream fit_rng = iter_rng.child(kFitTag);
    const GpModel model = GpModel::fit(trace.data.X, trace.data.y, fit_rng, cfg.fit);

    Decision decision;
    MasteringInfo info;
    if (mastering_phase) {
      const IdwField idw(trace.data.X);
      decision = decide_mastering(trace.policy, model, trace.data, idw,
                                  cfg.inner, iter_rng, &info);
    } else if (trace.policy.kind == PolicyKind::mastering) {
      // refining phase: pure exploitation of the GP mean
      decision = decide_exploit(model, trace.data.dim(), cfg.inner, iter_rng);
    } else {
      decision = decide(trace.policy, model, trace.data, n, trace.budget,
                        cfg.inner, iter_rng);
    }

    Vectord x = decision.x;
    RandomStream dup_rng = iter_rng.child(kDupTag);
    const bool resampled =
        apply_duplicate_guard(trace.data, cfg.duplicate_tolerance, dup_rng, x);

    RandomStream noise_rng = iter_rng.child(kNoiseTag);
    const Vectord x_orig = problem.space.from_unit(x);
    const double y = evaluate(problem, x_orig, noise_rng);
    trace.data.append(x, y);

    IterationRecord rec;
    rec.iteration = static_cast<int>(n);
    rec.x = x;
    rec.y = y;
    rec.kind = decision.kind;
    rec.acquisition_value = decision.acquisition_value;
    rec.beta_used = decision.beta_used;
    rec.signal_variance = model.kernel().signal_variance;
    rec.lengthscale = model.kernel().lengthscale;
    rec.noise_variance = model.noise_variance();
    rec.duplicate_resampled = resampled;
    if (mastering_phase) {
      rec.mastering_exploit_x = info.exploit_x;
      rec.mastering_neighborhood = info.neighborhood_count;
      rec.mastering_inside = info.exploit_inside;
    }
    rec.wall_ms = now_ms() - t0;
    trace.iterations.push_back(std::move(rec));
    trace.incumbent_values.push_back(trace.data.best_value());
  }
}

RunTrace init_trace(const TestProblem& problem, const AcquisitionPolicy& policy,
                    Index budget, Index refining_start, const Design& init,
                    RandomStream& init_rng, RandomStream& run_rng) {
  policy.validate();
  if (init.d() != problem.dim())
    throw std::invalid_argument("run: init design dimension mismatch");
  if (budget < init.n())
    throw std::invalid_argument("run: budget smaller than the initial design");
  RunTrace trace;
  trace.problem = problem.name;
  trace.policy = policy;
  trace.d = static_cast<int>(problem.dim());
  trace.n0 = static_cast<int>(init.n());
  trace.budget = static_cast<int>(budget);
  trace.refining_start = static_cast<int>(refining_start);
  trace.noise_sd = problem.noise_sd;
  trace.init_seed = init_rng.seed();
  trace.run_seed = run_rng.seed();
  trace.data = evaluate_initial(problem, init, init_rng);
  return trace;
}

void finalize_trace(RunTrace& trace) {
  const Index i = trace.data.incumbent_index();
  trace.best_x = trace.data.X.row(i).transpose();
  trace.best_y = trace.data.y[i];
}

}  // namespace

RunTrace run_basic(const TestProblem& problem, const AcquisitionPolicy& policy,
                   Index budget, const Design& init, RandomStream& init_rng,
                   RandomStream& run_rng, const EngineConfig& cfg) {
  if (policy.kind == PolicyKind::mastering)
    throw std::invalid_argument("run_basic: use run_mastering");
  RunTrace trace =
      init_trace(problem, policy, budget, budget, init, init_rng, run_rng);
  try {
    run_loop(problem, trace, run_rng, cfg, budget, false);
  } catch (const std::exception& e) {
    trace.failed = true;
    trace.failure_reason = e.what();
  }
  finalize_trace(trace);
  return trace;
}

RunTrace run_mastering(const TestProblem& problem,
                       const AcquisitionPolicy& policy, Index n1, Index n2,
                       const Design& init, RandomStream& init_rng,
                       RandomStream& run_rng, const EngineConfig& cfg) {
  if (policy.kind != PolicyKind::mastering)
    throw std::invalid_argument("run_mastering: policy must be mastering");
  if (n1 <= init.n())
    throw std::invalid_argument("run_mastering: need N1 > n0");
  if (n2 < 0) throw std::invalid_argument("run_mastering: need N2 >= 0");
  RunTrace trace =
      init_trace(problem, policy, n1 + n2, n1, init, init_rng, run_rng);
  try {
    run_loop(problem, trace, run_rng, cfg, n1, true);
    run_loop(problem, trace, run_rng, cfg, n1 + n2, false);
  } catch (const std::exception& e) {
    trace.failed = true;
    trace.failure_reason = e.what();
  }
  finalize_trace(trace);
  return trace;
}

}  // namespace bobench
