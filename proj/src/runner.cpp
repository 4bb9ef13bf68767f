#include "bobench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "bobench/sampling.hpp"
#include "bobench/testbed.hpp"
#include "bobench/trace_io.hpp"

namespace bobench {

namespace fs = std::filesystem;

namespace {

std::string run_file_name(int run) {
  std::ostringstream os;
  os << "run_" << std::setw(3) << std::setfill('0') << run << ".jsonl";
  return os.str();
}

EngineConfig engine_config(const ExperimentConfig& cfg) {
  EngineConfig ec;
  ec.inner = cfg.inner;
  ec.fit.restarts = cfg.fit_restarts;
  return ec;
}

void atomic_write_trace(const RunTrace& trace, const fs::path& path) {
  const fs::path tmp = path.string() + ".tmp";
  write_trace_file(trace, tmp);
  fs::rename(tmp, path);
}

struct Quartiles {
  double q1 = 0.0, median = 0.0, q3 = 0.0;
};

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

Quartiles quartiles(const std::vector<double>& v) {
  return {quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75)};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void write_manifest(const ExperimentConfig& cfg, const fs::path& out_dir) {
  json manifest;
  manifest["format"] = "bobench-bundle";
  manifest["version"] = 1;
  manifest["config"] = cfg.to_json();
  manifest["config_hash"] = config_hash(cfg);
  manifest["problems"] = json::array();
  for (const auto& ps : cfg.problems) {
    const TestProblem p = make_problem(ps.name, ps.d, ps.noise_sd);
    json pj;
    pj["name"] = p.name;
    pj["d"] = static_cast<int>(p.dim());
    pj["lower"] = vector_to_json(p.space.lower);
    pj["upper"] = vector_to_json(p.space.upper);
    pj["y_star"] = p.y_star;
    pj["noise_sd"] = p.noise_sd;
    manifest["problems"].push_back(pj);
  }
  const fs::path tmp = out_dir / "manifest.json.tmp";
  std::ofstream os(tmp);
  os << manifest.dump(2) << "\n";
  os.close();
  fs::rename(tmp, out_dir / "manifest.json");
}

}  // namespace

fs::path trace_path(const fs::path& out_dir, const std::string& problem,
                    const std::string& policy_label, int run) {
  return out_dir / problem / policy_label / run_file_name(run);
}

ExperimentConfig load_bundle_config(const fs::path& out_dir) {
  std::ifstream is(out_dir / "manifest.json");
  if (!is)
    throw std::runtime_error("no manifest.json in " + out_dir.string());
  json manifest;
  is >> manifest;
  ExperimentConfig cfg = ExperimentConfig::from_json(manifest.at("config"));
  cfg.out_dir = out_dir.string();
  return cfg;
}

RunTrace execute_run(const ExperimentConfig& cfg, const TestProblem& problem,
                     const AcquisitionPolicy& policy, int run) {
  const int d = static_cast<int>(problem.dim());
  const Index n0 = cfg.n0_mult * d;
  const Index N = cfg.n_mult * d;

  RandomStream init_rng(derive_init_seed(cfg.master_seed, problem.name, run));
  RandomStream run_rng(
      derive_run_seed(cfg.master_seed, problem.name, policy.label(), run));
  RandomStream design_rng = init_rng.child(0);
  const Design init = lhs(n0, d, design_rng);

  const EngineConfig ec = engine_config(cfg);
  RunTrace trace =
      policy.kind == PolicyKind::mastering
          ? run_mastering(problem, policy, cfg.n1_mult * d, cfg.n2_mult * d,
                          init, init_rng, run_rng, ec)
          : run_basic(problem, policy, N, init, init_rng, run_rng, ec);
  trace.master_seed = cfg.master_seed;
  trace.run_index = run;
  return trace;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                std::ostream& log) {
  cfg.validate();
  ExperimentResult result;
  result.out_dir = cfg.out_dir;
  fs::create_directories(result.out_dir);
  write_manifest(cfg, result.out_dir);

  struct Job {
    ProblemSpec problem;
    AcquisitionPolicy policy;
    int run;
  };
  std::vector<Job> jobs;
  for (const auto& ps : cfg.problems) {
    for (const auto& policy : cfg.policies) {
      fs::create_directories(result.out_dir / ps.name / policy.label());
      for (int run = 0; run < cfg.runs; ++run)
        jobs.push_back({ps, policy, run});
    }
  }

  std::atomic<size_t> next{0};
  std::atomic<int> completed{0}, skipped{0}, failed{0};
  std::mutex log_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      const fs::path path = trace_path(result.out_dir, job.problem.name,
                                       job.policy.label(), job.run);
      if (trace_file_complete(path)) {
        skipped.fetch_add(1);
        continue;
      }
      try {
        const TestProblem problem =
            make_problem(job.problem.name, job.problem.d, job.problem.noise_sd);
        const RunTrace trace = execute_run(cfg, problem, job.policy, job.run);
        atomic_write_trace(trace, path);
        if (trace.failed) {
          failed.fetch_add(1);
          std::lock_guard<std::mutex> lock(log_mutex);
          log << "FAILED " << job.problem.name << "/" << job.policy.label()
              << "/run " << job.run << ": " << trace.failure_reason << "\n";
        } else {
          completed.fetch_add(1);
        }
      } catch (const std::exception& e) {
        failed.fetch_add(1);
        std::lock_guard<std::mutex> lock(log_mutex);
        log << "ERROR " << job.problem.name << "/" << job.policy.label()
            << "/run " << job.run << ": " << e.what() << "\n";
      }
    }
  };

  const int n_workers =
      cfg.workers > 0
          ? cfg.workers
          : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  result.completed = completed.load();
  result.skipped = skipped.load();
  result.failed = failed.load();
  log << "runs: " << result.completed << " completed, " << result.skipped
      << " skipped, " << result.failed << " failed\n";

  write_summaries(cfg, result.out_dir);
  return result;
}

std::vector<std::vector<PolicySummary>> write_summaries(
    const ExperimentConfig& cfg, const fs::path& out_dir) {
  std::vector<std::vector<PolicySummary>> all;
  for (const auto& ps : cfg.problems) {
    const TestProblem problem = make_problem(ps.name, ps.d, ps.noise_sd);
    std::vector<PolicySummary> summaries;
    for (const auto& policy : cfg.policies) {
      PolicySummary s;
      s.policy = policy.label();
      for (int run = 0; run < cfg.runs; ++run) {
        const fs::path path = trace_path(out_dir, ps.name, s.policy, run);
        if (!fs::exists(path))
          throw std::runtime_error("missing trace: " + path.string());
        const RunTrace trace = read_trace_file(path);
        const GapCurve curve = gap_curve(trace, problem.y_star);
        s.gap_curves.push_back(curve.values);
        s.final_gaps.push_back(curve.values.back());
        s.discrepancies.push_back(l2_discrepancy(trace.data.X));
        ++s.runs;
      }
      const size_t len = s.gap_curves.front().size();
      s.mean_gap_curve.assign(len, 0.0);
      for (const auto& c : s.gap_curves)
        for (size_t i = 0; i < len; ++i) s.mean_gap_curve[i] += c[i];
      for (auto& v : s.mean_gap_curve) v /= static_cast<double>(s.runs);
      s.a_gap = a_gap(s.mean_gap_curve);
      s.d_l2_mean = mean_of(s.discrepancies);
      summaries.push_back(std::move(s));
    }

    std::vector<ParetoPoint> points;
    for (const auto& s : summaries)
      points.push_back({s.policy, s.a_gap, s.d_l2_mean, false});
    annotate_dominance(points);
    for (size_t i = 0; i < summaries.size(); ++i)
      summaries[i].dominated = points[i].dominated;

    const fs::path tmp = out_dir / ps.name / "summary.csv.tmp";
    std::ofstream os(tmp);
    os << std::setprecision(17);
    os << "policy,runs,a_gap,final_gap_mean,final_gap_q1,final_gap_median,"
          "final_gap_q3,d_l2_mean,d_l2_q1,d_l2_median,d_l2_q3,dominated\n";
    for (const auto& s : summaries) {
      const Quartiles fg = quartiles(s.final_gaps);
      const Quartiles dq = quartiles(s.discrepancies);
      os << s.policy << "," << s.runs << "," << s.a_gap << ","
         << mean_of(s.final_gaps) << "," << fg.q1 << "," << fg.median << ","
         << fg.q3 << "," << s.d_l2_mean << "," << dq.q1 << "," << dq.median
         << "," << dq.q3 << "," << (s.dominated ? 1 : 0) << "\n";
    }
    os.close();
    fs::rename(tmp, out_dir / ps.name / "summary.csv");
    all.push_back(std::move(summaries));
  }
  return all;
}

void emit_plots(const ExperimentConfig& cfg, const fs::path& out_dir,
                std::ostream& log) {
  // fail early, listing every missing run
  std::vector<std::string> missing;
  for (const auto& ps : cfg.problems)
    for (const auto& policy : cfg.policies)
      for (int run = 0; run < cfg.runs; ++run) {
        const fs::path path = trace_path(out_dir, ps.name, policy.label(), run);
        if (!trace_file_complete(path)) missing.push_back(path.string());
      }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "incomplete bundle, missing " << missing.size() << " run(s):";
    for (const auto& m : missing) os << "\n  " << m;
    throw std::runtime_error(os.str());
  }

  const auto all = write_summaries(cfg, out_dir);
  for (size_t pi = 0; pi < cfg.problems.size(); ++pi) {
    const auto& ps = cfg.problems[pi];
    const auto& summaries = all[pi];
    const fs::path dir = out_dir / ps.name / "plots";
    fs::create_directories(dir);

    {
      const TestProblem problem = make_problem(ps.name, ps.d, ps.noise_sd);
      const int n0 = cfg.n0_mult * static_cast<int>(problem.dim());
      std::ofstream os(dir / "gap_mean.csv");
      os << std::setprecision(17);
      os << "iteration";
      for (const auto& s : summaries) os << "," << s.policy;
      os << "\n";
      const size_t len = summaries.front().mean_gap_curve.size();
      for (size_t i = 0; i < len; ++i) {
        os << (n0 + 1 + static_cast<int>(i));
        for (const auto& s : summaries) os << "," << s.mean_gap_curve[i];
        os << "\n";
      }
    }
    {
      std::ofstream os(dir / "discrepancy.csv");
      os << std::setprecision(17);
      os << "policy,run,d_l2\n";
      for (const auto& s : summaries)
        for (size_t r = 0; r < s.discrepancies.size(); ++r)
          os << s.policy << "," << r << "," << s.discrepancies[r] << "\n";
    }
    {
      std::ofstream os(dir / "discrepancy_summary.csv");
      os << std::setprecision(17);
      os << "policy,mean,q1,median,q3\n";
      for (const auto& s : summaries) {
        const Quartiles q = quartiles(s.discrepancies);
        os << s.policy << "," << mean_of(s.discrepancies) << "," << q.q1 << ","
           << q.median << "," << q.q3 << "\n";
      }
    }
    {
      std::ofstream os(dir / "pareto.csv");
      os << std::setprecision(17);
      os << "policy,a_gap,d_l2_mean,dominated\n";
      for (const auto& s : summaries)
        os << s.policy << "," << s.a_gap << "," << s.d_l2_mean << ","
           << (s.dominated ? 1 : 0) << "\n";
    }
    log << "plots: " << (out_dir / ps.name / "plots").string() << "\n";
  }
}

ReplayReport replay_trace(const fs::path& trace_file) {
  ReplayReport report;
  const RunTrace trace = read_trace_file(trace_file);
  if (trace.noise_sd != 0.0) {
    report.noisy = true;
    report.status = "noisy run: replay audit requires noise_sd = 0";
    return report;
  }
  const TestProblem problem = make_problem(trace.problem, trace.d);
  RandomStream dummy(0);
  report.max_abs_deviation = 0.0;
  for (Index i = 0; i < trace.data.size(); ++i) {
    const Vectord x_orig =
        problem.space.from_unit(trace.data.X.row(i).transpose());
    const double expected = evaluate(problem, x_orig, dummy);
    const double dev = std::abs(expected - trace.data.y[i]);
    if (dev > report.max_abs_deviation) {
      report.max_abs_deviation = dev;
      report.worst_row = static_cast<int>(i);
    }
    ++report.n_checked;
  }
  if (report.max_abs_deviation > 1e-9) {
    report.ok = false;
    std::ostringstream os;
    os << "integrity failure at row " << report.worst_row << ": deviation "
       << report.max_abs_deviation;
    report.status = os.str();
  } else {
    report.ok = true;
    report.status = "ok";
  }
  return report;
}

}  // namespace bobench
