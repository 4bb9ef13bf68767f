#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bobench/acquisition.hpp"
#include "bobench/inner_opt.hpp"
#include "bobench/json_support.hpp"

namespace bobench {

struct ProblemSpec {
  std::string name;
  std::optional<int> d;  // only for the dimension-parametric functions
  double noise_sd = 0.0;
};

/// Experiment description: which problems, which policies, how many runs,
/// seeds and budgets. Budgets are multiples of the problem dimension.
struct ExperimentConfig {
  std::vector<ProblemSpec> problems;
  std::vector<AcquisitionPolicy> policies;
  int runs = 10;
  std::uint64_t master_seed = 815ULL;
  int n0_mult = 5;
  int n_mult = 20;
  int n1_mult = 15;
  int n2_mult = 5;
  InnerConfig inner;
  int fit_restarts = 10;
  int workers = 0;  // 0 -> hardware concurrency
  std::string out_dir = "results";

  /// All ten problems and the full policy battery.
  static ExperimentConfig profile(const std::string& name);  // desk | paper

  void validate() const;  // throws std::invalid_argument before any run

  json to_json() const;
  static ExperimentConfig from_json(const json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
};

/// Stable config fingerprint (FNV-1a over the canonical JSON dump).
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace bobench
