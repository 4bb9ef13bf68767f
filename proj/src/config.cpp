#include "bobench/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bobench/testbed.hpp"

namespace bobench {

ExperimentConfig ExperimentConfig::profile(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "desk") {
    cfg.runs = 10;
  } else if (name == "paper") {
    cfg.runs = 100;
  } else {
    throw std::invalid_argument("unknown profile: " + name +
                                " (expected desk or paper)");
  }
  for (const auto& p : catalog()) cfg.problems.push_back({p.name, {}, 0.0});

  auto add = [&](PolicyKind kind) {
    AcquisitionPolicy p;
    p.kind = kind;
    cfg.policies.push_back(p);
  };
  add(PolicyKind::cb_const);
  add(PolicyKind::cb_srinivas_t1);
  add(PolicyKind::cb_srinivas_t2);
  add(PolicyKind::cb_randomised);
  add(PolicyKind::eps_rs);
  add(PolicyKind::eps_pf);
  add(PolicyKind::pi);
  add(PolicyKind::ei);
  add(PolicyKind::pi_ei_alternating);
  add(PolicyKind::pi_ei_switching);
  add(PolicyKind::mastering);
  return cfg;
}

void ExperimentConfig::validate() const {
  if (problems.empty()) throw std::invalid_argument("config: no problems");
  if (policies.empty()) throw std::invalid_argument("config: no policies");
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (n0_mult < 1 || n_mult <= n0_mult)
    throw std::invalid_argument("config: need 1 <= n0_mult < n_mult");

  bool has_mastering = false;
  std::set<std::string> labels;
  for (const auto& p : policies) {
    p.validate();
    if (!labels.insert(p.label()).second)
      throw std::invalid_argument("config: duplicate policy label " +
                                  p.label());
    if (p.kind == PolicyKind::mastering) has_mastering = true;
  }
  if (has_mastering && n1_mult + n2_mult != n_mult)
    throw std::invalid_argument(
        "config: N1_mult + N2_mult must equal N_mult for mastering runs");
  if (has_mastering && n1_mult <= n0_mult)
    throw std::invalid_argument("config: need N1_mult > n0_mult");

  for (const auto& ps : problems)
    make_problem(ps.name, ps.d, ps.noise_sd);  // throws on unknown name
}

json ExperimentConfig::to_json() const {
  json j;
  j["runs"] = runs;
  j["master_seed"] = master_seed;
  j["budgets"] = {{"n0_mult", n0_mult},
                  {"N_mult", n_mult},
                  {"N1_mult", n1_mult},
                  {"N2_mult", n2_mult}};
  j["inner"] = {{"n_candidates", inner.n_candidates},
                {"n_refine", inner.n_refine},
                {"max_local_steps", inner.max_local_steps},
                {"tolerance", inner.tolerance}};
  j["fit_restarts"] = fit_restarts;
  j["workers"] = workers;
  j["out_dir"] = out_dir;
  j["problems"] = json::array();
  for (const auto& p : problems) {
    json pj;
    pj["name"] = p.name;
    if (p.d) pj["d"] = *p.d;
    if (p.noise_sd != 0.0) pj["noise_sd"] = p.noise_sd;
    j["problems"].push_back(pj);
  }
  j["policies"] = json::array();
  for (const auto& p : policies) j["policies"].push_back(policy_to_json(p));
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.runs = j.value("runs", cfg.runs);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  if (j.contains("budgets")) {
    const auto& b = j.at("budgets");
    cfg.n0_mult = b.value("n0_mult", cfg.n0_mult);
    cfg.n_mult = b.value("N_mult", cfg.n_mult);
    cfg.n1_mult = b.value("N1_mult", cfg.n1_mult);
    cfg.n2_mult = b.value("N2_mult", cfg.n2_mult);
  }
  if (j.contains("inner")) {
    const auto& in = j.at("inner");
    cfg.inner.n_candidates = in.value("n_candidates", cfg.inner.n_candidates);
    cfg.inner.n_refine = in.value("n_refine", cfg.inner.n_refine);
    cfg.inner.max_local_steps =
        in.value("max_local_steps", cfg.inner.max_local_steps);
    cfg.inner.tolerance = in.value("tolerance", cfg.inner.tolerance);
  }
  cfg.fit_restarts = j.value("fit_restarts", cfg.fit_restarts);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  if (j.contains("problems")) {
    cfg.problems.clear();
    for (const auto& pj : j.at("problems")) {
      ProblemSpec ps;
      ps.name = pj.at("name").get<std::string>();
      if (pj.contains("d")) ps.d = pj.at("d").get<int>();
      ps.noise_sd = pj.value("noise_sd", 0.0);
      cfg.problems.push_back(ps);
    }
  }
  if (j.contains("policies")) {
    cfg.policies.clear();
    for (const auto& pj : j.at("policies"))
      cfg.policies.push_back(policy_from_json(pj));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path.string());
  json j;
  is >> j;
  // a config file extends a named profile (desk unless stated otherwise)
  ExperimentConfig base = profile(j.value("profile", "desk"));
  json merged = base.to_json();
  merged.merge_patch(j);
  merged.erase("profile");
  return from_json(merged);
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string dump = cfg.to_json().dump();
  std::ostringstream os;
  os << std::hex << detail::hash_str(dump);
  return os.str();
}

}  // namespace bobench
