#include "bobench/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bobench/json_support.hpp"

namespace bobench {

json policy_to_json(const AcquisitionPolicy& p) {
  json j;
  j["kind"] = to_string(p.kind);
  if (!p.name.empty()) j["name"] = p.name;
  switch (p.kind) {
    case PolicyKind::cb_const:
      j["beta"] = p.beta;
      break;
    case PolicyKind::cb_srinivas_t1:
      j["delta"] = p.delta;
      j["grid_size"] = p.grid_size;
      break;
    case PolicyKind::cb_srinivas_t2:
      j["delta"] = p.delta;
      j["r"] = p.radius;
      j["a"] = p.a;
      j["b"] = p.b;
      break;
    case PolicyKind::cb_randomised:
      j["theta"] = p.theta;
      break;
    case PolicyKind::eps_rs:
    case PolicyKind::eps_pf:
      j["epsilon"] = p.epsilon;
      break;
    case PolicyKind::pi:
    case PolicyKind::ei:
      break;
    case PolicyKind::pi_ei_alternating:
      j["starts_with_pi"] = p.alternating_starts_with_pi;
      break;
    case PolicyKind::pi_ei_switching:
      j["switch_fraction"] = p.switch_fraction;
      break;
    case PolicyKind::mastering:
      j["w"] = p.neighborhood_width;
      j["eta"] = p.eta;
      break;
  }
  return j;
}

AcquisitionPolicy policy_from_json(const json& j) {
  AcquisitionPolicy p;
  p.kind = policy_kind_from_string(j.at("kind").get<std::string>());
  p.name = j.value("name", std::string{});
  p.beta = j.value("beta", p.beta);
  p.delta = j.value("delta", p.delta);
  p.grid_size = j.value("grid_size", p.grid_size);
  p.radius = j.value("r", p.radius);
  p.a = j.value("a", p.a);
  p.b = j.value("b", p.b);
  p.theta = j.value("theta", p.theta);
  p.epsilon = j.value("epsilon", p.epsilon);
  p.switch_fraction = j.value("switch_fraction", p.switch_fraction);
  p.alternating_starts_with_pi =
      j.value("starts_with_pi", p.alternating_starts_with_pi);
  p.neighborhood_width = j.value("w", p.neighborhood_width);
  p.eta = j.value("eta", p.eta);
  p.validate();
  return p;
}

namespace {

json header_record(const RunTrace& t) {
  json j;
  j["type"] = "header";
  j["schema"] = 1;
  j["problem"] = t.problem;
  j["policy"] = policy_to_json(t.policy);
  j["d"] = t.d;
  j["n0"] = t.n0;
  j["N"] = t.budget;
  j["N1"] = t.refining_start;
  j["noise_sd"] = t.noise_sd;
  j["master_seed"] = t.master_seed;
  j["init_seed"] = t.init_seed;
  j["run_seed"] = t.run_seed;
  j["run"] = t.run_index;
  return j;
}

json iteration_record(const IterationRecord& r) {
  json j;
  j["type"] = "iter";
  j["i"] = r.iteration;
  j["x"] = vector_to_json(r.x);
  j["y"] = r.y;
  j["kind"] = to_string(r.kind);
  if (std::isnan(r.acquisition_value))
    j["acq"] = nullptr;
  else
    j["acq"] = r.acquisition_value;
  if (r.beta_used) j["beta"] = *r.beta_used;
  j["gp"] = {{"sf2", r.signal_variance},
             {"ell", r.lengthscale},
             {"lam2", r.noise_variance}};
  j["ms"] = r.wall_ms;
  if (r.duplicate_resampled) j["dup"] = true;
  if (r.mastering_exploit_x) j["mx"] = vector_to_json(*r.mastering_exploit_x);
  if (r.mastering_neighborhood) j["mn"] = *r.mastering_neighborhood;
  if (r.mastering_inside.has_value()) j["mi"] = *r.mastering_inside;
  return j;
}

}  // namespace

void write_trace(const RunTrace& t, std::ostream& os) {
  os << header_record(t) << "\n";
  for (Index i = 0; i < t.n0; ++i) {
    json j;
    j["type"] = "init";
    j["i"] = static_cast<int>(i);
    j["x"] = vector_to_json(t.data.X.row(i).transpose());
    j["y"] = t.data.y[i];
    os << j << "\n";
  }
  for (const auto& rec : t.iterations) os << iteration_record(rec) << "\n";
  json s;
  s["type"] = "summary";
  s["best_x"] = vector_to_json(t.best_x);
  s["best_y"] = t.best_y;
  s["failed"] = t.failed;
  if (t.failed) s["reason"] = t.failure_reason;
  os << s << "\n";
}

void write_trace_file(const RunTrace& trace,
                      const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for write: " + path.string());
  write_trace(trace, os);
}

RunTrace read_trace(std::istream& is) {
  RunTrace t;
  bool have_header = false, have_summary = false;
  std::string line;
  std::vector<Vectord> xs;
  std::vector<double> ys;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      t.problem = j.at("problem").get<std::string>();
      t.policy = policy_from_json(j.at("policy"));
      t.d = j.at("d").get<int>();
      t.n0 = j.at("n0").get<int>();
      t.budget = j.at("N").get<int>();
      t.refining_start = j.at("N1").get<int>();
      t.noise_sd = j.at("noise_sd").get<double>();
      t.master_seed = j.at("master_seed").get<std::uint64_t>();
      t.init_seed = j.at("init_seed").get<std::uint64_t>();
      t.run_seed = j.at("run_seed").get<std::uint64_t>();
      t.run_index = j.at("run").get<int>();
      have_header = true;
    } else if (type == "init") {
      xs.push_back(vector_from_json(j.at("x")));
      ys.push_back(j.at("y").get<double>());
    } else if (type == "iter") {
      IterationRecord r;
      r.iteration = j.at("i").get<int>();
      r.x = vector_from_json(j.at("x"));
      r.y = j.at("y").get<double>();
      r.kind = decision_kind_from_string(j.at("kind").get<std::string>());
      r.acquisition_value = j.at("acq").is_null()
                                ? std::numeric_limits<double>::quiet_NaN()
                                : j.at("acq").get<double>();
      if (j.contains("beta")) r.beta_used = j.at("beta").get<double>();
      r.signal_variance = j.at("gp").at("sf2").get<double>();
      r.lengthscale = j.at("gp").at("ell").get<double>();
      r.noise_variance = j.at("gp").at("lam2").get<double>();
      r.wall_ms = j.at("ms").get<double>();
      r.duplicate_resampled = j.value("dup", false);
      if (j.contains("mx")) r.mastering_exploit_x = vector_from_json(j.at("mx"));
      if (j.contains("mn")) r.mastering_neighborhood = j.at("mn").get<int>();
      if (j.contains("mi")) r.mastering_inside = j.at("mi").get<bool>();
      xs.push_back(r.x);
      ys.push_back(r.y);
      t.iterations.push_back(std::move(r));
    } else if (type == "summary") {
      t.best_x = vector_from_json(j.at("best_x"));
      t.best_y = j.at("best_y").get<double>();
      t.failed = j.at("failed").get<bool>();
      t.failure_reason = j.value("reason", std::string{});
      have_summary = true;
    } else {
      throw std::runtime_error("trace: unknown record type " + type);
    }
  }
  if (!have_header) throw std::runtime_error("trace: missing header record");
  if (!have_summary) throw std::runtime_error("trace: missing summary record");
  if (xs.empty()) throw std::runtime_error("trace: no evaluations");
  t.data.n0 = t.n0;
  t.data.X.resize(static_cast<Index>(xs.size()), static_cast<Index>(xs[0].size()));
  t.data.y.resize(static_cast<Index>(ys.size()));
  for (size_t i = 0; i < xs.size(); ++i) {
    t.data.X.row(static_cast<Index>(i)) = xs[i].transpose();
    t.data.y[static_cast<Index>(i)] = ys[i];
  }
  double running = t.data.y.head(t.n0).minCoeff();
  for (Index i = t.n0; i < t.data.size(); ++i) {
    running = std::min(running, t.data.y[i]);
    t.incumbent_values.push_back(running);
  }
  return t;
}

RunTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open trace: " + path.string());
  return read_trace(is);
}

bool trace_file_complete(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) return false;
  std::string line, last;
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  if (last.empty()) return false;
  try {
    const json j = json::parse(last);
    return j.value("type", std::string{}) == "summary";
  } catch (...) {
    return false;
  }
}

bool traces_equivalent(const RunTrace& a, const RunTrace& b) {
  if (a.problem != b.problem || a.d != b.d || a.n0 != b.n0 ||
      a.budget != b.budget || a.refining_start != b.refining_start ||
      a.noise_sd != b.noise_sd || a.init_seed != b.init_seed ||
      a.run_seed != b.run_seed || a.failed != b.failed)
    return false;
  if (a.data.X != b.data.X || a.data.y != b.data.y) return false;
  if (a.iterations.size() != b.iterations.size()) return false;
  for (size_t i = 0; i < a.iterations.size(); ++i) {
    const auto& ra = a.iterations[i];
    const auto& rb = b.iterations[i];
    const bool acq_equal =
        (std::isnan(ra.acquisition_value) && std::isnan(rb.acquisition_value)) ||
        ra.acquisition_value == rb.acquisition_value;
    if (ra.iteration != rb.iteration || ra.x != rb.x || ra.y != rb.y ||
        ra.kind != rb.kind || !acq_equal || ra.beta_used != rb.beta_used ||
        ra.signal_variance != rb.signal_variance ||
        ra.lengthscale != rb.lengthscale ||
        ra.noise_variance != rb.noise_variance ||
        ra.duplicate_resampled != rb.duplicate_resampled)
      return false;
  }
  return true;
}

}  // namespace bobench
