#include "bobench/inner_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bobench/local_search.hpp"
#include "bobench/sampling.hpp"

namespace bobench {

namespace {

std::string format_point(const Vectord& x) {
  std::ostringstream os;
  os << "(" << x.transpose() << ")";
  return os.str();
}

}  // namespace

InnerResult minimize_over_cube(
    const std::function<double(const Vectord&)>& score, Index d,
    const InnerConfig& cfg, RandomStream& rng) {
  if (d < 1) throw std::invalid_argument("minimize_over_cube: d must be >= 1");
  const int n_cand = cfg.n_candidates > 0 ? cfg.n_candidates
                                          : 100 * static_cast<int>(d);
  const int n_refine = std::min(cfg.n_refine, n_cand);

  auto checked = [&](const Vectord& x) {
    const double v = score(x);
    if (std::isnan(v))
      throw std::runtime_error("inner optimizer: score is NaN at " +
                               format_point(x));
    return v;
  };

  InnerResult result;
  result.pool.reserve(static_cast<size_t>(n_cand + n_refine));

  const Design cands = lhs(n_cand, d, rng);
  for (Index i = 0; i < cands.n(); ++i) {
    Vectord x = cands.points.row(i).transpose();
    result.pool.push_back({std::move(x), 0.0});
    result.pool.back().score = checked(result.pool.back().x);
  }

  // best-first candidate order, ties toward the lower index
  std::vector<int> order(static_cast<size_t>(n_cand));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return result.pool[static_cast<size_t>(a)].score <
           result.pool[static_cast<size_t>(b)].score;
  });

  int best_idx = order.empty() ? 0 : order[0];
  result.x = result.pool[static_cast<size_t>(best_idx)].x;
  result.value = result.pool[static_cast<size_t>(best_idx)].score;

  const Vectord lo = Vectord::Zero(d);
  const Vectord hi = Vectord::Ones(d);
  for (int j = 0; j < n_refine; ++j) {
    const auto& seed = result.pool[static_cast<size_t>(order[static_cast<size_t>(j)])];
    const LocalSearchResult ref = projected_bfgs(
        checked, lo, hi, seed.x, cfg.max_local_steps, cfg.tolerance);
    result.pool.push_back({ref.x, ref.value});
    if (ref.value < result.value) {
      result.x = ref.x;
      result.value = ref.value;
    }
  }
  return result;
}

}  // namespace bobench
