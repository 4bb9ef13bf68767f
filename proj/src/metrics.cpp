#include "bobench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bobench {

GapCurve gap_curve(const RunTrace& trace, double y_star) {
  GapCurve curve;
  curve.n0 = trace.n0;
  curve.budget = trace.budget;
  const Index n_dec = trace.data.size() - trace.n0;
  curve.values.reserve(static_cast<size_t>(n_dec));

  const double y0 = trace.data.y.head(trace.n0).minCoeff();
  const double denom = std::abs(y0 - y_star);
  if (denom == 0.0) {
    curve.degenerate = true;
    curve.values.assign(static_cast<size_t>(n_dec), 1.0);
    return curve;
  }
  double best = y0;
  for (Index n = trace.n0; n < trace.data.size(); ++n) {
    best = std::min(best, trace.data.y[n]);
    const double gap = std::abs(y0 - best) / denom;
    curve.values.push_back(std::clamp(gap, 0.0, 1.0));
  }
  return curve;
}

double a_gap(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("a_gap: empty curve");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double a_gap(const GapCurve& curve) { return a_gap(curve.values); }

void annotate_dominance(std::vector<ParetoPoint>& points) {
  if (points.empty())
    throw std::invalid_argument("annotate_dominance: empty set");
  for (auto& p : points) {
    p.dominated = false;
    for (const auto& q : points) {
      if (&q == &p) continue;
      if (q.a_gap >= p.a_gap && q.d_l2 <= p.d_l2 &&
          (q.a_gap > p.a_gap || q.d_l2 < p.d_l2)) {
        p.dominated = true;
        break;
      }
    }
  }
}

std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points) {
  annotate_dominance(points);
  std::vector<ParetoPoint> front;
  for (const auto& p : points)
    if (!p.dominated) front.push_back(p);
  std::sort(front.begin(), front.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) {
              return a.a_gap < b.a_gap;
            });
  return front;
}

RegretSummary regret(const RunTrace& trace, double y_star) {
  RegretSummary out;
  out.instantaneous.reserve(trace.iterations.size());
  for (const auto& rec : trace.iterations)
    out.instantaneous.push_back(rec.y - y_star);
  out.cumulative =
      std::accumulate(out.instantaneous.begin(), out.instantaneous.end(), 0.0);
  out.average = out.instantaneous.empty()
                    ? 0.0
                    : out.cumulative /
                          static_cast<double>(out.instantaneous.size());
  return out;
}

}  // namespace bobench
