#pragma once

#include <string>
#include <vector>

#include "bobench/engine.hpp"
#include "bobench/types.hpp"

namespace bobench {

/// GAP_n over the BO decisions of one run; values in [0,1], non-decreasing.
struct GapCurve {
  std::vector<double> values;  // n = n0+1 .. N
  int n0 = 0;
  int budget = 0;
  bool degenerate = false;  // initial best already equals y*
};

/// GAP_n = |y0+ - y+(n)| / |y0+ - y*| with the best-so-far taken over all
/// observations up to n (initial design included), clamped to [0,1]. When the
/// initial best already equals y*, the curve is all ones and flagged.
GapCurve gap_curve(const RunTrace& trace, double y_star);

/// Mean of the curve values (area under the GAP curve).
double a_gap(const GapCurve& curve);
double a_gap(const std::vector<double>& values);

/// L2 discrepancy of a point set in [0,1]^d (boxes [a,b) with a <= b):
///   D^2 = (1/m^2) sum_ij prod_k min(x_ik,x_jk)(1 - max(x_ik,x_jk))
///       - (2/m) sum_i prod_k x_ik (1 - x_ik) / 2  +  12^{-d}
/// Throws on coordinates outside [0,1].
template <typename Derived>
double l2_discrepancy(const Eigen::MatrixBase<Derived>& points) {
  const Index m = points.rows();
  const Index d = points.cols();
  if (m < 1) throw std::invalid_argument("l2_discrepancy: empty point set");
  if ((points.array() < 0.0).any() || (points.array() > 1.0).any())
    throw std::invalid_argument("l2_discrepancy: coordinate outside [0,1]");

  double pair_sum = 0.0;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      double prod = 1.0;
      for (Index k = 0; k < d; ++k) {
        const double xi = points(i, k), xj = points(j, k);
        prod *= std::min(xi, xj) * (1.0 - std::max(xi, xj));
      }
      pair_sum += prod;
    }
  }
  double cross_sum = 0.0;
  for (Index i = 0; i < m; ++i) {
    double prod = 1.0;
    for (Index k = 0; k < d; ++k)
      prod *= points(i, k) * (1.0 - points(i, k)) / 2.0;
    cross_sum += prod;
  }
  const double mm = static_cast<double>(m);
  const double d2 = pair_sum / (mm * mm) - 2.0 * cross_sum / mm +
                    std::pow(12.0, -static_cast<double>(d));
  return std::sqrt(std::max(d2, 0.0));
}

/// One policy's position in the (A_GAP, discrepancy) plane.
struct ParetoPoint {
  std::string policy;
  double a_gap = 0.0;  // maximize
  double d_l2 = 0.0;   // minimize
  bool dominated = false;
};

/// Set dominated flags: p is dominated iff some q has a_gap >= and d_l2 <=
/// with at least one strict inequality.
void annotate_dominance(std::vector<ParetoPoint>& points);

/// The non-dominated subset, sorted by ascending a_gap.
std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points);

struct RegretSummary {
  std::vector<double> instantaneous;  // per decision, y(n) - y*
  double cumulative = 0.0;
  double average = 0.0;
};

/// Instantaneous regret of each BO decision and its running aggregates.
RegretSummary regret(const RunTrace& trace, double y_star);

}  // namespace bobench
