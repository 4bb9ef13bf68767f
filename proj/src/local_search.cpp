#include "bobench/local_search.hpp"

#include <cmath>

namespace bobench {

namespace {

constexpr double kFdStep = 1e-6;

Vectord clamp_to(const Vectord& x, const Vectord& lo, const Vectord& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

// Central differences with probe points clamped into the box; falls back to
// the actual probe separation so one-sided steps at the boundary stay valid.
Vectord numeric_gradient(const std::function<double(const Vectord&)>& f,
                         const Vectord& x, const Vectord& lo,
                         const Vectord& hi) {
  const Index d = x.size();
  Vectord g(d);
  Vectord xp = x, xm = x;
  for (Index k = 0; k < d; ++k) {
    const double h = kFdStep * std::max(1.0, std::abs(x[k]));
    xp[k] = std::min(x[k] + h, hi[k]);
    xm[k] = std::max(x[k] - h, lo[k]);
    const double span = xp[k] - xm[k];
    g[k] = span > 0.0 ? (f(xp) - f(xm)) / span : 0.0;
    xp[k] = x[k];
    xm[k] = x[k];
  }
  return g;
}

}  // namespace

LocalSearchResult projected_bfgs(
    const std::function<double(const Vectord&)>& f, const Vectord& lo,
    const Vectord& hi, const Vectord& x0, int max_steps, double tol) {
  const Index d = x0.size();
  Vectord x = clamp_to(x0, lo, hi);
  double fx = f(x);
  Vectord g = numeric_gradient(f, x, lo, hi);
  Matrixd H = Matrixd::Identity(d, d);

  LocalSearchResult best{x, fx, 0};
  for (int step = 0; step < max_steps; ++step) {
    // projected-gradient stationarity test
    if ((clamp_to(x - g, lo, hi) - x).norm() < tol) break;

    Vectord dir = -(H * g);
    if (dir.dot(g) >= 0.0) dir = -g;  // restore a descent direction

    double alpha = 1.0;
    Vectord x_new;
    double f_new = fx;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = clamp_to(x + alpha * dir, lo, hi);
      f_new = f(x_new);
      if (f_new < fx) {
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;

    Vectord g_new = numeric_gradient(f, x_new, lo, hi);
    const Vectord s = x_new - x;
    const Vectord yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Matrixd HyS = H * yv * s.transpose();
      H += (1.0 + rho * yv.dot(H * yv)) * rho * (s * s.transpose()) -
           rho * (HyS + HyS.transpose());
    }
    x = std::move(x_new);
    fx = f_new;
    g = std::move(g_new);
    if (fx < best.value) {
      best.x = x;
      best.value = fx;
    }
    best.steps = step + 1;
  }
  return best;
}

}  // namespace bobench
