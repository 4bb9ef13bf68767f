#include "bobench/testbed.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bobench {

SearchSpace::SearchSpace(Vectord lo, Vectord hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("SearchSpace: bound dimensions differ");
  for (Index k = 0; k < lower.size(); ++k)
    if (!(lower[k] < upper[k]))
      throw std::invalid_argument("SearchSpace: lower must be < upper");
}

double evaluate(const TestProblem& problem, const Vectord& x,
                RandomStream& rng) {
  const auto& sp = problem.space;
  if (x.size() != sp.dim())
    throw std::domain_error("evaluate: point dimension mismatch");
  for (Index k = 0; k < sp.dim(); ++k) {
    const double tol = 1e-12 * (sp.upper[k] - sp.lower[k]);
    if (x[k] < sp.lower[k] - tol || x[k] > sp.upper[k] + tol) {
      std::ostringstream msg;
      msg << "evaluate(" << problem.name << "): coordinate " << k << " = "
          << x[k] << " outside [" << sp.lower[k] << ", " << sp.upper[k] << "]";
      throw std::domain_error(msg.str());
    }
  }
  double y = problem.normalized_objective(x);
  if (problem.noise_sd > 0.0) y += problem.noise_sd * rng.normal();
  return y;
}

namespace {

Vectord vec(std::initializer_list<double> v) {
  Vectord out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double branin(const Vectord& x) {
  const double b = 5.1 / (4.0 * M_PI * M_PI);
  const double c = 5.0 / M_PI;
  const double t = 1.0 / (8.0 * M_PI);
  const double inner = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return inner * inner + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

// Three-hump camel.
double camel3(const Vectord& x) {
  const double x2 = x[0] * x[0];
  return 2.0 * x2 - 1.05 * x2 * x2 + x2 * x2 * x2 / 6.0 + x[0] * x[1] +
         x[1] * x[1];
}

// Six-hump camel.
double camel6(const Vectord& x) {
  const double x2 = x[0] * x[0];
  const double y2 = x[1] * x[1];
  return (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x[0] * x[1] +
         (-4.0 + 4.0 * y2) * y2;
}

// Goldstein-Price.
double goldpr(const Vectord& x) {
  const double x1 = x[0], x2 = x[1];
  const double u = x1 + x2 + 1.0;
  const double t1 =
      1.0 + u * u * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 +
                     6.0 * x1 * x2 + 3.0 * x2 * x2);
  const double v = 2.0 * x1 - 3.0 * x2;
  const double t2 =
      30.0 + v * v * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 -
                      36.0 * x1 * x2 + 27.0 * x2 * x2);
  return t1 * t2;
}

const double kHartAlpha[4] = {1.0, 1.2, 3.0, 3.2};

const double kHart3A[4][3] = {
    {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
const double kHart3P[4][3] = {{0.3689, 0.1170, 0.2673},
                              {0.4699, 0.4387, 0.7470},
                              {0.1091, 0.8732, 0.5547},
                              {0.0381, 0.5743, 0.8828}};

const double kHart6A[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                              {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                              {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                              {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
const double kHart6P[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

double hartmann3(const Vectord& x) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double dj = x[j] - kHart3P[i][j];
      inner += kHart3A[i][j] * dj * dj;
    }
    sum += kHartAlpha[i] * std::exp(-inner);
  }
  return -sum;
}

// 4-d variant: leading four columns of the 6-d matrices, rescaled form.
double hartmann4(const Vectord& x) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double dj = x[j] - kHart6P[i][j];
      inner += kHart6A[i][j] * dj * dj;
    }
    sum += kHartAlpha[i] * std::exp(-inner);
  }
  return (1.1 - sum) / 0.839;
}

double hartmann6(const Vectord& x) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double dj = x[j] - kHart6P[i][j];
      inner += kHart6A[i][j] * dj * dj;
    }
    sum += kHartAlpha[i] * std::exp(-inner);
  }
  return -sum;
}

double rosenbrock(const Vectord& x) {
  double sum = 0.0;
  for (Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double schwefel(const Vectord& x) {
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    sum += x[i] * std::sin(std::sqrt(std::abs(x[i])));
  return 418.9829 * static_cast<double>(x.size()) - sum;
}

double stybtang(const Vectord& x) {
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double x2 = x[i] * x[i];
    sum += x2 * x2 - 16.0 * x2 + 5.0 * x[i];
  }
  return 0.5 * sum;
}

// Optimum values and optimizers verified by independent numeric minimization
// of the closed forms (multistart local search over the standard boxes).
constexpr double kBraninStar = 0.39788735772973816;
constexpr double kCamel6Star = -1.0316284534898774;
constexpr double kHart3Star = -3.8627797873326624;
constexpr double kHart4Star = -3.134494141222399;
constexpr double kHart6Star = -3.3223680114155134;
constexpr double kSchwefelPerDimStar = 1.2727566229386866e-05;
constexpr double kSchwefelArg = 420.96874635760247;
constexpr double kStybTangPerDimStar = -39.166165703771405;
constexpr double kStybTangArg = -2.903534030279176;

TestProblem fixed_problem(std::string name, Vectord lo, Vectord hi,
                          std::function<double(const Vectord&)> f,
                          double y_star, Vectord x_star) {
  TestProblem p;
  p.name = std::move(name);
  p.space = SearchSpace(std::move(lo), std::move(hi));
  p.objective = std::move(f);
  p.y_star = y_star;
  p.x_star = std::move(x_star);
  return p;
}

Vectord constant_vec(Index d, double v) {
  return Vectord::Constant(d, v);
}

TestProblem parametric_problem(const std::string& name, int d) {
  if (d < 2)
    throw std::invalid_argument(name + ": dimension must be >= 2");
  TestProblem p;
  p.name = name;
  if (name == "Rosenbrock") {
    p.space = SearchSpace(constant_vec(d, -5.0), constant_vec(d, 10.0));
    p.objective = rosenbrock;
    p.y_star = 0.0;
    p.x_star = constant_vec(d, 1.0);
  } else if (name == "Schwefel") {
    p.space = SearchSpace(constant_vec(d, -500.0), constant_vec(d, 500.0));
    p.objective = schwefel;
    p.y_star = kSchwefelPerDimStar * d;
    p.x_star = constant_vec(d, kSchwefelArg);
  } else if (name == "StybTang") {
    p.space = SearchSpace(constant_vec(d, -5.0), constant_vec(d, 5.0));
    p.objective = stybtang;
    p.y_star = kStybTangPerDimStar * d;
    p.x_star = constant_vec(d, kStybTangArg);
  } else {
    throw std::invalid_argument(name + ": not dimension-parametric");
  }
  return p;
}

}  // namespace

std::vector<TestProblem> catalog() {
  std::vector<TestProblem> out;
  out.push_back(fixed_problem("Branin", vec({-5.0, 0.0}), vec({10.0, 15.0}),
                              branin, kBraninStar, vec({-M_PI, 12.275})));
  out.push_back(fixed_problem("Camel3", vec({-5.0, -5.0}), vec({5.0, 5.0}),
                              camel3, 0.0, vec({0.0, 0.0})));
  out.push_back(fixed_problem("Camel6", vec({-3.0, -2.0}), vec({3.0, 2.0}),
                              camel6, kCamel6Star,
                              vec({0.0898420091341563, -0.7126564031538192})));
  out.push_back(fixed_problem("GoldPr", vec({-2.0, -2.0}), vec({2.0, 2.0}),
                              goldpr, 3.0, vec({0.0, -1.0})));
  out.push_back(fixed_problem(
      "Hartmann3", constant_vec(3, 0.0), constant_vec(3, 1.0), hartmann3,
      kHart3Star,
      vec({0.11458886064574192, 0.5556488955745517, 0.8525469848790711})));
  out.push_back(fixed_problem(
      "Hartmann4", constant_vec(4, 0.0), constant_vec(4, 1.0), hartmann4,
      kHart4Star,
      vec({0.1873952748317735, 0.194151525841165, 0.5579177777683518,
           0.2647796257414422})));
  out.push_back(fixed_problem(
      "Hartmann6", constant_vec(6, 0.0), constant_vec(6, 1.0), hartmann6,
      kHart6Star,
      vec({0.20168950780041767, 0.15001069506443931, 0.47687397094962364,
           0.2753324318156633, 0.3116516117134828, 0.6573005345894727})));
  out.push_back(parametric_problem("Rosenbrock", 2));
  out.push_back(parametric_problem("Schwefel", 2));
  out.push_back(parametric_problem("StybTang", 2));
  return out;
}

TestProblem make_problem(const std::string& name,
                         std::optional<int> dim_override, double noise_sd) {
  if (noise_sd < 0.0)
    throw std::invalid_argument("make_problem: noise_sd must be >= 0");
  TestProblem p;
  if (name == "Rosenbrock" || name == "Schwefel" || name == "StybTang") {
    p = parametric_problem(name, dim_override.value_or(2));
  } else {
    bool found = false;
    for (auto& q : catalog()) {
      if (q.name == name) {
        p = std::move(q);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown problem: " + name);
    if (dim_override && *dim_override != p.dim())
      throw std::invalid_argument(name + ": dimension is fixed at " +
                                  std::to_string(p.dim()));
  }
  p.noise_sd = noise_sd;
  return p;
}

}  // namespace bobench
