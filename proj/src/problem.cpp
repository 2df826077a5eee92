#include "arcsqp/problem.hpp"

#include <cmath>
#include <limits>

namespace arcsqp {

namespace {

const double kSqrtEps = std::sqrt(std::numeric_limits<double>::epsilon());

double fd_step(double xi) { return kSqrtEps * (1.0 + std::abs(xi)); }

double eval_f(const ProblemDef& p, const Vector& x, EvalCounters& counters) {
  ++counters.nf;
  double f = p.objective(x);
  if (!std::isfinite(f)) {
    throw EvaluationError('f', "objective returned non-finite value");
  }
  return f;
}

Vector eval_c(const ProblemDef& p, const Vector& x, EvalCounters& counters) {
  ++counters.nc;
  Vector c = p.constraints(x);
  if (c.size() != p.m) {
    throw EvaluationError('c', "constraint map returned wrong dimension");
  }
  if (!c.allFinite()) {
    throw EvaluationError('c', "constraints returned non-finite value");
  }
  return c;
}

Vector fd_gradient(const ProblemDef& p, const Vector& x,
                   EvalCounters& counters) {
  Vector g(p.n);
  Vector xp = x;
  for (int i = 0; i < p.n; ++i) {
    const double h = fd_step(x[i]);
    xp[i] = x[i] + h;
    const double fp = eval_f(p, xp, counters);
    xp[i] = x[i] - h;
    const double fm = eval_f(p, xp, counters);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Matrix fd_jacobian(const ProblemDef& p, const Vector& x,
                   EvalCounters& counters) {
  Matrix A(p.m, p.n);
  Vector xp = x;
  for (int i = 0; i < p.n; ++i) {
    const double h = fd_step(x[i]);
    xp[i] = x[i] + h;
    const Vector cp = eval_c(p, xp, counters);
    xp[i] = x[i] - h;
    const Vector cm = eval_c(p, xp, counters);
    xp[i] = x[i];
    A.col(i) = (cp - cm) / (2.0 * h);
  }
  return A;
}

Vector eval_g(const ProblemDef& p, const Vector& x, EvalCounters& counters) {
  ++counters.ng;
  Vector g = p.has_gradient() ? p.gradient(x) : fd_gradient(p, x, counters);
  if (g.size() != p.n) {
    throw EvaluationError('g', "gradient map returned wrong dimension");
  }
  if (!g.allFinite()) {
    throw EvaluationError('g', "gradient returned non-finite value");
  }
  return g;
}

Matrix eval_A(const ProblemDef& p, const Vector& x, EvalCounters& counters) {
  ++counters.nj;
  Matrix A = p.has_jacobian() ? p.jacobian(x) : fd_jacobian(p, x, counters);
  if (A.rows() != p.m || A.cols() != p.n) {
    throw EvaluationError('A', "Jacobian map returned wrong dimensions");
  }
  if (!A.allFinite()) {
    throw EvaluationError('A', "Jacobian returned non-finite value");
  }
  return A;
}

}  // namespace

void ProblemDef::validate() const {
  if (n <= 0) throw ConfigError(name + ": n must be positive");
  if (m < 1 || m > n) throw ConfigError(name + ": need 1 <= m <= n");
  if (x0.size() != n) throw ConfigError(name + ": x0 has wrong length");
  if (!objective) throw ConfigError(name + ": objective map missing");
  if (!constraints) throw ConfigError(name + ": constraint map missing");
}

Evaluation evaluate(const ProblemDef& problem, const Vector& x,
                    unsigned request, EvalCounters& counters) {
  if (request == 0) throw ConfigError("evaluate: empty request");
  if (x.size() != problem.n) {
    throw ConfigError("evaluate: x has wrong length");
  }
  Evaluation out;
  if (request & kEvalF) out.f = eval_f(problem, x, counters);
  if (request & kEvalC) out.c = eval_c(problem, x, counters);
  if (request & kEvalG) out.g = eval_g(problem, x, counters);
  if (request & kEvalA) out.A = eval_A(problem, x, counters);
  return out;
}

DerivativeReport check_derivatives(const ProblemDef& problem, const Vector& x,
                                   double tol) {
  if (!problem.has_gradient() && !problem.has_jacobian()) {
    throw ConfigError("check_derivatives: no analytic derivatives to check");
  }
  EvalCounters counters;
  DerivativeReport report;
  const auto rel = [](double a, double fd) {
    return std::abs(a - fd) / std::max(1.0, std::abs(fd));
  };
  if (problem.has_gradient()) {
    report.checked_gradient = true;
    const Vector ga = eval_g(problem, x, counters);
    const Vector gfd = fd_gradient(problem, x, counters);
    for (int i = 0; i < problem.n; ++i) {
      report.max_rel_gradient =
          std::max(report.max_rel_gradient, rel(ga[i], gfd[i]));
    }
  }
  if (problem.has_jacobian()) {
    report.checked_jacobian = true;
    const Matrix Aa = eval_A(problem, x, counters);
    const Matrix Afd = fd_jacobian(problem, x, counters);
    for (int i = 0; i < problem.m; ++i) {
      for (int j = 0; j < problem.n; ++j) {
        report.max_rel_jacobian =
            std::max(report.max_rel_jacobian, rel(Aa(i, j), Afd(i, j)));
      }
    }
  }
  report.pass = report.max_rel_gradient <= tol && report.max_rel_jacobian <= tol;
  return report;
}

Matrix fd_lagrangian_hessian(const ProblemDef& problem, const Vector& x,
                             const Vector& lambda, EvalCounters& counters) {
  const int n = problem.n;
  // gradient of the Lagrangian in x with lambda held fixed
  const auto grad_l = [&](const Vector& xx) -> Vector {
    const Vector g = eval_g(problem, xx, counters);
    const Matrix A = eval_A(problem, xx, counters);
    return g - A.transpose() * lambda;
  };
  Matrix M(n, n);
  Vector xp = x;
  for (int i = 0; i < n; ++i) {
    const double h = fd_step(x[i]);
    xp[i] = x[i] + h;
    const Vector gp = grad_l(xp);
    xp[i] = x[i] - h;
    const Vector gm = grad_l(xp);
    xp[i] = x[i];
    M.col(i) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (M + M.transpose());
}

}  // namespace arcsqp
