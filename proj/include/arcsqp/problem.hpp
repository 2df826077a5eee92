#pragma once

#include <functional>
#include <optional>
#include <string>

#include "arcsqp/types.hpp"

namespace arcsqp {

/// An equality-constrained nonlinear program
///
///   minimize f(x)   subject to   c(x) = 0,
///
/// with f : R^n -> R and c : R^n -> R^m, 1 <= m <= n. The Jacobian map
/// returns the m x n matrix whose rows are the constraint gradients.
/// gradient, jacobian and lagrangian_hessian are optional; central finite
/// differences substitute for missing ones (and solver reports flag it).
///
/// A ProblemDef is immutable after construction and may be shared across
/// concurrent solver instances.
struct ProblemDef {
  std::string name;
  int n = 0;
  int m = 0;
  Vector x0;
  std::function<double(const Vector&)> objective;
  std::function<Vector(const Vector&)> gradient;
  std::function<Vector(const Vector&)> constraints;
  std::function<Matrix(const Vector&)> jacobian;
  std::function<Matrix(const Vector&, const Vector&)> lagrangian_hessian;

  bool has_gradient() const { return static_cast<bool>(gradient); }
  bool has_jacobian() const { return static_cast<bool>(jacobian); }
  bool has_hessian() const { return static_cast<bool>(lagrangian_hessian); }

  /// Throws ConfigError unless 1 <= m <= n, x0 has length n and the
  /// mandatory maps are present.
  void validate() const;
};

/// Raw call counts against the user maps. Owned by exactly one solve.
struct EvalCounters {
  long nf = 0;  ///< objective evaluations
  long nc = 0;  ///< constraint evaluations
  long ng = 0;  ///< objective-gradient evaluations
  long nj = 0;  ///< Jacobian evaluations
  long nh = 0;  ///< Hessian evaluations
};

constexpr unsigned kEvalF = 1u << 0;
constexpr unsigned kEvalC = 1u << 1;
constexpr unsigned kEvalG = 1u << 2;
constexpr unsigned kEvalA = 1u << 3;

/// Only the requested members are present.
struct Evaluation {
  std::optional<double> f;
  std::optional<Vector> c;
  std::optional<Vector> g;
  std::optional<Matrix> A;
};

/// Evaluates the requested members at x, incrementing one counter per
/// member. Missing analytic derivatives are replaced by central finite
/// differences, which additionally bump the f/c counters they consume.
/// Throws EvaluationError on any non-finite result.
Evaluation evaluate(const ProblemDef& problem, const Vector& x,
                    unsigned request, EvalCounters& counters);

struct DerivativeReport {
  bool checked_gradient = false;
  bool checked_jacobian = false;
  double max_rel_gradient = 0.0;  ///< max over entries of |analytic - fd| / max(1, |fd|)
  double max_rel_jacobian = 0.0;
  bool pass = true;
};

/// Compares analytic gradient/Jacobian against central differences at x.
/// pass iff every per-entry relative error is <= tol. Requires at least one
/// analytic derivative map.
DerivativeReport check_derivatives(const ProblemDef& problem, const Vector& x,
                                   double tol);

/// Central-difference approximation of the Hessian of f(x) - lambda^T c(x)
/// with lambda held fixed, explicitly symmetrized as (M + M^T)/2. Uses the
/// problem's gradient/Jacobian (analytic or finite-difference).
Matrix fd_lagrangian_hessian(const ProblemDef& problem, const Vector& x,
                             const Vector& lambda, EvalCounters& counters);

}  // namespace arcsqp
