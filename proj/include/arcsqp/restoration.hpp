#pragma once

#include <optional>
#include <vector>

#include "arcsqp/config.hpp"
#include "arcsqp/filter.hpp"
#include "arcsqp/problem.hpp"
#include "arcsqp/types.hpp"

namespace arcsqp {

enum class RestorationStatus { Restored, InfeasibleStationary, BudgetExhausted };

/// Evaluation bundle at the restored point, reused by the driver.
struct RestoredPoint {
  double f = 0.0;
  Vector c;
  Vector g;
  Matrix A;
  double l = 0.0;
};

struct RestorationResult {
  RestorationStatus status = RestorationStatus::BudgetExhausted;
  Vector x_new;
  int inner_iterations = 0;
  double h_final = 0.0;
  std::vector<double> h_trace;  ///< h after each accepted inner step
  std::optional<RestoredPoint> point;  ///< present when status == Restored
};

/// Decreases h(x) = ||c(x)|| from x_start by Levenberg-Marquardt on c
/// ((A^T A + nu I) p = -A^T c, nu shrunk on success and grown on failure,
/// steps accepted only when h^2 strictly decreases) until the iterate is
/// acceptable to the filter with full margins; with require_normal_bound
/// set, additionally until the normal-step bound holds there at the given
/// sigma. The objective is evaluated exactly once, at the end, to report
/// the Lagrangian value.
RestorationResult restore(const ProblemDef& problem, const Vector& x_start,
                          const Filter& filter, EvalCounters& counters,
                          const SolverConfig& params, bool require_normal_bound,
                          double sigma);

}  // namespace arcsqp
