#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcsqp/problem.hpp"

namespace arcsqp {

/// Reference statistics (iterations, evaluation counts, final residual)
/// for a named problem, used as regression anchors with generous slack.
struct PaperStats {
  int nit = 0;
  int nf = 0;
  int nc = 0;
  int ng = 0;
  double res = 0.0;
};

struct TestProblem {
  ProblemDef problem;
  std::optional<PaperStats> paper_stats;
  std::optional<Vector> known_solution;
};

/// Returns the named built-in problem with analytic derivatives.
/// Throws std::out_of_range listing the available names otherwise.
TestProblem get_problem(const std::string& name);

/// Reference statistics for a name, when registered (a few names carry
/// statistics without a built-in problem definition).
std::optional<PaperStats> reference_stats(const std::string& name);

/// Registry names in canonical order.
const std::vector<std::string>& problem_names();

}  // namespace arcsqp
