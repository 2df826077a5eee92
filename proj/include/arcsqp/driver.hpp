#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcsqp/config.hpp"
#include "arcsqp/filter.hpp"
#include "arcsqp/problem.hpp"
#include "arcsqp/types.hpp"

namespace arcsqp {

enum class SolverStatus {
  Converged,
  MaxIter,
  RestorationFailed,
  RankDeficientUnrecoverable,
};

std::string status_name(SolverStatus s);

/// Per-iteration trace. The diagnostic block feeds the live invariant
/// checks of the test suite and the CLI's verbose mode.
struct IterationRecord {
  int k = 0;
  double h = 0.0;
  double l = 0.0;
  double sigma = 0.0;
  double res = 0.0;
  double alpha = 0.0;     ///< accepted step size; 0 on restoration iterations
  char step_type = 'f';   ///< 'f', 'h' or 'r'

  bool has_step = false;  ///< tangential step was computed this iteration
  double pg_norm = 0.0;
  double H_norm = 0.0;            ///< spectral norm of H_k
  double model_decrease = 0.0;    ///< f(x_k) - m(t_k)
  double cauchy_decrease = 0.0;
  double t_norm = 0.0;
  double lin_residual = 0.0;      ///< ||A_k d_k + c_k||
  bool reduced_psd = false;       ///< Z^T H Z positive semidefinite
  double reduced_min_eig = 0.0;
  int ls_trials = 0;
  bool filter_augmented = false;  ///< (h, l) of this iterate joined the filter
  bool dlam_dropped = false;  ///< multiplier-derivative probe failed; term zeroed
  std::vector<std::pair<double, std::string>> rejected_trials;
  std::vector<double> restoration_trace;  ///< h per accepted inner step
};

struct SolverReport {
  SolverStatus status = SolverStatus::MaxIter;
  Vector x_final;
  double res = 0.0;
  int nit = 0;
  EvalCounters counters;
  std::vector<IterationRecord> history;
  std::vector<FilterEntry> final_filter;
  double wall_time_s = 0.0;
  bool used_fd_gradient = false;
  bool used_fd_jacobian = false;
};

/// (l_new - l_old) / m_alpha. Requires m_alpha < 0; the caller must branch
/// to the plain increase rule otherwise.
double rho_ratio(double l_new, double l_old, double m_alpha);

/// sigma update: grow by gamma2 below eta1 (or when no ratio is available),
/// by gamma1 in the middle band, halve (floored at sigma_min) above eta2.
double update_sigma(std::optional<double> rho, double sigma,
                    const SolverConfig& params);

/// Carries what the quasi-Newton strategy needs between iterations.
struct HessianState {
  Matrix H;  ///< last Hessian used (identity before the first BFGS update)
  bool has_prev = false;
  Vector x_prev;
  Vector g_prev;
  Matrix A_prev;
};

/// Hessian of the Lagrangian by the configured strategy: the user map
/// (checked symmetric), central differences of the Lagrangian gradient, or
/// a damped BFGS update of state.H from the latest step (identity on the
/// first iteration). g_curr/A_curr, when given, spare the BFGS branch a
/// re-evaluation at x.
Matrix lagrangian_hessian(const ProblemDef& problem, const Vector& x,
                          const Vector& lambda, HessianStrategy strategy,
                          HessianState& state, EvalCounters& counters,
                          const Vector* g_curr = nullptr,
                          const Matrix* A_curr = nullptr);

/// Runs the full solver loop on the problem.
SolverReport solve(const ProblemDef& problem,
                   const SolverConfig& config = SolverConfig{});

}  // namespace arcsqp
