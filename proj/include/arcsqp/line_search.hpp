#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcsqp/config.hpp"
#include "arcsqp/filter.hpp"
#include "arcsqp/kernels.hpp"
#include "arcsqp/types.hpp"

namespace arcsqp {

/// Everything the backtracking search needs about the current iterate and
/// its composite step d = n + t.
struct SearchContext {
  Vector x;
  double f0 = 0.0;
  Vector g;
  Vector c;
  double h = 0.0;
  double l = 0.0;   ///< Lagrangian value at x
  Vector t;         ///< tangential step
  Vector d;         ///< full step n + t
  Matrix H;
  double sigma = 0.0;
  Vector dlam_d;    ///< directional multiplier derivative along d

  // cached model ingredients
  double gt = 0.0;      ///< g^T t
  double tHt = 0.0;     ///< t^T H t
  double st3 = 0.0;     ///< sigma ||t||^3
  double dlam_c = 0.0;  ///< (dlam_d)^T c

  SearchContext() = default;
  SearchContext(Vector x_, double f0_, Vector g_, Vector c_, double h_,
                double l_, Vector t_, Vector d_, Matrix H_, double sigma_,
                Vector dlam_d_);
};

/// m(alpha) = alpha g^T t + (1/2) alpha^2 t^T H t + (1/3) alpha^3 sigma ||t||^3
///            - alpha (dlam_d)^T c.
double model_m(double alpha, const SearchContext& ctx);

/// m(alpha) < 0 and (-m(alpha))^omega (alpha sqrt(sigma))^(omega-1)
/// > kappa_h h^varsigma.
bool switching_holds(double m_alpha, double alpha, double sigma, double h,
                     const SolverConfig& params);

/// l_trial <= l_current + mu m(alpha).
bool sufficient_decrease_holds(double l_trial, double l_current,
                               double m_alpha, double mu);

/// Step-size threshold below which the search gives up and the iteration
/// moves to feasibility restoration.
double compute_alpha_min(const SearchContext& ctx, const SolverConfig& params);

enum class LineSearchKind { AcceptedFType, AcceptedHType, Restoration };

enum class RejectReason { FRejectFilter, FRejectArmijo, HReject, EvalFail };

std::string reject_reason_code(RejectReason r);

struct TrialRecord {
  double alpha = 0.0;
  RejectReason reason = RejectReason::FRejectFilter;
};

/// Full evaluation bundle of an accepted trial point, reused by the driver
/// as the next iterate.
struct AcceptedPoint {
  Vector x;
  double f = 0.0;
  Vector c;
  Vector g;
  Matrix A;
  JacobianFactorization fac;
  Vector lambda;
  double h = 0.0;
  double l = 0.0;
};

struct LineSearchOutcome {
  LineSearchKind kind = LineSearchKind::Restoration;
  double alpha = 0.0;                   ///< accepted step size
  int trials = 0;                       ///< number of trial points evaluated
  std::vector<TrialRecord> trial_log;   ///< rejected trials with reasons
  std::optional<AcceptedPoint> accepted;
  double m_alpha = 0.0;                 ///< m at the accepted alpha
};

/// Backtracking from alpha = 1: reject while the trial is in the filter
/// region; accept by sufficient decrease when the switching condition holds,
/// by the filter margins otherwise (h-type, which makes the caller augment
/// the filter); restoration once alpha < alpha_min. The Lagrangian at a
/// trial point uses multipliers recomputed there. Non-finite trial values
/// or a rank-deficient trial Jacobian reject the step size, never abort.
LineSearchOutcome backtracking_search(const SearchContext& ctx,
                                      const Filter& filter,
                                      const ProblemDef& problem,
                                      EvalCounters& counters,
                                      const SolverConfig& params);

}  // namespace arcsqp
