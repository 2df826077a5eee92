#pragma once

#include "arcsqp/types.hpp"

namespace arcsqp {

enum class HessianStrategy { Exact, FD, BFGS };

/// All solver constants with their defaults. validate() enforces the
/// admissible ranges before a solve starts.
struct SolverConfig {
  double epsilon = 1e-6;   ///< termination: max(||P g||, ||c||) <= epsilon

  // normal-step bound
  double beta1 = 0.1;
  double beta2 = 100.0;
  double beta3 = 0.01;

  // filter margins and switching constants
  double gamma_h = 1e-5;
  double gamma_l = 1e-5;
  double kappa_h = 1e-4;
  double varsigma = 2.01;  ///< exponent on h in the switching condition
  double phi = 2.01;       ///< exponent on h in the alpha_min threshold
  double omega = 1.0;      ///< exponent on -m(alpha) in the switching condition
  double tau = 1.0;        ///< exponent on delta in the alpha_min threshold

  // line search
  double mu = 1e-4;        ///< sufficient-decrease fraction
  double mu_alpha = 1.0;   ///< alpha_min scaling
  double omega1 = 0.5;     ///< backtracking ratio, lower
  double omega2 = 0.5;     ///< backtracking ratio, upper

  // regularization update
  double eta1 = 0.01;
  double eta2 = 0.9;
  double gamma1 = 2.0;
  double gamma2 = 5.0;
  // the normal-step bound scales like beta1/sqrt(sigma); sigma0 must be
  // small enough that moderately infeasible starts pass it on iteration 0
  double sigma0 = 1e-4;
  double sigma_min = 1e-8;

  double h_max_factor = 1e4;  ///< h_max = h_max_factor * max(1, h(x0))
  int max_iter = 500;
  int restoration_max_iter = 100;
  double rank_tol = 1e-10;
  double subproblem_tol = 1e-10;

  HessianStrategy hessian_strategy = HessianStrategy::Exact;

  /// Throws ConfigError on any constant outside its admissible range.
  void validate() const;
};

}  // namespace arcsqp
