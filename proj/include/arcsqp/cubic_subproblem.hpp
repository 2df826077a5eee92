#pragma once

#include "arcsqp/kernels.hpp"
#include "arcsqp/types.hpp"

namespace arcsqp {

/// Data of the tangential subproblem
///   min over u of  f0 + (P g)^T u + (1/2) u^T (P H P) u + (sigma/3) ||P u||^3,
/// restricted to the null space of the constraint Jacobian.
struct TangentialModel {
  double f0 = 0.0;
  Vector pg;   ///< projected gradient P g
  Matrix H;    ///< Lagrangian Hessian (or approximation), n x n symmetric
  double sigma = 0.0;
  const JacobianFactorization* fac = nullptr;
};

enum class SubproblemStatus { CauchyOnly, SecularConverged, HardCase };

struct SubproblemSolution {
  Vector t;                    ///< tangential step, in null(A)
  double model_value = 0.0;    ///< cubic model at t
  double decrease = 0.0;       ///< f0 - model_value
  double cauchy_decrease = 0.0;
  SubproblemStatus status = SubproblemStatus::CauchyOnly;
  double nu = 0.0;             ///< multiplier of the secular system, sigma*||w||
  double reduced_min_eig = 0.0;  ///< smallest eigenvalue of Z^T H Z (0 if empty)
  bool reduced_empty = false;    ///< m = n: null space is {0}
};

/// Exact minimizer of the cubic model along -pg: t_c = -beta* pg with beta*
/// the unique nonnegative root of the model's directional derivative.
/// Returns the step and the achieved model decrease (0 when pg = 0).
struct CauchyStep {
  Vector t;
  double decrease = 0.0;
};
CauchyStep cauchy_step(const TangentialModel& model);

/// Global solution of the reduced cubic-regularized subproblem
///   min_w  g_r^T w + (1/2) w^T H_r w + (sigma/3) ||w||^3,
/// with g_r = Z^T g, H_r = Z^T H Z, via eigendecomposition of H_r and
/// safeguarded root-finding on nu = sigma ||w(nu)||, (H_r + nu I) w = -g_r,
/// H_r + nu I positive semidefinite. Detects and resolves the hard case.
/// Falls back to the Cauchy step if the spectral solve stalls, so the
/// returned decrease always dominates the Cauchy decrease.
SubproblemSolution solve_reduced_arc(const TangentialModel& model, double tol);

/// f0 + g^T t + (1/2) t^T H t + (sigma/3) ||t||^3.
double tangential_model_value(const Vector& t, double f0, const Vector& g,
                              const Matrix& H, double sigma);

}  // namespace arcsqp
