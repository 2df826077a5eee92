#pragma once

#include "arcsqp/problem.hpp"
#include "arcsqp/types.hpp"

namespace arcsqp {

/// Orthogonal factorization of the constraint Jacobian, A^T = Y R, computed
/// once per iterate and reused for projection, multipliers and the normal
/// step. Immutable and safely shareable.
struct JacobianFactorization {
  int n = 0;
  int m = 0;
  Matrix Y;          ///< n x m orthonormal basis of range(A^T)
  Matrix Z;          ///< n x (n - m) orthonormal basis of null(A)
  Matrix R;          ///< m x m upper triangular factor, A^T = Y R
  double sigma_min = 0.0;  ///< smallest singular value of A
  double norm_A = 0.0;     ///< largest singular value of A
};

/// Factorizes A^T by Householder QR. Throws RankDeficiencyError when
/// sigma_min < rank_tol * ||A|| (the driver routes that to restoration).
JacobianFactorization factorize_jacobian(const Matrix& A,
                                         double rank_tol = 1e-10);

/// Null-space projection P v = Z (Z^T v) = (I - A^T (A A^T)^{-1} A) v.
Vector project(const JacobianFactorization& fac, const Vector& v);

/// Least-squares multipliers lambda = (A A^T)^{-1} A g, so that
/// g - A^T lambda = P g.
Vector multipliers(const JacobianFactorization& fac, const Vector& g);

/// Minimum-norm solution of A n + c = 0.
Vector normal_step(const JacobianFactorization& fac, const Vector& c);

/// Bound on the normal step: ||n|| <= beta1 * min{1, beta2 / sqrt(sigma)^beta3}
/// / sqrt(sigma). Failure sends the iteration to restoration.
bool normal_step_condition(const Vector& n, double sigma, double beta1,
                           double beta2, double beta3);

struct KktQuantities {
  Vector lambda;             ///< projected multipliers
  Vector pg;                 ///< P g
  double pg_norm = 0.0;
  double h = 0.0;            ///< ||c||
  double res = 0.0;          ///< max(||P g||, ||c||)
  double lagrangian_value = 0.0;  ///< f - lambda^T c
};

KktQuantities kkt_quantities(double f, const Vector& g, const Vector& c,
                             const JacobianFactorization& fac);

/// One-sided finite-difference directional derivative of the multiplier
/// map along d:  (lambda(x + h_d d) - lambda(x)) / h_d  with
/// h_d = sqrt(eps) (1 + ||x||) / ||d||. Consumes one extra gradient and
/// Jacobian evaluation. Throws RankDeficiencyError if the Jacobian at the
/// probe point loses rank (the caller then drops the term).
Vector directional_multiplier_derivative(const ProblemDef& problem,
                                         const Vector& x, const Vector& d,
                                         const Vector& lambda_x,
                                         EvalCounters& counters,
                                         double rank_tol = 1e-10);

}  // namespace arcsqp
