#include "arcsqp/kernels.hpp"

#include <cmath>
#include <limits>

namespace arcsqp {

JacobianFactorization factorize_jacobian(const Matrix& A, double rank_tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m < 1 || m > n) {
    throw ConfigError("factorize_jacobian: need 1 <= m <= n");
  }
  JacobianFactorization fac;
  fac.n = n;
  fac.m = m;

  Eigen::HouseholderQR<Matrix> qr(A.transpose());
  const Matrix Q = qr.householderQ();  // full n x n
  fac.Y = Q.leftCols(m);
  fac.Z = Q.rightCols(n - m);
  fac.R = qr.matrixQR().topLeftCorner(m, m).triangularView<Eigen::Upper>();

  // Singular values of A equal those of R since Q is orthogonal.
  Eigen::JacobiSVD<Matrix> svd(fac.R);
  fac.sigma_min = svd.singularValues().minCoeff();
  fac.norm_A = svd.singularValues().maxCoeff();

  if (fac.sigma_min < rank_tol * fac.norm_A || fac.norm_A == 0.0) {
    throw RankDeficiencyError("constraint Jacobian is rank deficient");
  }
  return fac;
}

Vector project(const JacobianFactorization& fac, const Vector& v) {
  return fac.Z * (fac.Z.transpose() * v);
}

Vector multipliers(const JacobianFactorization& fac, const Vector& g) {
  // lambda = (A A^T)^{-1} A g = R^{-1} Y^T g
  const Vector yg = fac.Y.transpose() * g;
  return fac.R.triangularView<Eigen::Upper>().solve(yg);
}

Vector normal_step(const JacobianFactorization& fac, const Vector& c) {
  // n = -A^T (A A^T)^{-1} c = -Y R^{-T} c
  const Vector z =
      fac.R.transpose().triangularView<Eigen::Lower>().solve(c);
  return -(fac.Y * z);
}

bool normal_step_condition(const Vector& n, double sigma, double beta1,
                           double beta2, double beta3) {
  const double sqrt_sigma = std::sqrt(sigma);
  const double bound =
      beta1 * std::min(1.0, beta2 / std::pow(sqrt_sigma, beta3)) / sqrt_sigma;
  return n.norm() <= bound;
}

KktQuantities kkt_quantities(double f, const Vector& g, const Vector& c,
                             const JacobianFactorization& fac) {
  KktQuantities q;
  q.lambda = multipliers(fac, g);
  q.pg = project(fac, g);
  q.pg_norm = q.pg.norm();
  q.h = c.norm();
  q.res = std::max(q.pg_norm, q.h);
  q.lagrangian_value = f - q.lambda.dot(c);
  return q;
}

Vector directional_multiplier_derivative(const ProblemDef& problem,
                                         const Vector& x, const Vector& d,
                                         const Vector& lambda_x,
                                         EvalCounters& counters,
                                         double rank_tol) {
  const double dnorm = d.norm();
  if (dnorm == 0.0) {
    throw ConfigError("directional_multiplier_derivative: d must be nonzero");
  }
  const double h_d = std::sqrt(std::numeric_limits<double>::epsilon()) *
                     (1.0 + x.norm()) / dnorm;
  const Vector xp = x + h_d * d;
  const Evaluation ev = evaluate(problem, xp, kEvalG | kEvalA, counters);
  const JacobianFactorization fac_p = factorize_jacobian(*ev.A, rank_tol);
  const Vector lambda_p = multipliers(fac_p, *ev.g);
  return (lambda_p - lambda_x) / h_d;
}

}  // namespace arcsqp
