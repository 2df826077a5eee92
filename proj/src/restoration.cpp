#include "arcsqp/restoration.hpp"

#include <cmath>

#include "arcsqp/kernels.hpp"

namespace arcsqp {

namespace {

// Normal-step bound at the current point; false when the Jacobian there is
// rank deficient.
bool normal_bound_holds(const Matrix& A, const Vector& c, double sigma,
                        const SolverConfig& params) {
  try {
    const JacobianFactorization fac = factorize_jacobian(A, params.rank_tol);
    const Vector n = normal_step(fac, c);
    return normal_step_condition(n, sigma, params.beta1, params.beta2,
                                 params.beta3);
  } catch (const RankDeficiencyError&) {
    return false;
  }
}

}  // namespace

RestorationResult restore(const ProblemDef& problem, const Vector& x_start,
                          const Filter& filter, EvalCounters& counters,
                          const SolverConfig& params, bool require_normal_bound,
                          double sigma) {
  RestorationResult out;
  Vector x = x_start;

  Evaluation ev = evaluate(problem, x, kEvalC | kEvalA, counters);
  Vector c = std::move(*ev.c);
  Matrix A = std::move(*ev.A);
  double h = c.norm();
  out.h_trace.push_back(h);

  double nu = 1e-3 * (A.transpose() * A).norm();
  if (nu <= 0.0) nu = 1e-3;

  // Margin target: h <= (1 - gamma_h) h_j against every stored entry makes
  // the point acceptable regardless of its Lagrangian value.
  const double h_target = (1.0 - params.gamma_h) * filter.min_entry_h();
  const auto h_ok = [&](double hh) { return hh < filter.h_max() && hh <= h_target; };

  bool stalled = false;
  double reject_growth = 2.0;
  while (true) {
    const bool bound_ok =
        !require_normal_bound || normal_bound_holds(A, c, sigma, params);
    if (h_ok(h) && bound_ok) break;

    const Vector grad_h2 = A.transpose() * c;  // half the gradient of h^2
    if (grad_h2.norm() <= 1e-10 * (1.0 + c.norm())) {
      if (h > params.epsilon) {
        out.status = RestorationStatus::InfeasibleStationary;
        out.x_new = x;
        out.h_final = h;
        return out;
      }
      break;  // first-order stationary and essentially feasible
    }
    if (out.inner_iterations >= params.restoration_max_iter) {
      stalled = true;
      break;
    }
    ++out.inner_iterations;

    const Matrix B = A.transpose() * A;
    Matrix damped = B;
    damped.diagonal().array() += nu;
    const Vector p = Eigen::LDLT<Matrix>(damped).solve(-grad_h2);

    bool accepted = false;
    try {
      const Vector x_trial = x + p;
      Evaluation trial = evaluate(problem, x_trial, kEvalC, counters);
      const double h_trial = trial.c->norm();
      if (h_trial * h_trial < h * h) {
        // damping steered by the gain ratio of the Gauss-Newton model
        const double predicted =
            h * h - (c + A * p).squaredNorm();
        const double actual = h * h - h_trial * h_trial;
        const double gain = predicted > 0.0 ? actual / predicted : 0.0;
        const double shrink =
            std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * gain - 1.0, 3));
        nu *= shrink;
        reject_growth = 2.0;
        x = x_trial;
        c = std::move(*trial.c);
        Evaluation ja = evaluate(problem, x, kEvalA, counters);
        A = std::move(*ja.A);
        h = h_trial;
        out.h_trace.push_back(h);
        accepted = true;
      }
    } catch (const EvaluationError&) {
      accepted = false;
    }
    if (!accepted) {
      nu *= reject_growth;
      reject_growth *= 2.0;
    }
  }

  // Lagrangian value at the candidate; the objective is touched only here.
  ev = evaluate(problem, x, kEvalF | kEvalG, counters);
  const double f = *ev.f;
  const Vector g = std::move(*ev.g);
  Vector lambda;
  try {
    const JacobianFactorization fac = factorize_jacobian(A, params.rank_tol);
    lambda = multipliers(fac, g);
  } catch (const RankDeficiencyError&) {
    // minimum-norm least-squares multipliers keep l well defined; the
    // driver will see the rank deficiency itself at the next factorization
    lambda = Eigen::JacobiSVD<Matrix>(A.transpose(),
                                      Eigen::ComputeThinU | Eigen::ComputeThinV)
                 .solve(g);
  }
  const double l = f - lambda.dot(c);

  out.x_new = x;
  out.h_final = h;
  const bool bound_ok =
      !require_normal_bound || normal_bound_holds(A, c, sigma, params);
  if (!stalled && bound_ok && std::isfinite(l) && filter.acceptable(h, l) &&
      filter.margins_hold(h, l)) {
    out.status = RestorationStatus::Restored;
    out.point = RestoredPoint{f, c, g, A, l};
  } else {
    out.status = RestorationStatus::BudgetExhausted;
  }
  return out;
}

}  // namespace arcsqp
