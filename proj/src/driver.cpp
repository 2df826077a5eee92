#include "arcsqp/driver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "arcsqp/cubic_subproblem.hpp"
#include "arcsqp/kernels.hpp"
#include "arcsqp/line_search.hpp"
#include "arcsqp/restoration.hpp"

namespace arcsqp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct IterateBundle {
  Vector x;
  double f = 0.0;
  Vector c;
  Vector g;
  Matrix A;
};

double spectral_norm(const Matrix& H) {
  return H.rows() == 0
             ? 0.0
             : Eigen::SelfAdjointEigenSolver<Matrix>(H)
                   .eigenvalues()
                   .cwiseAbs()
                   .maxCoeff();
}

Matrix bfgs_update(const Matrix& H, const Vector& s, const Vector& y) {
  const double sHs = s.dot(H * s);
  if (!(sHs > 0.0)) return H;
  const double sy = s.dot(y);
  Vector yb = y;
  // Powell damping keeps the curvature pair positive definite
  if (sy < 0.2 * sHs) {
    const double theta = 0.8 * sHs / (sHs - sy);
    yb = theta * y + (1.0 - theta) * (H * s);
  }
  const double syb = s.dot(yb);
  if (!(syb > 0.0)) return H;
  const Vector Hs = H * s;
  return H - (Hs * Hs.transpose()) / sHs + (yb * yb.transpose()) / syb;
}

}  // namespace

std::string status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIter: return "max-iter";
    case SolverStatus::RestorationFailed: return "restoration-failed";
    case SolverStatus::RankDeficientUnrecoverable:
      return "rank-deficient-unrecoverable";
  }
  return "?";
}

void SolverConfig::validate() const {
  const auto in01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(gamma1 > 1.0 && gamma1 <= gamma2)) {
    throw ConfigError("need 1 < gamma1 <= gamma2");
  }
  if (!(eta1 > 0.0 && eta1 < eta2 && eta2 < 1.0)) {
    throw ConfigError("need 0 < eta1 < eta2 < 1");
  }
  if (!(beta1 > 0.0 && beta1 <= 1.0)) throw ConfigError("beta1 outside (0,1]");
  if (!(beta2 > 0.0)) throw ConfigError("beta2 must be positive");
  if (!in01(beta3)) throw ConfigError("beta3 outside (0,1)");
  if (!(varsigma > 2.0)) throw ConfigError("varsigma must exceed 2");
  if (!(phi > 2.0)) throw ConfigError("phi must exceed 2");
  if (!(omega >= 1.0)) throw ConfigError("omega must be >= 1");
  if (!(tau >= 1.0)) throw ConfigError("tau must be >= 1");
  if (!in01(gamma_h)) throw ConfigError("gamma_h outside (0,1)");
  if (!in01(gamma_l)) throw ConfigError("gamma_l outside (0,1)");
  if (!in01(mu)) throw ConfigError("mu outside (0,1)");
  if (!(mu_alpha > 0.0 && mu_alpha <= 1.0)) {
    throw ConfigError("mu_alpha outside (0,1]");
  }
  if (!(kappa_h > 0.0)) throw ConfigError("kappa_h must be positive");
  if (!(omega1 > 0.0 && omega1 <= omega2 && omega2 < 1.0)) {
    throw ConfigError("need 0 < omega1 <= omega2 < 1");
  }
  if (!(sigma_min > 0.0 && sigma_min <= sigma0)) {
    throw ConfigError("need 0 < sigma_min <= sigma0");
  }
  if (!(h_max_factor > 0.0)) throw ConfigError("h_max_factor must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (restoration_max_iter < 1) {
    throw ConfigError("restoration_max_iter must be >= 1");
  }
  if (!(rank_tol > 0.0)) throw ConfigError("rank_tol must be positive");
  if (!(subproblem_tol > 0.0)) throw ConfigError("subproblem_tol must be positive");
}

double rho_ratio(double l_new, double l_old, double m_alpha) {
  if (!(m_alpha < 0.0)) {
    throw std::logic_error("rho_ratio requires m_alpha < 0");
  }
  return (l_new - l_old) / m_alpha;
}

double update_sigma(std::optional<double> rho, double sigma,
                    const SolverConfig& params) {
  if (!rho.has_value() || *rho < params.eta1) return params.gamma2 * sigma;
  if (*rho < params.eta2) return params.gamma1 * sigma;
  return std::max(params.sigma_min, 0.5 * sigma);
}

Matrix lagrangian_hessian(const ProblemDef& problem, const Vector& x,
                          const Vector& lambda, HessianStrategy strategy,
                          HessianState& state, EvalCounters& counters,
                          const Vector* g_curr, const Matrix* A_curr) {
  switch (strategy) {
    case HessianStrategy::Exact: {
      if (!problem.has_hessian()) {
        throw ConfigError(problem.name +
                          ": exact Hessian requested but not supplied");
      }
      ++counters.nh;
      Matrix H = problem.lagrangian_hessian(x, lambda);
      if (!H.allFinite()) {
        throw EvaluationError('H', "Hessian returned non-finite value");
      }
      const double asym = (H - H.transpose()).norm();
      if (asym > 1e-10 * (1.0 + H.norm())) {
        throw EvaluationError('H', problem.name + ": Hessian not symmetric");
      }
      return 0.5 * (H + H.transpose()).eval();
    }
    case HessianStrategy::FD:
      return fd_lagrangian_hessian(problem, x, lambda, counters);
    case HessianStrategy::BFGS: {
      if (!state.has_prev) {
        state.H = Matrix::Identity(problem.n, problem.n);
        return state.H;
      }
      Vector g;
      Matrix A;
      if (g_curr != nullptr && A_curr != nullptr) {
        g = *g_curr;
        A = *A_curr;
      } else {
        Evaluation ev = evaluate(problem, x, kEvalG | kEvalA, counters);
        g = std::move(*ev.g);
        A = std::move(*ev.A);
      }
      const Vector s = x - state.x_prev;
      if (s.norm() == 0.0) return state.H;
      // Lagrangian gradient difference with lambda frozen at the new point
      const Vector y = (g - A.transpose() * lambda) -
                       (state.g_prev - state.A_prev.transpose() * lambda);
      state.H = bfgs_update(state.H, s, y);
      return state.H;
    }
  }
  throw ConfigError("unknown Hessian strategy");
}

SolverReport solve(const ProblemDef& problem, const SolverConfig& config) {
  config.validate();
  problem.validate();
  if (config.hessian_strategy == HessianStrategy::Exact &&
      !problem.has_hessian()) {
    throw ConfigError(problem.name +
                      ": exact Hessian requested but not supplied");
  }

  const auto t0 = std::chrono::steady_clock::now();
  SolverReport report;
  report.used_fd_gradient = !problem.has_gradient();
  report.used_fd_jacobian = !problem.has_jacobian();
  EvalCounters& counters = report.counters;

  IterateBundle cur;
  {
    Evaluation ev = evaluate(problem, problem.x0,
                             kEvalF | kEvalC | kEvalG | kEvalA, counters);
    cur = IterateBundle{problem.x0, *ev.f, std::move(*ev.c), std::move(*ev.g),
                        std::move(*ev.A)};
  }

  Filter filter(config.h_max_factor * std::max(1.0, cur.c.norm()),
                config.gamma_h, config.gamma_l);
  double sigma = config.sigma0;
  HessianState hstate;
  report.res = kNaN;

  int small_moves = 0;
  bool prev_rank_deficient = false;
  int k = 0;

  const auto finish = [&](SolverStatus status, int nit, double res) {
    report.status = status;
    report.nit = nit;
    report.res = res;
    report.x_final = cur.x;
    report.final_filter = filter.entries();
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  };

  // runs restoration and installs the restored point as the next iterate;
  // false means the solve ends with the reported status
  const auto run_restoration = [&](IterationRecord& rec,
                                   bool require_normal_bound) -> bool {
    rec.step_type = 'r';
    const RestorationResult rr = restore(problem, cur.x, filter, counters,
                                         config, require_normal_bound, sigma);
    rec.restoration_trace = rr.h_trace;
    if (rr.status != RestorationStatus::Restored) {
      report.history.push_back(rec);
      finish(SolverStatus::RestorationFailed, k + 1, kNaN);
      return false;
    }
    const double move = (rr.x_new - cur.x).norm();
    small_moves = move <= 1e-15 * (1.0 + cur.x.norm()) ? small_moves + 1 : 0;
    cur = IterateBundle{rr.x_new, rr.point->f, rr.point->c, rr.point->g,
                        rr.point->A};
    report.history.push_back(rec);
    return true;
  };

  for (k = 0; k < config.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.sigma = sigma;

    bool have_fac = true;
    JacobianFactorization fac;
    try {
      fac = factorize_jacobian(cur.A, config.rank_tol);
    } catch (const RankDeficiencyError&) {
      have_fac = false;
    }

    if (!have_fac) {
      if (prev_rank_deficient) {
        finish(SolverStatus::RankDeficientUnrecoverable, k, kNaN);
        return report;
      }
      prev_rank_deficient = true;
      rec.h = cur.c.norm();
      rec.l = kNaN;
      rec.res = kNaN;
      if (!run_restoration(rec, false)) return report;
      continue;
    }
    prev_rank_deficient = false;

    const KktQuantities kkt = kkt_quantities(cur.f, cur.g, cur.c, fac);
    rec.h = kkt.h;
    rec.l = kkt.lagrangian_value;
    rec.res = kkt.res;
    rec.pg_norm = kkt.pg_norm;

    if (kkt.res <= config.epsilon) {
      finish(SolverStatus::Converged, k, kkt.res);
      return report;
    }
    if (small_moves >= 2) {
      // two consecutive null moves: the iteration is stuck
      finish(SolverStatus::MaxIter, k, kkt.res);
      return report;
    }

    const Matrix H = lagrangian_hessian(problem, cur.x, kkt.lambda,
                                        config.hessian_strategy, hstate,
                                        counters, &cur.g, &cur.A);
    if (config.hessian_strategy == HessianStrategy::BFGS) {
      hstate.has_prev = true;
      hstate.x_prev = cur.x;
      hstate.g_prev = cur.g;
      hstate.A_prev = cur.A;
    }
    rec.H_norm = spectral_norm(H);

    const Vector nstep = normal_step(fac, cur.c);
    if (!normal_step_condition(nstep, sigma, config.beta1, config.beta2,
                               config.beta3)) {
      filter.add(kkt.h, kkt.lagrangian_value);
      rec.filter_augmented = true;
      if (!run_restoration(rec, true)) return report;
      continue;
    }

    const TangentialModel model{cur.f, kkt.pg, H, sigma, &fac};
    const SubproblemSolution sub =
        solve_reduced_arc(model, config.subproblem_tol);
    const Vector d = nstep + sub.t;

    rec.has_step = true;
    rec.model_decrease = sub.decrease;
    rec.cauchy_decrease = sub.cauchy_decrease;
    rec.t_norm = sub.t.norm();
    rec.reduced_psd = sub.reduced_empty || sub.reduced_min_eig >= 0.0;
    rec.reduced_min_eig = sub.reduced_min_eig;
    rec.lin_residual = (cur.A * d + cur.c).norm();

    Vector dlam_d = Vector::Zero(problem.m);
    if (kkt.h > 0.0 && d.norm() > 0.0) {
      try {
        dlam_d = directional_multiplier_derivative(problem, cur.x, d,
                                                   kkt.lambda, counters,
                                                   config.rank_tol);
      } catch (const RankDeficiencyError&) {
        rec.dlam_dropped = true;
      } catch (const EvaluationError&) {
        rec.dlam_dropped = true;
      }
    }

    const SearchContext ctx(cur.x, cur.f, cur.g, cur.c, kkt.h,
                            kkt.lagrangian_value, sub.t, d, H, sigma, dlam_d);
    const LineSearchOutcome ls =
        backtracking_search(ctx, filter, problem, counters, config);
    rec.ls_trials = ls.trials;
    for (const TrialRecord& tr : ls.trial_log) {
      rec.rejected_trials.emplace_back(tr.alpha, reject_reason_code(tr.reason));
    }

    if (ls.kind == LineSearchKind::Restoration) {
      // the rejected iterate joins the filter before restoration starts
      filter.add(kkt.h, kkt.lagrangian_value);
      rec.filter_augmented = true;
      if (!run_restoration(rec, false)) return report;
      continue;
    }

    if (ls.kind == LineSearchKind::AcceptedHType) {
      filter.add(kkt.h, kkt.lagrangian_value);
      rec.filter_augmented = true;
      rec.step_type = 'h';
    } else {
      rec.step_type = 'f';
    }
    rec.alpha = ls.alpha;

    if (ls.m_alpha < 0.0) {
      sigma = update_sigma(rho_ratio(ls.accepted->l, kkt.lagrangian_value,
                                     ls.m_alpha),
                           sigma, config);
    } else {
      sigma = update_sigma(std::nullopt, sigma, config);
    }

    const double move = ls.alpha * d.norm();
    small_moves = move <= 1e-15 * (1.0 + cur.x.norm()) ? small_moves + 1 : 0;

    cur = IterateBundle{ls.accepted->x, ls.accepted->f, ls.accepted->c,
                        ls.accepted->g, ls.accepted->A};
    report.history.push_back(rec);
  }

  // iteration budget exhausted; report the residual where we stopped
  double final_res = kNaN;
  try {
    const JacobianFactorization fac = factorize_jacobian(cur.A, config.rank_tol);
    final_res = kkt_quantities(cur.f, cur.g, cur.c, fac).res;
  } catch (const RankDeficiencyError&) {
  }
  finish(SolverStatus::MaxIter, config.max_iter, final_res);
  return report;
}

}  // namespace arcsqp
