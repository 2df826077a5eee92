#include "arcsqp/line_search.hpp"

#include <cmath>
#include <utility>

namespace arcsqp {

SearchContext::SearchContext(Vector x_, double f0_, Vector g_, Vector c_,
                             double h_, double l_, Vector t_, Vector d_,
                             Matrix H_, double sigma_, Vector dlam_d_)
    : x(std::move(x_)),
      f0(f0_),
      g(std::move(g_)),
      c(std::move(c_)),
      h(h_),
      l(l_),
      t(std::move(t_)),
      d(std::move(d_)),
      H(std::move(H_)),
      sigma(sigma_),
      dlam_d(std::move(dlam_d_)) {
  gt = g.dot(t);
  tHt = t.dot(H * t);
  const double nt = t.norm();
  st3 = sigma * nt * nt * nt;
  dlam_c = dlam_d.dot(c);
}

double model_m(double alpha, const SearchContext& ctx) {
  if (alpha == 0.0) return 0.0;
  return alpha * ctx.gt + 0.5 * alpha * alpha * ctx.tHt +
         alpha * alpha * alpha / 3.0 * ctx.st3 - alpha * ctx.dlam_c;
}

bool switching_holds(double m_alpha, double alpha, double sigma, double h,
                     const SolverConfig& params) {
  if (!(m_alpha < 0.0)) return false;
  const double lhs =
      params.omega == 1.0
          ? -m_alpha
          : std::pow(-m_alpha, params.omega) *
                std::pow(alpha * std::sqrt(sigma), params.omega - 1.0);
  return lhs > params.kappa_h * std::pow(h, params.varsigma);
}

bool sufficient_decrease_holds(double l_trial, double l_current,
                               double m_alpha, double mu) {
  return l_trial <= l_current + mu * m_alpha;
}

double compute_alpha_min(const SearchContext& ctx,
                         const SolverConfig& params) {
  const double delta = -ctx.gt + ctx.dlam_c;
  if (delta > 0.0) {
    const double term_l = params.gamma_l * ctx.h / delta;
    const double term_h = params.kappa_h * std::pow(ctx.h, params.phi) *
                          std::pow(ctx.sigma, 1.0 - params.tau) /
                          std::pow(delta, params.tau);
    return params.mu_alpha *
           std::min(params.gamma_h, std::min(term_l, term_h));
  }
  return params.mu_alpha * params.gamma_h;
}

std::string reject_reason_code(RejectReason r) {
  switch (r) {
    case RejectReason::FRejectFilter: return "F-REJECT-FILTER";
    case RejectReason::FRejectArmijo: return "F-REJECT-ARMIJO";
    case RejectReason::HReject: return "H-REJECT";
    case RejectReason::EvalFail: return "EVAL-FAIL";
  }
  return "?";
}

LineSearchOutcome backtracking_search(const SearchContext& ctx,
                                      const Filter& filter,
                                      const ProblemDef& problem,
                                      EvalCounters& counters,
                                      const SolverConfig& params) {
  LineSearchOutcome out;
  const double alpha_min = compute_alpha_min(ctx, params);
  double alpha = 1.0;

  while (alpha >= alpha_min) {
    const Vector x_trial = ctx.x + alpha * ctx.d;
    bool eval_ok = true;
    AcceptedPoint pt;
    try {
      Evaluation ev = evaluate(problem, x_trial,
                               kEvalF | kEvalC | kEvalG | kEvalA, counters);
      pt.x = x_trial;
      pt.f = *ev.f;
      pt.c = std::move(*ev.c);
      pt.g = std::move(*ev.g);
      pt.A = std::move(*ev.A);
      pt.fac = factorize_jacobian(pt.A, params.rank_tol);
      pt.lambda = multipliers(pt.fac, pt.g);
      pt.h = pt.c.norm();
      pt.l = pt.f - pt.lambda.dot(pt.c);
      if (!std::isfinite(pt.l)) eval_ok = false;
    } catch (const EvaluationError&) {
      eval_ok = false;
    } catch (const RankDeficiencyError&) {
      eval_ok = false;
    }
    ++out.trials;

    if (!eval_ok) {
      out.trial_log.push_back({alpha, RejectReason::EvalFail});
      alpha *= params.omega1;
      continue;
    }

    if (filter.in_region(pt.h, pt.l)) {
      out.trial_log.push_back({alpha, RejectReason::FRejectFilter});
      alpha *= params.omega1;
      continue;
    }

    const double m_alpha = model_m(alpha, ctx);
    if (switching_holds(m_alpha, alpha, ctx.sigma, ctx.h, params)) {
      if (sufficient_decrease_holds(pt.l, ctx.l, m_alpha, params.mu)) {
        out.kind = LineSearchKind::AcceptedFType;
        out.alpha = alpha;
        out.m_alpha = m_alpha;
        out.accepted = std::move(pt);
        return out;
      }
      out.trial_log.push_back({alpha, RejectReason::FRejectArmijo});
      alpha *= params.omega1;
      continue;
    }

    if (pt.h < filter.h_max() && filter.margins_hold(pt.h, pt.l)) {
      out.kind = LineSearchKind::AcceptedHType;
      out.alpha = alpha;
      out.m_alpha = m_alpha;
      out.accepted = std::move(pt);
      return out;
    }
    out.trial_log.push_back({alpha, RejectReason::HReject});
    alpha *= params.omega1;
  }

  out.kind = LineSearchKind::Restoration;
  return out;
}

}  // namespace arcsqp
