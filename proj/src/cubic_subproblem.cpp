#include "arcsqp/cubic_subproblem.hpp"

#include <cmath>
#include <limits>

namespace arcsqp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ||w(nu)|| for (H_r + nu I) w = -g_r in the eigenbasis. Returns inf when a
// singular denominator meets a nonzero gradient component.
double secular_norm(const Vector& lam, const Vector& ghat, double nu) {
  double s = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    if (ghat[i] == 0.0) continue;
    const double d = lam[i] + nu;
    if (d <= 0.0) return kInf;
    const double r = ghat[i] / d;
    s += r * r;
  }
  return std::sqrt(s);
}

double secular_norm_derivative(const Vector& lam, const Vector& ghat,
                               double nu, double norm_w) {
  double s = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    if (ghat[i] == 0.0) continue;
    const double d = lam[i] + nu;
    s += ghat[i] * ghat[i] / (d * d * d);
  }
  return -s / norm_w;
}

Vector secular_solution(const Vector& lam, const Vector& ghat, double nu) {
  Vector w(lam.size());
  for (int i = 0; i < lam.size(); ++i) {
    w[i] = ghat[i] == 0.0 ? 0.0 : -ghat[i] / (lam[i] + nu);
  }
  return w;
}

double reduced_model(const Vector& g_r, const Matrix& H_r, double sigma,
                     const Vector& w) {
  const double nw = w.norm();
  return g_r.dot(w) + 0.5 * w.dot(H_r * w) + sigma / 3.0 * nw * nw * nw;
}

SubproblemSolution cauchy_fallback(const TangentialModel& model,
                                   const CauchyStep& cs, double lam_min) {
  SubproblemSolution sol;
  sol.t = cs.t;
  sol.decrease = cs.decrease;
  sol.cauchy_decrease = cs.decrease;
  sol.model_value = model.f0 - cs.decrease;
  sol.status = SubproblemStatus::CauchyOnly;
  sol.nu = 0.0;
  sol.reduced_min_eig = lam_min;
  return sol;
}

}  // namespace

CauchyStep cauchy_step(const TangentialModel& model) {
  CauchyStep out;
  const double png = model.pg.norm();
  out.t = Vector::Zero(model.pg.size());
  if (png == 0.0) return out;

  // minimize phi(beta) = -beta ||pg||^2 + (1/2) beta^2 pg^T H pg
  //                      + (sigma/3) beta^3 ||pg||^3 over beta >= 0
  const double a = model.sigma * png * png * png;  // phi''' / 2 term coeff
  const double b = model.pg.dot(model.H * model.pg);
  const double png2 = png * png;

  double beta;
  if (a == 0.0) {
    // cubic coefficient underflowed; quadratic or linear model along -pg
    if (b <= 0.0) return out;
    beta = png2 / b;
  } else {
    const double disc = std::sqrt(b * b + 4.0 * a * png2);
    beta = b >= 0.0 ? 2.0 * png2 / (b + disc) : (disc - b) / (2.0 * a);
  }
  out.t = -beta * model.pg;
  out.decrease =
      beta * png2 - 0.5 * beta * beta * b - a / 3.0 * beta * beta * beta;
  return out;
}

SubproblemSolution solve_reduced_arc(const TangentialModel& model,
                                     double tol) {
  const Matrix& Z = model.fac->Z;
  const int p = static_cast<int>(Z.cols());
  const double sigma = model.sigma;

  SubproblemSolution sol;
  if (p == 0) {
    sol.t = Vector::Zero(model.fac->n);
    sol.model_value = model.f0;
    sol.reduced_empty = true;
    return sol;
  }

  const CauchyStep cs = cauchy_step(model);

  const Vector g_r = Z.transpose() * model.pg;
  Matrix H_r = Z.transpose() * model.H * Z;
  H_r = 0.5 * (H_r + H_r.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(H_r);
  if (es.info() != Eigen::Success) {
    return cauchy_fallback(model, cs, 0.0);
  }
  const Matrix& Q = es.eigenvectors();
  const Vector& lam = es.eigenvalues();  // ascending
  const double lam_min = lam[0];
  Vector ghat = Q.transpose() * g_r;

  const double nu_lo = std::max(0.0, -lam_min);
  const double eig_scale = std::max(std::abs(lam[0]), std::abs(lam[p - 1]));
  const double sing_tol = 1e-12 * std::max(1.0, eig_scale);

  Vector w;
  double nu = 0.0;
  SubproblemStatus status = SubproblemStatus::SecularConverged;

  if (g_r.norm() == 0.0 && lam_min >= 0.0) {
    w = Vector::Zero(p);
  } else {
    bool hard_case = false;
    if (lam_min < 0.0) {
      // components that become singular at nu = nu_lo
      double g_sing = 0.0;
      for (int i = 0; i < p; ++i) {
        if (lam[i] + nu_lo <= sing_tol) g_sing = std::max(g_sing, std::abs(ghat[i]));
      }
      if (g_sing <= 1e-11 * std::max(1.0, g_r.norm())) {
        // gradient has no component along the minimal eigenspace; the
        // secular root may fall below -lam_min (hard case)
        for (int i = 0; i < p; ++i) {
          if (lam[i] + nu_lo <= sing_tol) ghat[i] = 0.0;
        }
        const double n_hard = secular_norm(lam, ghat, nu_lo);
        const double target = nu_lo / sigma;
        if (n_hard < target) {
          hard_case = true;
          nu = nu_lo;
          const Vector wp = Q * secular_solution(lam, ghat, nu_lo);
          const double xi =
              std::sqrt(std::max(0.0, target * target - n_hard * n_hard));
          Vector q = Q.col(0);
          for (int i = 0; i < p; ++i) {
            if (q[i] != 0.0) {
              if (q[i] < 0.0) q = -q;
              break;
            }
          }
          const Vector w_plus = wp + xi * q;
          const Vector w_minus = wp - xi * q;
          const double m_plus = reduced_model(g_r, H_r, sigma, w_plus);
          const double m_minus = reduced_model(g_r, H_r, sigma, w_minus);
          w = m_minus < m_plus ? w_minus : w_plus;
          status = SubproblemStatus::HardCase;
        }
      }
    }

    if (!hard_case) {
      // safeguarded Newton/bisection on psi(nu) = ||w(nu)|| - nu/sigma over
      // nu in [nu_lo, inf); psi is strictly decreasing there
      double lo = nu_lo;
      double hi = nu_lo + std::max(1.0, nu_lo);
      int guard = 0;
      while (secular_norm(lam, ghat, hi) - hi / sigma > 0.0) {
        hi = nu_lo + 2.0 * (hi - nu_lo);
        if (++guard > 600) return cauchy_fallback(model, cs, lam_min);
      }
      nu = 0.5 * (lo + hi);
      {
        // the root may sit exactly on the boundary
        const double n_lo = secular_norm(lam, ghat, lo);
        if (std::isfinite(n_lo) &&
            std::abs(sigma * n_lo - lo) <= tol * (1.0 + lo)) {
          nu = lo;
        }
      }
      bool converged = false;
      for (int iter = 0; iter < 200; ++iter) {
        const double nw = secular_norm(lam, ghat, nu);
        if (std::isfinite(nw) &&
            std::abs(sigma * nw - nu) <= tol * (1.0 + nu)) {
          converged = true;
          break;
        }
        const double psi = nw - nu / sigma;
        if (psi > 0.0) {
          lo = nu;
        } else {
          hi = nu;
        }
        double next;
        if (std::isfinite(nw) && nw > 0.0) {
          const double dpsi =
              secular_norm_derivative(lam, ghat, nu, nw) - 1.0 / sigma;
          next = nu - psi / dpsi;
        } else {
          next = 0.5 * (lo + hi);
        }
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        nu = next;
      }
      if (!converged) return cauchy_fallback(model, cs, lam_min);
      w = Q * secular_solution(lam, ghat, nu);
    }
  }

  sol.t = Z * w;
  sol.model_value = model.f0 + reduced_model(g_r, H_r, sigma, w);
  sol.decrease = model.f0 - sol.model_value;
  sol.cauchy_decrease = cs.decrease;
  sol.status = status;
  sol.nu = nu;
  sol.reduced_min_eig = lam_min;

  if (sol.decrease < cs.decrease) {
    sol = cauchy_fallback(model, cs, lam_min);
  }
  return sol;
}

double tangential_model_value(const Vector& t, double f0, const Vector& g,
                              const Matrix& H, double sigma) {
  const double nt = t.norm();
  return f0 + g.dot(t) + 0.5 * t.dot(H * t) + sigma / 3.0 * nt * nt * nt;
}

}  // namespace arcsqp
