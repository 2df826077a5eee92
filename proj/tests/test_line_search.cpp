#include <doctest.h>

#include <cmath>

#include "arcsqp/cubic_subproblem.hpp"
#include "arcsqp/kernels.hpp"
#include "arcsqp/line_search.hpp"

using namespace arcsqp;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v1(double a) {
  Vector v(1);
  v << a;
  return v;
}

// ctx with prescribed model ingredients: g^T t, t^T H t, sigma ||t||^3,
// (dlam)^T c, plus h and the current Lagrangian value
SearchContext scalar_ctx(double gt, double tHt, double st3, double dlam,
                         double c_val, double l_cur) {
  const Vector x = v2(0.0, 0.0);
  const Vector g = v2(gt >= 0 ? gt : -gt, 0.0);
  Vector t = v2(gt >= 0 ? 1.0 : -1.0, 0.0);  // g.t == gt with |t| = 1
  Matrix H = Matrix::Zero(2, 2);
  H(0, 0) = tHt;  // t^T H t == tHt
  const double sigma = st3;  // with ||t|| = 1, sigma ||t||^3 == st3
  return SearchContext(x, 0.0, g, v1(c_val), std::abs(c_val), l_cur, t,
                       Vector(t), H, sigma, v1(dlam));
}

}  // namespace

TEST_SUITE("line_search") {
  TEST_CASE("model vanishes at alpha = 0") {
    const SearchContext ctx = scalar_ctx(-1.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    CHECK(model_m(0.0, ctx) == 0.0);
  }

  TEST_CASE("model arithmetic") {
    const SearchContext ctx = scalar_ctx(-1.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    CHECK(model_m(1.0, ctx) == doctest::Approx(-2.0 / 3.0));
    const SearchContext ctx2 = scalar_ctx(-1.0, 0.0, 1.0, 0.5, 0.2, 0.0);
    CHECK(model_m(1.0, ctx2) == doctest::Approx(-2.0 / 3.0 - 0.1));
  }

  TEST_CASE("switching condition") {
    SolverConfig p;
    p.kappa_h = 1e-4;
    p.varsigma = 2.01;
    p.omega = 1.0;
    CHECK(switching_holds(-2.0 / 3.0, 1.0, 1.0, 0.1, p));
    CHECK_FALSE(switching_holds(0.1, 1.0, 1.0, 0.1, p));
    CHECK(switching_holds(-1e-9, 1.0, 1.0, 0.0, p));
  }

  TEST_CASE("sufficient decrease") {
    CHECK(sufficient_decrease_holds(1.0 - 7e-5, 1.0, -2.0 / 3.0, 1e-4));
    CHECK_FALSE(sufficient_decrease_holds(1.0 - 6e-5, 1.0, -2.0 / 3.0, 1e-4));
    CHECK_FALSE(sufficient_decrease_holds(1.0, 1.0, -1.0, 0.5));
    CHECK(sufficient_decrease_holds(1.0, 1.0, 0.0, 0.5));  // boundary
  }

  TEST_CASE("alpha_min threshold") {
    SolverConfig p;
    p.mu_alpha = 1.0;
    p.gamma_h = 1e-5;
    p.gamma_l = 1e-5;
    p.kappa_h = 1e-4;
    p.phi = 2.01;
    p.tau = 1.0;

    // delta <= 0 branch
    const SearchContext neg = scalar_ctx(1.0, 0.0, 1.0, 0.0, 0.1, 0.0);
    CHECK(compute_alpha_min(neg, p) == doctest::Approx(1e-5));

    // delta = 2, h = 0.1, sigma = 1
    SearchContext pos = scalar_ctx(-2.0, 0.0, 1.0, 0.0, 0.1, 0.0);
    CHECK(pos.h == doctest::Approx(0.1));
    CHECK(compute_alpha_min(pos, p) ==
          doctest::Approx(1e-4 * std::pow(0.1, 2.01) / 2.0).epsilon(1e-10));

    // h = 0 annihilates both h terms
    const SearchContext feas = scalar_ctx(-2.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    CHECK(compute_alpha_min(feas, p) == 0.0);
  }

  TEST_CASE("full step accepted by sufficient decrease") {
    // f = ||x||^2 / 2, c = x1 + x2 - 2, from the feasible point (2, 0)
    ProblemDef prob;
    prob.name = "quad";
    prob.n = 2;
    prob.m = 1;
    prob.x0 = v2(2.0, 0.0);
    prob.objective = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
    prob.gradient = [](const Vector& x) { return x; };
    prob.constraints = [](const Vector& x) { return v1(x[0] + x[1] - 2.0); };
    prob.jacobian = [](const Vector&) {
      Matrix A(1, 2);
      A << 1.0, 1.0;
      return A;
    };

    SolverConfig params;
    EvalCounters counters;
    const Vector x = v2(2.0, 0.0);
    const Vector g = x;
    const Vector c = v1(0.0);
    const Matrix A = prob.jacobian(x);
    const JacobianFactorization fac = factorize_jacobian(A);
    const KktQuantities kkt = kkt_quantities(2.0, g, c, fac);
    REQUIRE(kkt.pg_norm > 0.5);

    const TangentialModel model{2.0, kkt.pg, Matrix::Identity(2, 2), 1e-4,
                                &fac};
    const SubproblemSolution sub = solve_reduced_arc(model, 1e-10);
    const Vector nstep = normal_step(fac, c);
    REQUIRE(nstep.norm() == 0.0);
    const Vector d = nstep + sub.t;

    const SearchContext ctx(x, 2.0, g, c, kkt.h, kkt.lagrangian_value, sub.t,
                            d, Matrix::Identity(2, 2), 1e-4,
                            Vector::Zero(1));
    Filter filter(10.0, params.gamma_h, params.gamma_l);
    const LineSearchOutcome out =
        backtracking_search(ctx, filter, prob, counters, params);
    CHECK(out.kind == LineSearchKind::AcceptedFType);
    CHECK(out.alpha == 1.0);
    CHECK(out.trials == 1);
    CHECK(out.m_alpha < 0.0);  // f-type acceptance implies a negative model

    // the trial Lagrangian was formed with multipliers at the trial point
    const AcceptedPoint& pt = *out.accepted;
    const Vector lam = multipliers(factorize_jacobian(pt.A), pt.g);
    CHECK(std::abs((pt.f - lam.dot(pt.c)) - pt.l) <= 1e-12);
  }

  TEST_CASE("alpha_min above one sends the search to restoration") {
    SolverConfig params;
    params.gamma_h = 1.5;  // deliberately out of range; not validated here
    params.mu_alpha = 1.0;
    ProblemDef prob;
    prob.name = "unused";
    prob.n = 2;
    prob.m = 1;
    prob.x0 = v2(0.0, 0.0);
    prob.objective = [](const Vector&) { return 0.0; };
    prob.constraints = [](const Vector&) { return v1(0.0); };
    const SearchContext ctx = scalar_ctx(1.0, 0.0, 1.0, 0.0, 0.5, 0.0);
    Filter filter(10.0, 0.1, 0.1);
    EvalCounters counters;
    const LineSearchOutcome out =
        backtracking_search(ctx, filter, prob, counters, params);
    CHECK(out.kind == LineSearchKind::Restoration);
    CHECK(out.trials == 0);
  }

  TEST_CASE("filter rejection then h-type acceptance") {
    ProblemDef prob;
    prob.name = "line";
    prob.n = 2;
    prob.m = 1;
    prob.x0 = v2(0.0, 0.0);
    prob.objective = [](const Vector&) { return 0.0; };
    prob.gradient = [](const Vector&) { return v2(0.0, 0.0); };
    prob.constraints = [](const Vector& x) { return v1(x[0] - 0.5); };
    prob.jacobian = [](const Vector&) {
      Matrix A(1, 2);
      A << 1.0, 0.0;
      return A;
    };

    SolverConfig params;
    EvalCounters counters;
    Filter filter(10.0, 0.1, 0.1);
    filter.add(0.55, -1.0);  // makes the alpha = 1 trial prohibited

    const Vector x = v2(0.0, 0.0);
    const SearchContext ctx(x, 0.0, v2(0.0, 0.0), v1(-0.5), 0.5, 0.0,
                            v2(0.0, 0.0), v2(1.0, 0.0), Matrix::Zero(2, 2),
                            1.0, v1(0.0));
    const LineSearchOutcome out =
        backtracking_search(ctx, filter, prob, counters, params);
    CHECK(out.kind == LineSearchKind::AcceptedHType);
    CHECK(out.alpha == 0.5);
    CHECK(out.trials == 2);
    REQUIRE(out.trial_log.size() == 1);
    CHECK(out.trial_log[0].reason == RejectReason::FRejectFilter);
    CHECK(reject_reason_code(out.trial_log[0].reason) == "F-REJECT-FILTER");
    // the accepted pair satisfies the margins against the seeded filter
    CHECK(filter.margins_hold(out.accepted->h, out.accepted->l));

    // tried step sizes halve
    CHECK(out.trial_log[0].alpha == 1.0);
    CHECK(out.alpha == 0.5 * out.trial_log[0].alpha);
  }

  TEST_CASE("non-finite trial values reject the step size") {
    ProblemDef prob;
    prob.name = "blowup";
    prob.n = 2;
    prob.m = 1;
    prob.x0 = v2(0.0, 0.0);
    prob.objective = [](const Vector& x) {
      return x[0] > 0.75 ? std::numeric_limits<double>::quiet_NaN()
                         : x[0];
    };
    prob.gradient = [](const Vector&) { return v2(1.0, 0.0); };
    prob.constraints = [](const Vector& x) { return v1(x[0] - 0.25); };
    prob.jacobian = [](const Vector&) {
      Matrix A(1, 2);
      A << 1.0, 0.0;
      return A;
    };
    SolverConfig params;
    EvalCounters counters;
    Filter filter(10.0, 0.1, 0.1);
    const SearchContext ctx(v2(0.0, 0.0), 0.0, v2(1.0, 0.0), v1(-0.25), 0.25,
                            0.0, v2(0.0, 0.0), v2(1.0, 0.0),
                            Matrix::Zero(2, 2), 1.0, v1(0.0));
    const LineSearchOutcome out =
        backtracking_search(ctx, filter, prob, counters, params);
    REQUIRE(out.kind == LineSearchKind::AcceptedHType);
    REQUIRE(!out.trial_log.empty());
    CHECK(out.trial_log[0].reason == RejectReason::EvalFail);
    CHECK(out.accepted->x[0] <= 0.75);
  }
}
