#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "arcsqp/cubic_subproblem.hpp"
#include "arcsqp/kernels.hpp"

using namespace arcsqp;

namespace {

const double kRoot2 = std::sqrt(2.0);

double spectral_norm(const Matrix& H) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(H).eigenvalues().cwiseAbs().maxCoeff();
}

double cauchy_lower_bound(double pg_norm, double H_norm, double sigma) {
  if (pg_norm == 0.0) return 0.0;
  return pg_norm / (6.0 * kRoot2) *
         std::min(pg_norm / (1.0 + H_norm), 0.5 * std::sqrt(pg_norm / sigma));
}

// n = 2, m = 1 factorization whose null space is spanned by (0, 1)
JacobianFactorization axis_fac() {
  Matrix A(1, 2);
  A << 1.0, 0.0;
  return factorize_jacobian(A);
}

}  // namespace

TEST_SUITE("cubic_subproblem") {
  TEST_CASE("cauchy step on a pure-gradient model") {
    const JacobianFactorization fac = axis_fac();
    Vector pg(2);
    pg << 1.0, 0.0;
    TangentialModel model{0.0, pg, Matrix::Zero(2, 2), 1.0, &fac};
    const CauchyStep cs = cauchy_step(model);
    CHECK(cs.t[0] == doctest::Approx(-1.0));
    CHECK(cs.t[1] == doctest::Approx(0.0));
    CHECK(cs.decrease == doctest::Approx(2.0 / 3.0));
    CHECK(cs.decrease >= cauchy_lower_bound(1.0, 0.0, 1.0));
    CHECK(cauchy_lower_bound(1.0, 0.0, 1.0) ==
          doctest::Approx(0.0589255).epsilon(1e-4));
  }

  TEST_CASE("cauchy step vanishes without a descent direction") {
    const JacobianFactorization fac = axis_fac();
    TangentialModel model{3.0, Vector::Zero(2), Matrix::Identity(2, 2), 2.0,
                          &fac};
    const CauchyStep cs = cauchy_step(model);
    CHECK(cs.t.norm() == 0.0);
    CHECK(cs.decrease == 0.0);
  }

  TEST_CASE("cauchy step with curvature solves the scalar quadratic") {
    const JacobianFactorization fac = axis_fac();
    Vector pg(2);
    pg << 2.0, 0.0;
    TangentialModel model{0.0, pg, Matrix::Identity(2, 2), 1.5, &fac};
    const CauchyStep cs = cauchy_step(model);
    // phi'(beta) = -4 + 4 beta + 12 beta^2
    const double beta = (-4.0 + std::sqrt(208.0)) / 24.0;
    CHECK(cs.t[0] == doctest::Approx(-2.0 * beta).epsilon(1e-10));
    CHECK(beta == doctest::Approx(0.43426).epsilon(1e-4));
  }

  TEST_CASE("one-dimensional reduced solve hits the stationarity root") {
    const JacobianFactorization fac = axis_fac();
    const Matrix Z = fac.Z;  // n x 1
    // reduced data g_r = -4, H_r = 2, sigma = 3 in the Z coordinate
    const Vector pg = Z * -4.0;
    const Matrix H = Z * 2.0 * Z.transpose();
    TangentialModel model{0.0, pg, H, 3.0, &fac};
    const SubproblemSolution sol = solve_reduced_arc(model, 1e-10);
    const double w = (Z.transpose() * sol.t)(0);
    const double w_ref = (-2.0 + std::sqrt(52.0)) / 6.0;  // 3w^2 + 2w - 4 = 0
    CHECK(w == doctest::Approx(w_ref).epsilon(1e-8));
    CHECK(sol.nu == doctest::Approx(3.0 * w_ref).epsilon(1e-6));
    CHECK(std::abs((2.0 + sol.nu) * w - 4.0) <= 1e-8);
    CHECK(sol.status == SubproblemStatus::SecularConverged);
  }

  TEST_CASE("zero reduced gradient with convex curvature stays at the origin") {
    const JacobianFactorization fac = axis_fac();
    const Matrix H = fac.Z * 5.0 * fac.Z.transpose();
    TangentialModel model{1.0, Vector::Zero(2), H, 2.0, &fac};
    const SubproblemSolution sol = solve_reduced_arc(model, 1e-10);
    CHECK(sol.t.norm() == 0.0);
    CHECK(sol.nu == 0.0);
    CHECK(sol.model_value == doctest::Approx(1.0));
  }

  TEST_CASE("square Jacobian leaves no tangential freedom") {
    const JacobianFactorization fac =
        factorize_jacobian(Matrix::Identity(2, 2));
    TangentialModel model{4.0, Vector::Zero(2), Matrix::Identity(2, 2), 1.0,
                          &fac};
    const SubproblemSolution sol = solve_reduced_arc(model, 1e-10);
    CHECK(sol.reduced_empty);
    CHECK(sol.t.norm() == 0.0);
    CHECK(sol.decrease == 0.0);
    CHECK(sol.status == SubproblemStatus::CauchyOnly);
  }

  TEST_CASE("hard case pins the multiplier at the eigenvalue boundary") {
    Matrix A(1, 3);
    A << 1.0, 0.0, 0.0;
    const JacobianFactorization fac = factorize_jacobian(A);
    const Matrix& Z = fac.Z;  // 3 x 2
    Matrix Hr(2, 2);
    Hr << -1.0, 0.0, 0.0, 1.0;
    Vector gr(2);
    gr << 0.0, 1.0;
    const Matrix H = Z * Hr * Z.transpose();
    const Vector pg = Z * gr;
    TangentialModel model{0.0, pg, H, 1.0, &fac};
    const SubproblemSolution sol = solve_reduced_arc(model, 1e-10);
    CHECK(sol.status == SubproblemStatus::HardCase);
    CHECK(sol.nu == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.t.norm() == doctest::Approx(1.0).epsilon(1e-8));
    const Vector w = Z.transpose() * sol.t;
    CHECK(std::abs(w[1] + 0.5) <= 1e-8);
    CHECK(std::abs(std::abs(w[0]) - std::sqrt(3.0) / 2.0) <= 1e-8);
    // -1/2 * 1/2 - 1/4 + 1/3 at the boundary solution
    CHECK(sol.model_value ==
          doctest::Approx(-0.5 - 0.25 + 1.0 / 3.0).epsilon(1e-9));
  }

  TEST_CASE("tangential model value") {
    Vector g(2);
    g << 1.0, 0.0;
    CHECK(tangential_model_value(Vector::Zero(2), 7.5, g,
                                 Matrix::Identity(2, 2), 3.0) == 7.5);
    Vector t(2);
    t << -1.0, 0.0;
    CHECK(tangential_model_value(t, 1.0, g, Matrix::Zero(2, 2), 1.0) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(tangential_model_value(Vector(0.0 * t), 1.0, g, Matrix::Zero(2, 2),
                                 1.0) == doctest::Approx(1.0));
  }

  TEST_CASE("random models: Cauchy bound, dominance, optimality, step bound") {
    std::mt19937 rng(777);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> logsig(-3.0, 1.0);
    std::uniform_int_distribution<int> ndist(2, 9);
    int tested = 0;
    while (tested < 500) {
      const int n = ndist(rng);
      std::uniform_int_distribution<int> mdist(std::max(1, n - 8), n - 1);
      const int m = mdist(rng);
      Matrix A(m, n);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = normal(rng);
      }
      JacobianFactorization fac;
      try {
        fac = factorize_jacobian(A, 1e-8);
      } catch (const RankDeficiencyError&) {
        continue;
      }
      ++tested;
      Matrix H(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) H(i, j) = H(j, i) = normal(rng);
      }
      Vector g(n);
      for (int j = 0; j < n; ++j) g[j] = normal(rng);
      const Vector pg = project(fac, g);
      const double sigma = std::pow(10.0, logsig(rng));
      TangentialModel model{0.0, pg, H, sigma, &fac};

      const CauchyStep cs = cauchy_step(model);
      const double bound =
          cauchy_lower_bound(pg.norm(), spectral_norm(H), sigma);
      CHECK(cs.decrease >= bound - 1e-12);

      const SubproblemSolution sol = solve_reduced_arc(model, 1e-10);
      CHECK(sol.decrease >= cs.decrease - 1e-12);
      CHECK(sol.model_value <= model.f0 + 1e-12);

      const Matrix Hr = fac.Z.transpose() * H * fac.Z;
      const Vector gr = fac.Z.transpose() * pg;
      const Vector w = fac.Z.transpose() * sol.t;
      if (sol.status != SubproblemStatus::CauchyOnly) {
        const Vector resid =
            (Hr + sol.nu * Matrix::Identity(n - m, n - m)) * w + gr;
        CHECK(resid.norm() <= 1e-8 * (1.0 + gr.norm()));
        CHECK(std::abs(sol.nu - sigma * w.norm()) <= 1e-9 * (1.0 + sol.nu));
        const double lam_min =
            Eigen::SelfAdjointEigenSolver<Matrix>(Hr).eigenvalues().minCoeff();
        CHECK(sol.nu >= std::max(0.0, -lam_min) - 1e-9);
      }
      if (sol.reduced_min_eig >= 0.0) {
        CHECK(sol.t.norm() <=
              std::sqrt(3.0) * std::sqrt(pg.norm() / sigma) + 1e-10);
      }
      // the step stays in the null space
      CHECK((A * sol.t).norm() <= 1e-9 * (1.0 + A.norm() * sol.t.norm()));
    }
  }

  TEST_CASE("grid-search oracle on two-dimensional reduced problems") {
    Matrix A(1, 3);
    A << 1.0, 0.0, 0.0;
    const JacobianFactorization fac = factorize_jacobian(A);
    const Matrix& Z = fac.Z;
    std::mt19937 rng(4242);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> sdist(0.5, 4.0);

    int tested = 0;
    while (tested < 100) {
      Matrix Hr(2, 2);
      Hr(0, 0) = normal(rng);
      Hr(1, 1) = normal(rng);
      Hr(0, 1) = Hr(1, 0) = normal(rng);
      Vector gr(2);
      gr << normal(rng), normal(rng);
      const double sigma = sdist(rng);
      // any global minimizer satisfies sigma ||w||^2 <= ||H|| ||w|| + ||g||;
      // skip draws whose bound does not fit in the sampled box
      const double Hn = spectral_norm(Hr);
      const double radius_bound =
          (Hn + std::sqrt(Hn * Hn + 4.0 * sigma * gr.norm())) / (2.0 * sigma);
      const double r = 3.0 / std::sqrt(sigma);
      if (radius_bound > 0.95 * r) continue;
      ++tested;

      const auto value = [&](double w0, double w1) {
        Vector w(2);
        w << w0, w1;
        const double nw = w.norm();
        return gr.dot(w) + 0.5 * w.dot(Hr * w) + sigma / 3.0 * nw * nw * nw;
      };

      // 401 x 401 sweep, then shrinking local refinements around the best
      double best = std::numeric_limits<double>::infinity();
      double bx = 0.0, by = 0.0;
      const int N = 401;
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          const double w0 = -r + 2.0 * r * i / (N - 1);
          const double w1 = -r + 2.0 * r * j / (N - 1);
          const double v = value(w0, w1);
          if (v < best) {
            best = v;
            bx = w0;
            by = w1;
          }
        }
      }
      double span = 2.0 * r / (N - 1);
      for (int round = 0; round < 6; ++round) {
        const double cx = bx, cy = by;
        for (int i = -20; i <= 20; ++i) {
          for (int j = -20; j <= 20; ++j) {
            const double w0 = cx + span * i / 20.0;
            const double w1 = cy + span * j / 20.0;
            const double v = value(w0, w1);
            if (v < best) {
              best = v;
              bx = w0;
              by = w1;
            }
          }
        }
        span /= 10.0;
      }

      const Vector pg = Z * gr;
      const Matrix H = Z * Hr * Z.transpose();
      TangentialModel model{0.0, pg, H, sigma, &fac};
      const SubproblemSolution sol = solve_reduced_arc(model, 1e-10);
      const Vector w = Z.transpose() * sol.t;
      const double got = value(w[0], w[1]);
      CHECK(got <= best + 1e-9);
      CHECK(std::abs(got - best) <= 1e-5);
    }
  }
}
