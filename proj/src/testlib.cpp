#include "arcsqp/testlib.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace arcsqp {

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

const double kSqrt2 = std::sqrt(2.0);

// ---------------------------------------------------------------------------
// feasibility systems (f == 0)

ProblemDef make_booth() {
  ProblemDef p;
  p.name = "BOOTH";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({0.0, 0.0});
  p.objective = [](const Vector&) { return 0.0; };
  p.gradient = [](const Vector&) { return vec({0.0, 0.0}); };
  p.constraints = [](const Vector& x) {
    return vec({x[0] + 2.0 * x[1] - 7.0, 2.0 * x[0] + x[1] - 5.0});
  };
  p.jacobian = [](const Vector&) {
    Matrix A(2, 2);
    A << 1, 2, 2, 1;
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix::Zero(2, 2);
  };
  return p;
}

ProblemDef make_himmelba() {
  ProblemDef p;
  p.name = "HIMMELBA";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({0.0, 0.0});
  p.objective = [](const Vector&) { return 0.0; };
  p.gradient = [](const Vector&) { return vec({0.0, 0.0}); };
  p.constraints = [](const Vector& x) {
    return vec({0.25 * x[0] + 0.5 * x[1] - 2.0, x[0] - x[1] - 2.0});
  };
  p.jacobian = [](const Vector&) {
    Matrix A(2, 2);
    A << 0.25, 0.5, 1, -1;
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix::Zero(2, 2);
  };
  return p;
}

ProblemDef make_himmelbc() {
  ProblemDef p;
  p.name = "HIMMELBC";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({1.0, 1.0});
  p.objective = [](const Vector&) { return 0.0; };
  p.gradient = [](const Vector&) { return vec({0.0, 0.0}); };
  p.constraints = [](const Vector& x) {
    return vec({x[0] * x[0] + x[1] - 11.0, x[0] + x[1] * x[1] - 7.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(2, 2);
    A << 2.0 * x[0], 1, 1, 2.0 * x[1];
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = -2.0 * lam[0];
    H(1, 1) = -2.0 * lam[1];
    return H;
  };
  return p;
}

ProblemDef make_zangwil3() {
  ProblemDef p;
  p.name = "ZANGWIL3";
  p.n = 3;
  p.m = 3;
  p.x0 = vec({100.0, -1.0, 2.5});
  p.objective = [](const Vector&) { return 0.0; };
  p.gradient = [](const Vector&) { return Vector(Vector::Zero(3)); };
  p.constraints = [](const Vector& x) {
    return vec({x[0] - x[1] + x[2] - 1.0, -x[0] + x[1] + x[2] - 1.0,
                x[0] + x[1] - x[2] - 1.0});
  };
  p.jacobian = [](const Vector&) {
    Matrix A(3, 3);
    A << 1, -1, 1, -1, 1, 1, 1, 1, -1;
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix::Zero(3, 3);
  };
  return p;
}

ProblemDef make_recipe() {
  ProblemDef p;
  p.name = "RECIPE";
  p.n = 3;
  p.m = 3;
  p.x0 = vec({2.0, 5.0, 1.0});
  p.objective = [](const Vector&) { return 0.0; };
  p.gradient = [](const Vector&) { return Vector(Vector::Zero(3)); };
  p.constraints = [](const Vector& x) {
    return vec({x[0] - 5.0, x[1] * x[1] - x[0], x[2] - x[0] / x[1]});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(3, 3);
    A(0, 0) = 1.0;
    A(1, 0) = -1.0;
    A(1, 1) = 2.0 * x[1];
    A(2, 0) = -1.0 / x[1];
    A(2, 1) = x[0] / (x[1] * x[1]);
    A(2, 2) = 1.0;
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    Matrix H = Matrix::Zero(3, 3);
    H(1, 1) = -2.0 * lam[1];
    const double q = x[1] * x[1];
    H(0, 1) = H(1, 0) = -lam[2] / q;
    H(1, 1) += lam[2] * 2.0 * x[0] / (q * x[1]);
    return H;
  };
  return p;
}

// ---------------------------------------------------------------------------
// small constrained minimizations

ProblemDef make_maratos() {
  ProblemDef p;
  p.name = "MARATOS";
  p.n = 2;
  p.m = 1;
  p.x0 = vec({1.1, 0.1});
  p.objective = [](const Vector& x) {
    return 2.0 * (x[0] * x[0] + x[1] * x[1] - 1.0) - x[0];
  };
  p.gradient = [](const Vector& x) {
    return vec({4.0 * x[0] - 1.0, 4.0 * x[1]});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] * x[0] + x[1] * x[1] - 1.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 2);
    A << 2.0 * x[0], 2.0 * x[1];
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    return Matrix((4.0 - 2.0 * lam[0]) * Matrix::Identity(2, 2));
  };
  return p;
}

ProblemDef make_bt1() {
  ProblemDef p;
  p.name = "BT1";
  p.n = 2;
  p.m = 1;
  p.x0 = vec({0.08, 0.06});
  p.objective = [](const Vector& x) {
    return 100.0 * (x[0] * x[0] + x[1] * x[1]) - x[0] - 100.0;
  };
  p.gradient = [](const Vector& x) {
    return vec({200.0 * x[0] - 1.0, 200.0 * x[1]});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] * x[0] + x[1] * x[1] - 1.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 2);
    A << 2.0 * x[0], 2.0 * x[1];
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    return Matrix((200.0 - 2.0 * lam[0]) * Matrix::Identity(2, 2));
  };
  return p;
}

ProblemDef make_bt2() {
  ProblemDef p;
  p.name = "BT2";
  p.n = 3;
  p.m = 1;
  p.x0 = vec({10.0, 10.0, 10.0});
  p.objective = [](const Vector& x) {
    const double a = x[0] - 1.0, b = x[0] - x[1], c = x[1] - x[2];
    return a * a + b * b + c * c * c * c;
  };
  p.gradient = [](const Vector& x) {
    const double b = x[0] - x[1], c3 = std::pow(x[1] - x[2], 3);
    return vec({2.0 * (x[0] - 1.0) + 2.0 * b, -2.0 * b + 4.0 * c3, -4.0 * c3});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] * (1.0 + x[1] * x[1]) + std::pow(x[2], 4) - 4.0 -
                3.0 * kSqrt2});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 3);
    A << 1.0 + x[1] * x[1], 2.0 * x[0] * x[1], 4.0 * std::pow(x[2], 3);
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    const double c2 = 12.0 * (x[1] - x[2]) * (x[1] - x[2]);
    Matrix H(3, 3);
    H << 4.0, -2.0, 0.0, -2.0, 2.0 + c2, -c2, 0.0, -c2, c2;
    H(0, 1) += -2.0 * lam[0] * x[1];
    H(1, 0) += -2.0 * lam[0] * x[1];
    H(1, 1) += -2.0 * lam[0] * x[0];
    H(2, 2) += -12.0 * lam[0] * x[2] * x[2];
    return H;
  };
  return p;
}

ProblemDef make_byrdsphr() {
  ProblemDef p;
  p.name = "BYRDSPHR";
  p.n = 3;
  p.m = 2;
  p.x0 = vec({5.0, 0.0001, -0.0001});
  p.objective = [](const Vector& x) { return -x[0] - x[1] - x[2]; };
  p.gradient = [](const Vector&) { return vec({-1.0, -1.0, -1.0}); };
  p.constraints = [](const Vector& x) {
    const double s = x[1] * x[1] + x[2] * x[2];
    return vec({x[0] * x[0] + s - 9.0, (x[0] - 1.0) * (x[0] - 1.0) + s - 9.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(2, 3);
    A << 2.0 * x[0], 2.0 * x[1], 2.0 * x[2], 2.0 * (x[0] - 1.0), 2.0 * x[1],
        2.0 * x[2];
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    return Matrix(-2.0 * (lam[0] + lam[1]) * Matrix::Identity(3, 3));
  };
  return p;
}

ProblemDef make_hs6() {
  ProblemDef p;
  p.name = "HS6";
  p.n = 2;
  p.m = 1;
  p.x0 = vec({-1.2, 1.0});
  p.objective = [](const Vector& x) {
    return (1.0 - x[0]) * (1.0 - x[0]);
  };
  p.gradient = [](const Vector& x) {
    return vec({-2.0 * (1.0 - x[0]), 0.0});
  };
  p.constraints = [](const Vector& x) {
    return vec({10.0 * (x[1] - x[0] * x[0])});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 2);
    A << -20.0 * x[0], 10.0;
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = 2.0 + 20.0 * lam[0];
    return H;
  };
  return p;
}

ProblemDef make_hs7() {
  ProblemDef p;
  p.name = "HS7";
  p.n = 2;
  p.m = 1;
  p.x0 = vec({2.0, 2.0});
  p.objective = [](const Vector& x) {
    return std::log(1.0 + x[0] * x[0]) - x[1];
  };
  p.gradient = [](const Vector& x) {
    return vec({2.0 * x[0] / (1.0 + x[0] * x[0]), -1.0});
  };
  p.constraints = [](const Vector& x) {
    const double u = 1.0 + x[0] * x[0];
    return vec({u * u + x[1] * x[1] - 4.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 2);
    A << 4.0 * x[0] * (1.0 + x[0] * x[0]), 2.0 * x[1];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    const double u = 1.0 + x[0] * x[0];
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = 2.0 * (1.0 - x[0] * x[0]) / (u * u) -
              lam[0] * (4.0 + 12.0 * x[0] * x[0]);
    H(1, 1) = -2.0 * lam[0];
    return H;
  };
  return p;
}

ProblemDef make_hs8() {
  ProblemDef p;
  p.name = "HS8";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({2.0, 1.0});
  p.objective = [](const Vector&) { return -1.0; };
  p.gradient = [](const Vector&) { return vec({0.0, 0.0}); };
  p.constraints = [](const Vector& x) {
    return vec({x[0] * x[0] + x[1] * x[1] - 25.0, x[0] * x[1] - 9.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(2, 2);
    A << 2.0 * x[0], 2.0 * x[1], x[1], x[0];
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    Matrix H(2, 2);
    H << -2.0 * lam[0], -lam[1], -lam[1], -2.0 * lam[0];
    return H;
  };
  return p;
}

ProblemDef make_hs9() {
  ProblemDef p;
  p.name = "HS9";
  p.n = 2;
  p.m = 1;
  p.x0 = vec({0.0, 0.0});
  const double a = M_PI / 12.0, b = M_PI / 16.0;
  p.objective = [a, b](const Vector& x) {
    return std::sin(a * x[0]) * std::cos(b * x[1]);
  };
  p.gradient = [a, b](const Vector& x) {
    return vec({a * std::cos(a * x[0]) * std::cos(b * x[1]),
                -b * std::sin(a * x[0]) * std::sin(b * x[1])});
  };
  p.constraints = [](const Vector& x) {
    return vec({4.0 * x[0] - 3.0 * x[1]});
  };
  p.jacobian = [](const Vector&) {
    Matrix A(1, 2);
    A << 4.0, -3.0;
    return A;
  };
  p.lagrangian_hessian = [a, b](const Vector& x, const Vector&) {
    const double s1 = std::sin(a * x[0]), c1 = std::cos(a * x[0]);
    const double s2 = std::sin(b * x[1]), c2 = std::cos(b * x[1]);
    Matrix H(2, 2);
    H << -a * a * s1 * c2, -a * b * c1 * s2, -a * b * c1 * s2, -b * b * s1 * c2;
    return H;
  };
  return p;
}

ProblemDef make_hs26() {
  ProblemDef p;
  p.name = "HS26";
  p.n = 3;
  p.m = 1;
  p.x0 = vec({-2.6, 2.0, 2.0});
  p.objective = [](const Vector& x) {
    const double a = x[0] - x[1], b = x[1] - x[2];
    return a * a + b * b * b * b;
  };
  p.gradient = [](const Vector& x) {
    const double a = x[0] - x[1], b3 = std::pow(x[1] - x[2], 3);
    return vec({2.0 * a, -2.0 * a + 4.0 * b3, -4.0 * b3});
  };
  p.constraints = [](const Vector& x) {
    return vec({(1.0 + x[1] * x[1]) * x[0] + std::pow(x[2], 4) - 3.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 3);
    A << 1.0 + x[1] * x[1], 2.0 * x[0] * x[1], 4.0 * std::pow(x[2], 3);
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    const double b2 = 12.0 * (x[1] - x[2]) * (x[1] - x[2]);
    Matrix H(3, 3);
    H << 2.0, -2.0, 0.0, -2.0, 2.0 + b2, -b2, 0.0, -b2, b2;
    H(0, 1) += -2.0 * lam[0] * x[1];
    H(1, 0) += -2.0 * lam[0] * x[1];
    H(1, 1) += -2.0 * lam[0] * x[0];
    H(2, 2) += -12.0 * lam[0] * x[2] * x[2];
    return H;
  };
  return p;
}

ProblemDef make_hs27() {
  ProblemDef p;
  p.name = "HS27";
  p.n = 3;
  p.m = 1;
  p.x0 = vec({2.0, 2.0, 2.0});
  p.objective = [](const Vector& x) {
    const double a = x[0] - 1.0, b = x[1] - x[0] * x[0];
    return 0.01 * a * a + b * b;
  };
  p.gradient = [](const Vector& x) {
    const double b = x[1] - x[0] * x[0];
    return vec({0.02 * (x[0] - 1.0) - 4.0 * x[0] * b, 2.0 * b, 0.0});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] + x[2] * x[2] + 1.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A(1, 3);
    A << 1.0, 0.0, 2.0 * x[2];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    Matrix H = Matrix::Zero(3, 3);
    H(0, 0) = 0.02 - 4.0 * x[1] + 12.0 * x[0] * x[0];
    H(0, 1) = H(1, 0) = -4.0 * x[0];
    H(1, 1) = 2.0;
    H(2, 2) = -2.0 * lam[0];
    return H;
  };
  return p;
}

ProblemDef make_hs28() {
  ProblemDef p;
  p.name = "HS28";
  p.n = 3;
  p.m = 1;
  p.x0 = vec({-4.0, 1.0, 1.0});
  p.objective = [](const Vector& x) {
    const double a = x[0] + x[1], b = x[1] + x[2];
    return a * a + b * b;
  };
  p.gradient = [](const Vector& x) {
    const double a = x[0] + x[1], b = x[1] + x[2];
    return vec({2.0 * a, 2.0 * a + 2.0 * b, 2.0 * b});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] + 2.0 * x[1] + 3.0 * x[2] - 1.0});
  };
  p.jacobian = [](const Vector&) {
    Matrix A(1, 3);
    A << 1.0, 2.0, 3.0;
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    Matrix H(3, 3);
    H << 2, 2, 0, 2, 4, 2, 0, 2, 2;
    return H;
  };
  return p;
}

ProblemDef make_hs39() {
  ProblemDef p;
  p.name = "HS39";
  p.n = 4;
  p.m = 2;
  p.x0 = vec({2.0, 2.0, 2.0, 2.0});
  p.objective = [](const Vector& x) { return -x[0]; };
  p.gradient = [](const Vector&) { return vec({-1.0, 0.0, 0.0, 0.0}); };
  p.constraints = [](const Vector& x) {
    return vec({x[1] - std::pow(x[0], 3) - x[2] * x[2],
                x[0] * x[0] - x[1] - x[3] * x[3]});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(2, 4);
    A(0, 0) = -3.0 * x[0] * x[0];
    A(0, 1) = 1.0;
    A(0, 2) = -2.0 * x[2];
    A(1, 0) = 2.0 * x[0];
    A(1, 1) = -1.0;
    A(1, 3) = -2.0 * x[3];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    Matrix H = Matrix::Zero(4, 4);
    H(0, 0) = 6.0 * lam[0] * x[0] - 2.0 * lam[1];
    H(2, 2) = 2.0 * lam[0];
    H(3, 3) = 2.0 * lam[1];
    return H;
  };
  return p;
}

ProblemDef make_hs40() {
  ProblemDef p;
  p.name = "HS40";
  p.n = 4;
  p.m = 3;
  p.x0 = vec({0.8, 0.8, 0.8, 0.8});
  p.objective = [](const Vector& x) { return -x[0] * x[1] * x[2] * x[3]; };
  p.gradient = [](const Vector& x) {
    return vec({-x[1] * x[2] * x[3], -x[0] * x[2] * x[3], -x[0] * x[1] * x[3],
                -x[0] * x[1] * x[2]});
  };
  p.constraints = [](const Vector& x) {
    return vec({std::pow(x[0], 3) + x[1] * x[1] - 1.0,
                x[0] * x[0] * x[3] - x[2], x[3] * x[3] - x[1]});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(3, 4);
    A(0, 0) = 3.0 * x[0] * x[0];
    A(0, 1) = 2.0 * x[1];
    A(1, 0) = 2.0 * x[0] * x[3];
    A(1, 2) = -1.0;
    A(1, 3) = x[0] * x[0];
    A(2, 1) = -1.0;
    A(2, 3) = 2.0 * x[3];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    Matrix H = Matrix::Zero(4, 4);
    // objective part
    H(0, 1) = H(1, 0) = -x[2] * x[3];
    H(0, 2) = H(2, 0) = -x[1] * x[3];
    H(0, 3) = H(3, 0) = -x[1] * x[2];
    H(1, 2) = H(2, 1) = -x[0] * x[3];
    H(1, 3) = H(3, 1) = -x[0] * x[2];
    H(2, 3) = H(3, 2) = -x[0] * x[1];
    // constraints
    H(0, 0) += -lam[0] * 6.0 * x[0] - lam[1] * 2.0 * x[3];
    H(1, 1) += -lam[0] * 2.0;
    H(0, 3) += -lam[1] * 2.0 * x[0];
    H(3, 0) += -lam[1] * 2.0 * x[0];
    H(3, 3) += -lam[2] * 2.0;
    return H;
  };
  return p;
}

ProblemDef make_hs77() {
  ProblemDef p;
  p.name = "HS77";
  p.n = 5;
  p.m = 2;
  p.x0 = vec({2.0, 2.0, 2.0, 2.0, 2.0});
  p.objective = [](const Vector& x) {
    const double a = x[0] - 1.0, b = x[0] - x[1], c = x[2] - 1.0;
    const double d = x[3] - 1.0, e = x[4] - 1.0;
    return a * a + b * b + c * c + std::pow(d, 4) + std::pow(e, 6);
  };
  p.gradient = [](const Vector& x) {
    const double b = x[0] - x[1];
    return vec({2.0 * (x[0] - 1.0) + 2.0 * b, -2.0 * b, 2.0 * (x[2] - 1.0),
                4.0 * std::pow(x[3] - 1.0, 3), 6.0 * std::pow(x[4] - 1.0, 5)});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] * x[0] * x[3] + std::sin(x[3] - x[4]) - 2.0 * kSqrt2,
                x[1] + std::pow(x[2], 4) * x[3] * x[3] - 8.0 - kSqrt2});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(2, 5);
    const double cs = std::cos(x[3] - x[4]);
    A(0, 0) = 2.0 * x[0] * x[3];
    A(0, 3) = x[0] * x[0] + cs;
    A(0, 4) = -cs;
    A(1, 1) = 1.0;
    A(1, 2) = 4.0 * std::pow(x[2], 3) * x[3] * x[3];
    A(1, 3) = 2.0 * std::pow(x[2], 4) * x[3];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    Matrix H = Matrix::Zero(5, 5);
    H(0, 0) = 4.0;
    H(0, 1) = H(1, 0) = -2.0;
    H(1, 1) = 2.0;
    H(2, 2) = 2.0;
    H(3, 3) = 12.0 * (x[3] - 1.0) * (x[3] - 1.0);
    H(4, 4) = 30.0 * std::pow(x[4] - 1.0, 4);
    const double sn = std::sin(x[3] - x[4]);
    // c1
    H(0, 0) += -lam[0] * 2.0 * x[3];
    H(0, 3) += -lam[0] * 2.0 * x[0];
    H(3, 0) += -lam[0] * 2.0 * x[0];
    H(3, 3) += -lam[0] * (-sn);
    H(3, 4) += -lam[0] * sn;
    H(4, 3) += -lam[0] * sn;
    H(4, 4) += -lam[0] * (-sn);
    // c2
    H(2, 2) += -lam[1] * 12.0 * x[2] * x[2] * x[3] * x[3];
    H(2, 3) += -lam[1] * 8.0 * std::pow(x[2], 3) * x[3];
    H(3, 2) += -lam[1] * 8.0 * std::pow(x[2], 3) * x[3];
    H(3, 3) += -lam[1] * 2.0 * std::pow(x[2], 4);
    return H;
  };
  return p;
}

ProblemDef make_hs78() {
  ProblemDef p;
  p.name = "HS78";
  p.n = 5;
  p.m = 3;
  p.x0 = vec({-2.0, 1.5, 2.0, -1.0, -1.0});
  p.objective = [](const Vector& x) {
    return x[0] * x[1] * x[2] * x[3] * x[4];
  };
  p.gradient = [](const Vector& x) {
    const double prod = x[0] * x[1] * x[2] * x[3] * x[4];
    Vector g(5);
    for (int i = 0; i < 5; ++i) {
      if (x[i] != 0.0) {
        g[i] = prod / x[i];
      } else {
        double v = 1.0;
        for (int j = 0; j < 5; ++j) {
          if (j != i) v *= x[j];
        }
        g[i] = v;
      }
    }
    return g;
  };
  p.constraints = [](const Vector& x) {
    return vec({x.squaredNorm() - 10.0, x[1] * x[2] - 5.0 * x[3] * x[4],
                std::pow(x[0], 3) + std::pow(x[1], 3) + 1.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(3, 5);
    A.row(0) = 2.0 * x.transpose();
    A(1, 1) = x[2];
    A(1, 2) = x[1];
    A(1, 3) = -5.0 * x[4];
    A(1, 4) = -5.0 * x[3];
    A(2, 0) = 3.0 * x[0] * x[0];
    A(2, 1) = 3.0 * x[1] * x[1];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    Matrix H = Matrix::Zero(5, 5);
    // objective: mixed second derivatives are products of the other three
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        double v = 1.0;
        for (int r = 0; r < 5; ++r) {
          if (r != i && r != j) v *= x[r];
        }
        H(i, j) = H(j, i) = v;
      }
    }
    H -= 2.0 * lam[0] * Matrix::Identity(5, 5);
    H(1, 2) += -lam[1];
    H(2, 1) += -lam[1];
    H(3, 4) += 5.0 * lam[1];
    H(4, 3) += 5.0 * lam[1];
    H(0, 0) += -6.0 * lam[2] * x[0];
    H(1, 1) += -6.0 * lam[2] * x[1];
    return H;
  };
  return p;
}

ProblemDef make_hs79(const std::string& name) {
  ProblemDef p;
  p.name = name;
  p.n = 5;
  p.m = 3;
  p.x0 = vec({2.0, 2.0, 2.0, 2.0, 2.0});
  p.objective = [](const Vector& x) {
    const double a = x[0] - 1.0, b = x[0] - x[1], c = x[1] - x[2];
    const double d = x[2] - x[3], e = x[3] - x[4];
    return a * a + b * b + c * c + std::pow(d, 4) + std::pow(e, 4);
  };
  p.gradient = [](const Vector& x) {
    const double b = x[0] - x[1], c = x[1] - x[2];
    const double d3 = std::pow(x[2] - x[3], 3), e3 = std::pow(x[3] - x[4], 3);
    return vec({2.0 * (x[0] - 1.0) + 2.0 * b, -2.0 * b + 2.0 * c,
                -2.0 * c + 4.0 * d3, -4.0 * d3 + 4.0 * e3, -4.0 * e3});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] + x[1] * x[1] + std::pow(x[2], 3) - 2.0 - 3.0 * kSqrt2,
                x[1] - x[2] * x[2] + x[3] + 2.0 - 2.0 * kSqrt2,
                x[0] * x[4] - 2.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(3, 5);
    A(0, 0) = 1.0;
    A(0, 1) = 2.0 * x[1];
    A(0, 2) = 3.0 * x[2] * x[2];
    A(1, 1) = 1.0;
    A(1, 2) = -2.0 * x[2];
    A(1, 3) = 1.0;
    A(2, 0) = x[4];
    A(2, 4) = x[0];
    return A;
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector& lam) {
    const double d2 = 12.0 * (x[2] - x[3]) * (x[2] - x[3]);
    const double e2 = 12.0 * (x[3] - x[4]) * (x[3] - x[4]);
    Matrix H = Matrix::Zero(5, 5);
    H(0, 0) = 4.0;
    H(0, 1) = H(1, 0) = -2.0;
    H(1, 1) = 4.0;
    H(1, 2) = H(2, 1) = -2.0;
    H(2, 2) = 2.0 + d2;
    H(2, 3) = H(3, 2) = -d2;
    H(3, 3) = d2 + e2;
    H(3, 4) = H(4, 3) = -e2;
    H(4, 4) = e2;
    H(1, 1) += -2.0 * lam[0];
    H(2, 2) += -6.0 * lam[0] * x[2];
    H(2, 2) += 2.0 * lam[1];
    H(0, 4) += -lam[2];
    H(4, 0) += -lam[2];
    return H;
  };
  return p;
}

ProblemDef make_bt12() {
  ProblemDef p;
  p.name = "BT12";
  p.n = 5;
  p.m = 3;
  p.x0 = vec({15.811, 1.5811, 1.0, 1.0, 1.0});
  p.objective = [](const Vector& x) {
    return 0.01 * x[0] * x[0] + x[1] * x[1];
  };
  p.gradient = [](const Vector& x) {
    return vec({0.02 * x[0], 2.0 * x[1], 0.0, 0.0, 0.0});
  };
  p.constraints = [](const Vector& x) {
    return vec({x[0] + x[1] - x[2] * x[2] - 25.0,
                x[0] * x[0] + x[1] * x[1] - x[3] * x[3] - 25.0,
                x[0] - x[1] - x[4] * x[4] - 20.0});
  };
  p.jacobian = [](const Vector& x) {
    Matrix A = Matrix::Zero(3, 5);
    A(0, 0) = 1.0;
    A(0, 1) = 1.0;
    A(0, 2) = -2.0 * x[2];
    A(1, 0) = 2.0 * x[0];
    A(1, 1) = 2.0 * x[1];
    A(1, 3) = -2.0 * x[3];
    A(2, 0) = 1.0;
    A(2, 1) = -1.0;
    A(2, 4) = -2.0 * x[4];
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lam) {
    Matrix H = Matrix::Zero(5, 5);
    H(0, 0) = 0.02 - 2.0 * lam[1];
    H(1, 1) = 2.0 - 2.0 * lam[1];
    H(2, 2) = 2.0 * lam[0];
    H(3, 3) = 2.0 * lam[1];
    H(4, 4) = 2.0 * lam[2];
    return H;
  };
  return p;
}

ProblemDef make_genhs28() {
  ProblemDef p;
  p.name = "GENHS28";
  p.n = 10;
  p.m = 8;
  Vector x0 = Vector::Ones(10);
  x0[0] = -4.0;
  p.x0 = x0;
  p.objective = [](const Vector& x) {
    double f = 0.0;
    for (int i = 0; i + 1 < 10; ++i) {
      const double a = x[i] + x[i + 1];
      f += a * a;
    }
    return f;
  };
  p.gradient = [](const Vector& x) {
    Vector g = Vector::Zero(10);
    for (int i = 0; i + 1 < 10; ++i) {
      const double a = 2.0 * (x[i] + x[i + 1]);
      g[i] += a;
      g[i + 1] += a;
    }
    return g;
  };
  p.constraints = [](const Vector& x) {
    Vector c(8);
    for (int j = 0; j < 8; ++j) {
      c[j] = x[j] + 2.0 * x[j + 1] + 3.0 * x[j + 2] - 1.0;
    }
    return c;
  };
  p.jacobian = [](const Vector&) {
    Matrix A = Matrix::Zero(8, 10);
    for (int j = 0; j < 8; ++j) {
      A(j, j) = 1.0;
      A(j, j + 1) = 2.0;
      A(j, j + 2) = 3.0;
    }
    return A;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    Matrix H = Matrix::Zero(10, 10);
    for (int i = 0; i + 1 < 10; ++i) {
      H(i, i) += 2.0;
      H(i + 1, i + 1) += 2.0;
      H(i, i + 1) += 2.0;
      H(i + 1, i) += 2.0;
    }
    return H;
  };
  return p;
}

// ---------------------------------------------------------------------------
// registry

const std::map<std::string, PaperStats>& stats_table() {
  static const std::map<std::string, PaperStats> table = {
      {"AIRCRFTA", {2, 3, 3, 3, 1.5932e-08}},
      {"BOOTH", {1, 2, 2, 2, 0.0}},
      {"BT1", {5, 5, 6, 6, 1.3889e-07}},
      {"BT2", {9, 9, 10, 10, 7.2220e-10}},
      {"BT11", {9, 9, 10, 10, 5.2740e-09}},
      {"BT12", {8, 8, 9, 9, 3.5613e-07}},
      {"BYRDSPHR", {8, 8, 9, 9, 3.5170e-13}},
      {"GENHS28", {5, 5, 6, 6, 3.3345e-08}},
      {"HIMMELBA", {1, 1, 2, 2, 5.3134e-07}},
      {"HIMMELBC", {2, 2, 3, 3, 2.8424e-13}},
      {"HS6", {13, 13, 14, 14, 6.0080e-08}},
      {"HS7", {7, 8, 8, 8, 5.4175e-08}},
      {"HS8", {2, 2, 3, 3, 2.5421e-13}},
      {"HS9", {6, 7, 7, 7, 3.9241e-07}},
      {"HS26", {9, 10, 10, 10, 1.2431e-08}},
      {"HS27", {26, 29, 27, 27, 3.4457e-08}},
      {"HS28", {5, 7, 6, 6, 1.9369e-08}},
      {"HS39", {9, 11, 10, 10, 8.1036e-08}},
      {"HS40", {19, 19, 20, 120, 9.5368e-07}},
      {"HS77", {11, 13, 12, 12, 7.8820e-07}},
      {"HS78", {12, 14, 13, 13, 5.3810e-07}},
      {"HS79", {8, 8, 9, 9, 8.8824e-07}},
      {"MARATOS", {3, 4, 4, 4, 2.6776e-07}},
      {"RECIPE", {2, 2, 3, 3, 3.0307e-15}},
      {"ZANGWIL3", {2, 2, 3, 3, 2.0128e-47}},
  };
  return table;
}

std::string normalize(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  // HS06 and HS6 are the same problem
  if (up.size() == 4 && up.compare(0, 2, "HS") == 0 && up[2] == '0') {
    up = "HS" + up.substr(3);
  }
  return up;
}

using Factory = ProblemDef (*)();

const std::vector<std::pair<std::string, Factory>>& registry() {
  static const std::vector<std::pair<std::string, Factory>> reg = {
      {"BOOTH", &make_booth},
      {"HIMMELBA", &make_himmelba},
      {"HIMMELBC", &make_himmelbc},
      {"MARATOS", &make_maratos},
      {"BT1", &make_bt1},
      {"BT2", &make_bt2},
      {"BT11", [] { return make_hs79("BT11"); }},
      {"BT12", &make_bt12},
      {"BYRDSPHR", &make_byrdsphr},
      {"HS6", &make_hs6},
      {"HS7", &make_hs7},
      {"HS8", &make_hs8},
      {"HS9", &make_hs9},
      {"HS26", &make_hs26},
      {"HS27", &make_hs27},
      {"HS28", &make_hs28},
      {"HS39", &make_hs39},
      {"HS40", &make_hs40},
      {"HS77", &make_hs77},
      {"HS78", &make_hs78},
      {"HS79", [] { return make_hs79("HS79"); }},
      {"GENHS28", &make_genhs28},
      {"RECIPE", &make_recipe},
      {"ZANGWIL3", &make_zangwil3},
  };
  return reg;
}

std::optional<Vector> known_solution_for(const std::string& name) {
  static const std::map<std::string, Vector> table = [] {
    std::map<std::string, Vector> t;
    t["BOOTH"] = vec({1.0, 3.0});
    t["HIMMELBA"] = vec({4.0, 2.0});
    t["HIMMELBC"] = vec({3.0, 2.0});
    t["MARATOS"] = vec({1.0, 0.0});
    t["BT1"] = vec({1.0, 0.0});
    t["BYRDSPHR"] = vec({0.5, 2.0916500663351889, 2.0916500663351889});
    t["HS6"] = vec({1.0, 1.0});
    t["HS7"] = vec({0.0, 1.7320508075688772});
    t["HS9"] = vec({-3.0, -4.0});
    t["HS26"] = vec({1.0, 1.0, 1.0});
    t["HS27"] = vec({-1.0, 1.0, 0.0});
    t["HS28"] = vec({0.5, -0.5, 0.5});
    t["HS39"] = vec({1.0, 1.0, 0.0, 0.0});
    t["HS40"] = vec({0.7937005259840998, 0.7071067811865476,
                     0.5297315471796477, 0.8408964152537145});
    t["HS77"] = vec({1.166172, 1.182111, 1.380257, 1.506036, 0.6109203});
    t["HS78"] = vec({-1.717143, 1.595709, 1.827247, -0.7636430, -0.7636430});
    t["HS79"] = vec({1.191127, 1.362603, 1.472818, 1.635017, 1.679081});
    t["BT11"] = vec({1.191127, 1.362603, 1.472818, 1.635017, 1.679081});
    t["RECIPE"] = vec({5.0, 2.2360679774997896, 2.2360679774997896});
    t["ZANGWIL3"] = vec({1.0, 1.0, 1.0});
    return t;
  }();
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace

TestProblem get_problem(const std::string& name) {
  const std::string key = normalize(name);
  for (const auto& [n, factory] : registry()) {
    if (n == key) {
      TestProblem tp;
      tp.problem = factory();
      const auto& stats = stats_table();
      if (const auto it = stats.find(key); it != stats.end()) {
        tp.paper_stats = it->second;
      }
      tp.known_solution = known_solution_for(key);
      return tp;
    }
  }
  std::string msg = "unknown problem '" + name + "'; available:";
  for (const auto& [n, factory] : registry()) msg += " " + n;
  throw std::out_of_range(msg);
}

std::optional<PaperStats> reference_stats(const std::string& name) {
  const auto& stats = stats_table();
  const auto it = stats.find(normalize(name));
  if (it == stats.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, factory] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

}  // namespace arcsqp
