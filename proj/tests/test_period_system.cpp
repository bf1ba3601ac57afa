#include <cmath>
#include <functional>
#include <random>

#include "bolza/period_system.hpp"
#include "doctest.h"

using namespace bolza;

namespace {

using Alphas = std::array<cplx, 6>;  // alpha_1 .. alpha_6

// The six consolidated period equations written as LHS - RHS, with the
// alphas complex and conjugations applied literally.
std::vector<std::function<cplx(const Alphas&)>> consolidated_equations(
    const IntegralQuartet& q) {
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  const double c = std::cos(2 * q.theta);
  const double s2 = std::pow(std::sin(2 * q.theta), 2);
  auto P = [=](const Alphas& a) { return a[0] + 0.75 * a[2]; };
  auto Q = [=](const Alphas& a) { return -c * a[2] + a[4]; };
  auto R = [=](const Alphas& a) { return a[1] / 4.0 + 0.75 * a[5]; };
  auto S = [=](const Alphas& a) { return -c * a[1] + a[3] - c * a[5]; };
  auto T = [=](const Alphas& a) { return -1.5 * c * a[1] + a[3] / 4.0; };
  auto U = [=](const Alphas& a) {
    return (-5 + 6 * c * c) * a[1] - c * a[3] + a[5];
  };
  auto V = [=](const Alphas& a) { return -c * a[0] + a[4] / 4.0; };
  auto W = [=](const Alphas& a) { return -4 * s2 * a[0] + a[2] - c * a[4]; };
  auto P2 = [=](const Alphas& a) { return a[0] + a[2] / 4.0; };
  auto R2 = [=](const Alphas& a) { return 0.75 * a[1] + a[5] / 4.0; };
  using std::conj;
  // order of the rows of (X1 X2)
  return {
      [=](const Alphas& a) {  // latter relation, C4-type cycles
        return P2(a) * A + Q(a) * C + conj(R2(a) * A + S(a) * C);
      },
      [=](const Alphas& a) {  // latter relation, C5-type cycles
        return P2(a) * B - Q(a) * D - conj(R2(a) * B - S(a) * D);
      },
      [=](const Alphas& a) {  // former relation, C5-type, first half
        return P(a) * B - Q(a) * D + conj(R(a) * B - S(a) * D);
      },
      [=](const Alphas& a) {  // former relation, C4-type, first half
        return P(a) * A + Q(a) * C - conj(R(a) * A + S(a) * C);
      },
      [=](const Alphas& a) {  // former relation, C4-type, second half
        return -(T(a) * A + U(a) * C - conj(V(a) * A + W(a) * C));
      },
      [=](const Alphas& a) {  // former relation, C5-type, second half
        return -(T(a) * B - U(a) * D + conj(V(a) * B - W(a) * D));
      },
  };
}

}  // namespace

TEST_CASE("assembled system matches coefficient collection") {
  for (double t : {0.25, 0.65, kPi / 4, 1.0, 1.3}) {
    const ThetaParam th(t);
    const auto sys = assemble_system(th);
    const auto eqs = consolidated_equations(sys.quartet);
    // alpha index -> solution-vector column
    const int col[6] = {0, 2, 4, 3, 1, 5};
    for (int r = 0; r < 6; ++r) {
      for (int k = 0; k < 6; ++k) {
        Alphas a{};
        a[k] = 1.0;
        const cplx v = eqs[r](a);
        CHECK(std::abs(v.imag()) < 1e-14);
        CHECK(std::abs(v.real() - sys.M(r, col[k])) < 1e-12);
      }
    }
    // complex alphas: M y = equations, with y carrying the conjugated slots
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    Alphas a;
    for (auto& x : a) x = cplx(nd(rng), nd(rng));
    const auto y = complex_solution_from_alphas(a);
    const Eigen::Matrix<cplx, 6, 1> My = sys.M.cast<cplx>() * y;
    for (int r = 0; r < 6; ++r) {
      // rows mixing alpha and conj(alpha) agree up to conjugating the
      // whole equation; compare the real parts and the moduli
      const cplx e = eqs[r](a);
      CHECK(std::abs(std::abs(e) - std::abs(My(r))) < 1e-11);
    }
  }
}

TEST_CASE("entry spot checks") {
  const ThetaParam th(kPi / 4);
  const auto sys = assemble_system(th);
  const auto& q = sys.quartet;
  CHECK(sys.M(0, 0) == q.A);
  CHECK(sys.M(1, 0) == q.B);
  CHECK(std::abs(sys.M(4, 1) - (0.25 * q.A - q.C * th.cos2t())) < 1e-15);
  CHECK(std::abs(sys.M(4, 0) + 4 * q.C) < 1e-12);
}

TEST_CASE("appendix reduction reproduces the displayed matrix") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.05, kHalfPi - 0.05);
  for (int i = 0; i < 16; ++i) {
    const auto sys = assemble_system(ThetaParam(u(rng)));
    const auto red = appendix_reduce(sys);
    CHECK(red.log.size() == 22);
    for (const auto& op : red.log) CHECK(op.self_scale > 0.0);
    const Matrix6 Y = expected_reduced(sys);
    for (int r = 0; r < 6; ++r) {
      const double scale = Y.row(r).cwiseAbs().maxCoeff();
      for (int c = 0; c < 6; ++c)
        CHECK(std::abs(red.reduced(r, c) - Y(r, c)) <= 1e-9 * scale);
    }
    CHECK(red.reduced(0, 0) ==
          doctest::Approx(sys.quartet.A *
                          std::pow(sys.quartet.A * sys.quartet.D +
                                       sys.quartet.B * sys.quartet.C,
                                   2))
              .epsilon(1e-12));
  }
}

TEST_CASE("kernel equivalence under the reduction") {
  // the operations form an invertible lower/upper mixing T with reduced =
  // T M; recover T and confirm both directions on a kernel probe
  for (double t : {0.3, 0.7, 1.2}) {
    const auto sys = assemble_system(ThetaParam(t));
    const auto red = appendix_reduce(sys);
    const Matrix6 T = red.reduced * sys.M.inverse();
    CHECK(std::abs(T.determinant()) > 0.0);
    Vector6 x = Vector6::LinSpaced(6, -1.0, 1.5);
    CHECK(((red.reduced - T * sys.M) * x).norm() < 1e-9 * red.reduced.norm());
  }
}

TEST_CASE("F residual symmetry and block determinant") {
  for (double t : {0.2, 0.5, 0.8, 1.1}) {
    const ThetaParam th(t);
    const FResidual a = residual_F(th);
    const FResidual b = residual_F(th.mirrored());
    CHECK(std::abs(a.F2 - b.F1) < 1e-10 * (1.0 + std::abs(a.F2)));
    const auto sys = assemble_system(th);
    const double det = reduced_block_determinant(appendix_reduce(sys).reduced);
    const double fac = determinant_factor(sys.quartet);
    CHECK(fac > 0.0);
    CHECK(std::abs(det - a.F1 * a.F2 * fac) <= 1e-9 * std::abs(det));
  }
}

TEST_CASE("critical angles") {
  const CriticalAngles ca = solve_critical_thetas();
  CHECK(ca.theta1 >= 0.64);
  CHECK(ca.theta1 <= 0.66);
  CHECK(ca.theta2 >= 0.90);
  CHECK(ca.theta2 <= 0.92);
  CHECK(std::abs(ca.F1_residual) < 1e-10);
  CHECK(ca.sign_changes_F1 == 1);
  CHECK(std::abs(ca.theta2 - ca.theta2_root) <= 2e-12);
  CHECK(std::abs(ca.theta1 + ca.theta2 - kHalfPi) < 1e-15);
}

TEST_CASE("null space and omega pair") {
  const CriticalAngles ca = solve_critical_thetas();
  const auto s1 = assemble_system(ThetaParam(ca.theta1));
  const auto ns1 = nullspace(s1);
  CHECK(ns1.nullity == 1);
  CHECK(nullspace(assemble_system(ThetaParam(ca.theta2))).nullity == 1);
  CHECK(nullspace(assemble_system(ThetaParam(0.3))).nullity == 0);

  const OmegaPair op = omega_pair_at(s1);
  CHECK(op.closed_form);
  CHECK(op.parallel_residual < 1e-7);
  const auto a1 = op.omega1.alphas();
  const auto a2 = op.omega2.alphas();
  CHECK(a1[2] == cplx(1.0));
  const double sgn[6] = {1, -1, 1, -1, 1, -1};
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(a2[k] - cplx(0, 1) * sgn[k] * a1[k]) < 1e-15);

  const OmegaPair op2 = omega_pair_at(assemble_system(ThetaParam(ca.theta2)));
  CHECK_FALSE(op2.closed_form);
  CHECK(op2.omega1.alphas()[2] == cplx(1.0));

  const auto corr = theta2_correspondence(assemble_system(ThetaParam(ca.theta2)));
  CHECK(corr.residual < 1e-9);
  CHECK(corr.parallel_residual < 1e-7);
}

TEST_CASE("off-critical closed-form vector is not a solution") {
  const CriticalAngles ca = solve_critical_thetas();
  for (double d : {-0.05, 0.05}) {
    const auto sys = assemble_system(ThetaParam(ca.theta1 + d));
    const Vector6 y = solution_from_alphas(closed_form_alphas(sys.quartet));
    CHECK((sys.M * y).norm() > 1e-4 * sys.M.norm() * y.norm());
  }
}

TEST_CASE("period table at a sample angle") {
  const ThetaParam th(0.5);
  const auto t = period_table(th, integral_quartet(th));
  CHECK(t.entries.size() == 16);
  CHECK(t.max_abs_err() < 1e-8);
}
