#include "bolza/period_system.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

namespace bolza {

namespace {

const cplx kI(0.0, 1.0);

cplx eighth(int k) { return std::polar(1.0, k * kPi / 4.0); }

}  // namespace

// ---------------------------------------------------------------------------

cplx period(const FormDensity& form, const Cycle& cycle, double tol) {
  return integrate_along(cycle.lift, form, tol).value;
}

cplx period(const OneForm& form, const Cycle& cycle, double tol) {
  return period(form.density(), cycle, tol);
}

cplx period(const SecondKindForm& form, const Cycle& cycle, double tol) {
  return period(form.density(), cycle, tol);
}

cplx closed_form_period(const IntegralQuartet& q, int k, CycleKind kind) {
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  switch (kind) {
    case CycleKind::C4Loop: {
      const cplx v[4] = {2 * A, 2 * A, 2 * C, 2 * C};
      return v[k];
    }
    case CycleKind::PhiC4Loop: {
      const cplx v[4] = {2.0 * kI * A, -2.0 * kI * A, 2.0 * kI * C,
                         -2.0 * kI * C};
      return v[k];
    }
    case CycleKind::C5Loop: {
      const cplx v[4] = {2.0 * eighth(1) * B, -2.0 * eighth(-1) * B,
                         -2.0 * eighth(1) * D, 2.0 * eighth(-1) * D};
      return v[k];
    }
    case CycleKind::PhiC5Loop: {
      const cplx v[4] = {-2.0 * eighth(-1) * B, 2.0 * eighth(1) * B,
                         2.0 * eighth(-1) * D, -2.0 * eighth(1) * D};
      return v[k];
    }
  }
  throw DomainError("unknown cycle kind");
}

const char* second_kind_name(int k) {
  static const char* names[4] = {"dz/w", "z dz/w", "z^3 dz/w^3",
                                 "z^4 dz/w^3"};
  if (k < 0 || k > 3) throw DomainError("second-kind index must be in 0..3");
  return names[k];
}

double PeriodTable::max_abs_err() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.abs_err());
  return m;
}

PeriodTable period_table(const ThetaParam& theta, const IntegralQuartet& q,
                         double tol) {
  PeriodTable t;
  t.theta = theta.theta();
  std::vector<Cycle> cycles;
  for (CycleKind kind : kAllCycles) cycles.push_back(build_cycle(theta, kind));
  for (int k = 0; k < 4; ++k) {
    const FormDensity f({kSecondKindBasis[k]});
    for (const Cycle& c : cycles)
      t.entries.push_back(
          {k, c.kind, period(f, c, tol), closed_form_period(q, k, c.kind)});
  }
  return t;
}

std::array<double, 3> weierstrass_period(const OneForm& form,
                                         const Cycle& cycle, double tol) {
  const FormDensity f = form.density();
  const FormDensity z2f = f.times_z(2);
  const cplx i0 = period(f, cycle, tol);
  const cplx i1 = period(f.times_z(1), cycle, tol);
  const cplx i2 = period(z2f, cycle, tol);
  return {(i0 - i2).real(), (kI * (i0 + i2)).real(), (2.0 * i1).real()};
}

// ---------------------------------------------------------------------------

PeriodSystem assemble_system(const ThetaParam& theta, double tol) {
  return assemble_system(theta, integral_quartet(theta, tol));
}

PeriodSystem assemble_system(const ThetaParam& theta,
                             const IntegralQuartet& q) {
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  const double c = theta.cos2t(), s2 = theta.sin2sq();
  PeriodSystem sys;
  sys.theta = theta.theta();
  sys.quartet = q;
  auto& M = sys.M;
  // X1 | X2
  M << A, C, 0.75 * A - C * c,  //
      C, 0.25 * A - C * c, 0.25 * A - C * c,
      //
      B, -D, -0.75 * B - D * c,  //
      D, 0.25 * B + D * c, -0.25 * B - D * c,
      //
      B, -D, 0.25 * B + D * c,  //
      -D, 0.75 * B + D * c, 0.75 * B + D * c,
      //
      A, C, -0.25 * A + C * c,  //
      -C, 0.75 * A - C * c, -0.75 * A + C * c,
      //
      -(A * c + 4 * C * s2), 0.25 * A - C * c,
      1.5 * A * c + (5 - 6 * c * c) * C,  //
      -0.25 * A + C * c, C, -C,
      //
      B * c - 4 * D * s2, -(0.25 * B + D * c),
      1.5 * B * c + (-5 + 6 * c * c) * D,  //
      -0.25 * B - D * c, D, D;
  return sys;
}

AppendixReduction appendix_reduce(const PeriodSystem& sys) {
  const auto& q = sys.quartet;
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  const ThetaParam th(sys.theta);
  const double c = th.cos2t(), s2 = th.sin2sq();
  const double E = A * D + B * C;
  const double C3 = C * C * C, D3 = D * D * D;

  const std::vector<RowOperation> ops = {
      {"i", 4, 1, 1.0, -1.0},
      {"ii", 5, 1, 1.0, c},
      {"iii", 3, 2, 1.0, -1.0},
      {"iv", 6, 2, 1.0, -c},
      {"v", 5, 1, A, 4 * C * s2},
      {"vi", 6, 2, B, 4 * D * s2},
      {"vii", 2, 3, 1.0, 0.5},
      {"viii", 6, 3, 1.0, -B * c + 2 * D * s2},
      {"ix", 1, 4, 1.0, 0.5},
      {"x", 5, 4, 1.0, A * c + 2 * C * s2},
      {"xi", 2, 1, A, -B},
      {"xii", 5, 4, C, -A * A / 8},
      {"xiii", 6, 3, D, -B * B / 8},
      {"xiv", 1, 2, E, C},
      {"xv", 3, 4, C, -D},
      {"xvi", 5, 2, E, A * A * C / 4 + 4 * C3 * s2},
      {"xvii", 6, 2, E, -B * B * D / 4 - 4 * D3 * s2},
      {"xviii", 1, 3, E, A * (-A * D + B * C) / 4},
      {"xix", 2, 3, E, A * B / 2},
      {"xx", 4, 3, E, A - 2 * C * c},
      {"xxi", 5, 3, E,
       -A * A * (A * A * D / 8 + E * C * c + 6 * C * C * D * s2) -
           4 * A * B * C3 * s2},
      {"xxii", 6, 3, E,
       -B * B * (-B * B * C / 8 + E * D * c - 6 * C * D * D * s2) +
           4 * A * B * D3 * s2},
  };

  AppendixReduction out;
  out.reduced = sys.M;
  for (const auto& op : ops) {
    if (!(op.self_scale > 0.0))
      throw ConsistencyError("appendix operation (" + op.label +
                             ") has a non-positive self-scaling factor");
    const int t = op.target - 1, s = op.source - 1;
    out.reduced.row(t) =
        op.self_scale * out.reduced.row(t) + op.source_scale * out.reduced.row(s);
    out.log.push_back(op);
  }
  return out;
}

FResidual residual_F(const IntegralQuartet& q) {
  const ThetaParam th(q.theta);
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  const double c = th.cos2t(), s2 = th.sin2sq();
  const double E = A * D + B * C;
  return {A * (B * B + 16 * D * D * s2) + 8 * E * (B * c - 4 * D * s2),
          B * (A * A + 16 * C * C * s2) - 8 * E * (A * c + 4 * C * s2)};
}

FResidual residual_F(const ThetaParam& theta, double tol) {
  return residual_F(integral_quartet(theta, tol));
}

Matrix6 expected_reduced(const PeriodSystem& sys) {
  const auto& q = sys.quartet;
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  const double c = ThetaParam(sys.theta).cos2t();
  const double E = A * D + B * C;
  const double G = -A * D + B * C;
  const auto [F1, F2] = residual_F(q);
  Matrix6 Y = Matrix6::Zero();
  Y(0, 0) = A * E * E;
  Y(1, 1) = -E * E;
  Y(2, 2) = E;
  Y(3, 3) = -2 * C * E;
  Y(0, 4) = 0.5 * A * E * E + A * G * G / 8;
  Y(1, 4) = E * E * c + A * B * G / 4;
  Y(2, 4) = 0.5 * G;
  Y(3, 4) = (A * B + (A * D - B * C) * c) * C;
  Y(4, 4) = -A * C * (3 * A * D + B * C) * F2 / 16;
  Y(5, 4) = -B * D * (A * D + 3 * B * C) * F1 / 16;
  Y(0, 5) = 0.5 * A * E * G;
  Y(1, 5) = A * B * E;
  Y(2, 5) = E;
  Y(4, 5) = A * C * E * F2 / 4;
  Y(5, 5) = -B * D * E * F1 / 4;
  return Y;
}

double reduced_block_determinant(const Matrix6& R) {
  return R(4, 4) * R(5, 5) - R(4, 5) * R(5, 4);
}

double determinant_factor(const IntegralQuartet& q) {
  const double E = q.A * q.D + q.B * q.C;
  return q.A * q.B * q.C * q.D * E * E / 16.0;
}

// ---------------------------------------------------------------------------

double scan_theta(int k, int n) { return (k + 0.5) * kHalfPi / n; }

namespace {

// Only the sign is used during the scan. Near the ends of (0, pi/2) the
// integrals grow like 1/sin^2(2 theta), so the tolerance is relative.
double scan_quad_tol(const ThetaParam& th) {
  return 1e-10 * (1.0 + 1.0 / th.sin2sq());
}

int count_sign_changes(const std::vector<double>& v, int* last) {
  int n = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if ((v[i - 1] < 0.0) != (v[i] < 0.0)) {
      ++n;
      *last = static_cast<int>(i - 1);
    }
  }
  return n;
}

double polish(int which, double a, double b, double tol_root, double* fval) {
  auto f = [which](double t) {
    const FResidual r = residual_F(ThetaParam(t), kDefaultQuadTol);
    return which == 1 ? r.F1 : r.F2;
  };
  double fa = f(a), fb = f(b);
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, a, b, fa, fb,
      [tol_root](double x, double y) { return std::abs(y - x) <= tol_root; },
      iters);
  const double flo = f(lo), fhi = f(hi);
  if (std::abs(flo) <= std::abs(fhi)) {
    *fval = flo;
    return lo;
  }
  *fval = fhi;
  return hi;
}

}  // namespace

CriticalAngles solve_critical_thetas(double tol_root, int samples) {
  if (!(tol_root > 0.0)) throw DomainError("root tolerance must be positive");
  if (samples < 8) throw DomainError("scan needs at least 8 samples");
  std::vector<double> f1(samples), f2(samples);
  for (int k = 0; k < samples; ++k) {
    const ThetaParam th(scan_theta(k, samples));
    const FResidual r = residual_F(th, scan_quad_tol(th));
    f1[k] = r.F1;
    f2[k] = r.F2;
  }
  CriticalAngles out;
  out.scan_samples = samples;
  int k1 = -1, k2 = -1;
  out.sign_changes_F1 = count_sign_changes(f1, &k1);
  out.sign_changes_F2 = count_sign_changes(f2, &k2);
  if (out.sign_changes_F1 != 1 || out.sign_changes_F2 != 1)
    throw ConsistencyError(
        "scan found " + std::to_string(out.sign_changes_F1) + " sign changes of F1 and " +
        std::to_string(out.sign_changes_F2) + " of F2; expected exactly one each");
  out.theta1 = polish(1, scan_theta(k1, samples), scan_theta(k1 + 1, samples),
                      tol_root, &out.F1_residual);
  out.theta2 = kHalfPi - out.theta1;
  out.theta2_root =
      polish(2, scan_theta(k2, samples), scan_theta(k2 + 1, samples), tol_root,
             &out.F2_residual);
  return out;
}

// ---------------------------------------------------------------------------

NullSpace nullspace(const PeriodSystem& sys, double tol_rank) {
  if (!(tol_rank > 0.0)) throw DomainError("rank tolerance must be positive");
  Eigen::JacobiSVD<Matrix6> svd(sys.M, Eigen::ComputeFullV);
  NullSpace ns;
  ns.tol_rank = tol_rank;
  ns.singular_values = svd.singularValues();
  const double smax = ns.singular_values(0);
  for (int i = 0; i < 6; ++i) {
    const double rel = smax > 0.0 ? ns.singular_values(i) / smax : 0.0;
    if (rel < tol_rank) {
      ++ns.nullity;
      ns.vectors.push_back(svd.matrixV().col(i));
    } else if (rel <= 10.0 * tol_rank) {
      ns.indeterminate = true;
    }
  }
  return ns;
}

// Slot of each alpha in the solution vector (alpha index -> y index).
static constexpr std::array<int, 6> kSolutionSlot = {0, 2, 4, 3, 1, 5};
// Whether the solution vector carries the conjugate of alpha_k.
static constexpr std::array<bool, 6> kConjugated = {false, true,  false,
                                                    true,  false, true};

std::array<cplx, 6> alphas_from_solution(const Vector6& v, cplx lambda) {
  std::array<cplx, 6> a;
  for (int k = 0; k < 6; ++k) {
    const cplx y = lambda * v(kSolutionSlot[k]);
    a[k] = kConjugated[k] ? std::conj(y) : y;
  }
  return a;
}

Eigen::Matrix<cplx, 6, 1> complex_solution_from_alphas(
    const std::array<cplx, 6>& alpha) {
  Eigen::Matrix<cplx, 6, 1> y;
  for (int k = 0; k < 6; ++k)
    y(kSolutionSlot[k]) = kConjugated[k] ? std::conj(alpha[k]) : alpha[k];
  return y;
}

Vector6 solution_from_alphas(const std::array<cplx, 6>& alpha) {
  return complex_solution_from_alphas(alpha).real();
}

std::array<cplx, 6> closed_form_alphas(const IntegralQuartet& q) {
  const double A = q.A, B = q.B, C = q.C, D = q.D;
  const double c = ThetaParam(q.theta).cos2t();
  const double E = A * D + B * C;
  const double a1 = -(A * D + 3 * B * C) / (4 * E);
  return {a1,
          a1,
          1.0,
          (A * B + (A * D - B * C) * c) / (2 * E),
          (A * B + 2 * E * c) / (2 * E),
          (3 * A * D + B * C) / (4 * E)};
}

double parallel_defect(const Vector6& a, const Vector6& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double cosang = std::abs(a.dot(b)) / (na * nb);
  return std::sqrt(std::max(0.0, 1.0 - cosang * cosang));
}

OmegaPair omega_pair_at(const PeriodSystem& sys, double tol_rank) {
  const NullSpace ns = nullspace(sys, tol_rank);
  if (ns.nullity != 1)
    throw ConsistencyError("expected a one-dimensional null space, found " +
                           std::to_string(ns.nullity));
  const Vector6& v = ns.vectors.front();
  const FResidual F = residual_F(sys.quartet);
  OmegaPair out;
  if (std::abs(F.F1) <= std::abs(F.F2)) {
    const auto alpha = closed_form_alphas(sys.quartet);
    const Vector6 y = solution_from_alphas(alpha);
    out.parallel_residual = parallel_defect(y, v);
    if (out.parallel_residual > kParallelTol)
      throw ConsistencyError(
          "closed-form coefficients are not parallel to the null vector");
    out.closed_form = true;
    out.omega1 = OneForm::from_alphas(alpha);
    out.omega2 = OneForm::from_alphas(alphas_from_solution(y, kI));
    return out;
  }
  Vector6 y = v;
  int pivot = 4;  // z dz/w^3 coefficient
  if (std::abs(y(pivot)) < 1e-3 * y.norm()) y.cwiseAbs().maxCoeff(&pivot);
  y /= y(pivot);
  out.omega1 = OneForm::from_alphas(alphas_from_solution(y, 1.0));
  out.omega2 = OneForm::from_alphas(alphas_from_solution(y, kI));
  return out;
}

Theta2Correspondence theta2_correspondence(const PeriodSystem& sys2) {
  const IntegralQuartet q1 = sys2.quartet.swapped();
  const auto a1 = closed_form_alphas(q1);
  // z^a dz / w^b pulls back to i^{a+1} e^{-i b pi/4} zeta^a d zeta / v^b.
  static constexpr int za[6] = {0, 0, 1, 2, 3, 4};
  static constexpr int wb[6] = {1, 3, 3, 3, 3, 3};
  Theta2Correspondence out;
  for (int k = 0; k < 6; ++k) {
    const cplx factor = std::pow(kI, za[k] + 1) * eighth(-wb[k]);
    out.alphas[k] = kI * factor * a1[k];
  }
  const Eigen::Matrix<cplx, 6, 1> y = complex_solution_from_alphas(out.alphas);
  const Eigen::Matrix<cplx, 6, 6> Mc = sys2.M.cast<cplx>();
  out.residual = (Mc * y).norm() / (sys2.M.norm() * y.norm());
  // remove the common phase, then compare with the real null vector
  int pivot = 0;
  y.cwiseAbs().maxCoeff(&pivot);
  const cplx phase = y(pivot) / std::abs(y(pivot));
  const Vector6 yr = (y / phase).real();
  const NullSpace ns = nullspace(sys2);
  out.parallel_residual =
      ns.nullity >= 1 ? parallel_defect(yr, ns.vectors.front()) : 1.0;
  return out;
}

}  // namespace bolza
