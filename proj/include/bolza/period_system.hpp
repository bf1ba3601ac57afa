#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bolza/forms.hpp"
#include "bolza/integrals.hpp"

namespace bolza {

inline constexpr double kPeriodTol = 1e-11;

// ---------------------------------------------------------------------------
// Periods.

cplx period(const FormDensity& form, const Cycle& cycle,
            double tol = kPeriodTol);
cplx period(const OneForm& form, const Cycle& cycle, double tol = kPeriodTol);
cplx period(const SecondKindForm& form, const Cycle& cycle,
            double tol = kPeriodTol);

// Closed-form period of second-kind basis form `k` (dz/w, z dz/w, z^3 dz/w^3,
// z^4 dz/w^3) over a cycle.
cplx closed_form_period(const IntegralQuartet& q, int k, CycleKind kind);

struct PeriodEntry {
  int form = 0;
  CycleKind cycle = CycleKind::C4Loop;
  cplx numeric;
  cplx closed;
  double abs_err() const { return std::abs(numeric - closed); }
};

struct PeriodTable {
  double theta = 0.0;
  std::vector<PeriodEntry> entries;  // 16 rows, form-major
  double max_abs_err() const;
};

PeriodTable period_table(const ThetaParam& theta, const IntegralQuartet& q,
                         double tol = kPeriodTol);

const char* second_kind_name(int k);

// Real parts of the Weierstrass integrand (1 - z^2, i (1 + z^2), 2 z) f dz
// over a cycle.
std::array<double, 3> weierstrass_period(const OneForm& form,
                                         const Cycle& cycle,
                                         double tol = kPeriodTol);

// ---------------------------------------------------------------------------
// The 6x6 real system in the variable order
// (alpha_1, alpha_5, conj alpha_2, conj alpha_4, alpha_3, conj alpha_6).

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

struct PeriodSystem {
  double theta = 0.0;
  IntegralQuartet quartet;
  Matrix6 M = Matrix6::Zero();
};

PeriodSystem assemble_system(const ThetaParam& theta,
                             double tol = kDefaultQuadTol);
PeriodSystem assemble_system(const ThetaParam& theta,
                             const IntegralQuartet& q);

// R_target <- self_scale * R_target + source_scale * R_source (1-based rows).
struct RowOperation {
  std::string label;
  int target = 0;
  int source = 0;
  double self_scale = 1.0;
  double source_scale = 0.0;
};

struct AppendixReduction {
  Matrix6 reduced = Matrix6::Zero();
  std::vector<RowOperation> log;
};

// The 22 appendix operations applied in order. Throws ConsistencyError if a
// self-scaling factor is not strictly positive.
AppendixReduction appendix_reduce(const PeriodSystem& sys);

// The displayed reduced matrix (Y1 Y2 Y3) evaluated from the quartet.
Matrix6 expected_reduced(const PeriodSystem& sys);

struct FResidual {
  double F1 = 0.0;
  double F2 = 0.0;
};

FResidual residual_F(const IntegralQuartet& q);
FResidual residual_F(const ThetaParam& theta, double tol = kDefaultQuadTol);

// Determinant of the bottom-right 2x2 block of the reduced matrix, and the
// factor ABCD (AD + BC)^2 / 16 with det = F1 F2 * factor.
double reduced_block_determinant(const Matrix6& reduced);
double determinant_factor(const IntegralQuartet& q);

struct CriticalAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double F1_residual = 0.0;
  double F2_residual = 0.0;
  double theta2_root = 0.0;  // independent root of F2
  int sign_changes_F1 = 0;
  int sign_changes_F2 = 0;
  int scan_samples = 0;
};

inline constexpr double kRootTol = 1e-12;
inline constexpr int kScanSamples = 512;

// Sign-change scan of F1 and F2 on (0, pi/2) followed by bracketed
// polishing. Throws ConsistencyError unless each has exactly one sign change.
CriticalAngles solve_critical_thetas(double tol_root = kRootTol,
                                     int samples = kScanSamples);

// Scan sample k of n: theta_k = (k + 1/2) (pi/2) / n.
double scan_theta(int k, int n);

// ---------------------------------------------------------------------------

inline constexpr double kRankTol = 1e-8;

struct NullSpace {
  Vector6 singular_values = Vector6::Zero();  // descending
  int nullity = 0;
  std::vector<Vector6> vectors;
  bool indeterminate = false;  // some sigma/sigma_max in [tol, 10 tol]
  double tol_rank = kRankTol;
};

NullSpace nullspace(const PeriodSystem& sys, double tol_rank = kRankTol);

// Complex solution y = lambda * v of the system for real v, decoded into the
// six alphas; lambda = 1 gives the real family, lambda = i the imaginary one.
std::array<cplx, 6> alphas_from_solution(const Vector6& v, cplx lambda);
// Inverse for forms whose solution vector is real.
Vector6 solution_from_alphas(const std::array<cplx, 6>& alpha);
// Solution-vector image (complex) of arbitrary alphas.
Eigen::Matrix<cplx, 6, 1> complex_solution_from_alphas(
    const std::array<cplx, 6>& alpha);

// Closed-form coefficient pair of omega_1 at a critical angle, from the quartet.
std::array<cplx, 6> closed_form_alphas(const IntegralQuartet& q);

struct OmegaPair {
  OneForm omega1;
  OneForm omega2;
  bool closed_form = false;     // true on the theta_1 branch
  double parallel_residual = 0.0;  // closed form vs null vector (theta_1)
};

inline constexpr double kParallelTol = 1e-7;

// At theta_1 (|F1| <= |F2|) returns the closed-form pair and asserts that it
// is parallel to the computed null vector; otherwise returns the numerical
// null vector scaled so the z dz/w^3 coefficient is 1. Throws
// ConsistencyError if the nullity is not 1 or the parallel check fails.
OmegaPair omega_pair_at(const PeriodSystem& sys, double tol_rank = kRankTol);

// sin of the angle between two real vectors.
double parallel_defect(const Vector6& a, const Vector6& b);

// Residual |M y| / (|M| |y|) of the theta_2 candidate i F^* omega_1, where
// F(zeta, v) = (i zeta, e^{i pi/4} v) maps B_{theta_2} onto B_{theta_1}.
// `sys2` is the system at theta_2 = pi/2 - theta_1.
struct Theta2Correspondence {
  std::array<cplx, 6> alphas;
  double residual = 0.0;
  double parallel_residual = 0.0;  // against the theta_2 null vector
};
Theta2Correspondence theta2_correspondence(const PeriodSystem& sys2);

}  // namespace bolza
