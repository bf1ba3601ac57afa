#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bolza/forms.hpp"

namespace bolza {

using Vec3 = std::array<double, 3>;

inline constexpr double kImmersionTol = 1e-12;

// Re of the integral of (1 - z^2, i (1 + z^2), 2 z) f dz along the lift.
Vec3 weierstrass_integrate(const OneForm& form, const LiftedPath& lift,
                           double tol = kImmersionTol);

// Unit normal induced by the Gauss map g = z (stereographic image of z).
Vec3 gauss_normal(const CurvePoint& p);

double dot(const Vec3& a, const Vec3& b);

// Lift of the z-loop p0 -> j(p0): out from z = 1 towards e^{i(pi/2 - theta)},
// once counterclockwise around it, and back.
LiftedPath canonical_loop(const ThetaParam& theta);

// Lift from p0 to `target`: the routed z-path from 1, preceded by the
// canonical loop when the routed lift lands on the other sheet.
LiftedPath canonical_path(const ThetaParam& theta, const CurvePoint& target);

struct ImmersionSample {
  CurvePoint point;
  Vec3 X{};
  Vec3 N{};
  double u = 0.0;
};

ImmersionSample immersion_sample(const ThetaParam& theta, const OneForm& form,
                                 const CurvePoint& target,
                                 double tol = kImmersionTol);

// u = <X, N> at the endpoint of `lift`.
double support_function(const OneForm& form, const LiftedPath& lift,
                        double tol = kImmersionTol);

// Random curve points with |z| in [r_min, r_max], at distance > `clearance`
// from every finite branch value, on a random sheet.
std::vector<CurvePoint> sample_points(const ThetaParam& theta, int n,
                                      unsigned seed, double r_min = 0.3,
                                      double r_max = 3.0,
                                      double clearance = 0.1);

struct SymmetryReport {
  double theta = 0.0;
  int samples = 0;
  Vec3 c1{}, c2{};
  double s1_u1 = 0.0;  // max |u1(s1 p) - u1(p)|
  double s1_u2 = 0.0;  // max |u2(s1 p) + u2(p)|
  double s3_u1 = 0.0;  // max |u1(s3 p) - u1(p)|
  double s3_u2 = 0.0;  // max |u2(s3 p) - u2(p)|
  double j_u1 = 0.0;   // max |u1(j p) + u1(p) - <c1, N(p)>|
  double j_u2 = 0.0;
  double psi_omega1 = 0.0;  // density-level |psi^* w1 + z^2 w1| (relative)
  double psi_omega2 = 0.0;  // density-level |psi^* w2 - z^2 w2| (relative)
  double s1_omega1 = 0.0;   // density-level |s1^* w1 - conj w1|
  double s1_omega2 = 0.0;   // density-level |s1^* w2 + conj w2|
  double max_u_residual() const;
};

SymmetryReport symmetry_report(const ThetaParam& theta, const OneForm& omega1,
                               const OneForm& omega2, int n,
                               unsigned seed = 2024);

// max over points of |f(psi p) d(1/z)/dz - sign z^2 f(p)| / (1 + |z^2 f(p)|),
// i.e. the density form of psi^* w = sign z^2 w.
double psi_pullback_residual(const ThetaParam& theta, const OneForm& form,
                             double sign, const std::vector<CurvePoint>& pts);

// max over points of |f(s1 p) conj(dz) - sign conj(f(p) dz)| at the density
// level: |f(conj z, conj w) - sign conj f(z, w)|, relative.
double s1_pullback_residual(const OneForm& form, double sign,
                            const std::vector<CurvePoint>& pts);

// ---------------------------------------------------------------------------

inline constexpr double kStencilH = 1e-3;

// |((1 + |z|^2)^2 / 4) Lap_h u + 2 u| at p with the five-point stencil,
// where u is the support function of `form` continued from p.
struct EigenResidual {
  CurvePoint point;
  double h = 0.0;
  double u = 0.0;
  double residual = 0.0;
  double noise = 0.0;  // rounding floor of the stencil, ~ eps |X| / h^2
};

// Residuals at h and h/2 follow the O(h^2) trend: the finer one is at most
// 0.4 of the coarser, allowing for the rounding floor.
bool quadratic_trend(const EigenResidual& coarse, const EigenResidual& fine);

EigenResidual eigen_residual(const ThetaParam& theta, const OneForm& form,
                             const CurvePoint& p, double h = kStencilH);

// Five-point Laplacian of a scalar field of z at z0, in extended precision.
long double stencil_laplacian(
    const std::function<long double(long double, long double)>& u, cplx z0,
    long double h);

// Same with one Richardson step over h and h/2 (error O(h^4)).
long double stencil_laplacian_richardson(
    const std::function<long double(long double, long double)>& u, cplx z0,
    long double h);

// The pulled-back coordinate function N_3 = (|z|^2 - 1)/(|z|^2 + 1) and its
// eigen-equation residual with the extrapolated stencil.
double pullback_harmonic_residual(cplx z0, double h = kStencilH);

// ---------------------------------------------------------------------------

struct ExtraCheck {
  std::array<double, 4> coeffs{};  // fit u ~ a N1 + b N2 + c N3 + d
  double relative_residual = 0.0;
  double condition = 0.0;
};

inline constexpr double kExtraThreshold = 0.1;
inline constexpr double kExtraMaxCondition = 1e8;

// Least-squares fit of `u` by span{N1, N2, N3, 1} over the points. Throws
// GeometryError when fewer than 10 points are given or the fit is
// ill-conditioned.
ExtraCheck extra_check(const std::vector<CurvePoint>& pts,
                       const std::vector<double>& u);

}  // namespace bolza
