#include "bolza/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace bolza {

namespace {

const cplx kI(0.0, 1.0);

Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

double branch_distance(const ThetaParam& theta, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx e : finite_branch_values(theta)) d = std::min(d, std::abs(z - e));
  return d;
}

}  // namespace

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 weierstrass_integrate(const OneForm& form, const LiftedPath& lift,
                           double tol) {
  if (lift.path().empty()) return {0.0, 0.0, 0.0};
  const FormDensity f = form.density();
  const FormDensity zf = f.times_z(1);
  const FormDensity z2f = f.times_z(2);
  const cplx i0 = integrate_along(lift, f, tol).value;
  const cplx i1 = integrate_along(lift, zf, tol).value;
  const cplx i2 = integrate_along(lift, z2f, tol).value;
  return {(i0 - i2).real(), (kI * (i0 + i2)).real(), (2.0 * i1).real()};
}

Vec3 gauss_normal(const CurvePoint& p) {
  if (p.at_infinity) return {0.0, 0.0, 1.0};
  const double r2 = std::norm(p.z);
  const double d = r2 + 1.0;
  return {2.0 * p.z.real() / d, 2.0 * p.z.imag() / d, (r2 - 1.0) / d};
}

LiftedPath canonical_loop(const ThetaParam& theta) {
  const cplx b = std::polar(1.0, kHalfPi - theta.theta());
  const cplx from = 1.0;
  const double gap = std::abs(from - b);
  const double r =
      0.5 * std::min({gap, 2.0 * std::sin(theta.theta()), 1.0});
  const cplx dir = (from - b) / gap;
  const cplx touch = b + r * dir;
  const double phi = std::arg(dir);
  Path p;
  p.segments.push_back(Segment::line(from, touch));
  p.segments.push_back(Segment::arc(b, r, phi, phi + 2.0 * kPi));
  p.segments.push_back(Segment::line(touch, from));
  const LiftedPath lift = continue_sheet(theta, p, base_point(theta));
  const CurvePoint e = lift.end();
  if (std::abs(e.w + base_point(theta).w) > 1e-9 * std::abs(e.w))
    throw ConsistencyError("canonical loop did not reach j(p0)");
  return lift;
}

LiftedPath canonical_path(const ThetaParam& theta, const CurvePoint& target) {
  if (target.at_infinity)
    throw GeometryError("canonical paths end at finite points");
  const CurvePoint p0 = base_point(theta);
  const Path direct = route(theta, 1.0, target.z);
  LiftedPath lift = continue_sheet(theta, direct, p0);
  const cplx w = lift.end().w;
  if (std::abs(w - target.w) <= std::abs(w + target.w)) return lift;
  Path full = canonical_loop(theta).path();
  full.append(direct);
  lift = continue_sheet(theta, full, p0);
  if (std::abs(lift.end().w - target.w) > 1e-8 * (1.0 + std::abs(target.w)))
    throw ConsistencyError("canonical path missed the target sheet");
  return lift;
}

ImmersionSample immersion_sample(const ThetaParam& theta, const OneForm& form,
                                 const CurvePoint& target, double tol) {
  const LiftedPath lift = canonical_path(theta, target);
  ImmersionSample s;
  s.point = target;
  s.X = weierstrass_integrate(form, lift, tol);
  s.N = gauss_normal(target);
  s.u = dot(s.X, s.N);
  return s;
}

double support_function(const OneForm& form, const LiftedPath& lift,
                        double tol) {
  return dot(weierstrass_integrate(form, lift, tol), gauss_normal(lift.end()));
}

std::vector<CurvePoint> sample_points(const ThetaParam& theta, int n,
                                      unsigned seed, double r_min,
                                      double r_max, double clearance) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> lr(std::log(r_min), std::log(r_max));
  std::vector<CurvePoint> pts;
  while (static_cast<int>(pts.size()) < n) {
    const cplx z = std::polar(std::exp(lr(rng)), ang(rng));
    const int sheet = static_cast<int>(rng() % 2);
    if (branch_distance(theta, z) <= clearance) continue;
    if (std::abs(z - 1.0) < 1e-3) continue;
    pts.push_back({z, fiber(z, theta)[sheet]});
  }
  return pts;
}

double SymmetryReport::max_u_residual() const {
  return std::max({s1_u1, s1_u2, s3_u1, s3_u2, j_u1, j_u2});
}

double psi_pullback_residual(const ThetaParam& theta, const OneForm& form,
                             double sign, const std::vector<CurvePoint>& pts) {
  const FormDensity f = form.density();
  double worst = 0.0;
  for (const auto& p : pts) {
    const CurvePoint q = apply_symmetry(Symmetry::Psi, p);
    if (curve_residual(theta, q) > kCurveEps)
      throw ConsistencyError("psi image is off the curve");
    const cplx lhs = -f.eval(q.z, q.w) / (p.z * p.z);
    const cplx rhs = sign * p.z * p.z * f.eval(p.z, p.w);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

double s1_pullback_residual(const OneForm& form, double sign,
                            const std::vector<CurvePoint>& pts) {
  const FormDensity f = form.density();
  double worst = 0.0;
  for (const auto& p : pts) {
    const cplx lhs = f.eval(std::conj(p.z), std::conj(p.w));
    const cplx rhs = sign * std::conj(f.eval(p.z, p.w));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

SymmetryReport symmetry_report(const ThetaParam& theta, const OneForm& omega1,
                               const OneForm& omega2, int n, unsigned seed) {
  if (n < 1) throw DomainError("symmetry report needs at least one sample");
  SymmetryReport rep;
  rep.theta = theta.theta();
  rep.samples = n;
  const LiftedPath loop = canonical_loop(theta);
  rep.c1 = weierstrass_integrate(omega1, loop);
  rep.c2 = weierstrass_integrate(omega2, loop);

  auto both = [&](const CurvePoint& p) {
    const LiftedPath lift = canonical_path(theta, p);
    const Vec3 N = gauss_normal(p);
    return std::array<double, 2>{dot(weierstrass_integrate(omega1, lift), N),
                                 dot(weierstrass_integrate(omega2, lift), N)};
  };

  const auto pts = sample_points(theta, n, seed);
  for (const auto& p : pts) {
    const auto u = both(p);
    const auto us1 = both(apply_symmetry(Symmetry::S1, p));
    const auto us3 = both(apply_symmetry(Symmetry::S3, p));
    const auto uj = both(apply_symmetry(Symmetry::J, p));
    const Vec3 N = gauss_normal(p);
    rep.s1_u1 = std::max(rep.s1_u1, std::abs(us1[0] - u[0]));
    rep.s1_u2 = std::max(rep.s1_u2, std::abs(us1[1] + u[1]));
    rep.s3_u1 = std::max(rep.s3_u1, std::abs(us3[0] - u[0]));
    rep.s3_u2 = std::max(rep.s3_u2, std::abs(us3[1] - u[1]));
    rep.j_u1 = std::max(rep.j_u1, std::abs(uj[0] + u[0] - dot(rep.c1, N)));
    rep.j_u2 = std::max(rep.j_u2, std::abs(uj[1] + u[1] - dot(rep.c2, N)));
  }
  rep.psi_omega1 = psi_pullback_residual(theta, omega1, -1.0, pts);
  rep.psi_omega2 = psi_pullback_residual(theta, omega2, +1.0, pts);
  rep.s1_omega1 = s1_pullback_residual(omega1, +1.0, pts);
  rep.s1_omega2 = s1_pullback_residual(omega2, -1.0, pts);
  return rep;
}

// ---------------------------------------------------------------------------

EigenResidual eigen_residual(const ThetaParam& theta, const OneForm& form,
                             const CurvePoint& p, double h) {
  if (!(h > 0.0)) throw DomainError("stencil size must be positive");
  if (branch_distance(theta, p.z) <= 10.0 * h)
    throw GeometryError("stencil lies too close to a branch point");
  const LiftedPath base = canonical_path(theta, p);
  const Vec3 Xp = weierstrass_integrate(form, base);
  const double up = dot(Xp, gauss_normal(p));

  const cplx dirs[4] = {1.0, -1.0, kI, -kI};
  double sum = 0.0;
  for (const cplx d : dirs) {
    Path step;
    step.segments.push_back(Segment::line(p.z, p.z + h * d));
    const LiftedPath lift = continue_sheet(theta, step, p);
    const Vec3 X = add(Xp, weierstrass_integrate(form, lift, 1e-15));
    sum += dot(X, gauss_normal(lift.end()));
  }
  const double lap = (sum - 4.0 * up) / (h * h);
  const double conf = std::pow(1.0 + std::norm(p.z), 2) / 4.0;
  const double xnorm = std::sqrt(dot(Xp, Xp));
  const double noise = conf * 16.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + xnorm) / (h * h);
  return {p, h, up, std::abs(conf * lap + 2.0 * up), noise};
}

bool quadratic_trend(const EigenResidual& coarse, const EigenResidual& fine) {
  return fine.residual <= 0.4 * coarse.residual + 2.0 * fine.noise;
}

long double stencil_laplacian(
    const std::function<long double(long double, long double)>& u, cplx z0,
    long double h) {
  const long double x = z0.real(), y = z0.imag();
  return (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) -
          4.0L * u(x, y)) /
         (h * h);
}

long double stencil_laplacian_richardson(
    const std::function<long double(long double, long double)>& u, cplx z0,
    long double h) {
  const long double coarse = stencil_laplacian(u, z0, h);
  const long double fine = stencil_laplacian(u, z0, 0.5L * h);
  return (4.0L * fine - coarse) / 3.0L;
}

double pullback_harmonic_residual(cplx z0, double h) {
  auto n3 = [](long double x, long double y) {
    const long double r2 = x * x + y * y;
    return (r2 - 1.0L) / (r2 + 1.0L);
  };
  const long double lap = stencil_laplacian_richardson(n3, z0, h);
  const long double r2 = std::norm(z0);
  const long double conf = (1.0L + r2) * (1.0L + r2) / 4.0L;
  return static_cast<double>(
      std::abs(conf * lap + 2.0L * n3(z0.real(), z0.imag())));
}

// ---------------------------------------------------------------------------

ExtraCheck extra_check(const std::vector<CurvePoint>& pts,
                       const std::vector<double>& u) {
  if (pts.size() != u.size())
    throw DomainError("sample and value counts differ");
  if (pts.size() < 10)
    throw GeometryError("extra check needs at least 10 samples; resample");
  const int n = static_cast<int>(pts.size());
  Eigen::MatrixXd G(n, 4);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const Vec3 N = gauss_normal(pts[i]);
    G.row(i) << N[0], N[1], N[2], 1.0;
    b(i) = u[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const auto sv = svd.singularValues();
  ExtraCheck out;
  out.condition = sv(3) > 0.0 ? sv(0) / sv(3)
                              : std::numeric_limits<double>::infinity();
  if (out.condition > kExtraMaxCondition)
    throw GeometryError("sample geometry makes the fit ill-conditioned; "
                        "resample");
  const Eigen::Vector4d x = svd.solve(b);
  for (int k = 0; k < 4; ++k) out.coeffs[k] = x(k);
  const double nb = b.norm();
  out.relative_residual = nb > 0.0 ? (G * x - b).norm() / nb : 0.0;
  return out;
}

}  // namespace bolza
