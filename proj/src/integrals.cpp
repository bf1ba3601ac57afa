#include "bolza/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bolza {

namespace {

// log q(e^x) with q(t) = t^4 + 2 c t^2 + 1 = (t^2 + c)^2 + s^2, computed
// without overflow for large |x|.
double log_quartic(double x, double c, double s2) {
  if (std::abs(x) < 30.0) {
    const double t2 = std::exp(2.0 * x);
    const double a = t2 + c;
    return std::log(a * a + s2);
  }
  if (x > 0.0) {
    const double e2 = std::exp(-2.0 * x);
    return 4.0 * x + std::log1p(2.0 * c * e2 + e2 * e2);
  }
  const double e2 = std::exp(2.0 * x);
  return std::log1p(2.0 * c * e2 + e2 * e2);
}

// Integrand after t = e^x: t^a / q(t)^p, including the Jacobian dt = t dx.
// The zeros of q sit at x = +-i phi with cos(2 phi) = -c, so the node scale
// follows phi when it is small.
QuadResult integrate_exponent(double c, double s2, double a, double p,
                              double tol) {
  auto f = [=](double x) {
    return std::exp(a * x - p * log_quartic(x, c, s2));
  };
  const double phi = 0.5 * std::acos(std::clamp(-c, -1.0, 1.0));
  return de_real_line(f, tol, 12, std::min(kHalfPi, 2.0 * phi));
}

QuadResult checked(QuadResult r, const char* name) {
  if (!r.converged)
    throw ConvergenceError(std::string("integral ") + name +
                               " did not reach the requested tolerance",
                           r.error);
  return r;
}

}  // namespace

QuadResult quadrature_halfline(IntegrandKind kind, const ThetaParam& theta,
                               double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const double c = theta.cos2t();
  const double s2 = theta.sin2sq();
  // A: t^{-1/2} q^{-1/2} dt -> exponent 1/2;  C: t^{3/2} q^{-3/2} dt -> 5/2
  switch (kind) {
    case IntegrandKind::A:
      return checked(integrate_exponent(c, s2, 0.5, 0.5, tol), "A");
    case IntegrandKind::B:
      return checked(integrate_exponent(-c, s2, 0.5, 0.5, tol), "B");
    case IntegrandKind::C:
      return checked(integrate_exponent(c, s2, 2.5, 1.5, tol), "C");
    case IntegrandKind::D:
      return checked(integrate_exponent(-c, s2, 2.5, 1.5, tol), "D");
  }
  throw DomainError("unknown integrand");
}

QuadResult quadrature_reciprocal_a(const ThetaParam& theta, double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  return checked(
      integrate_exponent(theta.cos2t(), theta.sin2sq(), 1.5, 0.5, tol), "t*A");
}

IntegralQuartet IntegralQuartet::swapped() const {
  IntegralQuartet q;
  q.theta = kHalfPi - theta;
  q.A = B;
  q.B = A;
  q.C = D;
  q.D = C;
  q.err = {err[1], err[0], err[3], err[2]};
  return q;
}

IntegralQuartet integral_quartet(const ThetaParam& theta, double tol) {
  IntegralQuartet q;
  q.theta = theta.theta();
  const IntegrandKind kinds[4] = {IntegrandKind::A, IntegrandKind::B,
                                  IntegrandKind::C, IntegrandKind::D};
  double* slots[4] = {&q.A, &q.B, &q.C, &q.D};
  for (int i = 0; i < 4; ++i) {
    const QuadResult r = quadrature_halfline(kinds[i], theta, tol);
    *slots[i] = r.value;
    q.err[i] = r.error;
    if (!(r.value > 0.0))
      throw ConsistencyError("quartet entry is not strictly positive");
  }
  return q;
}

}  // namespace bolza
