#pragma once

#include <array>

#include "bolza/quadrature.hpp"
#include "bolza/theta.hpp"

namespace bolza {

// The four half-line integrals whose values fix the period system.
//   A = int_0^inf dt / sqrt(t (t^4 + 2 c t^2 + 1))
//   B = same with c -> -c
//   C = int_0^inf t^3 dt / (t (t^4 + 2 c t^2 + 1))^{3/2}
//   D = same with c -> -c
// where c = cos 2 theta.
enum class IntegrandKind { A, B, C, D };

inline constexpr double kDefaultQuadTol = 1e-12;

// Evaluates one of the four integrals with the substitution t = e^x followed
// by the double-exponential rule. Throws DomainError / ConvergenceError.
QuadResult quadrature_halfline(IntegrandKind kind, const ThetaParam& theta,
                               double tol = kDefaultQuadTol);

// The companion integral int_0^inf t dt / sqrt(t (t^4 + 2 c t^2 + 1)), equal to
// A by the substitution t -> 1/t. Exposed for the self-reciprocity check.
QuadResult quadrature_reciprocal_a(const ThetaParam& theta,
                                   double tol = kDefaultQuadTol);

struct IntegralQuartet {
  double theta = 0.0;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
  std::array<double, 4> err{};

  // The quartet of pi/2 - theta: (A, B, C, D) -> (B, A, D, C).
  IntegralQuartet swapped() const;
};

IntegralQuartet integral_quartet(const ThetaParam& theta,
                                 double tol = kDefaultQuadTol);

}  // namespace bolza
