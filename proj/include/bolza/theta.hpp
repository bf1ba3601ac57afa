#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "bolza/errors.hpp"

namespace bolza {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Family parameter of the curve w^2 = z (z^4 + 2 cos(2 theta) z^2 + 1).
class ThetaParam {
 public:
  explicit ThetaParam(double theta) : theta_(theta) {
    if (!(theta > 0.0 && theta < kHalfPi))
      throw DomainError("theta must lie in the open interval (0, pi/2)");
    cos2t_ = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    sin2sq_ = s * s;
  }

  double theta() const noexcept { return theta_; }
  double cos2t() const noexcept { return cos2t_; }
  double sin2sq() const noexcept { return sin2sq_; }

  // Parameter of the mirrored member, pi/2 - theta (cos 2 theta flips sign).
  ThetaParam mirrored() const { return ThetaParam(kHalfPi - theta_); }

  // P(z) = z^5 + 2 cos2t z^3 + z, the right-hand side of the curve equation.
  cplx poly(cplx z) const {
    const cplx z2 = z * z;
    return z * (z2 * z2 + 2.0 * cos2t_ * z2 + 1.0);
  }

  cplx poly_derivative(cplx z) const {
    const cplx z2 = z * z;
    return 5.0 * z2 * z2 + 6.0 * cos2t_ * z2 + 1.0;
  }

 private:
  double theta_;
  double cos2t_;
  double sin2sq_;
};

}  // namespace bolza
