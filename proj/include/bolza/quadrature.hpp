#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <span>

namespace bolza {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // |I_h - I_{h/2}| at the last refinement
  int levels = 0;       // number of step halvings performed
  bool converged = false;
};

// Double-exponential (sinh-sinh) trapezoid rule for an integral over the whole
// real line. Nodes x = scale * sinh(u) on a grid of spacing h in u, h halved
// up to `max_halvings` times until two successive levels agree to `tol`.
// The integrand must decay at least exponentially in |x|. A smaller `scale`
// packs nodes near x = 0, for integrands with poles close to the real axis.
QuadResult de_real_line(const std::function<double(double)>& f, double tol,
                        int max_halvings = 12, double scale = 1.5707963267948966);

// Gauss-Legendre rule on [-1, 1] with a fixed order.
struct GaussLegendre {
  static constexpr int kOrder = 20;
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  static const GaussLegendre& instance();
};

// Composite Gauss-Legendre over s in [0, 1] for a smooth complex-valued
// integrand. Panels are doubled from `initial_panels` until the estimate is
// stable to `tol` (absolute) or `max_panels` is reached.
struct ComplexQuadResult {
  std::complex<double> value;
  double error = 0.0;
  int panels = 0;
  bool converged = false;
};

ComplexQuadResult composite_gauss(
    const std::function<std::complex<double>(double)>& f, double tol,
    int initial_panels = 4, int max_panels = 4096);

}  // namespace bolza
