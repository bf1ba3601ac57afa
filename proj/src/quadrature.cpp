#include "bolza/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace bolza {

namespace {

// Beyond |x| = 500 any admissible integrand has decayed below double range.
constexpr double kXMax = 500.0;
constexpr double kH0 = 0.5;

double de_term(const std::function<double(double)>& f, double u,
               double scale) {
  const double x = scale * std::sinh(u);
  const double fx = f(x);
  if (fx == 0.0) return 0.0;
  return fx * scale * std::cosh(u);
}

}  // namespace

QuadResult de_real_line(const std::function<double(double)>& f, double tol,
                        int max_halvings, double scale) {
  QuadResult r;
  double h = kH0;
  long steps = static_cast<long>(std::ceil(std::asinh(kXMax / scale) / h));
  double sum = de_term(f, 0.0, scale);
  for (long k = 1; k <= steps; ++k)
    sum += de_term(f, k * h, scale) + de_term(f, -k * h, scale);
  double estimate = h * sum;

  for (int level = 1; level <= max_halvings; ++level) {
    h *= 0.5;
    steps *= 2;
    // only the odd multiples of the new spacing are new nodes
    double fresh = 0.0;
    for (long k = 1; k <= steps; k += 2)
      fresh += de_term(f, k * h, scale) + de_term(f, -k * h, scale);
    sum += fresh;
    const double next = h * sum;
    r.error = std::abs(next - estimate);
    r.levels = level;
    estimate = next;
    if (level >= 3 && r.error <= tol) {
      r.converged = true;
      break;
    }
  }
  r.value = estimate;
  return r;
}

const GaussLegendre& GaussLegendre::instance() {
  static const GaussLegendre rule = [] {
    GaussLegendre g;
    constexpr int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      // Newton iteration on P_n from the Chebyshev-like initial guess
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      g.nodes[i] = -x;
      g.nodes[n - 1 - i] = x;
      g.weights[i] = w;
      g.weights[n - 1 - i] = w;
    }
    return g;
  }();
  return rule;
}

namespace {

std::complex<double> gauss_panels(
    const std::function<std::complex<double>(double)>& f, int panels) {
  const auto& gl = GaussLegendre::instance();
  const double width = 1.0 / panels;
  std::complex<double> total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    std::complex<double> acc = 0.0;
    for (int k = 0; k < GaussLegendre::kOrder; ++k)
      acc += gl.weights[k] * f(mid + 0.5 * width * gl.nodes[k]);
    total += 0.5 * width * acc;
  }
  return total;
}

}  // namespace

ComplexQuadResult composite_gauss(
    const std::function<std::complex<double>(double)>& f, double tol,
    int initial_panels, int max_panels) {
  ComplexQuadResult r;
  int panels = initial_panels;
  std::complex<double> coarse = gauss_panels(f, panels);
  while (panels < max_panels) {
    const std::complex<double> fine = gauss_panels(f, 2 * panels);
    panels *= 2;
    r.error = std::abs(fine - coarse);
    coarse = fine;
    if (r.error <= tol) {
      r.converged = true;
      break;
    }
  }
  r.value = coarse;
  r.panels = panels;
  return r;
}

}  // namespace bolza
