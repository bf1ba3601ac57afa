#include "bolza/forms.hpp"

#include <cmath>

#include "bolza/quadrature.hpp"

namespace bolza {

namespace {

cplx ipow(cplx x, int n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  cplx r = 1.0;
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace

FormDensity& FormDensity::add(cplx coeff, int zpow, int wpow) {
  for (auto& t : terms_) {
    if (t.zpow == zpow && t.wpow == wpow) {
      t.coeff += coeff;
      return *this;
    }
  }
  terms_.push_back({coeff, zpow, wpow});
  return *this;
}

FormDensity FormDensity::operator+(const FormDensity& o) const {
  FormDensity r = *this;
  for (const auto& t : o.terms_) r.add(t.coeff, t.zpow, t.wpow);
  return r;
}

FormDensity FormDensity::operator-(const FormDensity& o) const {
  return *this + o * cplx(-1.0);
}

FormDensity FormDensity::operator*(cplx s) const {
  FormDensity r = *this;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

FormDensity FormDensity::times_z(int k) const {
  FormDensity r = *this;
  for (auto& t : r.terms_) t.zpow += k;
  return r;
}

cplx FormDensity::eval(cplx z, cplx w) const {
  cplx sum = 0.0;
  for (const auto& t : terms_) {
    if (t.coeff == cplx(0.0)) continue;
    if (t.wpow < 0 && w == cplx(0.0))
      throw PoleError("form density evaluated at a pole (w = 0)");
    if (t.zpow < 0 && z == cplx(0.0))
      throw PoleError("form density evaluated at a pole (z = 0)");
    sum += t.coeff * ipow(z, t.zpow) * ipow(w, t.wpow);
  }
  return sum;
}

// ---------------------------------------------------------------------------

OneForm OneForm::from_alphas(const std::array<cplx, 6>& alpha) {
  OneForm f;
  for (int i = 0; i < 6; ++i) f.coeffs[kResidueFreeSlots[i]] = alpha[i];
  return f;
}

OneForm OneForm::basis(int index) {
  OneForm f;
  f.coeffs.at(index) = 1.0;
  return f;
}

std::array<cplx, 6> OneForm::alphas() const {
  std::array<cplx, 6> a{};
  for (int i = 0; i < 6; ++i) a[i] = coeffs[kResidueFreeSlots[i]];
  return a;
}

bool OneForm::in_residue_free_span() const {
  return coeffs[1] == cplx(0.0) && coeffs[2] == cplx(0.0) &&
         coeffs[3] == cplx(0.0);
}

FormDensity OneForm::density() const {
  FormDensity d;
  for (int i = 0; i < 9; ++i)
    if (coeffs[i] != cplx(0.0)) d.add(coeffs[i], kBasis[i].zpow, kBasis[i].wpow);
  return d;
}

FormDensity SecondKindForm::density() const {
  FormDensity d;
  for (int i = 0; i < 4; ++i)
    if (coeffs[i] != cplx(0.0))
      d.add(coeffs[i], kSecondKindBasis[i].zpow, kSecondKindBasis[i].wpow);
  return d;
}

cplx eval_form(const OneForm& form, const CurvePoint& p) {
  if (p.at_infinity) throw PoleError("form density evaluated at infinity");
  return form.density().eval(p.z, p.w);
}

// ---------------------------------------------------------------------------

std::optional<std::array<double, 4>> reduce_monomial(const ThetaParam& theta,
                                                     int zpow, int wpow) {
  const double c = theta.cos2t();
  const double s2 = theta.sin2sq();
  using R = std::array<double, 4>;
  if (wpow == -1) {
    switch (zpow) {
      case 0: return R{1, 0, 0, 0};
      case 1: return R{0, 1, 0, 0};
      case 2: return R{-c, 0, -4.0 * s2, 0};
      default: return std::nullopt;
    }
  }
  if (wpow == -3) {
    switch (zpow) {
      case 0: return R{0, -1.5 * c, 0, -5.0 + 6.0 * c * c};
      case 1: return R{0.75, 0, -c, 0};
      case 2: return R{0, 0.25, 0, -c};
      case 3: return R{0, 0, 1, 0};
      case 4: return R{0, 0, 0, 1};
      case 5: return R{0.25, 0, -c, 0};
      case 6: return R{0, 0.75, 0, -c};
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

SecondKindForm reduce_shifted(const ThetaParam& theta, const OneForm& form,
                              int shift) {
  if (!form.in_residue_free_span())
    throw DomainError(
        "form has components outside the residue-free span; no second-kind "
        "reduction");
  SecondKindForm out;
  for (int slot : kResidueFreeSlots) {
    const cplx a = form.coeffs[slot];
    if (a == cplx(0.0)) continue;
    const auto img =
        reduce_monomial(theta, kBasis[slot].zpow + shift, kBasis[slot].wpow);
    if (!img) throw DomainError("monomial has no tabulated reduction");
    for (int k = 0; k < 4; ++k) out.coeffs[k] += a * (*img)[k];
  }
  return out;
}

}  // namespace

SecondKindForm reduce_to_second_kind(const ThetaParam& theta,
                                     const OneForm& form) {
  return reduce_shifted(theta, form, 0);
}

SecondKindForm multiply_reduce(const ThetaParam& theta, const OneForm& form,
                               int power) {
  if (power != 1 && power != 2)
    throw DomainError("multiply_reduce supports powers 1 and 2 only");
  return reduce_shifted(theta, form, power);
}

FormDensity exact_differential(const ThetaParam& theta, int p, int q) {
  // d(z^p w^q) = (1/2) z^{p-1} w^{q-2} ((2p+5q) w^2 - 4 q c z^3 - 4 q z) dz
  FormDensity d;
  const double c = theta.cos2t();
  d.add(0.5 * (2 * p + 5 * q), p - 1, q);
  d.add(-2.0 * q * c, p + 2, q - 2);
  d.add(-2.0 * q, p, q - 2);
  return d;
}

std::vector<ExactRelation> exact_relations(const ThetaParam& theta) {
  auto mono = [](int a, int b) { return FormDensity({{1.0, a, b}}); };
  auto second = [&](int a, int b) {
    SecondKindForm s;
    const auto img = reduce_monomial(theta, a, b);
    for (int k = 0; k < 4; ++k) s.coeffs[k] = (*img)[k];
    return s.density();
  };
  return {
      {"z dz/w^3", mono(1, -3), second(1, -3)},
      {"z^2 dz/w^3", mono(2, -3), second(2, -3)},
      {"dz/w^3", mono(0, -3), second(0, -3)},
      {"z^5 dz/w^3", mono(5, -3), second(5, -3)},
      {"z^6 dz/w^3", mono(6, -3), second(6, -3)},
      {"z^2 dz/w", mono(2, -1), second(2, -1)},
  };
}

// ---------------------------------------------------------------------------

PathIntegral integrate_along(const LiftedPath& lift,
                             const std::function<cplx(cplx, cplx)>& density,
                             double tol) {
  PathIntegral out{0.0, 0.0};
  const auto& segs = lift.path().segments;
  const double seg_tol = tol / std::max<std::size_t>(segs.size(), 1);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& seg = segs[i];
    auto f = [&](double s) {
      const cplx z = seg.at(s);
      return density(z, lift.w_at(i, s)) * seg.derivative(s);
    };
    const ComplexQuadResult r = composite_gauss(f, seg_tol);
    if (!r.converged)
      throw ConvergenceError("path integral did not converge", r.error);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

cplx loop_residue(const ThetaParam& theta,
                  const std::function<cplx(cplx, cplx)>& density, cplx center,
                  double eps, int steps) {
  const Path loop = circle(center, eps, 2);
  const cplx z0 = loop.segments.front().start();
  const CurvePoint start{z0, fiber(z0, theta)[0]};
  const LiftedPath lift = continue_sheet(theta, loop, start, steps);
  const Segment& seg = loop.segments.front();
  // periodic trapezoid rule over the closed double loop
  cplx sum = 0.0;
  const int n = lift.steps();
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / n;
    sum += density(seg.at(s), lift.w_at(0, s)) * seg.derivative(s);
  }
  return sum / static_cast<double>(n) / cplx(0.0, 2.0 * kPi);
}

}  // namespace

ResidueResult residue_at(const ThetaParam& theta, const FormDensity& form,
                         int index, double eps, int steps) {
  if (index < 0 || index > 5)
    throw DomainError("ramification index must be in 0..5");
  if (!(eps > 0.0)) throw DomainError("residue loop radius must be positive");

  // Both charts carry the same curve equation, so the branch values in the
  // zeta = 1/z chart are 0 and the same four unit-circle points.
  const auto branch = finite_branch_values(theta);
  const cplx center = index == 5 ? cplx(0.0) : branch[index];
  for (int k = 0; k < 5; ++k) {
    if (branch[k] == center) continue;
    if (std::abs(branch[k] - center) <= eps)
      throw GeometryError("residue loop encloses a second branch point");
  }

  std::function<cplx(cplx, cplx)> density;
  if (index == 5) {
    // f(z, w) dz with z = 1/zeta, w = v / zeta^3, dz = -dzeta / zeta^2
    density = [&form](cplx zeta, cplx v) {
      const cplx z = 1.0 / zeta;
      const cplx w = v / (zeta * zeta * zeta);
      return -form.eval(z, w) / (zeta * zeta);
    };
  } else {
    density = [&form](cplx z, cplx w) { return form.eval(z, w); };
  }

  ResidueResult r;
  r.value = loop_residue(theta, density, center, eps, steps);
  r.value_half = loop_residue(theta, density, center, 0.5 * eps, steps);
  r.stable = std::abs(r.value - r.value_half) < 1e-8;
  return r;
}

}  // namespace bolza
