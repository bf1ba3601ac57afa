#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "bolza/curve.hpp"

namespace bolza {

// One term coeff * z^zpow * w^wpow dz of a meromorphic 1-form density.
struct FormTerm {
  cplx coeff;
  int zpow;
  int wpow;
};

// Finite sum of FormTerms; the general currency of period and residue code.
class FormDensity {
 public:
  FormDensity() = default;
  explicit FormDensity(std::vector<FormTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<FormTerm>& terms() const { return terms_; }
  FormDensity& add(cplx coeff, int zpow, int wpow);
  FormDensity operator+(const FormDensity& o) const;
  FormDensity operator-(const FormDensity& o) const;
  FormDensity operator*(cplx s) const;
  // Multiplies the density by z^k.
  FormDensity times_z(int k) const;

  // Value of the density f with the form equal to f dz. Throws PoleError at
  // w = 0 when a negative power of w is present.
  cplx eval(cplx z, cplx w) const;

 private:
  std::vector<FormTerm> terms_;
};

// Basis of H^0(K + D), in this fixed order:
//   dz/w, dz/w^2, z dz/w^2, z^2 dz/w^2,
//   dz/w^3, z dz/w^3, z^2 dz/w^3, z^3 dz/w^3, z^4 dz/w^3.
inline constexpr std::array<FormTerm, 9> kBasis = {{
    {1.0, 0, -1}, {1.0, 0, -2}, {1.0, 1, -2}, {1.0, 2, -2}, {1.0, 0, -3},
    {1.0, 1, -3}, {1.0, 2, -3}, {1.0, 3, -3}, {1.0, 4, -3}}};

// Positions of the residue-free sub-basis (alpha_1 .. alpha_6) inside kBasis.
inline constexpr std::array<int, 6> kResidueFreeSlots = {0, 4, 5, 6, 7, 8};

// Second-kind basis: dz/w, z dz/w, z^3 dz/w^3, z^4 dz/w^3.
inline constexpr std::array<FormTerm, 4> kSecondKindBasis = {
    {{1.0, 0, -1}, {1.0, 1, -1}, {1.0, 3, -3}, {1.0, 4, -3}}};

struct OneForm {
  std::array<cplx, 9> coeffs{};

  // Builds the form alpha_1 dz/w + alpha_2 dz/w^3 + ... + alpha_6 z^4 dz/w^3.
  static OneForm from_alphas(const std::array<cplx, 6>& alpha);
  static OneForm basis(int index);
  std::array<cplx, 6> alphas() const;
  bool in_residue_free_span() const;
  FormDensity density() const;
};

struct SecondKindForm {
  std::array<cplx, 4> coeffs{};
  FormDensity density() const;
};

cplx eval_form(const OneForm& form, const CurvePoint& p);

// Second-kind image of z^zpow dz / w^wpow modulo exact forms, for the
// monomials the reductions need; std::nullopt when not tabulated.
std::optional<std::array<double, 4>> reduce_monomial(const ThetaParam& theta,
                                                     int zpow, int wpow);

// Reduction modulo exact forms of a residue-free OneForm. Throws
// DomainError when the form has components on dz/w^2, z dz/w^2, z^2 dz/w^2.
SecondKindForm reduce_to_second_kind(const ThetaParam& theta,
                                     const OneForm& form);

// Reduction of z^power * form (power 1 or 2).
SecondKindForm multiply_reduce(const ThetaParam& theta, const OneForm& form,
                               int power);

// The exact form d(z^p w^q) as a density.
FormDensity exact_differential(const ThetaParam& theta, int p, int q);

// The six monomial relations, as (lhs, rhs) densities with lhs ~ rhs.
struct ExactRelation {
  const char* name;
  FormDensity lhs;
  FormDensity rhs;
};
std::vector<ExactRelation> exact_relations(const ThetaParam& theta);

// ---------------------------------------------------------------------------

// Integral of density * dz along a lifted path.
struct PathIntegral {
  cplx value;
  double error = 0.0;
};

PathIntegral integrate_along(
    const LiftedPath& lift, const std::function<cplx(cplx, cplx)>& density,
    double tol = 1e-12);

inline PathIntegral integrate_along(const LiftedPath& lift,
                                    const FormDensity& form,
                                    double tol = 1e-12) {
  return integrate_along(
      lift, [&form](cplx z, cplx w) { return form.eval(z, w); }, tol);
}

// ---------------------------------------------------------------------------

inline constexpr double kResidueRadius = 1e-2;
inline constexpr int kResidueSteps = 4096;

struct ResidueResult {
  cplx value;        // at radius eps
  cplx value_half;   // at radius eps / 2
  bool stable = false;  // |value - value_half| < 1e-8
};

// Residue of the form at ramification point `index` (order of
// ramification_points), in the local uniformizer: (1/2 pi i) times the
// integral over the z-loop (or zeta-loop at infinity) traversed twice.
// Throws GeometryError if the loop would enclose another branch point.
ResidueResult residue_at(const ThetaParam& theta, const FormDensity& form,
                         int index, double eps = kResidueRadius,
                         int steps = kResidueSteps);

}  // namespace bolza
