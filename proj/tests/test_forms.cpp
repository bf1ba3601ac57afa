#include <cmath>
#include <random>

#include "bolza/forms.hpp"
#include "doctest.h"

using namespace bolza;

TEST_CASE("eval_form at the base point") {
  const ThetaParam th(0.7);
  const CurvePoint p0 = base_point(th);
  const double w0 = std::sqrt(2.0 + 2.0 * th.cos2t());
  CHECK(std::abs(eval_form(OneForm::basis(0), p0) - 1.0 / w0) < 1e-15);
  CHECK(std::abs(eval_form(OneForm::basis(5), p0) - 1.0 / (w0 * w0 * w0)) <
        1e-15);
  CHECK_THROWS_AS(eval_form(OneForm::basis(4), CurvePoint{0.0, 0.0}),
                  PoleError);
}

TEST_CASE("odd basis forms flip under j") {
  const ThetaParam th(0.7);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 10; ++k) {
    const cplx z(u(rng), u(rng));
    const CurvePoint p{z, fiber(z, th)[0]};
    const CurvePoint jp = apply_symmetry(Symmetry::J, p);
    for (int b : {0, 4, 5, 6, 7, 8}) {
      const auto f = OneForm::basis(b);
      CHECK(std::abs(eval_form(f, jp) + eval_form(f, p)) <
            1e-13 * (1.0 + std::abs(eval_form(f, p))));
    }
  }
}

TEST_CASE("reduction table") {
  const ThetaParam th(0.4);
  const double c = th.cos2t();
  auto r = reduce_to_second_kind(th, OneForm::basis(0));
  CHECK(r.coeffs[0] == cplx(1.0));
  r = reduce_to_second_kind(th, OneForm::basis(5));
  CHECK(std::abs(r.coeffs[0] - 0.75) < 1e-15);
  CHECK(std::abs(r.coeffs[2] + c) < 1e-15);
  r = multiply_reduce(th, OneForm::basis(0), 2);
  CHECK(std::abs(r.coeffs[0] + c) < 1e-15);
  CHECK(std::abs(r.coeffs[2] + 4.0 * th.sin2sq()) < 1e-15);
  r = multiply_reduce(th, OneForm::basis(8), 1);
  CHECK(std::abs(r.coeffs[0] - 0.25) < 1e-15);
  CHECK(std::abs(r.coeffs[2] + c) < 1e-15);
  CHECK_THROWS_AS(reduce_to_second_kind(th, OneForm::basis(1)), DomainError);
  CHECK_THROWS_AS(multiply_reduce(th, OneForm::basis(0), 3), DomainError);
}

TEST_CASE("reduction is linear") {
  const ThetaParam th(0.9);
  std::array<cplx, 6> a{cplx(1, 2), 0.5, cplx(-1, 1), 3.0, cplx(0, -2), 1.5};
  std::array<cplx, 6> b{2.0, cplx(1, 1), 0.0, -1.0, 4.0, cplx(0.5, 0.5)};
  std::array<cplx, 6> s;
  for (int i = 0; i < 6; ++i) s[i] = 2.0 * a[i] - b[i];
  for (int power : {0, 1, 2}) {
    auto red = [&](const std::array<cplx, 6>& x) {
      const auto f = OneForm::from_alphas(x);
      return power == 0 ? reduce_to_second_kind(th, f)
                        : multiply_reduce(th, f, power);
    };
    const auto ra = red(a), rb = red(b), rs = red(s);
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(rs.coeffs[k] - (2.0 * ra.coeffs[k] - rb.coeffs[k])) <
            1e-13);
  }
}

TEST_CASE("exact relations are differences of exact forms") {
  // Each relation lhs - rhs must be a combination of d(z^p w^q); verify
  // pointwise that lhs - rhs integrates to zero around a closed loop that
  // winds around two branch points (sheet preserved).
  const ThetaParam th(0.6);
  const auto e = finite_branch_values(th);
  const cplx mid = 0.5 * (e[1] + e[2]);
  const auto loop = circle(mid, 0.5 * std::abs(e[1] - e[2]) + 0.2, 1);
  const cplx z0 = loop.segments.front().start();
  const auto lift = continue_sheet(th, loop, {z0, fiber(z0, th)[0]});
  for (const auto& rel : exact_relations(th)) {
    const auto v = integrate_along(lift, rel.lhs - rel.rhs).value;
    CHECK_MESSAGE(std::abs(v) < 1e-10, rel.name);
  }
  // d(z^p w^q) itself integrates to zero around the same loop
  for (auto [p, q] : {std::pair{1, -1}, std::pair{2, -3}, std::pair{0, 1}})
    CHECK(std::abs(integrate_along(lift, exact_differential(th, p, q)).value) <
          1e-10);
}

TEST_CASE("residues of the basis vanish") {
  const ThetaParam th(0.65);
  for (int slot : kResidueFreeSlots) {
    const auto f = OneForm::basis(slot).density();
    for (int idx = 0; idx < 6; ++idx) {
      const auto r = residue_at(th, f, idx);
      CHECK(std::abs(r.value) < 1e-8);
      CHECK(r.stable);
    }
  }
}

TEST_CASE("dz/w^2 has residue 2 at the origin in the uniformizer") {
  // Near z = 0, w^2 = z (1 + O(z^2)); with z = tau^2 the form is
  // 2 d tau / tau + O(tau^3), so the residue in tau is 2.
  const ThetaParam th(0.65);
  const FormDensity f({{1.0, 0, -2}});
  const auto r = residue_at(th, f, 0);
  CHECK(std::abs(r.value - 2.0) < 1e-8);
  cplx sum = 0.0;
  for (int idx = 0; idx < 6; ++idx) sum += residue_at(th, f, idx).value;
  CHECK(std::abs(sum) < 1e-8);
}

TEST_CASE("residue theorem for mixed forms and exact forms") {
  const ThetaParam th(0.3);
  FormDensity f({{cplx(1, 1), 1, -2}, {2.0, 2, -2}, {0.5, 0, -3}});
  cplx sum = 0.0;
  for (int idx = 0; idx < 6; ++idx) sum += residue_at(th, f, idx).value;
  CHECK(std::abs(sum) < 1e-8);
  const auto d = exact_differential(th, 1, -1);
  for (int idx = 0; idx < 6; ++idx)
    CHECK(std::abs(residue_at(th, d, idx).value) < 1e-8);
}

TEST_CASE("residue loop geometry guard") {
  const ThetaParam th(0.05);
  const FormDensity f({{1.0, 0, -1}});
  CHECK_THROWS_AS(residue_at(th, f, 1, 0.2), GeometryError);
}
