#include <cmath>

#include "bolza/integrals.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bolza;

TEST_CASE("A and B coincide at pi/4") {
  const ThetaParam th(kPi / 4);
  const auto a = quadrature_halfline(IntegrandKind::A, th);
  const auto b = quadrature_halfline(IntegrandKind::B, th);
  CHECK(std::abs(a.value - b.value) < 1e-12);
  CHECK(a.error <= 1e-12);
}

TEST_CASE("C at 0.3 against adaptive Simpson") {
  const ThetaParam th(0.3);
  const double ref = oracle::halfline(th.cos2t(), 3, 1.5);
  CHECK(std::abs(quadrature_halfline(IntegrandKind::C, th).value - ref) <
        1e-10);
}

TEST_CASE("quartet at 0.65 against adaptive Simpson") {
  const ThetaParam th(0.65);
  const auto q = integral_quartet(th);
  const double c = th.cos2t();
  CHECK(std::abs(q.A - oracle::halfline(c, 0, 0.5)) < 1e-10);
  CHECK(std::abs(q.B - oracle::halfline(-c, 0, 0.5)) < 1e-10);
  CHECK(std::abs(q.C - oracle::halfline(c, 3, 1.5)) < 1e-10);
  CHECK(std::abs(q.D - oracle::halfline(-c, 3, 1.5)) < 1e-10);
}

TEST_CASE("swap symmetry") {
  for (double t : {0.2, 0.3, 0.55}) {
    const auto q = integral_quartet(ThetaParam(t));
    const auto m = integral_quartet(ThetaParam(kHalfPi - t));
    const auto s = q.swapped();
    CHECK(std::abs(s.A - m.A) < 2e-12);
    CHECK(std::abs(s.B - m.B) < 2e-12);
    CHECK(std::abs(s.C - m.C) < 2e-12);
    CHECK(std::abs(s.D - m.D) < 2e-12);
  }
}

TEST_CASE("self-reciprocity of the A integrand") {
  const ThetaParam th(0.4);
  const auto a = quadrature_halfline(IntegrandKind::A, th);
  const auto r = quadrature_reciprocal_a(th);
  CHECK(std::abs(a.value - r.value) < 2e-12);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(ThetaParam{0.0}, DomainError);
  CHECK_THROWS_AS(ThetaParam{kHalfPi}, DomainError);
  CHECK_THROWS_AS(quadrature_halfline(IntegrandKind::A, ThetaParam(0.3), 0.0),
                  DomainError);
}
