#include <doctest.h>

#include <cmath>
#include <cstring>

#include "bolza/bolza.h"

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("version and status names") {
  CHECK(std::strlen(bolza_version()) > 0);
  CHECK(std::strcmp(bolza_status_name(BOLZA_OK), "ok") == 0);
  CHECK(std::strcmp(bolza_status_name(BOLZA_ERR_POLE), "pole") == 0);
}

TEST_CASE("errors map to status codes") {
  bolza_quartet q{};
  CHECK(bolza_integrals(0.0, 1e-12, &q) == BOLZA_ERR_DOMAIN);
  CHECK(std::strlen(bolza_last_error_message()) > 0);
  CHECK(bolza_integrals(0.5, 1e-12, nullptr) == BOLZA_ERR_INVALID_ARGUMENT);
  CHECK(bolza_integrals(0.5, -1.0, &q) == BOLZA_ERR_INVALID_ARGUMENT);
  CHECK(bolza_integrals(0.5, 1e-12, &q) == BOLZA_OK);
  CHECK(std::strlen(bolza_last_error_message()) == 0);
}

TEST_CASE("integrals at the symmetric angle") {
  bolza_quartet q{};
  REQUIRE(bolza_integrals(kPi / 4, 1e-12, &q) == BOLZA_OK);
  CHECK(std::abs(q.A - q.B) < 1e-10);
  CHECK(std::abs(q.C - q.D) < 1e-10);
}

TEST_CASE("system handle") {
  bolza_system* sys = nullptr;
  REQUIRE(bolza_system_create(0.5, 1e-12, &sys) == BOLZA_OK);
  double M[36];
  CHECK(bolza_system_matrix(sys, M) == BOLZA_OK);
  bolza_nullspace ns{};
  CHECK(bolza_system_nullspace(sys, 1e-8, &ns) == BOLZA_OK);
  CHECK(ns.nullity == 0);
  CHECK(bolza_system_nullspace(sys, 2.0, &ns) == BOLZA_ERR_INVALID_ARGUMENT);
  bolza_appendix ap{};
  CHECK(bolza_system_appendix(sys, &ap) == BOLZA_OK);
  CHECK(ap.operations == 22);
  CHECK(ap.max_rel_err < 1e-9);
  CHECK(ap.min_self_scale > 0.0);
  double F1 = 0, F2 = 0;
  CHECK(bolza_system_residual_F(sys, &F1, &F2) == BOLZA_OK);
  CHECK(std::abs(ap.block_det - F1 * F2 * ap.det_factor) <=
        1e-9 * std::abs(ap.block_det) + 1e-14);
  bolza_system_destroy(sys);
  bolza_system_destroy(nullptr);
  CHECK(bolza_system_create(2.0, 1e-12, &sys) == BOLZA_ERR_DOMAIN);
  CHECK(sys == nullptr);
}

TEST_CASE("off-critical omega verification reports consistency failure") {
  bolza_omega* om = nullptr;
  CHECK(bolza_omega_verify(0.5, 5, 5, 1, &om) == BOLZA_ERR_CONSISTENCY);
  CHECK(om == nullptr);
}

TEST_CASE("period table rows") {
  bolza_period_row rows[16];
  REQUIRE(bolza_period_table(0.3, 1e-11, rows) == BOLZA_OK);
  for (const auto& r : rows) CHECK(r.abs_err < 1e-8);
  CHECK(std::strcmp(bolza_cycle_name(0), "C4loop") == 0);
  CHECK(std::strcmp(bolza_form_name(9), "") == 0);
}

TEST_CASE("spectrum and sweep handles") {
  CHECK(std::strcmp(bolza_sector_bc(2), "NDND") == 0);
  CHECK(std::strcmp(bolza_sector_label(6), "(-,-,+)") == 0);
  bolza_spectrum* sp = nullptr;
  REQUIRE(bolza_spectrum_compute(0.3, 4, 0.1, 0, &sp) == BOLZA_OK);
  bolza_spectrum_summary s{};
  CHECK(bolza_spectrum_get_summary(sp, &s) == BOLZA_OK);
  CHECK(s.ind == 3);
  CHECK(s.count == 32);
  bolza_eigen_entry e{};
  CHECK(bolza_spectrum_get_entry(sp, 0, &e) == BOLZA_OK);
  CHECK(std::abs(e.value) < 1e-8);
  CHECK(bolza_spectrum_get_entry(sp, 32, &e) == BOLZA_ERR_INVALID_ARGUMENT);
  bolza_spectrum_destroy(sp);

  const int sectors[] = {2};
  bolza_sweep* sw = nullptr;
  REQUIRE(bolza_sweep_compute(0.5, 0.8, 3, sectors, 1, 2, 0.1, 0, &sw) == BOLZA_OK);
  int steps = 0, ns = 0, k = 0;
  CHECK(bolza_sweep_dims(sw, &steps, &ns, &k) == BOLZA_OK);
  CHECK(steps == 3);
  CHECK(ns == 1);
  int mono = 0;
  CHECK(bolza_sweep_nondecreasing(sw, 2, 0, 1e-4, &mono) == BOLZA_OK);
  CHECK(mono == 1);
  CHECK(bolza_sweep_nondecreasing(sw, 5, 0, 1e-4, &mono) == BOLZA_ERR_DOMAIN);
  CHECK(bolza_sweep_crossing_count(sw) == 1);
  bolza_sweep_destroy(sw);
}
