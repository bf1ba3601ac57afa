#include "bolza/bolza.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "bolza/period_system.hpp"
#include "bolza/spectra.hpp"
#include "bolza/verification.hpp"

struct bolza_system {
  bolza::PeriodSystem sys;
};
struct bolza_omega {
  bolza::OmegaVerification v;
};
struct bolza_spectrum {
  bolza::SpectrumResult r;
};
struct bolza_sweep {
  bolza::SweepResult r;
};

namespace {

thread_local std::string g_last_error;

bolza_status fail(bolza_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
bolza_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return BOLZA_OK;
  } catch (const bolza::DomainError& e) {
    return fail(BOLZA_ERR_DOMAIN, e.what());
  } catch (const bolza::ConvergenceError& e) {
    return fail(BOLZA_ERR_CONVERGENCE, e.what());
  } catch (const bolza::GeometryError& e) {
    return fail(BOLZA_ERR_GEOMETRY, e.what());
  } catch (const bolza::ConsistencyError& e) {
    return fail(BOLZA_ERR_CONSISTENCY, e.what());
  } catch (const bolza::PoleError& e) {
    return fail(BOLZA_ERR_POLE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BOLZA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BOLZA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BOLZA_ERR_INTERNAL, "unknown exception");
  }
}

#define BOLZA_REQUIRE(cond)                                  \
  do {                                                       \
    if (!(cond)) return fail(BOLZA_ERR_INVALID_ARGUMENT,     \
                             "invalid argument: " #cond);    \
  } while (0)

void split(bolza::cplx c, double& re, double& im) {
  re = c.real();
  im = c.imag();
}

const bolza::SectorSpec& sector_at(int i) {
  static const auto table = bolza::sector_table();
  return table[i];
}

}  // namespace

extern "C" {

const char* bolza_version(void) { return "0.1.0"; }

const char* bolza_status_name(bolza_status s) {
  switch (s) {
    case BOLZA_OK: return "ok";
    case BOLZA_ERR_DOMAIN: return "domain";
    case BOLZA_ERR_CONVERGENCE: return "convergence";
    case BOLZA_ERR_GEOMETRY: return "geometry";
    case BOLZA_ERR_CONSISTENCY: return "consistency";
    case BOLZA_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BOLZA_ERR_POLE: return "pole";
    case BOLZA_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* bolza_last_error_message(void) { return g_last_error.c_str(); }

bolza_status bolza_integrals(double theta, double tol, bolza_quartet* out) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(tol > 0.0);
  return guarded([&] {
    const auto q = bolza::integral_quartet(bolza::ThetaParam(theta), tol);
    *out = {q.A, q.B, q.C, q.D, q.err[0], q.err[1], q.err[2], q.err[3]};
  });
}

bolza_status bolza_find_theta(double tol_root, int samples,
                              bolza_critical_angles* out) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(tol_root > 0.0);
  BOLZA_REQUIRE(samples >= 8);
  return guarded([&] {
    const auto ca = bolza::solve_critical_thetas(tol_root, samples);
    *out = {ca.theta1,          ca.theta2,          ca.F1_residual,
            ca.F2_residual,     ca.theta2_root,     ca.sign_changes_F1,
            ca.sign_changes_F2, ca.scan_samples};
  });
}

bolza_status bolza_system_create(double theta, double tol, bolza_system** out) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(tol > 0.0);
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<bolza_system>();
    s->sys = bolza::assemble_system(bolza::ThetaParam(theta), tol);
    *out = s.release();
  });
}

void bolza_system_destroy(bolza_system* sys) { delete sys; }

bolza_status bolza_system_matrix(const bolza_system* sys, double out[36]) {
  BOLZA_REQUIRE(sys && out);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out[6 * r + c] = sys->sys.M(r, c);
  return BOLZA_OK;
}

bolza_status bolza_system_residual_F(const bolza_system* sys, double* F1,
                                     double* F2) {
  BOLZA_REQUIRE(sys && F1 && F2);
  return guarded([&] {
    const auto f = bolza::residual_F(sys->sys.quartet);
    *F1 = f.F1;
    *F2 = f.F2;
  });
}

bolza_status bolza_system_nullspace(const bolza_system* sys, double tol_rank,
                                    bolza_nullspace* out) {
  BOLZA_REQUIRE(sys && out);
  BOLZA_REQUIRE(tol_rank > 0.0 && tol_rank < 1.0);
  return guarded([&] {
    const auto ns = bolza::nullspace(sys->sys, tol_rank);
    *out = bolza_nullspace{};
    for (int i = 0; i < 6; ++i) out->singular_values[i] = ns.singular_values[i];
    out->nullity = ns.nullity;
    out->indeterminate = ns.indeterminate ? 1 : 0;
    out->tol_rank = ns.tol_rank;
    if (!ns.vectors.empty()) {
      const auto alphas = bolza::alphas_from_solution(ns.vectors[0], 1.0);
      for (int i = 0; i < 6; ++i) {
        out->vector[i] = ns.vectors[0][i];
        split(alphas[i], out->alpha_re[i], out->alpha_im[i]);
      }
    }
  });
}

bolza_status bolza_system_appendix(const bolza_system* sys, bolza_appendix* out) {
  BOLZA_REQUIRE(sys && out);
  return guarded([&] {
    const auto red = bolza::appendix_reduce(sys->sys);
    const auto expect = bolza::expected_reduced(sys->sys);
    double min_scale = 1e300, err = 0.0;
    for (const auto& op : red.log) min_scale = std::min(min_scale, op.self_scale);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        err = std::max(err, std::abs(red.reduced(r, c) - expect(r, c)) /
                                std::max(1.0, std::abs(expect(r, c))));
    out->operations = static_cast<int>(red.log.size());
    out->min_self_scale = min_scale;
    out->max_rel_err = err;
    out->block_det = bolza::reduced_block_determinant(red.reduced);
    out->det_factor = bolza::determinant_factor(sys->sys.quartet);
  });
}

bolza_status bolza_period_table(double theta, double tol,
                                bolza_period_row out[16]) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(tol > 0.0);
  return guarded([&] {
    const bolza::ThetaParam th(theta);
    const auto table =
        bolza::period_table(th, bolza::integral_quartet(th), tol);
    for (int i = 0; i < 16; ++i) {
      const auto& e = table.entries[i];
      bolza_period_row& r = out[i];
      r.form = e.form;
      r.cycle = static_cast<int>(e.cycle);
      split(e.numeric, r.numeric_re, r.numeric_im);
      split(e.closed, r.closed_re, r.closed_im);
      r.abs_err = e.abs_err();
    }
  });
}

const char* bolza_form_name(int form) {
  if (form < 0 || form > 3) return "";
  return bolza::second_kind_name(form);
}

const char* bolza_cycle_name(int cycle) {
  if (cycle < 0 || cycle > 3) return "";
  return bolza::cycle_name(bolza::kAllCycles[cycle]).data();
}

bolza_status bolza_omega_verify(double theta, int samples, int eigen_samples,
                                unsigned seed, bolza_omega** out) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(samples >= 1 && eigen_samples >= 1);
  *out = nullptr;
  return guarded([&] {
    auto om = std::make_unique<bolza_omega>();
    om->v = bolza::verify_omega(theta, samples, eigen_samples, seed);
    *out = om.release();
  });
}

void bolza_omega_destroy(bolza_omega* om) { delete om; }

bolza_status bolza_omega_get_summary(const bolza_omega* om,
                                     bolza_omega_summary* out) {
  BOLZA_REQUIRE(om && out);
  const auto& v = om->v;
  *out = bolza_omega_summary{};
  out->theta = v.theta;
  out->closed_form = v.pair.closed_form ? 1 : 0;
  out->parallel_residual = v.pair.parallel_residual;
  const auto a1 = v.pair.omega1.alphas(), a2 = v.pair.omega2.alphas();
  for (int i = 0; i < 6; ++i) {
    split(a1[i], out->alpha1_re[i], out->alpha1_im[i]);
    split(a2[i], out->alpha2_re[i], out->alpha2_im[i]);
  }
  out->period_max = v.period_max;
  const auto& s = v.symmetry;
  for (int i = 0; i < 3; ++i) {
    out->c1[i] = s.c1[i];
    out->c2[i] = s.c2[i];
  }
  out->s1_u1 = s.s1_u1;
  out->s1_u2 = s.s1_u2;
  out->s3_u1 = s.s3_u1;
  out->s3_u2 = s.s3_u2;
  out->j_u1 = s.j_u1;
  out->j_u2 = s.j_u2;
  out->psi_omega1 = s.psi_omega1;
  out->psi_omega2 = s.psi_omega2;
  out->s1_omega1 = s.s1_omega1;
  out->s1_omega2 = s.s1_omega2;
  out->samples = s.samples;
  out->residue_max = v.residue_max;
  out->residues_stable = 1;
  for (const auto& r : v.residues)
    if (!r.stable) out->residues_stable = 0;
  out->reduction_max = v.reduction_max;
  out->relation_max = v.relation_max;
  out->eigen_max = v.eigen_max;
  out->trend_ok = v.trend_ok ? 1 : 0;
  out->harmonic_residual = v.harmonic_residual;
  out->extra_relative_residual = v.extra.relative_residual;
  return BOLZA_OK;
}

int bolza_omega_sample_count(const bolza_omega* om) {
  return om ? static_cast<int>(om->v.eigen.size()) : 0;
}

bolza_status bolza_omega_get_sample(const bolza_omega* om, int i,
                                    bolza_omega_sample* out) {
  BOLZA_REQUIRE(om && out);
  BOLZA_REQUIRE(i >= 0 && i < static_cast<int>(om->v.eigen.size()));
  const auto& e = om->v.eigen[i];
  split(e.point.z, out->z_re, out->z_im);
  split(e.point.w, out->w_re, out->w_im);
  out->u1 = e.u1;
  out->u2 = e.u2;
  out->residual = e.residual;
  out->residual_half = e.residual_half;
  out->noise = e.noise;
  out->trend = e.trend ? 1 : 0;
  return BOLZA_OK;
}

int bolza_omega_residue_count(const bolza_omega* om) {
  return om ? static_cast<int>(om->v.residues.size()) : 0;
}

bolza_status bolza_omega_get_residue(const bolza_omega* om, int i,
                                     bolza_residue_row* out) {
  BOLZA_REQUIRE(om && out);
  BOLZA_REQUIRE(i >= 0 && i < static_cast<int>(om->v.residues.size()));
  const auto& r = om->v.residues[i];
  out->slot = r.slot;
  out->point = r.point;
  split(r.value, out->re, out->im);
  out->stable = r.stable ? 1 : 0;
  return BOLZA_OK;
}

const char* bolza_sector_label(int sector) {
  static const auto labels = [] {
    std::array<std::string, 8> l;
    for (int i = 0; i < 8; ++i) l[i] = sector_at(i).label();
    return l;
  }();
  return (sector < 0 || sector > 7) ? "" : labels[sector].c_str();
}

const char* bolza_sector_bc(int sector) {
  static const auto bcs = [] {
    std::array<std::string, 8> l;
    for (int i = 0; i < 8; ++i) l[i] = sector_at(i).bc_string();
    return l;
  }();
  return (sector < 0 || sector > 7) ? "" : bcs[sector].c_str();
}

bolza_status bolza_spectrum_compute(double theta, int k, double h,
                                    int richardson, bolza_spectrum** out) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(k >= 1);
  BOLZA_REQUIRE(h > 0.0);
  *out = nullptr;
  return guarded([&] {
    auto sp = std::make_unique<bolza_spectrum>();
    sp->r = bolza::spectrum(theta, k, h, richardson != 0);
    *out = sp.release();
  });
}

void bolza_spectrum_destroy(bolza_spectrum* sp) { delete sp; }

bolza_status bolza_spectrum_get_summary(const bolza_spectrum* sp,
                                        bolza_spectrum_summary* out) {
  BOLZA_REQUIRE(sp && out);
  const auto& r = sp->r;
  out->theta = r.theta;
  out->h = r.h;
  out->k = r.k;
  out->richardson = r.richardson ? 1 : 0;
  out->ind = r.ind;
  out->nul = r.nul;
  out->smallest_positive = r.smallest_positive();
  out->weighted_area = r.weighted_area;
  out->vertices_coarse = r.vertices_coarse;
  out->vertices_fine = r.vertices_fine;
  out->count = static_cast<int>(r.merged.size());
  return BOLZA_OK;
}

bolza_status bolza_spectrum_get_entry(const bolza_spectrum* sp, int i,
                                      bolza_eigen_entry* out) {
  BOLZA_REQUIRE(sp && out);
  BOLZA_REQUIRE(i >= 0 && i < static_cast<int>(sp->r.merged.size()));
  const auto& e = sp->r.merged[i];
  out->value = e.value;
  out->error = e.error;
  out->tol = e.tol;
  out->sector = e.sector;
  out->branch = e.branch;
  out->coarse = sp->r.coarse[e.sector][e.branch];
  out->fine = sp->r.richardson ? sp->r.fine[e.sector][e.branch] : 0.0;
  return BOLZA_OK;
}

bolza_status bolza_sweep_compute(double theta_min, double theta_max, int steps,
                                 const int* sectors, int n_sectors, int k,
                                 double h, int richardson, bolza_sweep** out) {
  BOLZA_REQUIRE(out);
  BOLZA_REQUIRE(sectors && n_sectors >= 1 && n_sectors <= 8);
  BOLZA_REQUIRE(k >= 1 && h > 0.0);
  *out = nullptr;
  return guarded([&] {
    auto sw = std::make_unique<bolza_sweep>();
    sw->r = bolza::sweep(theta_min, theta_max, steps,
                         std::vector<int>(sectors, sectors + n_sectors), k, h,
                         richardson != 0);
    *out = sw.release();
  });
}

void bolza_sweep_destroy(bolza_sweep* sw) { delete sw; }

bolza_status bolza_sweep_dims(const bolza_sweep* sw, int* steps, int* n_sectors,
                              int* k) {
  BOLZA_REQUIRE(sw && steps && n_sectors && k);
  *steps = static_cast<int>(sw->r.thetas.size());
  *n_sectors = static_cast<int>(sw->r.sectors.size());
  *k = sw->r.values.empty() || sw->r.values[0].empty()
           ? 0
           : static_cast<int>(sw->r.values[0][0].size());
  return BOLZA_OK;
}

bolza_status bolza_sweep_theta(const bolza_sweep* sw, int t, double* theta) {
  BOLZA_REQUIRE(sw && theta);
  BOLZA_REQUIRE(t >= 0 && t < static_cast<int>(sw->r.thetas.size()));
  *theta = sw->r.thetas[t];
  return BOLZA_OK;
}

bolza_status bolza_sweep_sector(const bolza_sweep* sw, int s, int* sector) {
  BOLZA_REQUIRE(sw && sector);
  BOLZA_REQUIRE(s >= 0 && s < static_cast<int>(sw->r.sectors.size()));
  *sector = sw->r.sectors[s];
  return BOLZA_OK;
}

bolza_status bolza_sweep_value(const bolza_sweep* sw, int s, int t, int b,
                               double* value, double* error) {
  BOLZA_REQUIRE(sw && value && error);
  BOLZA_REQUIRE(s >= 0 && s < static_cast<int>(sw->r.values.size()));
  BOLZA_REQUIRE(t >= 0 && t < static_cast<int>(sw->r.values[s].size()));
  BOLZA_REQUIRE(b >= 0 && b < static_cast<int>(sw->r.values[s][t].size()));
  *value = sw->r.values[s][t][b];
  *error = sw->r.errors[s][t][b];
  return BOLZA_OK;
}

bolza_status bolza_sweep_nondecreasing(const bolza_sweep* sw, int sector,
                                       int branch, double slack, int* out) {
  BOLZA_REQUIRE(sw && out);
  BOLZA_REQUIRE(branch >= 0 && branch < sw->r.k);
  return guarded([&] { *out = sw->r.nondecreasing(sector, branch, slack) ? 1 : 0; });
}

bolza_status bolza_sweep_counts(const bolza_sweep* sw, int t, int* ind,
                                int* nul) {
  BOLZA_REQUIRE(sw && ind && nul);
  BOLZA_REQUIRE(t >= 0 && t < static_cast<int>(sw->r.thetas.size()));
  std::tie(*ind, *nul) = sw->r.counts(t);
  return BOLZA_OK;
}

int bolza_sweep_crossing_count(const bolza_sweep* sw) {
  return sw ? static_cast<int>(sw->r.crossings.size()) : 0;
}

bolza_status bolza_sweep_get_crossing(const bolza_sweep* sw, int i,
                                      bolza_crossing* out) {
  BOLZA_REQUIRE(sw && out);
  BOLZA_REQUIRE(i >= 0 && i < static_cast<int>(sw->r.crossings.size()));
  const auto& c = sw->r.crossings[i];
  *out = {c.sector, c.branch, c.theta, c.upward ? 1 : 0};
  return BOLZA_OK;
}

}  // extern "C"
