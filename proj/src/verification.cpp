#include "bolza/verification.hpp"

#include <algorithm>

namespace bolza {

namespace {

double vmax(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

}  // namespace

OmegaVerification verify_omega(double theta, int samples, int eigen_samples,
                               unsigned seed) {
  const ThetaParam th(theta);
  if (samples < 1 || eigen_samples < 1)
    throw DomainError("sample counts must be positive");
  OmegaVerification out;
  out.theta = theta;
  out.pair = omega_pair_at(assemble_system(th));

  std::array<Cycle, 4> cycles = {build_cycle(th, kAllCycles[0]),
                                 build_cycle(th, kAllCycles[1]),
                                 build_cycle(th, kAllCycles[2]),
                                 build_cycle(th, kAllCycles[3])};
  for (int c = 0; c < 4; ++c) {
    out.periods1[c] = weierstrass_period(out.pair.omega1, cycles[c]);
    out.periods2[c] = weierstrass_period(out.pair.omega2, cycles[c]);
    out.period_max =
        std::max({out.period_max, vmax(out.periods1[c]), vmax(out.periods2[c])});
  }

  for (int slot : kResidueFreeSlots) {
    const auto f = OneForm::basis(slot).density();
    for (int idx = 0; idx < 6; ++idx) {
      const auto r = residue_at(th, f, idx);
      out.residues.push_back({slot, idx, r.value, r.stable});
      out.residue_max = std::max(out.residue_max, std::abs(r.value));
    }
  }

  for (int slot : kResidueFreeSlots) {
    const OneForm form = OneForm::basis(slot);
    for (int power = 0; power <= 2; ++power) {
      const SecondKindForm red = power == 0 ? reduce_to_second_kind(th, form)
                                            : multiply_reduce(th, form, power);
      const FormDensity orig = form.density().times_z(power);
      for (int c = 0; c < 4; ++c) {
        const double err =
            std::abs(period(orig, cycles[c]) - period(red, cycles[c]));
        out.reductions.push_back({slot, power, kAllCycles[c], err});
        out.reduction_max = std::max(out.reduction_max, err);
      }
    }
  }

  for (const auto& rel : exact_relations(th))
    for (int c = 0; c < 4; ++c) {
      const double v = std::abs(period(rel.lhs - rel.rhs, cycles[c]));
      out.relations.push_back({rel.name, kAllCycles[c], v});
      out.relation_max = std::max(out.relation_max, v);
    }

  out.symmetry =
      symmetry_report(th, out.pair.omega1, out.pair.omega2, samples, seed);

  const auto pts = sample_points(th, eigen_samples, seed + 1, 0.4, 2.5, 0.15);
  std::vector<double> u1s;
  for (const auto& p : pts) {
    EigenRow row;
    row.point = p;
    row.u1 = immersion_sample(th, out.pair.omega1, p).u;
    row.u2 = immersion_sample(th, out.pair.omega2, p).u;
    const auto r1 = eigen_residual(th, out.pair.omega1, p, kStencilH);
    const auto r2 = eigen_residual(th, out.pair.omega1, p, 0.5 * kStencilH);
    row.residual = r1.residual;
    row.residual_half = r2.residual;
    row.noise = r1.noise;
    row.trend = quadratic_trend(r1, r2);
    out.eigen_max = std::max(out.eigen_max, row.residual);
    out.trend_ok = out.trend_ok && row.trend;
    u1s.push_back(row.u1);
    out.eigen.push_back(row);
  }
  for (const auto& row : out.eigen)
    out.harmonic_residual =
        std::max(out.harmonic_residual, pullback_harmonic_residual(row.point.z));
  if (pts.size() >= 10) out.extra = extra_check(pts, u1s);
  return out;
}

}  // namespace bolza
