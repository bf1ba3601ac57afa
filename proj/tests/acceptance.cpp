// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances below are fixed; do not loosen them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bolza/immersion.hpp"
#include "bolza/period_system.hpp"
#include "bolza/spectra.hpp"

using namespace bolza;

namespace {

constexpr double kTolF = 1e-10;
constexpr double kTolPeriod = 1e-8;
constexpr double kTolRelation = 1e-8;
constexpr double kTolResidue = 1e-8;
constexpr double kTolAppendix = 1e-9;
constexpr double kTolParallel = 1e-7;
constexpr double kTolOmegaPeriod = 1e-7;
constexpr double kTolSymmetry = 1e-6;
constexpr double kTolPsi = 1e-10;
constexpr double kTolEigen = 1e-3;
constexpr double kTolHarmonic = 1e-10;
constexpr double kTolLambda = 1e-2;      // relative, lambda_1 = 2
constexpr double kTolArea = 1e-3;        // relative, Area = 8 pi
constexpr double kCrossingWindow = 0.02;
constexpr double kMonotoneSlack = 1e-4;

struct Line {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Line> g_lines;

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void report(int id, bool pass, std::string detail, double seconds) {
  detail += fmt(" [%.1fs]", seconds);
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  g_lines.push_back({id, pass, std::move(detail)});
}

void run(int id, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
    pass = false;
  }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, pass, detail, s);
}

std::array<Cycle, 4> cycles_at(const ThetaParam& th) {
  return {build_cycle(th, kAllCycles[0]), build_cycle(th, kAllCycles[1]),
          build_cycle(th, kAllCycles[2]), build_cycle(th, kAllCycles[3])};
}

double vmax(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

// Row operations replayed on the identity give R with reduced = R M.
Matrix6 replay(const AppendixReduction& red) {
  Matrix6 R = Matrix6::Identity();
  for (const auto& op : red.log) {
    const int t = op.target - 1, s = op.source - 1;
    R.row(t) = op.self_scale * R.row(t) + op.source_scale * R.row(s);
  }
  return R;
}

}  // namespace

int main() {
  std::printf("acceptance run, criteria 1-12\n");
  CriticalAngles ca;
  bool have_angles = false;

  run(1, [&](std::string& d) {
    ca = solve_critical_thetas(kRootTol, 512);
    have_angles = true;
    d = fmt("theta1=%.15f", ca.theta1) + fmt(" theta2=%.15f", ca.theta2) +
        fmt(" |F1(theta1)|=%.2e", std::abs(ca.F1_residual)) +
        " sign changes F1=" + std::to_string(ca.sign_changes_F1) + " (512 samples)";
    return ca.theta1 >= 0.64 && ca.theta1 <= 0.66 && ca.theta2 >= 0.90 &&
           ca.theta2 <= 0.92 && std::abs(ca.F1_residual) < kTolF &&
           ca.sign_changes_F1 == 1;
  });
  if (!have_angles) {
    std::printf("critical angles unavailable; remaining criteria cannot run\n");
    return 1;
  }
  const ThetaParam th1(ca.theta1), th2(ca.theta2);

  run(2, [&](std::string& d) {
    double worst = 0.0;
    for (double t : {0.3, kPi / 4, 1.1}) {
      const ThetaParam th(t);
      worst = std::max(worst, period_table(th, integral_quartet(th)).max_abs_err());
    }
    d = fmt("max |numeric - closed| over 16 periods x 3 theta = %.2e", worst) +
        fmt(" (tol %.0e)", kTolPeriod);
    return worst < kTolPeriod;
  });

  run(3, [&](std::string& d) {
    double rel = 0.0, red = 0.0;
    int count = 0;
    for (double t : {0.3, 0.65, 1.1}) {
      const ThetaParam th(t);
      const auto cyc = cycles_at(th);
      for (const auto& r : exact_relations(th))
        for (const auto& c : cyc) {
          rel = std::max(rel, std::abs(period(r.lhs - r.rhs, c)));
          ++count;
        }
      for (int slot : kResidueFreeSlots) {
        const OneForm f = OneForm::basis(slot);
        for (int p = 0; p <= 2; ++p) {
          const SecondKindForm s =
              p == 0 ? reduce_to_second_kind(th, f) : multiply_reduce(th, f, p);
          for (const auto& c : cyc) {
            red = std::max(red, std::abs(period(f.density().times_z(p), c) -
                                         period(s, c)));
            ++count;
          }
        }
      }
    }
    d = fmt("relations max %.2e", rel) + fmt(", reductions max %.2e", red) +
        " over " + std::to_string(count) + " cycle periods" +
        fmt(" (tol %.0e)", kTolRelation);
    return rel < kTolRelation && red < kTolRelation;
  });

  run(4, [&](std::string& d) {
    double worst = 0.0;
    bool stable = true;
    for (const ThetaParam& th : {th1, ThetaParam(0.3)})
      for (int slot : kResidueFreeSlots)
        for (int idx = 0; idx < 6; ++idx) {
          const auto r = residue_at(th, OneForm::basis(slot).density(), idx);
          worst = std::max({worst, std::abs(r.value), std::abs(r.value_half)});
          stable = stable && r.stable;
        }
    d = fmt("max |Res| over 6 forms x 6 points x {theta1, 0.3} = %.2e", worst) +
        (stable ? ", eps/2 check stable" : ", eps/2 check UNSTABLE");
    return worst < kTolResidue && stable;
  });

  run(5, [&](std::string& d) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> u(0.05, kHalfPi - 0.05);
    double err = 0.0, kernel = 0.0, min_scale = 1e300;
    bool all_ops = true;
    for (int i = 0; i < 5; ++i) {
      const auto sys = assemble_system(ThetaParam(u(rng)));
      const auto red = appendix_reduce(sys);
      all_ops = all_ops && red.log.size() == 22;
      const Matrix6 Y = expected_reduced(sys);
      for (int r = 0; r < 6; ++r) {
        const double scale = Y.row(r).cwiseAbs().maxCoeff();
        for (int c = 0; c < 6; ++c)
          err = std::max(err, std::abs(red.reduced(r, c) - Y(r, c)) / scale);
      }
      double prod = 1.0;
      for (const auto& op : red.log) {
        min_scale = std::min(min_scale, op.self_scale);
        prod *= op.self_scale;
      }
      const Matrix6 R = replay(red);
      kernel = std::max(kernel, (R * sys.M - red.reduced).norm() / red.reduced.norm());
      kernel = std::max(kernel, std::abs(R.determinant() - prod) / std::abs(prod));
    }
    // the theta1 null vector stays in the kernel of the reduced matrix
    const auto s1 = assemble_system(th1);
    const auto ns = nullspace(s1);
    double probe = 1.0;
    if (!ns.vectors.empty())
      probe = (appendix_reduce(s1).reduced * ns.vectors[0]).norm() /
              appendix_reduce(s1).reduced.norm();
    d = fmt("row-relative mismatch %.2e", err) + fmt(", min self-scale %.3e", min_scale) +
        fmt(", |RM - Y|, det R mismatch %.2e", kernel) +
        fmt(", theta1 kernel probe %.2e", probe);
    return all_ops && err < kTolAppendix && min_scale > 0.0 && kernel < 1e-12 &&
           probe < 1e-8;
  });

  OmegaPair pair1;
  bool have_pair = false;
  run(6, [&](std::string& d) {
    const auto sys1 = assemble_system(th1);
    const auto sys2 = assemble_system(th2);
    const int n1 = nullspace(sys1).nullity, n2 = nullspace(sys2).nullity;
    int off_bad = 0;
    for (int k = 0; k < 16; ++k) {
      const double t = (k + 0.5) * kHalfPi / 16;
      if (nullspace(assemble_system(ThetaParam(t))).nullity != 0) ++off_bad;
    }
    pair1 = omega_pair_at(sys1);
    have_pair = true;
    const OmegaPair pair2 = omega_pair_at(sys2);
    double per = 0.0;
    const std::pair<ThetaParam, const OmegaPair*> both[] = {{th1, &pair1}, {th2, &pair2}};
    for (const auto& [th, pr] : both) {
      for (const auto& c : cycles_at(th))
        per = std::max({per, vmax(weierstrass_period(pr->omega1, c)),
                        vmax(weierstrass_period(pr->omega2, c))});
    }
    d = "nullity theta1=" + std::to_string(n1) + " theta2=" + std::to_string(n2) +
        ", nonzero nullity at " + std::to_string(off_bad) + "/16 other theta" +
        fmt(", closed-form vector parallel defect %.2e", pair1.parallel_residual) +
        fmt(", max |Re period| %.2e", per);
    return n1 == 1 && n2 == 1 && off_bad == 0 && pair1.closed_form &&
           pair1.parallel_residual < kTolParallel && per < kTolOmegaPeriod;
  });

  run(7, [&](std::string& d) {
    if (!have_pair) throw ConsistencyError("no omega pair from criterion 6");
    const auto rep = symmetry_report(th1, pair1.omega1, pair1.omega2, 20);
    d = fmt("max u residual %.2e", rep.max_u_residual()) +
        fmt(" (s1 %.1e", std::max(rep.s1_u1, rep.s1_u2)) +
        fmt(", s3 %.1e", std::max(rep.s3_u1, rep.s3_u2)) +
        fmt(", j %.1e)", std::max(rep.j_u1, rep.j_u2)) + " over " +
        std::to_string(rep.samples) + " points" +
        fmt(", psi residuals %.2e", rep.psi_omega1) + fmt(" / %.2e", rep.psi_omega2);
    return rep.samples == 20 && rep.max_u_residual() < kTolSymmetry &&
           rep.psi_omega1 < kTolPsi && rep.psi_omega2 < kTolPsi;
  });

  run(8, [&](std::string& d) {
    if (!have_pair) throw ConsistencyError("no omega pair from criterion 6");
    const auto pts = sample_points(th1, 10, 2025, 0.4, 2.5, 0.15);
    double worst = 0.0, harmonic = 0.0;
    int trend = 0;
    for (const auto& p : pts) {
      const auto r1 = eigen_residual(th1, pair1.omega1, p, 1e-3);
      const auto r2 = eigen_residual(th1, pair1.omega1, p, 5e-4);
      worst = std::max(worst, r1.residual);
      if (quadratic_trend(r1, r2)) ++trend;
      harmonic = std::max(harmonic, pullback_harmonic_residual(p.z, 1e-3));
    }
    d = fmt("max |(Lap + 2) u1| %.2e at h=1e-3", worst) + ", O(h^2) trend at " +
        std::to_string(trend) + "/" + std::to_string(pts.size()) +
        fmt(" points, pullback harmonic %.2e", harmonic);
    return pts.size() == 10 && worst < kTolEigen && trend == 10 &&
           harmonic < kTolHarmonic;
  });

  run(9, [&](std::string& d) {
    const Mesh mesh = mesh_fundamental_domain(kPi / 4);
    const auto sp = spectrum_on(mesh, kDefaultK, true);
    const double lam = sp.smallest_positive();
    const double wa = mesh.weighted_area();
    const double wa2 = bisect_all(mesh, 2).weighted_area();
    const double area = 8.0 * wa2;  // eight copies of the half disk
    const double e1 = std::abs(wa - kPi), e2 = std::abs(wa2 - kPi);
    d = fmt("lambda_1=%.6f", lam) + fmt(" (rel err %.2e)", std::abs(lam - 2.0) / 2.0) +
        fmt(", Area=%.6f", area) + fmt(" vs 8pi (rel %.1e)", std::abs(area - 8 * kPi) / (8 * kPi)) +
        fmt(", area error ratio h/2 : h = %.3f", e2 / e1) +
        fmt(", lambda_1 * Area / pi = %.5f", lam * area / kPi);
    return std::abs(lam - 2.0) / 2.0 < kTolLambda &&
           std::abs(area - 8 * kPi) / (8 * kPi) < kTolArea && e2 < 0.35 * e1;
  });

  run(10, [&](std::string& d) {
    const std::vector<std::pair<double, int>> want = {
        {0.2, 3}, {0.4, 3}, {0.6, 3}, {0.7, 1}, {kPi / 4, 1}, {0.88, 1},
        {0.95, 3}, {1.2, 3}};
    bool ok = true;
    for (const auto& [t, ind] : want) {
      const auto sp = spectrum(t);
      ok = ok && sp.ind == ind;
      d += fmt("%.4f:", t) + std::to_string(sp.ind) + (sp.ind == ind ? " " : "(want " + std::to_string(ind) + ") ");
    }
    d = "Ind " + d;
    return ok;
  });

  SweepResult sw;
  bool have_sweep = false;
  run(11, [&](std::string& d) {
    sw = sweep(0.3, 0.9, 40, {0, 1, 2, 3, 4, 5, 6, 7});
    have_sweep = true;
    const int v1 = sector_index(v1_sector()), v2 = sector_index(v2_sector());
    const bool m1 = sw.nondecreasing(v1, 0, kMonotoneSlack);
    const bool m2 = sw.nondecreasing(v2, 0, kMonotoneSlack);
    double c1 = NAN, c2 = NAN;
    for (const auto& c : sw.crossings) {
      if (c.branch != 0 || !c.upward) continue;
      if (c.sector == v1) c1 = c.theta;
      if (c.sector == v2) c2 = c.theta;
    }
    d = std::string("v1 ") + (m1 ? "nondecreasing" : "NOT monotone") + ", v2 " +
        (m2 ? "nondecreasing" : "NOT monotone") + fmt(", crossings %.5f", c1) +
        fmt(" / %.5f", c2) + fmt(" vs theta1 %.5f", ca.theta1);
    return m1 && m2 && std::abs(c1 - ca.theta1) < kCrossingWindow &&
           std::abs(c2 - ca.theta1) < kCrossingWindow;
  });

  run(12, [&](std::string& d) {
    if (!have_sweep) throw ConsistencyError("no sweep from criterion 11");
    const int v1 = sector_index(v1_sector());
    int min_nul = 1 << 30;
    std::size_t nearest = 0;
    for (std::size_t t = 0; t < sw.thetas.size(); ++t) {
      min_nul = std::min(min_nul, sw.counts(static_cast<int>(t)).second);
      if (std::abs(sw.thetas[t] - ca.theta1) < std::abs(sw.thetas[nearest] - ca.theta1))
        nearest = t;
    }
    const int bump = sw.counts(static_cast<int>(nearest)).second;
    const auto it = std::find(sw.sectors.begin(), sw.sectors.end(), v1);
    const double lam = sw.values[it - sw.sectors.begin()][nearest][0];
    // Gap margin, informational: outside the v1 / v2 sectors the cluster
    // members at 2 should stay at the three pullback harmonics below theta2.
    int gap_bad = 0, gap_checked = 0;
    for (std::size_t t = 0; t < sw.thetas.size(); ++t) {
      if (sw.thetas[t] > ca.theta2 - kCrossingWindow) continue;
      int near = 0;
      for (std::size_t s = 0; s < sw.sectors.size(); ++s) {
        if (sw.sectors[s] == v1 || sw.sectors[s] == sector_index(v2_sector())) continue;
        for (int br = 0; br < sw.k; ++br)
          if (std::abs(sw.values[s][t][br] - 2.0) <= cluster_tolerance(sw.errors[s][t][br]))
            ++near;
      }
      ++gap_checked;
      if (near != 3) ++gap_bad;
    }
    std::printf("  info: gap margin in the other six sectors, %d/%d samples below "
                "theta2 - %.2f show a member other than the 3 pullbacks\n",
                gap_bad, gap_checked, kCrossingWindow);
    // Informational: the same count evaluated exactly at theta1.
    const auto at1 = spectrum(ca.theta1);
    std::printf("  info: Nul at theta1 = %d (Ind %d)\n", at1.nul, at1.ind);
    d = "min Nul over sweep " + std::to_string(min_nul) + ", Nul at nearest sample" +
        fmt(" theta=%.5f", sw.thetas[nearest]) + " is " + std::to_string(bump) +
        fmt(" (v1 branch %.5f", lam) + fmt(", |lambda-2|=%.2e", std::abs(lam - 2.0)) +
        fmt(" vs tol %.1e)", kClusterFloor);
    return min_nul >= 3 && bump == 5;
  });

  int failed = 0;
  for (const auto& l : g_lines)
    if (!l.pass) ++failed;
  std::printf("summary: %zu criteria, %d passed, %d failed\n", g_lines.size(),
              static_cast<int>(g_lines.size()) - failed, failed);
  return failed == 0 ? 0 : 1;
}
