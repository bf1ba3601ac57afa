// Command-line front end over the C interface.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bolza/bolza.h"
#include "report.hpp"

namespace {

using report::Csv;
using report::Envelope;
using report::Json;

constexpr double kPi = 3.141592653589793;

// Every default in one place; each flag overrides exactly one entry.
struct Defaults {
  double quad_tol = 1e-12;
  double period_tol = 1e-11;
  double root_tol = 1e-12;
  double rank_tol = 1e-8;
  int scan_samples = 512;
  int samples = 20;
  int eigen_samples = 10;
  unsigned seed = 2024;
  double h = 0.02;
  int k = 8;
  double theta_min = 0.3;
  double theta_max = 0.9;
  int steps = 40;
  std::string sectors = "2,6";
  std::string thetas = "0.2,0.4,0.6,0.7,0.7853981633974483,0.88,0.95,1.2";
  // pass/fail thresholds
  double symmetry_check = 1e-10;  // |A(t) - B(pi/2 - t)|
  double theta1_lo = 0.64, theta1_hi = 0.66;
  double theta2_lo = 0.90, theta2_hi = 0.92;
  double F_check = 1e-10;
  double appendix_check = 1e-9;
  double period_check = 1e-8;
  double omega_period_check = 1e-7;
  double sym_u_check = 1e-6;
  double psi_check = 1e-10;
  double residue_check = 1e-8;
  double eigen_check = 1e-3;
  double harmonic_check = 1e-10;
  double area_check = 1e-3;
  double slack = 1e-4;
};
const Defaults kD;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ApiError : std::runtime_error {
  ApiError(bolza_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
  bolza_status status;
};

void call(bolza_status s) {
  if (s != BOLZA_OK)
    throw ApiError(s, std::string(bolza_status_name(s)) + ": " +
                          bolza_last_error_message());
}

void require_theta(double t, const char* what) {
  if (!(t > 0.0 && t < kPi / 2))
    throw UsageError(std::string(what) + " must lie in (0, pi/2)");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw UsageError(std::string(what) + " must be positive");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "'");
    }
    if (pos != item.size()) throw UsageError("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<int> parse_sectors(const std::string& s) {
  if (s == "all") return {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> out;
  for (double v : parse_list(s)) {
    if (v != std::floor(v) || v < 0 || v > 7)
      throw UsageError("sector indices are integers 0..7");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Json cplx_json(double re, double im) {
  Json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

template <class T>
Json array_json(const T* v, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

template <class T, class D>
using handle = std::unique_ptr<T, D>;

// ---------------------------------------------------------------------------

struct Options {
  std::string format;
  std::string output = "-";
  std::string timestamp;
  double theta = std::nan("");
  double tol = 0.0;
  double root_tol = kD.root_tol;
  double rank_tol = kD.rank_tol;
  int scan_samples = kD.scan_samples;
  int samples = kD.samples;
  int eigen_samples = kD.eigen_samples;
  unsigned seed = kD.seed;
  std::string samples_csv;
  double h = kD.h;
  int k = kD.k;
  bool richardson = true;
  double theta_min = kD.theta_min;
  double theta_max = kD.theta_max;
  int steps = kD.steps;
  std::string sectors = kD.sectors;
  std::string thetas = kD.thetas;
  std::string expect;
};

Envelope make_envelope(const std::string& sub, const Options& o) {
  Envelope e;
  e.version = bolza_version();
  e.subcommand = sub;
  e.timestamp = o.timestamp;
  return e;
}

std::string emit(const Envelope& env, const Csv& csv, const std::string& format) {
  if (format == "csv") return csv.str();
  return report::serialize(env.to_json());
}

// ---------------------------------------------------------------------------

void run_integrals(const Options& o, Envelope& env, Csv& csv) {
  require_theta(o.theta, "--theta");
  require_positive(o.tol, "--tol");
  bolza_quartet q{}, m{};
  call(bolza_integrals(o.theta, o.tol, &q));
  call(bolza_integrals(kPi / 2 - o.theta, o.tol, &m));
  env.config["theta"] = o.theta;
  env.config["tol"] = o.tol;
  auto& r = env.results;
  r["theta"] = o.theta;
  r["A"] = q.A;
  r["B"] = q.B;
  r["C"] = q.C;
  r["D"] = q.D;
  r["error_estimates"] = {{"A", q.err_A}, {"B", q.err_B}, {"C", q.err_C}, {"D", q.err_D}};
  r["abs_A_minus_B"] = std::abs(q.A - q.B);
  r["abs_C_minus_D"] = std::abs(q.C - q.D);
  env.checks.push_back(report::check_below(
      "swap_symmetry_A", std::abs(q.A - m.B), kD.symmetry_check));
  env.checks.push_back(report::check_below(
      "swap_symmetry_C", std::abs(q.C - m.D), kD.symmetry_check));
  csv.header = {"theta", "A", "B", "C", "D"};
  csv.add({report::cell(o.theta), report::cell(q.A), report::cell(q.B),
           report::cell(q.C), report::cell(q.D)});
}

void run_find_theta(const Options& o, Envelope& env, Csv& csv) {
  require_positive(o.root_tol, "--root-tol");
  if (o.scan_samples < 8) throw UsageError("--scan-samples must be at least 8");
  bolza_critical_angles ca{};
  call(bolza_find_theta(o.root_tol, o.scan_samples, &ca));
  env.config["root_tol"] = o.root_tol;
  env.config["scan_samples"] = o.scan_samples;
  auto& r = env.results;
  r["theta1"] = ca.theta1;
  r["theta2"] = ca.theta2;
  r["theta2_independent_root"] = ca.theta2_root;
  r["F1_residual"] = ca.F1_residual;
  r["F2_residual"] = ca.F2_residual;
  r["scan_sign_changes"] = {{"F1", ca.sign_changes_F1}, {"F2", ca.sign_changes_F2}};
  r["scan_samples"] = ca.scan_samples;
  env.checks.push_back(report::check_in("theta1_range", ca.theta1, kD.theta1_lo, kD.theta1_hi));
  env.checks.push_back(report::check_in("theta2_range", ca.theta2, kD.theta2_lo, kD.theta2_hi));
  env.checks.push_back(report::check_below("F1_residual", std::abs(ca.F1_residual), kD.F_check));
  env.checks.push_back(report::check_equal("F1_sign_changes", ca.sign_changes_F1, 1));
  env.checks.push_back(report::check_equal("F2_sign_changes", ca.sign_changes_F2, 1));
  csv.header = {"theta1", "theta2", "F1_residual", "F2_residual",
                "sign_changes_F1", "sign_changes_F2"};
  csv.add({report::cell(ca.theta1), report::cell(ca.theta2),
           report::cell(ca.F1_residual), report::cell(ca.F2_residual),
           report::cell(ca.sign_changes_F1), report::cell(ca.sign_changes_F2)});
}

void run_nullspace(const Options& o, Envelope& env, Csv& csv) {
  require_theta(o.theta, "--theta");
  require_positive(o.tol, "--tol");
  if (!(o.rank_tol > 0.0 && o.rank_tol < 1.0))
    throw UsageError("--rank-tol must lie in (0, 1)");
  bolza_system* raw = nullptr;
  call(bolza_system_create(o.theta, o.tol, &raw));
  handle<bolza_system, void (*)(bolza_system*)> sys(raw, bolza_system_destroy);
  bolza_nullspace ns{};
  call(bolza_system_nullspace(sys.get(), o.rank_tol, &ns));
  double F1 = 0, F2 = 0;
  call(bolza_system_residual_F(sys.get(), &F1, &F2));
  bolza_appendix ap{};
  call(bolza_system_appendix(sys.get(), &ap));
  double M[36];
  call(bolza_system_matrix(sys.get(), M));

  env.config["theta"] = o.theta;
  env.config["tol"] = o.tol;
  env.config["rank_tol"] = o.rank_tol;
  auto& r = env.results;
  r["theta"] = o.theta;
  Json rows = Json::array();
  for (int i = 0; i < 6; ++i) rows.push_back(array_json(M + 6 * i, 6));
  r["matrix"] = rows;
  r["singular_values"] = array_json(ns.singular_values, 6);
  r["nullity"] = ns.nullity;
  r["indeterminate"] = ns.indeterminate != 0;
  if (ns.nullity > 0) {
    r["null_vector"] = array_json(ns.vector, 6);
    Json a = Json::array();
    for (int i = 0; i < 6; ++i) a.push_back(cplx_json(ns.alpha_re[i], ns.alpha_im[i]));
    r["alpha_vector"] = a;
  }
  r["F1"] = F1;
  r["F2"] = F2;
  r["appendix"] = {{"operations", ap.operations},
                   {"min_self_scale", ap.min_self_scale},
                   {"max_rel_err", ap.max_rel_err},
                   {"block_det", ap.block_det},
                   {"det_factor", ap.det_factor},
                   {"F1_F2_factor", F1 * F2 * ap.det_factor}};
  env.checks.push_back(report::check_equal("rank_determinate", ns.indeterminate, 0));
  env.checks.push_back(report::check_below("appendix_match", ap.max_rel_err, kD.appendix_check));
  env.checks.push_back(report::check_at_least("appendix_positive_scaling",
                                              ap.min_self_scale > 0.0 ? 1 : 0, 1));
  csv.header = {"index", "singular_value", "null_vector", "alpha_re", "alpha_im"};
  for (int i = 0; i < 6; ++i)
    csv.add({report::cell(i), report::cell(ns.singular_values[i]),
             report::cell(ns.vector[i]), report::cell(ns.alpha_re[i]),
             report::cell(ns.alpha_im[i])});
}

void run_periods(const Options& o, Envelope& env, Csv& csv) {
  require_theta(o.theta, "--theta");
  require_positive(o.tol, "--tol");
  bolza_period_row rows[16];
  call(bolza_period_table(o.theta, o.tol, rows));
  env.config["theta"] = o.theta;
  env.config["tol"] = o.tol;
  Json table = Json::array();
  double worst = 0.0;
  csv.header = {"form", "cycle", "re", "im", "closed_form_re", "closed_form_im", "abs_err"};
  for (const auto& p : rows) {
    Json e;
    e["form"] = bolza_form_name(p.form);
    e["cycle"] = bolza_cycle_name(p.cycle);
    e["numeric"] = cplx_json(p.numeric_re, p.numeric_im);
    e["closed_form"] = cplx_json(p.closed_re, p.closed_im);
    e["abs_err"] = p.abs_err;
    table.push_back(std::move(e));
    worst = std::max(worst, p.abs_err);
    csv.add({bolza_form_name(p.form), bolza_cycle_name(p.cycle),
             report::cell(p.numeric_re), report::cell(p.numeric_im),
             report::cell(p.closed_re), report::cell(p.closed_im),
             report::cell(p.abs_err)});
  }
  env.results["theta"] = o.theta;
  env.results["periods"] = table;
  env.results["max_abs_err"] = worst;
  env.checks.push_back(report::check_below("period_table", worst, kD.period_check));
}

void run_verify_omega(const Options& o, Envelope& env, Csv& csv) {
  double theta = o.theta;
  if (std::isnan(theta)) {
    bolza_critical_angles ca{};
    call(bolza_find_theta(kD.root_tol, kD.scan_samples, &ca));
    theta = ca.theta1;
  }
  require_theta(theta, "--theta");
  if (o.samples < 1 || o.eigen_samples < 1)
    throw UsageError("sample counts must be positive");
  bolza_omega* raw = nullptr;
  call(bolza_omega_verify(theta, o.samples, o.eigen_samples, o.seed, &raw));
  handle<bolza_omega, void (*)(bolza_omega*)> om(raw, bolza_omega_destroy);
  bolza_omega_summary s{};
  call(bolza_omega_get_summary(om.get(), &s));

  env.config["theta"] = theta;
  env.config["samples"] = o.samples;
  env.config["eigen_samples"] = o.eigen_samples;
  env.config["seed"] = o.seed;
  auto& r = env.results;
  r["theta"] = theta;
  r["closed_form"] = s.closed_form != 0;
  r["parallel_residual"] = s.parallel_residual;
  Json a1 = Json::array(), a2 = Json::array();
  for (int i = 0; i < 6; ++i) {
    a1.push_back(cplx_json(s.alpha1_re[i], s.alpha1_im[i]));
    a2.push_back(cplx_json(s.alpha2_re[i], s.alpha2_im[i]));
  }
  r["omega1_alphas"] = a1;
  r["omega2_alphas"] = a2;
  r["period_max"] = s.period_max;
  Json res = Json::array();
  for (int i = 0; i < bolza_omega_residue_count(om.get()); ++i) {
    bolza_residue_row row{};
    call(bolza_omega_get_residue(om.get(), i, &row));
    res.push_back({{"basis_slot", row.slot},
                   {"point", row.point},
                   {"residue", cplx_json(row.re, row.im)},
                   {"stable", row.stable != 0}});
  }
  r["residues"] = res;
  r["residue_max"] = s.residue_max;
  r["reduction_max"] = s.reduction_max;
  r["relation_max"] = s.relation_max;
  r["symmetry"] = {{"samples", s.samples},
                   {"c1", array_json(s.c1, 3)},
                   {"c2", array_json(s.c2, 3)},
                   {"s1_u1", s.s1_u1},
                   {"s1_u2", s.s1_u2},
                   {"s3_u1", s.s3_u1},
                   {"s3_u2", s.s3_u2},
                   {"j_u1", s.j_u1},
                   {"j_u2", s.j_u2},
                   {"psi_omega1", s.psi_omega1},
                   {"psi_omega2", s.psi_omega2},
                   {"s1_omega1", s.s1_omega1},
                   {"s1_omega2", s.s1_omega2}};
  Json eig = Json::array();
  Csv samples;
  samples.header = {"re_z", "im_z", "sheet", "u1", "u2"};
  csv.header = {"re_z", "im_z", "re_w", "im_w", "u1", "u2", "residual",
                "residual_half", "noise", "trend"};
  for (int i = 0; i < bolza_omega_sample_count(om.get()); ++i) {
    bolza_omega_sample e{};
    call(bolza_omega_get_sample(om.get(), i, &e));
    eig.push_back({{"z", cplx_json(e.z_re, e.z_im)},
                   {"w", cplx_json(e.w_re, e.w_im)},
                   {"u1", e.u1},
                   {"u2", e.u2},
                   {"residual", e.residual},
                   {"residual_half", e.residual_half},
                   {"noise", e.noise},
                   {"trend", e.trend != 0}});
    csv.add({report::cell(e.z_re), report::cell(e.z_im), report::cell(e.w_re),
             report::cell(e.w_im), report::cell(e.u1), report::cell(e.u2),
             report::cell(e.residual), report::cell(e.residual_half),
             report::cell(e.noise), report::cell(e.trend)});
    // sheet: sign of Re w, ties broken by Im w
    const int sheet = (e.w_re > 0 || (e.w_re == 0 && e.w_im >= 0)) ? 0 : 1;
    samples.add({report::cell(e.z_re), report::cell(e.z_im), report::cell(sheet),
                 report::cell(e.u1), report::cell(e.u2)});
  }
  r["eigen_residuals"] = eig;
  r["eigen_max"] = s.eigen_max;
  r["harmonic_residual"] = s.harmonic_residual;
  r["extra_relative_residual"] = s.extra_relative_residual;
  const double sym = std::max({s.s1_u1, s.s1_u2, s.s3_u1, s.s3_u2, s.j_u1, s.j_u2});
  env.checks.push_back(report::check_below("weierstrass_periods", s.period_max, kD.omega_period_check));
  env.checks.push_back(report::check_below("residues", s.residue_max, kD.residue_check));
  env.checks.push_back(report::check_equal("residues_stable", s.residues_stable, 1));
  env.checks.push_back(report::check_below("reduction_consistency", s.reduction_max, kD.period_check));
  env.checks.push_back(report::check_below("exact_relations", s.relation_max, kD.period_check));
  env.checks.push_back(report::check_below("symmetry_u", sym, kD.sym_u_check));
  env.checks.push_back(report::check_below("psi_omega1", s.psi_omega1, kD.psi_check));
  env.checks.push_back(report::check_below("psi_omega2", s.psi_omega2, kD.psi_check));
  env.checks.push_back(report::check_below("eigen_residual", s.eigen_max, kD.eigen_check));
  env.checks.push_back(report::check_equal("eigen_trend", s.trend_ok, 1));
  env.checks.push_back(report::check_below("pullback_harmonic", s.harmonic_residual, kD.harmonic_check));
  if (!o.samples_csv.empty()) report::write_output(o.samples_csv, samples.str());
}

void run_spectrum(const Options& o, Envelope& env, Csv& csv) {
  require_theta(o.theta, "--theta");
  require_positive(o.h, "--h");
  if (o.k < 1) throw UsageError("--k must be at least 1");
  bolza_spectrum* raw = nullptr;
  call(bolza_spectrum_compute(o.theta, o.k, o.h, o.richardson ? 1 : 0, &raw));
  handle<bolza_spectrum, void (*)(bolza_spectrum*)> sp(raw, bolza_spectrum_destroy);
  bolza_spectrum_summary s{};
  call(bolza_spectrum_get_summary(sp.get(), &s));
  env.config["theta"] = o.theta;
  env.config["k"] = o.k;
  env.config["h"] = o.h;
  env.config["richardson"] = o.richardson;
  auto& r = env.results;
  r["theta"] = s.theta;
  r["h"] = s.h;
  r["ind"] = s.ind;
  r["nul"] = s.nul;
  r["smallest_positive"] = s.smallest_positive;
  r["weighted_area"] = s.weighted_area;
  r["vertices"] = {{"coarse", s.vertices_coarse}, {"fine", s.vertices_fine}};
  Json merged = Json::array();
  csv.header = {"sector", "bc", "branch_index", "eigenvalue", "error", "tol", "coarse", "fine"};
  for (int i = 0; i < s.count; ++i) {
    bolza_eigen_entry e{};
    call(bolza_spectrum_get_entry(sp.get(), i, &e));
    merged.push_back({{"value", e.value},
                      {"error", e.error},
                      {"tol", e.tol},
                      {"sector", bolza_sector_label(e.sector)},
                      {"bc", bolza_sector_bc(e.sector)},
                      {"branch", e.branch},
                      {"coarse", e.coarse},
                      {"fine", e.fine}});
    csv.add({report::cell(e.sector), bolza_sector_bc(e.sector),
             report::cell(e.branch), report::cell(e.value), report::cell(e.error),
             report::cell(e.tol), report::cell(e.coarse), report::cell(e.fine)});
  }
  r["merged"] = merged;
  env.checks.push_back(report::check_below(
      "weighted_area", std::abs(s.weighted_area - kPi), kD.area_check));
  env.checks.push_back(report::check_at_least("nul_lower_bound", s.nul, 3));
}

void run_sweep(const Options& o, Envelope& env, Csv& csv) {
  require_theta(o.theta_min, "--from");
  require_theta(o.theta_max, "--to");
  if (!(o.theta_min < o.theta_max)) throw UsageError("--from must be below --to");
  if (o.steps < 2) throw UsageError("--steps must be at least 2");
  require_positive(o.h, "--h");
  if (o.k < 1) throw UsageError("--k must be at least 1");
  const auto sectors = parse_sectors(o.sectors);
  bolza_sweep* raw = nullptr;
  call(bolza_sweep_compute(o.theta_min, o.theta_max, o.steps, sectors.data(),
                           static_cast<int>(sectors.size()), o.k, o.h,
                           o.richardson ? 1 : 0, &raw));
  handle<bolza_sweep, void (*)(bolza_sweep*)> sw(raw, bolza_sweep_destroy);
  int steps = 0, ns = 0, k = 0;
  call(bolza_sweep_dims(sw.get(), &steps, &ns, &k));
  env.config["theta_min"] = o.theta_min;
  env.config["theta_max"] = o.theta_max;
  env.config["steps"] = o.steps;
  env.config["sectors"] = sectors;
  env.config["k"] = o.k;
  env.config["h"] = o.h;
  env.config["richardson"] = o.richardson;

  std::vector<double> thetas(steps);
  for (int t = 0; t < steps; ++t) call(bolza_sweep_theta(sw.get(), t, &thetas[t]));
  Json branches = Json::array();
  csv.header = {"theta", "sector", "branch_index", "eigenvalue", "error", "bc"};
  for (int s = 0; s < ns; ++s) {
    int sector = 0;
    call(bolza_sweep_sector(sw.get(), s, &sector));
    Json values = Json::array();
    for (int t = 0; t < steps; ++t) {
      Json row = Json::array();
      for (int b = 0; b < k; ++b) {
        double v = 0, e = 0;
        call(bolza_sweep_value(sw.get(), s, t, b, &v, &e));
        row.push_back(v);
        csv.add({report::cell(thetas[t]), report::cell(sector), report::cell(b),
                 report::cell(v), report::cell(e), bolza_sector_bc(sector)});
      }
      values.push_back(std::move(row));
    }
    int mono = 0;
    call(bolza_sweep_nondecreasing(sw.get(), sector, 0, kD.slack, &mono));
    branches.push_back({{"sector", bolza_sector_label(sector)},
                        {"bc", bolza_sector_bc(sector)},
                        {"lowest_branch_nondecreasing", mono != 0},
                        {"values", values}});
    if (sector == 2 || sector == 6)
      env.checks.push_back(report::check_equal(
          std::string("monotone_") + bolza_sector_bc(sector), mono, 1));
  }
  Json crossings = Json::array();
  for (int i = 0; i < bolza_sweep_crossing_count(sw.get()); ++i) {
    bolza_crossing c{};
    call(bolza_sweep_get_crossing(sw.get(), i, &c));
    crossings.push_back({{"sector", bolza_sector_label(c.sector)},
                         {"bc", bolza_sector_bc(c.sector)},
                         {"branch", c.branch},
                         {"theta", c.theta},
                         {"direction", c.upward ? "up" : "down"}});
  }
  Json counts = Json::array();
  if (ns == 8)
    for (int t = 0; t < steps; ++t) {
      int ind = 0, nul = 0;
      call(bolza_sweep_counts(sw.get(), t, &ind, &nul));
      counts.push_back({{"theta", thetas[t]}, {"ind", ind}, {"nul", nul}});
    }
  env.results["thetas"] = thetas;
  env.results["branches"] = branches;
  env.results["crossings"] = crossings;
  env.results["counts"] = counts;
}

void run_index_table(const Options& o, Envelope& env, Csv& csv) {
  const auto thetas = parse_list(o.thetas);
  for (double t : thetas) require_theta(t, "--thetas");
  require_positive(o.h, "--h");
  if (o.k < 1) throw UsageError("--k must be at least 1");
  std::vector<double> expect;
  if (!o.expect.empty()) {
    expect = parse_list(o.expect);
    if (expect.size() != thetas.size())
      throw UsageError("--expect needs one entry per theta");
  }
  env.config["thetas"] = thetas;
  env.config["k"] = o.k;
  env.config["h"] = o.h;
  env.config["richardson"] = o.richardson;
  if (!expect.empty()) env.config["expect"] = expect;
  csv.header = {"theta", "Ind", "Nul", "smallest_positive"};
  Json rows = Json::array();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    bolza_spectrum* raw = nullptr;
    call(bolza_spectrum_compute(thetas[i], o.k, o.h, o.richardson ? 1 : 0, &raw));
    handle<bolza_spectrum, void (*)(bolza_spectrum*)> sp(raw, bolza_spectrum_destroy);
    bolza_spectrum_summary s{};
    call(bolza_spectrum_get_summary(sp.get(), &s));
    rows.push_back({{"theta", thetas[i]},
                    {"ind", s.ind},
                    {"nul", s.nul},
                    {"smallest_positive", s.smallest_positive}});
    csv.add({report::cell(thetas[i]), report::cell(s.ind), report::cell(s.nul),
             report::cell(s.smallest_positive)});
    std::ostringstream name;
    name.precision(17);
    name << thetas[i];
    env.checks.push_back(report::check_at_least("nul_lower_bound@" + name.str(), s.nul, 3));
    if (!expect.empty())
      env.checks.push_back(report::check_equal("ind@" + name.str(), s.ind, expect[i]));
  }
  env.results["rows"] = rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification for the genus-2 family w^2 = z^5 + 2 cos(2t) z^3 + z"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bolza_version()));

  Options o;
  struct Sub {
    std::string name;
    std::string default_format;
    std::function<void(const Options&, Envelope&, Csv&)> run;
    CLI::App* app = nullptr;
  };
  std::vector<Sub> subs = {
      {"integrals", "json", run_integrals},
      {"find-theta", "json", run_find_theta},
      {"nullspace", "json", run_nullspace},
      {"periods", "csv", run_periods},
      {"verify-omega", "json", run_verify_omega},
      {"spectrum", "json", run_spectrum},
      {"sweep", "csv", run_sweep},
      {"index-table", "csv", run_index_table},
  };
  const char* help[] = {
      "Half-line integrals A, B, C, D",
      "Critical angles from the sign scan and bracketed roots",
      "SVD null space of the 6x6 period system",
      "Numerical and closed-form periods of the second-kind basis",
      "Residues, reductions, symmetry and eigen-equation checks for omega",
      "Merged sector spectrum with index and nullity",
      "Eigenvalue branches over a theta range",
      "Index and nullity at a list of theta values",
  };
  bool use_theta1 = false;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto* sc = app.add_subcommand(subs[i].name, help[i]);
    subs[i].app = sc;
    sc->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("-o,--output", o.output, "output file, - for stdout");
    sc->add_option("--timestamp", o.timestamp, "timestamp echoed in the envelope");
    const std::string& n = subs[i].name;
    if (n == "integrals" || n == "nullspace" || n == "periods" || n == "spectrum")
      sc->add_option("--theta", o.theta, "curve parameter in (0, pi/2)")->required();
    if (n == "integrals" || n == "nullspace")
      sc->add_option("--tol", o.tol, "quadrature tolerance")
          ->default_val(kD.quad_tol);
    if (n == "periods")
      sc->add_option("--tol", o.tol, "period integration tolerance")
          ->default_val(kD.period_tol);
    if (n == "find-theta") {
      sc->add_option("--root-tol,--tol", o.root_tol, "root bracket tolerance");
      sc->add_option("--scan-samples", o.scan_samples, "sign-scan samples");
    }
    if (n == "nullspace") sc->add_option("--rank-tol", o.rank_tol, "relative rank tolerance");
    if (n == "verify-omega") {
      auto* t = sc->add_option("--theta", o.theta, "curve parameter (default theta_1)");
      sc->add_flag("--theta1", use_theta1, "use the computed theta_1")->excludes(t);
      sc->add_option("--samples", o.samples, "symmetry sample points");
      sc->add_option("--eigen-samples", o.eigen_samples, "eigen-residual sample points");
      sc->add_option("--seed", o.seed, "sampling seed");
      sc->add_option("--samples-csv", o.samples_csv, "CSV of (Re z, Im z, sheet, u1, u2)");
    }
    if (n == "spectrum" || n == "sweep" || n == "index-table") {
      // --h is the mesh size here, so help is long-form only
      sc->set_help_flag("--help", "Print this help message and exit");
      sc->add_option("--h", o.h, "mesh size before grading");
      sc->add_option("--k", o.k, "eigenvalues per sector");
      sc->add_flag("--richardson,!--no-richardson", o.richardson,
                   "extrapolate with an h/2 solve (default on)");
    }
    if (n == "sweep") {
      sc->add_option("--from,--theta-min", o.theta_min, "first sample");
      sc->add_option("--to,--theta-max", o.theta_max, "last sample");
      sc->add_option("--steps", o.steps, "number of samples");
      sc->add_option("--sectors", o.sectors, "sector indices 0..7, comma separated, or all");
    }
    if (n == "index-table") {
      sc->add_option("--thetas", o.thetas, "comma-separated theta values");
      sc->add_option("--expect", o.expect, "expected Ind per theta (optional)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    if (o.format.empty()) o.format = s.default_format;
    try {
      Envelope env = make_envelope(s.name, o);
      env.config["format"] = o.format;
      Csv csv;
      s.run(o, env, csv);
      report::write_output(o.output, emit(env, csv, o.format));
      return env.all_pass() ? 0 : 1;
    } catch (const UsageError& e) {
      std::fprintf(stderr, "usage error: %s\n\n%s", e.what(), s.app->help().c_str());
      return 2;
    } catch (const ApiError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return (e.status == BOLZA_ERR_DOMAIN || e.status == BOLZA_ERR_INVALID_ARGUMENT) ? 2 : 1;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 2;
}
