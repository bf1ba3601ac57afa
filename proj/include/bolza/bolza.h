/* C interface to the bolza verification library.
 *
 * Every call returns a bolza_status; on failure the thread-local message
 * from bolza_last_error_message() describes it. Objects created by a
 * *_create / *_compute call are released with the matching *_destroy. */
#ifndef BOLZA_H
#define BOLZA_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BOLZA_API __declspec(dllexport)
#else
#define BOLZA_API __attribute__((visibility("default")))
#endif

typedef enum bolza_status {
  BOLZA_OK = 0,
  BOLZA_ERR_DOMAIN = 1,
  BOLZA_ERR_CONVERGENCE = 2,
  BOLZA_ERR_GEOMETRY = 3,
  BOLZA_ERR_CONSISTENCY = 4,
  BOLZA_ERR_INVALID_ARGUMENT = 5,
  BOLZA_ERR_POLE = 6,
  BOLZA_ERR_INTERNAL = 7
} bolza_status;

BOLZA_API const char* bolza_version(void);
BOLZA_API const char* bolza_status_name(bolza_status status);
BOLZA_API const char* bolza_last_error_message(void);

/* ---- integrals -------------------------------------------------------- */

typedef struct bolza_quartet {
  double A, B, C, D;
  double err_A, err_B, err_C, err_D;
} bolza_quartet;

BOLZA_API bolza_status bolza_integrals(double theta, double tol,
                                       bolza_quartet* out);

/* ---- critical angles -------------------------------------------------- */

typedef struct bolza_critical_angles {
  double theta1, theta2;
  double F1_residual, F2_residual;
  double theta2_root;
  int sign_changes_F1, sign_changes_F2;
  int scan_samples;
} bolza_critical_angles;

BOLZA_API bolza_status bolza_find_theta(double tol_root, int samples,
                                        bolza_critical_angles* out);

/* ---- period system ---------------------------------------------------- */

typedef struct bolza_system bolza_system;

BOLZA_API bolza_status bolza_system_create(double theta, double tol,
                                           bolza_system** out);
BOLZA_API void bolza_system_destroy(bolza_system* sys);

/* Row-major 6x6 matrix, variables (a1, a5, conj a2, conj a4, a3, conj a6). */
BOLZA_API bolza_status bolza_system_matrix(const bolza_system* sys,
                                           double out[36]);
BOLZA_API bolza_status bolza_system_residual_F(const bolza_system* sys,
                                               double* F1, double* F2);

typedef struct bolza_nullspace {
  double singular_values[6];
  int nullity;
  int indeterminate;
  double tol_rank;
  /* First null vector (zeros when nullity is 0) and its alphas for the
   * real family. */
  double vector[6];
  double alpha_re[6], alpha_im[6];
} bolza_nullspace;

BOLZA_API bolza_status bolza_system_nullspace(const bolza_system* sys,
                                              double tol_rank,
                                              bolza_nullspace* out);

typedef struct bolza_appendix {
  int operations;
  double min_self_scale;
  double max_rel_err;   /* reduced vs displayed matrix, entrywise */
  double block_det;     /* bottom-right 2x2 determinant */
  double det_factor;    /* ABCD (AD + BC)^2 / 16 */
} bolza_appendix;

BOLZA_API bolza_status bolza_system_appendix(const bolza_system* sys,
                                             bolza_appendix* out);

/* ---- periods ---------------------------------------------------------- */

typedef struct bolza_period_row {
  int form;  /* 0..3: dz/w, z dz/w, z^3 dz/w^3, z^4 dz/w^3 */
  int cycle; /* 0..3: C4, phi C4, C5, phi C5 loops */
  double numeric_re, numeric_im;
  double closed_re, closed_im;
  double abs_err;
} bolza_period_row;

BOLZA_API bolza_status bolza_period_table(double theta, double tol,
                                          bolza_period_row out[16]);
BOLZA_API const char* bolza_form_name(int form);
BOLZA_API const char* bolza_cycle_name(int cycle);

/* ---- omega verification ----------------------------------------------- */

typedef struct bolza_omega bolza_omega;

typedef struct bolza_omega_summary {
  double theta;
  int closed_form;
  double parallel_residual;
  double alpha1_re[6], alpha1_im[6];
  double alpha2_re[6], alpha2_im[6];
  double period_max;   /* max |Re Weierstrass period|, both forms, 4 cycles */
  double c1[3], c2[3];
  double s1_u1, s1_u2, s3_u1, s3_u2, j_u1, j_u2;
  double psi_omega1, psi_omega2, s1_omega1, s1_omega2;
  int samples;
  double residue_max;
  int residues_stable;
  double reduction_max;
  double relation_max;
  double eigen_max;
  int trend_ok;
  double harmonic_residual;
  double extra_relative_residual;
} bolza_omega_summary;

typedef struct bolza_omega_sample {
  double z_re, z_im, w_re, w_im;
  double u1, u2;
  double residual, residual_half, noise;
  int trend;
} bolza_omega_sample;

typedef struct bolza_residue_row {
  int slot;  /* position in the nine-form basis */
  int point; /* ramification point index */
  double re, im;
  int stable;
} bolza_residue_row;

BOLZA_API bolza_status bolza_omega_verify(double theta, int samples,
                                          int eigen_samples, unsigned seed,
                                          bolza_omega** out);
BOLZA_API void bolza_omega_destroy(bolza_omega* om);
BOLZA_API bolza_status bolza_omega_get_summary(const bolza_omega* om,
                                               bolza_omega_summary* out);
BOLZA_API int bolza_omega_sample_count(const bolza_omega* om);
BOLZA_API bolza_status bolza_omega_get_sample(const bolza_omega* om, int i,
                                              bolza_omega_sample* out);
BOLZA_API int bolza_omega_residue_count(const bolza_omega* om);
BOLZA_API bolza_status bolza_omega_get_residue(const bolza_omega* om, int i,
                                               bolza_residue_row* out);

/* ---- spectra ---------------------------------------------------------- */

/* Sector index 0..7; labels "(s1,j,s3)" and boundary strings like "NDND". */
BOLZA_API const char* bolza_sector_label(int sector);
BOLZA_API const char* bolza_sector_bc(int sector);

typedef struct bolza_spectrum bolza_spectrum;

typedef struct bolza_spectrum_summary {
  double theta, h;
  int k, richardson;
  int ind, nul;
  double smallest_positive;
  double weighted_area;
  int vertices_coarse, vertices_fine;
  int count; /* merged entries */
} bolza_spectrum_summary;

typedef struct bolza_eigen_entry {
  double value, error, tol;
  double coarse, fine; /* fine is 0 without extrapolation */
  int sector, branch;
} bolza_eigen_entry;

BOLZA_API bolza_status bolza_spectrum_compute(double theta, int k, double h,
                                              int richardson,
                                              bolza_spectrum** out);
BOLZA_API void bolza_spectrum_destroy(bolza_spectrum* sp);
BOLZA_API bolza_status bolza_spectrum_get_summary(const bolza_spectrum* sp,
                                                  bolza_spectrum_summary* out);
BOLZA_API bolza_status bolza_spectrum_get_entry(const bolza_spectrum* sp,
                                                int i, bolza_eigen_entry* out);

typedef struct bolza_sweep bolza_sweep;

typedef struct bolza_crossing {
  int sector, branch;
  double theta;
  int upward;
} bolza_crossing;

BOLZA_API bolza_status bolza_sweep_compute(double theta_min, double theta_max,
                                           int steps, const int* sectors,
                                           int n_sectors, int k, double h,
                                           int richardson, bolza_sweep** out);
BOLZA_API void bolza_sweep_destroy(bolza_sweep* sw);
BOLZA_API bolza_status bolza_sweep_dims(const bolza_sweep* sw, int* steps,
                                        int* n_sectors, int* k);
BOLZA_API bolza_status bolza_sweep_theta(const bolza_sweep* sw, int t,
                                         double* theta);
BOLZA_API bolza_status bolza_sweep_sector(const bolza_sweep* sw, int s,
                                          int* sector);
BOLZA_API bolza_status bolza_sweep_value(const bolza_sweep* sw, int s, int t,
                                         int b, double* value, double* error);
BOLZA_API bolza_status bolza_sweep_nondecreasing(const bolza_sweep* sw,
                                                 int sector, int branch,
                                                 double slack, int* out);
BOLZA_API bolza_status bolza_sweep_counts(const bolza_sweep* sw, int t,
                                          int* ind, int* nul);
BOLZA_API int bolza_sweep_crossing_count(const bolza_sweep* sw);
BOLZA_API bolza_status bolza_sweep_get_crossing(const bolza_sweep* sw, int i,
                                                bolza_crossing* out);

#ifdef __cplusplus
}
#endif

#endif /* BOLZA_H */
