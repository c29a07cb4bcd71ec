/* mwlab C API: matter-wave interference laboratory.
 *
 * All functionality of libmwlab behind a C ABI: opaque handles, status
 * codes, out-parameters. Every function returns MW_OK on success; on
 * failure the handle outputs are untouched and mw_last_error() carries a
 * human-readable message (thread-local). Handles are destroyed with the
 * matching *_free function; freeing NULL is a no-op.
 */
#ifndef MWLAB_H
#define MWLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MWLAB_API __declspec(dllexport)
#else
#define MWLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mw_status {
  MW_OK = 0,
  MW_ERR_INVALID_ARGUMENT = 1,
  MW_ERR_GRID_MISMATCH = 2,
  MW_ERR_DOMAIN = 3,
  MW_ERR_NUMERICAL = 4,
  MW_ERR_IO = 5,
  MW_ERR_INTERNAL = 6
} mw_status;

typedef enum mw_scheme {
  MW_SCHEME_SPECTRAL = 0,
  MW_SCHEME_CENTRAL2 = 1
} mw_scheme;

/* Opaque handles. */
typedef struct mw_grid mw_grid;       /* grid geometry */
typedef struct mw_cfield mw_cfield;   /* complex scalar field */
typedef struct mw_pfield mw_pfield;   /* 2-spinor field */
typedef struct mw_dfield mw_dfield;   /* 4-spinor field */
typedef struct mw_rfield mw_rfield;   /* real scalar field */
typedef struct mw_vfield mw_vfield;   /* real vector field (2 or 3 comps) */
typedef struct mw_loop mw_loop;       /* closed polyline */
typedef struct mw_fringe mw_fringe;   /* screen profile + fit */
typedef struct mw_verify_report mw_verify_report;

MWLAB_API const char* mw_status_name(mw_status s);
/* Message of the most recent failure on this thread; empty string if none. */
MWLAB_API const char* mw_last_error(void);
MWLAB_API const char* mw_version(void);

/* ---- grid ---------------------------------------------------------- */

MWLAB_API mw_status mw_grid_create(int nx, int ny, double lx, double ly,
                                   mw_grid** out);
MWLAB_API void mw_grid_free(mw_grid* g);
MWLAB_API mw_status mw_grid_shape(const mw_grid* g, int* nx, int* ny,
                                  double* lx, double* ly, double* hx,
                                  double* hy);

/* ---- fields -------------------------------------------------------- */

/* interleaved re,im per component, row-major with x fastest */
MWLAB_API mw_status mw_cfield_create(const mw_grid* g, const double* re_im,
                                     mw_cfield** out);
MWLAB_API mw_status mw_cfield_clone(const mw_cfield* f, mw_cfield** out);
MWLAB_API void mw_cfield_free(mw_cfield* f);
MWLAB_API mw_status mw_cfield_data(const mw_cfield* f, double* re_im,
                                   size_t capacity);
MWLAB_API mw_status mw_cfield_grid(const mw_cfield* f, int* nx, int* ny,
                                   double* lx, double* ly);

MWLAB_API mw_status mw_pfield_create(const mw_grid* g, const double* re_im,
                                     mw_pfield** out);
MWLAB_API void mw_pfield_free(mw_pfield* f);
MWLAB_API mw_status mw_dfield_create(const mw_grid* g, const double* re_im,
                                     mw_dfield** out);
MWLAB_API void mw_dfield_free(mw_dfield* f);

MWLAB_API void mw_rfield_free(mw_rfield* f);
MWLAB_API mw_status mw_rfield_data(const mw_rfield* f, double* values,
                                   size_t capacity);

MWLAB_API mw_status mw_vfield_create(const mw_grid* g, int ncomp,
                                     const double* values, mw_vfield** out);
MWLAB_API void mw_vfield_free(mw_vfield* f);
MWLAB_API mw_status mw_vfield_components(const mw_vfield* f, int* ncomp);
MWLAB_API mw_status mw_vfield_data(const mw_vfield* f, double* values,
                                   size_t capacity);
/* 1 = defined, 0 = flagged undefined (node threshold). */
MWLAB_API mw_status mw_vfield_mask(const mw_vfield* f, uint8_t* mask,
                                   size_t capacity);

MWLAB_API mw_status mw_gaussian_packet(const mw_grid* g, double cx, double cy,
                                       double width, double kx, double ky,
                                       mw_cfield** out);
/* Synthetic vortex product: prod_i ((x-xi) + i sgn(yi-charge)...) of unit
 * charges at the given centers, with a Gaussian envelope of the given
 * width (width <= 0 disables the envelope). charges[i] in {-1, +1} or any
 * integer (repeated factors). */
MWLAB_API mw_status mw_vortex_field(const mw_grid* g, const double* centers_xy,
                                    const int* charges, int n_vortices,
                                    double envelope_width, mw_cfield** out);
MWLAB_API mw_status mw_plane_wave(const mw_grid* g, double kx, double ky,
                                  double amplitude, mw_cfield** out);
/* Random band-limited field (Gaussian spectrum up to |n| <= max_mode),
 * deterministic for the given seed. */
MWLAB_API mw_status mw_random_field(const mw_grid* g, uint64_t seed,
                                    int max_mode, mw_cfield** out);

MWLAB_API mw_status mw_norm(const mw_cfield* f, double* out);
MWLAB_API mw_status mw_pfield_norm(const mw_pfield* f, double* out);
MWLAB_API mw_status mw_gradient(const mw_cfield* f, mw_scheme scheme,
                                mw_cfield** out_dx, mw_cfield** out_dy);

/* 4x4 complex result as 16 re + 16 im, row-major. */
MWLAB_API mw_status mw_metric_tensor(const double a_mu[4], double* out_re,
                                     double* out_im);
MWLAB_API mw_status mw_det_slash(const double a_mu[4], double* out_re,
                                 double* out_im);
MWLAB_API mw_status mw_metric_overlap(const mw_cfield* psi, const mw_vfield* a,
                                      double dt, double mass, double* out_re,
                                      double* out_im);
MWLAB_API mw_status mw_metric_overlap_pauli(const mw_pfield* psi,
                                            const mw_vfield* a, double dt,
                                            double mass, double* out_re,
                                            double* out_im);

/* ---- currents ------------------------------------------------------ */

MWLAB_API mw_status mw_density(const mw_cfield* phi, mw_rfield** out);
MWLAB_API mw_status mw_schrodinger_current(const mw_cfield* phi, double mass,
                                           mw_scheme scheme, mw_vfield** out);
/* eps0 <= 0 selects the default node threshold 1e-12 * max(rho). */
MWLAB_API mw_status mw_normalized_current(const mw_cfield* phi, double eps0,
                                          mw_scheme scheme, mw_vfield** out);
MWLAB_API mw_status mw_n_field(const mw_cfield* phi, double eps0,
                               mw_vfield** out);
MWLAB_API mw_status mw_small_component(const mw_pfield* psi_a, double mass,
                                       const mw_vfield* a_ext, mw_scheme scheme,
                                       mw_pfield** out);
MWLAB_API mw_status mw_dirac_current(const mw_dfield* psi, mw_rfield** out_rho,
                                     mw_vfield** out_j);
MWLAB_API mw_status mw_pauli_current(const mw_pfield* psi_a, double mass,
                                     mw_scheme scheme, mw_vfield** out_total,
                                     mw_vfield** out_convective,
                                     mw_vfield** out_spin);
MWLAB_API mw_status mw_spin_current(const mw_pfield* psi_a, double mass,
                                    mw_scheme scheme, mw_vfield** out);
MWLAB_API mw_status mw_reduction_residual(const mw_pfield* psi_a, double mass,
                                          mw_scheme scheme, double* out);

/* ---- topology ------------------------------------------------------ */

MWLAB_API mw_status mw_circle_loop(const mw_grid* g, double cx, double cy,
                                   double radius, int n_points, mw_loop** out);
/* xy: n interleaved coordinate pairs; first must equal last. */
MWLAB_API mw_status mw_loop_create(const double* xy, int n_points,
                                   mw_loop** out);
MWLAB_API mw_status mw_boundary_loop(const mw_grid* g, mw_loop** out);
MWLAB_API void mw_loop_free(mw_loop* l);
MWLAB_API mw_status mw_loop_points(const mw_loop* l, double* xy,
                                   size_t capacity, int* n_points);

MWLAB_API mw_status mw_loop_integral(const mw_vfield* f, const mw_loop* l,
                                     double* out);

typedef struct mw_winding_result {
  double integral;
  int k;
  double residual;
  double unwrapped;
  int estimators_agree;
} mw_winding_result;

MWLAB_API mw_status mw_winding_number(const mw_cfield* phi, const mw_loop* l,
                                      double eps0, mw_scheme scheme,
                                      mw_winding_result* out);

typedef struct mw_vortex {
  int ix, iy;
  int charge;
  int low_density;
  int under_resolved;
} mw_vortex;

/* Two-call pattern: query with vortices == NULL to get the count. */
MWLAB_API mw_status mw_vortex_scan(const mw_cfield* phi, double eps0,
                                   mw_vortex* vortices, size_t capacity,
                                   size_t* count);

/* ---- propagator ---------------------------------------------------- */

typedef struct mw_slit_geometry {
  double barrier_x;
  double thickness;
  double width;
  double separation; /* 0 selects a single slit */
  double v0;
} mw_slit_geometry;

typedef struct mw_packet_params {
  double x0, y0;
  double width_x, width_y;
  double kx, ky;
} mw_packet_params;

typedef struct mw_evolution_config {
  double dt;
  int n_steps;
  double mass;
  int absorber_cells;
  double absorber_strength;
  double screen_x;
  int snapshot_every;
  const char* snapshot_dir; /* may be NULL */
} mw_evolution_config;

MWLAB_API mw_status mw_build_slit_potential(const mw_grid* g,
                                            const mw_slit_geometry* slits,
                                            mw_rfield** out);
MWLAB_API mw_status mw_absorbing_mask(const mw_grid* g, int width_cells,
                                      double strength, mw_rfield** out);
MWLAB_API mw_status mw_split_step(const mw_cfield* phi,
                                  const mw_rfield* potential,
                                  const mw_evolution_config* cfg,
                                  mw_cfield** out);
MWLAB_API mw_status mw_run_double_slit(const mw_grid* g,
                                       const mw_slit_geometry* slits,
                                       const mw_evolution_config* cfg,
                                       const mw_packet_params* packet,
                                       mw_fringe** out);

MWLAB_API void mw_fringe_free(mw_fringe* f);
MWLAB_API mw_status mw_fringe_size(const mw_fringe* f, size_t* n);
MWLAB_API mw_status mw_fringe_samples(const mw_fringe* f, double* y,
                                      double* intensity, size_t capacity);

typedef struct mw_fringe_fit {
  double spacing_peaks;
  double spacing_fft;
  double visibility;
  int n_peaks;
  int spacing_reliable;
} mw_fringe_fit;

MWLAB_API mw_status mw_fringe_result(const mw_fringe* f, mw_fringe_fit* out);
/* Build a fringe handle from raw samples and run the fit. */
MWLAB_API mw_status mw_fringe_from_samples(const double* y,
                                           const double* intensity, size_t n,
                                           double central_halfwidth,
                                           mw_fringe** out);

/* ---- interference -------------------------------------------------- */

MWLAB_API mw_status mw_self_action_phase(double q, double q_prime, int k,
                                         double* out_s);
MWLAB_API mw_status mw_merging_wave(double psi_re, double psi_im, double s,
                                    double* out_re, double* out_im);
MWLAB_API mw_status mw_fringe_intensity(double s, double rho, double* out);

typedef struct mw_conventional_setup {
  double wavelength;
  double slit_separation;
  double screen_distance;
} mw_conventional_setup;

typedef enum mw_phase_convention {
  MW_PHASE_HALF_ANGLE = 0,
  MW_PHASE_FULL_ANGLE = 1
} mw_phase_convention;

MWLAB_API mw_status mw_conventional_intensity(const mw_conventional_setup* s,
                                              double y,
                                              mw_phase_convention convention,
                                              double* out);
MWLAB_API mw_status mw_path_difference(const mw_conventional_setup* s, double y,
                                       double* out_exact, double* out_paraxial);
MWLAB_API mw_status mw_equivalence_residual(const mw_conventional_setup* s,
                                            double a_magnitude, int loop_k,
                                            double* out);
MWLAB_API mw_status mw_extract_qprime(double delta_r, double lambda, int k,
                                      double* out_qprime, int* out_in_range);
/* weights may be NULL (uniform). out has n entries, one per coupling. */
MWLAB_API mw_status mw_visibility_sweep(const double* qq_prime, size_t n,
                                        int k_min, int k_max,
                                        const double* weights, double* out);

typedef struct mw_coupling_estimate {
  double t_ev;
  double v_ev;
  double lambda_t_angstrom;
  double v_over_c;
  double v_t_volt;
  double q_prime_ratio;
  double q_prime_quoted;
} mw_coupling_estimate;

MWLAB_API mw_status mw_virial_estimate(double e0_ev, double v_t_volt,
                                       mw_coupling_estimate* out);

typedef struct mw_demo_numbers {
  double accelerating_volts;
  double lambda_angstrom;
  double lambda_quoted_angstrom;
  double transverse_lambda_quoted_angstrom;
  double transverse_volt_quoted;
  double lambda_13p6_angstrom;
} mw_demo_numbers;

MWLAB_API mw_status mw_demo_experiment_numbers(double accelerating_volts,
                                               mw_demo_numbers* out);

typedef struct mw_spin_shift_result {
  double first_peak_y;
  double shifted_peak_y;
  double peak_shift;
  double relative_shift;
  double shift_bound;
} mw_spin_shift_result;

MWLAB_API mw_status mw_spin_shift(const mw_fringe* pattern, double epsilon,
                                  mw_fringe** out_shifted,
                                  mw_spin_shift_result* out);

/* ---- io ------------------------------------------------------------ */

MWLAB_API mw_status mw_cfield_save(const mw_cfield* f, const char* path);
MWLAB_API mw_status mw_cfield_load(const char* path, mw_cfield** out);
MWLAB_API mw_status mw_cfield_write_csv(const mw_cfield* f, const char* path);
MWLAB_API mw_status mw_rfield_write_csv(const mw_rfield* f, const char* path);
MWLAB_API mw_status mw_vfield_write_csv(const mw_vfield* f, const char* path);
MWLAB_API mw_status mw_fringe_write_csv(const mw_fringe* f, const char* path);
/* Shortest round-trip decimal formatting; buf must hold >= 32 bytes. */
MWLAB_API mw_status mw_format_double(double v, char* buf, size_t capacity);

/* ---- verify -------------------------------------------------------- */

MWLAB_API mw_status mw_verify_run(uint64_t seed, int perturb_gamma,
                                  mw_verify_report** out);
MWLAB_API void mw_verify_report_free(mw_verify_report* r);
MWLAB_API mw_status mw_verify_report_size(const mw_verify_report* r, size_t* n);
MWLAB_API mw_status mw_verify_report_entry(const mw_verify_report* r, size_t i,
                                           const char** suite,
                                           const char** name, double* measured,
                                           double* tolerance, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* MWLAB_H */
