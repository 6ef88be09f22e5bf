/*
 * qgrav - gravitational Kerr-effect metrology workbench.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed here; every function returns a qg_status and writes results
 * through out-parameters. On failure, qg_last_error() returns a
 * human-readable detail string for the calling thread.
 *
 * States hold one or two optical modes in a truncated Fock basis. Two-mode
 * amplitudes and probability tables are indexed row-major as n1*dim2 + n2.
 */
#ifndef QGRAV_H
#define QGRAV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qg_status {
    QG_OK = 0,
    QG_ERR_INVALID_ARGUMENT = 1,
    QG_ERR_DIMENSION_MISMATCH = 2,
    QG_ERR_TRUNCATION = 3, /* requested dim cannot hold the state at tol */
    QG_ERR_CONVERGENCE = 4,
    QG_ERR_ACCURACY = 5,   /* quadrature panel budget exhausted */
    QG_ERR_PRECONDITION = 6,
    QG_ERR_SINGULAR = 7,
    QG_ERR_UNSUPPORTED = 8
} qg_status;

const char* qg_status_name(qg_status status);

/* Thread-local message describing the most recent failure. */
const char* qg_last_error(void);

typedef struct qg_state qg_state;
typedef struct qg_operator qg_operator;
typedef struct qg_distribution qg_distribution;

void qg_state_free(qg_state* state);
void qg_operator_free(qg_operator* op);
void qg_distribution_free(qg_distribution* dist);
void qg_string_free(char* str);

/* ---- states ------------------------------------------------------- */

/* Pass dim = 0 to auto-size the truncation for tail mass <= tol; pass
 * tol <= 0 for the default 1e-12. */
qg_status qg_vacuum(uint32_t dim, qg_state** out);
qg_status qg_coherent(double alpha_re, double alpha_im, uint32_t dim, double tol,
                      qg_state** out);
qg_status qg_squeezed_vacuum(double r, double theta, uint32_t dim, double tol, qg_state** out);
qg_status qg_tmsv(double r, double phi, uint32_t dim, double tol, qg_state** out);
qg_status qg_product_state(const qg_state* mode_a, const qg_state* mode_b, qg_state** out);
/* Zero-pad a two-mode state onto a larger grid (dims must not shrink). */
qg_status qg_state_embed(const qg_state* state, uint32_t dim1, uint32_t dim2, qg_state** out);

int qg_state_modes(const qg_state* state);
uint32_t qg_state_dim1(const qg_state* state);
uint32_t qg_state_dim2(const qg_state* state);
double qg_state_tail_bound(const qg_state* state);
double qg_state_norm_sq(const qg_state* state);
/* n2 is ignored for single-mode states */
qg_status qg_state_amplitude(const qg_state* state, uint32_t n1, uint32_t n2, double* re,
                             double* im);
qg_status qg_state_mean_photons(const qg_state* state, double* mean);
/* "n,re,im" rows (one mode) or "n1,n2,re,im" rows (two modes); caller frees
 * with qg_string_free. */
qg_status qg_state_csv(const qg_state* state, char** out);

/* ---- operators ----------------------------------------------------- */

qg_status qg_number_generator(uint32_t dim, qg_operator** out);     /* diag(n) */
qg_status qg_kerr_generator(uint32_t dim, qg_operator** out);       /* diag(n(n-1)) */
qg_status qg_quadrature_operator(uint32_t dim, double theta, qg_operator** out);
qg_status qg_number_sum_generator(uint32_t dim, qg_operator** out);  /* n_a + n_b */
qg_status qg_number_diff_generator(uint32_t dim, qg_operator** out); /* n_a - n_b */
qg_status qg_kerr_sum_generator(uint32_t dim, qg_operator** out);
qg_status qg_bs_generator(uint32_t dim, qg_operator** out); /* a+b + b+a */
qg_status qg_thg_generator(uint32_t dim_pump, uint32_t dim_harmonic, qg_operator** out);

/* Composed interferometer generator. convention: 0 = half (the generator
 * the sequence exponentiates), 1 = unhalved. part: 0 full, 1 pair-diagonal,
 * 2 pair-exchange. */
qg_status qg_mz_generator(uint32_t dim, int convention, int part, qg_operator** out);

int qg_operator_modes(const qg_operator* op);
uint32_t qg_operator_dim1(const qg_operator* op);
uint32_t qg_operator_dim2(const qg_operator* op);
int qg_operator_is_hermitian(const qg_operator* op);
/* "diagonal", "banded(k)" or "dense" into buf (truncated if needed) */
qg_status qg_operator_structure(const qg_operator* op, char* buf, size_t buf_len);
qg_status qg_operator_hermiticity_defect(const qg_operator* op, double* defect);

qg_status qg_expectation(const qg_state* state, const qg_operator* op, double* re, double* im);
qg_status qg_variance(const qg_state* state, const qg_operator* op, double* var);

/* ---- evolution ------------------------------------------------------ */

qg_status qg_evolve_kerr(const qg_state* state, double chi_q, double chi_c, qg_state** out);
/* exp(i angle G)|state> for hermitian G */
qg_status qg_evolve(const qg_state* state, const qg_operator* generator, double angle,
                    qg_state** out);
/* Residual of the dense beamsplitter-conjugation identity at this dim.
 * convention: 0 = standard mixer (residual is rounding noise), 1 = swapped
 * (real-rotation) mixer, for which the identity fails. */
qg_status qg_bs_conjugation_residual(uint32_t dim, int convention, double* residual);

/* ---- metrology ------------------------------------------------------ */

/* F = 4 tau^2 Cov over (quantum, classical) generators; row-major 2x2. */
qg_status qg_qfim(const qg_state* state, const qg_operator* g_quantum,
                  const qg_operator* g_classical, double tau, double f_out[4]);
qg_status qg_analytic_sqvac_qfim(double n_mean, double f_out[4], double f_inv_out[4]);
/* indistinguishable = 1 when the QFIM is numerically singular; bound is
 * valid only when 0. */
qg_status qg_nuisance_qcrb(const double f[4], double shots, double* bound,
                           int* indistinguishable);
qg_status qg_single_parameter_bound(const double f[4], double shots, double* bound,
                                    int* indistinguishable);

qg_status qg_number_distribution(const qg_state* state, qg_distribution** out);
qg_status qg_mz_distribution(const qg_state* tmsv, double chi_q, double chi_c_sym,
                             double chi_c_asym, qg_distribution** out);

int qg_distribution_modes(const qg_distribution* dist);
uint32_t qg_distribution_dim1(const qg_distribution* dist);
uint32_t qg_distribution_dim2(const qg_distribution* dist);
double qg_distribution_tail(const qg_distribution* dist);
double qg_distribution_total(const qg_distribution* dist);
qg_status qg_distribution_at(const qg_distribution* dist, uint32_t n1, uint32_t n2,
                             double* p);

qg_status qg_hellinger_cfi(const qg_distribution* p0, const qg_distribution* p_chi, double chi,
                           double* f_c, long* clamped);
qg_status qg_hellinger_cfi_richardson(const qg_distribution* p0,
                                      const qg_distribution* p_chi_full,
                                      const qg_distribution* p_chi_half, double chi,
                                      double* f_c, long* clamped);
/* 4 <G_-^2>; requires support on |n,n> only. convention as above. */
qg_status qg_analytic_mz_cfi(const qg_state* tmsv, int convention, double* f_c);

qg_status qg_quadrature_cumulants(const qg_state* state, double theta, double k_out[4]);

/* Least-squares fit of log y against log x. */
qg_status qg_fit_power_law(const double* x, const double* y, size_t n, double* exponent,
                           double* intercept, double* r_squared);

/* JSON metrology report (17-significant-digit floats, fixed key order);
 * caller frees with qg_string_free. */
qg_status qg_metrology_report_json(const double f[4], double tau, double shots,
                                   const char* generator_labels, const char* state_descriptor,
                                   const char* convention_flags, char** out_json);

/* ---- gravitational coupling ----------------------------------------- */

typedef struct qg_geometry {
    double arm_length_m;
    double arm_separation_m;
    double finesse;
    double wavelength_m;
    double beam_width_m; /* 0 = unset */
} qg_geometry;

/* warn_near_field = 1 when w/lambda < 100 */
qg_status qg_geometry_validate(const qg_geometry* g, int* warn_near_field);

qg_status qg_geometric_factor_exact(double arm_length, double arm_separation, double* value);
qg_status qg_geometric_factor_asymptotic(double arm_length, double arm_separation,
                                         double* value);
qg_status qg_geometric_factor_quadrature(double arm_length, double arm_separation, int panels,
                                         double* value, double* error_estimate);

/* geometry_mode: 0 = asymptotic log(L/w) (default), 1 = exact integral */
qg_status qg_chi_q(const qg_geometry* g, int geometry_mode, double* chi_q);
qg_status qg_interaction_coefficient(const qg_geometry* g, int geometry_mode,
                                     double* coefficient_j);
/* spin 0 or 2 */
qg_status qg_mediator_coupling(int spin, double* multiplier);
/* config: 0 counter-propagating, 1 co-propagating, 2 standing wave
 * (unsupported) */
qg_status qg_configuration_coefficient(const qg_geometry* g, int config, int geometry_mode,
                                       double* coefficient_j);

/* ---- experiment planner ---------------------------------------------- */

qg_status qg_interrogation_time(const qg_geometry* g, double* tau_s);
qg_status qg_shots(const qg_geometry* g, double total_time_s, double* shots);
qg_status qg_photon_number(const qg_geometry* g, double circulating_power_w, double* n);
qg_status qg_circulating_power_for_photons(const qg_geometry* g, double n, double* power_w);
qg_status qg_circulating_power_bound(const qg_geometry* g, double total_time_s,
                                     double* power_w);

typedef struct qg_feasibility {
    double chi_q;
    double photon_number;
    double shots;
    double required_chi_q;
    double margin;       /* chi_q / required */
    double shots_margin; /* margin^2 */
    double marginal_power_w;
    double bound_power_w;
    double consistency_residual;
    double intensity_w_per_m2; /* valid when has_intensity */
    int has_intensity;
    int shots_below_one;
    int verdict; /* 0 pass, 1 marginal, 2 fail */
} qg_feasibility;

/* Pass a negative value for whichever of pump/circulating power is unset;
 * at most one may be set and one must be. spin is 0 or 2. */
qg_status qg_feasibility_check(const qg_geometry* g, double total_time_s, double pump_power_w,
                               double circulating_power_w, int spin, qg_feasibility* out);

#ifdef __cplusplus
}
#endif

#endif /* QGRAV_H */
