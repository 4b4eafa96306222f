/* patchnoise — patch-potential electric-field noise above conducting
 * electrodes: geometric factors, distance-scaling exponents, and trapped-ion
 * heating rates.
 *
 * C API of the shared library. All entry points are thread-safe for distinct
 * models; a single pn_model may be shared across threads for evaluation calls
 * (option setters are not synchronized against concurrent evaluation).
 */
#ifndef PATCHNOISE_H
#define PATCHNOISE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pn_status {
    PN_OK = 0,
    PN_E_INVALID = 1,        /* bad argument or configuration */
    PN_E_DOMAIN = 2,         /* argument outside the mathematical domain */
    PN_E_NO_CLOSED_FORM = 3, /* no printed closed form for the combination */
    PN_E_NOT_CONVERGED = 4,  /* series/quadrature failed to reach tolerance */
    PN_E_EDGE = 5,           /* edge-divergent integral without an exclusion band */
    PN_E_LOG_ZERO = 6,       /* scaling exponent of a vanishing factor */
    PN_E_INTERNAL = 7
} pn_status;

typedef enum pn_geometry {
    PN_PLANE = 0,   /* infinite conducting plane, ion at height D */
    PN_HOLE = 1,    /* thin sheet with a circular hole of radius D, ion at the center */
    PN_SPHERE = 2,  /* unit sphere, ion at r = 1 + D */
    PN_PROLATE = 3, /* unit prolate spheroid xi0, D in units of the spheroid radius */
    PN_OBLATE = 4   /* unit oblate spheroid xi0 (0 = disc), D in units of a */
} pn_geometry;

typedef enum pn_mode { PN_MODE_NORMAL = 0, PN_MODE_TRANSVERSE = 1 } pn_mode;

typedef enum pn_patch_regime {
    PN_PATCH_IP = 0,       /* fully correlated surface (infinite patch) */
    PN_PATCH_PP = 1,       /* uncorrelated point patches */
    PN_PATCH_TRUNCATED = 2 /* eigenfunction truncation at degree l0 */
} pn_patch_regime;

typedef struct pn_patch {
    pn_patch_regime regime;
    int l0; /* truncation degree, PN_PATCH_TRUNCATED only */
} pn_patch;

typedef enum pn_backend {
    PN_BACKEND_AUTO = 0,
    PN_BACKEND_CLOSED = 1,
    PN_BACKEND_SPECTRAL = 2,
    PN_BACKEND_QUADRATURE = 3
} pn_backend;

typedef struct pn_model pn_model; /* opaque: geometry, options, cached tables */

const char* pn_version(void);
const char* pn_status_message(pn_status s);
/* detailed message of the most recent failure on this model */
const char* pn_model_last_error(const pn_model* m);

/* xi0 is used by PN_PROLATE (> 1) and PN_OBLATE (>= 0), ignored otherwise */
pn_status pn_model_create(pn_geometry kind, double xi0, pn_model** out);
void pn_model_destroy(pn_model* m);

pn_status pn_model_set_lmax(pn_model* m, int l_max);
pn_status pn_model_set_tolerance(pn_model* m, double rel_tol);
pn_status pn_model_set_edge_delta(pn_model* m, double delta);
pn_status pn_model_set_area_ratio(pn_model* m, double a_over_n);
pn_status pn_model_set_log_step(pn_model* m, double h, int richardson);

/* truncation degree l0 for an angular patch size theta_zeta (l0 = 2/theta) */
int pn_truncation_for_patch_size(double theta_zeta);
/* native label of a mode: z/x, z/s, r/theta, xi/eta */
const char* pn_mode_label(pn_geometry kind, pn_mode mode);

typedef struct pn_eval {
    double lambda;      /* nondimensional geometric factor */
    int l_used;
    double residual;    /* absolute uncertainty estimate */
    int unit_power;     /* far-field inverse-distance power, for display */
    int has_area_factor; /* value carries one factor of the patch area ratio */
    int backend_used;   /* pn_backend actually selected */
} pn_eval;

pn_status pn_lambda(pn_model* m, pn_mode mode, pn_patch patch, pn_backend backend, double D,
                    pn_eval* out);
pn_status pn_alpha(pn_model* m, pn_mode mode, pn_patch patch, pn_backend backend, double D,
                   double* alpha);
/* lambda_out/alpha_out are arrays of length n; either may be NULL */
pn_status pn_sweep(pn_model* m, pn_mode mode, pn_patch patch, pn_backend backend,
                   const double* d_grid, size_t n, double* lambda_out, double* alpha_out);

/* physics layer (SI units) */
pn_status pn_lambda_to_si(double lambda_nondim, double scale_meters, double* out);
pn_status pn_spectral_density(double beta, double amplitude, double omega_ref, double omega,
                              double lambda_si, double* out);
pn_status pn_heating_rate(double charge, double mass, double omega, double hbar,
                          double spectral_density, double* out);
pn_status pn_rf_advisory(double omega_k, double omega_rf, double threshold, double* ratio,
                         int* warn);

/* cross-backend validation suite; cb is invoked once per check */
typedef void (*pn_validate_cb)(const char* name, int pass, double worst, double tol, void* user);
pn_status pn_validate(const char* subset, pn_validate_cb cb, void* user, int* n_failed);

/* writes a spheroid coefficient table as CSV (columns l,lp,m,value,residual) */
pn_status pn_coeff_table_csv(pn_geometry kind, int m, double xi0, int l_max, double edge_delta,
                             const char* path);

#ifdef __cplusplus
}
#endif

#endif /* PATCHNOISE_H */
