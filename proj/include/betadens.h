/* betadens: eigenvalue densities of Hermite and Laguerre beta-ensembles.
 *
 * C API of the shared library. All functions return a bd_status code;
 * results are written through out-pointers. Handles are opaque and must be
 * released with their matching *_free function.
 */
#ifndef BETADENS_H
#define BETADENS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bd_status {
  BD_OK = 0,
  BD_ERR_DOMAIN = 1,   /* argument outside the operation's domain */
  BD_ERR_INVALID = 2,  /* malformed input or configuration */
  BD_ERR_BUDGET = 3,   /* complexity guardrail tripped */
  BD_ERR_CONTOUR = 4,  /* quadrature branch sentinel tripped */
  BD_ERR_NUMERIC = 5,  /* numerical failure / internal consistency */
  BD_ERR_NOMEM = 6,
  BD_ERR_IO = 7,
  BD_ERR_INTERNAL = 8
} bd_status;

const char* bd_strerror(int status);
/* Message of the last error raised on this thread (empty if none). */
const char* bd_last_error(void);
const char* bd_version(void);
void bd_string_free(char* s);

/* ---- ensemble specification -------------------------------------------- */

typedef struct bd_spec bd_spec;

enum { BD_FAMILY_HERMITE = 0, BD_FAMILY_LAGUERRE = 1 };

int bd_spec_create(int family, int n, double beta, double a, bd_spec** out);
void bd_spec_free(bd_spec* spec);

/* ---- scalar special functions ------------------------------------------ */

int bd_log_gamma(double z, double* out);
int bd_airy_ai(double x, double* ai, double* aip);
int bd_gamma_n_beta(int n, double beta, double* out);
int bd_hermite_norm_ratio(int n, double beta, double* out);
int bd_laguerre_norm_ratio(const bd_spec* spec, double* out);
int bd_soft_edge_prefactor(double beta, double* out);

/* ---- limiting laws ------------------------------------------------------ */

int bd_wigner_density(double x, double* out);
int bd_mp_density(double x, double* out); /* +inf at x = 0 */
int bd_wigner_cdf(double x, double* out);
int bd_mp_cdf(double x, double* out);

/* ---- density evaluation -------------------------------------------------
 * Scalings: 0 raw, 1 bulk-hermite, 2 bulk-laguerre, 3 edge-hermite,
 * 4 edge-laguerre. Methods: 0 exact, 1 bulk, 2 edge, 3 mc.
 */

enum {
  BD_SCALING_RAW = 0,
  BD_SCALING_BULK_HERMITE = 1,
  BD_SCALING_BULK_LAGUERRE = 2,
  BD_SCALING_EDGE_HERMITE = 3,
  BD_SCALING_EDGE_LAGUERRE = 4
};
enum { BD_METHOD_EXACT = 0, BD_METHOD_BULK = 1, BD_METHOD_EDGE = 2, BD_METHOD_MC = 3 };

int bd_density_exact(const bd_spec* spec, const double* xs, size_t count, double* out);
int bd_density_bulk(const bd_spec* spec, const double* xs, size_t count, int expert_any_beta, double* out);

/* Exact-fraction dump of the cached univariate polynomial (JSON). */
int bd_unipoly_json(const bd_spec* spec, char** out);

/* ---- soft edge ----------------------------------------------------------- */

typedef struct bd_kquad {
  double ray_angle;  /* steepest-descent ray direction, in (pi/6, pi/2) */
  double truncation; /* contour arclength cutoff; 0 = automatic */
  int method;        /* 0 auto, 1 nested Gauss, 2 quasi-Monte Carlo */
  long points;       /* node/point budget; 0 = per-n default */
  double shift;      /* contour passes through this real point; <0 = auto */
  uint64_t seed;     /* QMC scrambling seed */
  double tol_imag;   /* max tolerated |Im|/|Re| residue */
} bd_kquad;

void bd_kquad_defaults(bd_kquad* cfg);
int bd_kquad_from_json(const char* json, bd_kquad* cfg);
int bd_kquad_to_json(const bd_kquad* cfg, char** out);

enum { BD_CONTOUR_SINGLE_RAY = 0, BD_CONTOUR_TWO_RAY = 1 };

int bd_k_integral(int n, double beta, double x, const bd_kquad* cfg, int contour, double* out);
int bd_k_det_beta2(int n, double x, double* out);
int bd_soft_edge_density(double beta, const double* xs, size_t count, const bd_kquad* cfg, double* out);
int bd_k_asym_right(double beta, double x, double* out);
int bd_k_asym_left(double beta, double x, double* out);
int bd_edge_coordinate(const bd_spec* spec, double x_physical, double* x_edge, double* jacobian);

/* ---- tridiagonal matrix models ------------------------------------------ */

typedef struct bd_rng bd_rng;

int bd_rng_create(uint64_t seed, bd_rng** out);
void bd_rng_free(bd_rng* rng);
int bd_chi_sample(bd_rng* rng, double k, double* out);
/* diag has length N, offdiag length N-1 */
int bd_sample_hermite_tridiag(bd_rng* rng, const bd_spec* spec, double* diag, double* offdiag);
int bd_sample_laguerre_tridiag(bd_rng* rng, const bd_spec* spec, double* diag, double* offdiag);
int bd_tridiag_eigenvalues(const double* diag, const double* offdiag, int n, double* evals);

/* Monte Carlo density on bins centered at the `count` grid points (grid is in
 * the coordinate of `scaling`). Deterministic for fixed seed, independent of
 * `threads` (0 = hardware default). */
int bd_mc_density(const bd_spec* spec, int scaling, uint64_t seed, long draws, int threads, const double* grid,
                  size_t count, double* out);

/* ---- generic curve evaluation & reports --------------------------------- */

int bd_curve_evaluate(const bd_spec* spec, int method, int scaling, const double* grid, size_t count,
                      const bd_kquad* cfg, uint64_t seed, long draws, int threads, int expert_any_beta, double* out);

int bd_curve_csv(const bd_spec* spec, int method, int scaling, uint64_t seed, long samples, const double* grid,
                 const double* values, size_t count, char** out);
int bd_curve_json(const bd_spec* spec, int method, int scaling, uint64_t seed, long samples, const double* grid,
                  const double* values, size_t count, char** out);

int bd_metric_l1(const double* grid, const double* a, const double* b, size_t count, double* out);
int bd_metric_linf(const double* a, const double* b, size_t count, double* out);
/* Writes up to `cap` refined peak locations; *found gets the total count. */
int bd_peaks(const double* grid, const double* values, size_t count, double* locs, size_t cap, size_t* found);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BETADENS_H */
