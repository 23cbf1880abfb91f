/* C interface for the speclab shared library.
 *
 * All functions return a speclab_status code; SPECLAB_OK is 0. Outputs are
 * written through pointer arguments. Strings returned through out-parameters
 * are heap-allocated and must be released with speclab_string_free; handles
 * with the matching *_free function. speclab_last_error() describes the most
 * recent failure on the calling thread.
 */
#ifndef SPECLAB_H
#define SPECLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum speclab_status {
  SPECLAB_OK = 0,
  SPECLAB_ERR_INVALID_ARGUMENT = 1,
  SPECLAB_ERR_IO = 2,
  SPECLAB_ERR_CONFIG = 3,
  SPECLAB_ERR_DISCONNECTED_GRAPH = 4,
  SPECLAB_ERR_NONPOSITIVE_MEASURE = 5,
  SPECLAB_ERR_NEGATIVE_WEIGHT = 6,
  SPECLAB_ERR_DUPLICATE_EDGE = 7,
  SPECLAB_ERR_ZERO_FUNCTION = 8,
  SPECLAB_ERR_NEGATIVE_INPUT = 9,
  SPECLAB_ERR_DEGENERATE_FUNCTION = 10,
  SPECLAB_ERR_EMPTY_SET = 11,
  SPECLAB_ERR_NOT_DISJOINT = 12,
  SPECLAB_ERR_K_TOO_LARGE = 13,
  SPECLAB_ERR_CONVERGENCE_FAILURE = 14,
  SPECLAB_ERR_DEGENERATE_SPECTRUM = 15,
  SPECLAB_ERR_NOT_AN_EIGENFUNCTION = 16,
  SPECLAB_ERR_ONE_SIDED_FUNCTION = 17,
  SPECLAB_ERR_BAD_RESOLUTION = 18,
  SPECLAB_ERR_TOO_LARGE = 19,
  SPECLAB_ERR_ENUMERATION_OVERFLOW = 20,
  SPECLAB_ERR_TOO_LARGE_FOR_EXACT = 21,
  SPECLAB_ERR_H1_NOT_EXACT = 22,
  SPECLAB_ERR_BAD_KAPPA = 23,
  SPECLAB_ERR_NO_EDGE_LENGTHS = 24,
  SPECLAB_ERR_INTERNAL = 99
} speclab_status;

typedef struct speclab_graph speclab_graph;
typedef struct speclab_spectrum speclab_spectrum;

const char* speclab_status_name(int status);
const char* speclab_last_error(void);
void speclab_string_free(char* s);

/* ---- graphs ------------------------------------------------------------ */

/* endpoints has 2*m entries (u_0, v_0, u_1, v_1, ...). p may be NULL (then
 * p = w per edge); ell may be NULL (no edge lengths). */
int speclab_graph_build(int n, const double* mu, int m, const int* endpoints, const double* w,
                        const double* p, const double* ell, speclab_graph** out);
int speclab_graph_from_file(const char* path, speclab_graph** out);
int speclab_graph_to_file(const speclab_graph* g, const char* path);
/* "circle:a=...,n=...", "torus:dim=...,a=...,counts=AxB", or a file path. */
int speclab_graph_from_model_string(const char* model, speclab_graph** out);
void speclab_graph_free(speclab_graph* g);

int speclab_graph_vertex_count(const speclab_graph* g, int* out);
int speclab_graph_edge_count(const speclab_graph* g, int* out);
int speclab_graph_mu(const speclab_graph* g, double* out, size_t cap);

int speclab_circle_graph(double a, int n_points, speclab_graph** out);
/* counts may be NULL; then resolutions come from points_per_unit (>= 8 per
 * dimension). max_vertices <= 0 keeps the default cap. */
int speclab_torus_graph(int dim, double a, const int* counts, double points_per_unit,
                        long long max_vertices, speclab_graph** out);

/* ---- functionals -------------------------------------------------------- */

int speclab_dirichlet_energy(const speclab_graph* g, const double* f, double* out);
int speclab_rayleigh_quotient(const speclab_graph* g, const double* f, double* out);
int speclab_total_variation(const speclab_graph* g, const double* f, double* out);
int speclab_l1_norm(const speclab_graph* g, const double* f, double* out);
int speclab_l2_norm_sq(const speclab_graph* g, const double* f, double* out);
/* members: n bytes, nonzero = inside the set. */
int speclab_boundary_measure(const speclab_graph* g, const unsigned char* members, double* out);
int speclab_conductance(const speclab_graph* g, const unsigned char* members, double* out);

/* ---- spectra ------------------------------------------------------------ */

/* method: "dense", "iterative" or "auto". */
int speclab_spectrum_compute(const speclab_graph* g, int k_max, const char* method,
                             speclab_spectrum** out);
void speclab_spectrum_free(speclab_spectrum* s);
int speclab_spectrum_count(const speclab_spectrum* s, int* out);
int speclab_spectrum_eigenvalues(const speclab_spectrum* s, double* out, size_t cap);
/* Eigenfunction for eigenvalue index idx; needs cap >= vertex count. */
int speclab_spectrum_eigenfunction(const speclab_spectrum* s, int idx, double* out, size_t cap);

int speclab_circle_exact_spectrum(double a, int k_max, double* out, size_t cap);
int speclab_torus_exact_spectrum(int dim, double a, int k_max, double* out, size_t cap);
int speclab_ratio_witness(int dim, double a, int* k_out, double* ratio_out, double* lower_out);

/* ---- reports (format: "json" or "csv") ---------------------------------- */

int speclab_spectrum_report(const speclab_graph* g, int k_max, const char* method,
                            const char* format, char** out);
int speclab_cheeger_report(const speclab_graph* g, const char* method, const char* format,
                           char** out);
int speclab_improved_cheeger_report(const speclab_graph* g, int k, const char* method,
                                    const char* format, char** out);
int speclab_multiway_report(const speclab_graph* g, int k, const char* method, int exact_cap,
                            const char* format, char** out);
int speclab_obsdiam_report(const speclab_graph* g, double kappa, int k, const char* method,
                           const char* format, char** out);
/* dims/a lists may be NULL to use the default 2,3 x 0.1..0.9 grid. */
int speclab_ratio_scan_report(const int* dims, int dim_count, const double* a_values, int a_count,
                              const char* format, char** out);

/* Runs the full suite for a JSON config file. out_dir overrides the config's
 * output directory when non-NULL. fail_count receives FAIL + ERROR rows.
 * summary_csv (optional) receives the summary table. */
int speclab_run_suite(const char* config_path, const char* out_dir, int* fail_count,
                      char** summary_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPECLAB_H */
