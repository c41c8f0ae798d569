/* C interface to the brody-forge core. All entry points return bf_status;
 * results travel through out-parameters. Handles are opaque and must be
 * released with their matching *_free. On any non-BF_OK return the calling
 * thread can read bf_last_error_message() / bf_last_error_json(). */

#ifndef BRODY_FORGE_H
#define BRODY_FORGE_H

#ifdef __cplusplus
extern "C" {
#endif

#define BF_VERSION "0.1.0"

typedef enum bf_status {
    BF_OK = 0,
    BF_ERR_VALIDATION = 1,
    BF_ERR_TOLERANCE = 2,
    BF_ERR_IO = 3,
    BF_ERR_INVALID_ARGUMENT = 4,
    BF_ERR_OVERFLOW = 5,
    BF_ERR_INTERNAL = 6
} bf_status;

typedef struct bf_complex {
    double re;
    double im;
} bf_complex;

/* Every numeric gate, in one bag; bf_tolerances_default fills the stock values. */
typedef struct bf_tolerances {
    double residual_rel;
    double qj_roundtrip;
    double blowup_rel;
    double tail_bound_max;
    double rescale_dev;
    double jrho_tol;
    double logderiv_tol;
    double chain_rel;
} bf_tolerances;

typedef struct bf_nodes bf_nodes;
typedef struct bf_metric bf_metric;
typedef struct bf_interpolant bf_interpolant;
typedef struct bf_curve bf_curve;

const char* bf_version(void);
const char* bf_status_name(bf_status status);

/* Thread-local descriptions of the most recent failure on this thread. */
const char* bf_last_error_message(void);
const char* bf_last_error_json(void);

void bf_tolerances_default(bf_tolerances* out);

/* ---- node systems -------------------------------------------------- */

bf_status bf_nodes_geometric(double r, double rho, int j_max, bf_nodes** out);
bf_status bf_nodes_explicit(const bf_complex* points, int count, bf_nodes** out);
void bf_nodes_free(bf_nodes* nodes);

int bf_nodes_count(const bf_nodes* nodes);
/* BF_OK when admissible; BF_ERR_VALIDATION with the violation list in
 * bf_last_error_json() otherwise. */
bf_status bf_nodes_validate(const bf_nodes* nodes, double tail_bound_max);

/* ---- squared-factor products ---------------------------------------- */

bf_status bf_eval_h(const bf_nodes* nodes, bf_complex z, bf_complex* out);
bf_status bf_eval_h_log(const bf_nodes* nodes, bf_complex z, double* log_mag, double* phase);
bf_status bf_eval_h_deriv(const bf_nodes* nodes, bf_complex z, bf_complex* out);

/* ---- series/product convergence classifier --------------------------- */

typedef enum bf_verdict {
    BF_BOTH_CONVERGE = 0,
    BF_BOTH_DIVERGE = 1,
    BF_INCONSISTENT = 2
} bf_verdict;

/* c must hold count positive terms. The three partial arrays are optional
 * (pass NULL to skip); when given they receive count entries each. */
bf_status bf_lemma1_classify(const double* c, int count, bf_verdict* verdict,
                             double* partial_sums, double* partial_products_plus,
                             double* partial_products_minus);

/* ---- metrics --------------------------------------------------------- */

bf_status bf_metric_euclidean(int n, bf_metric** out);
bf_status bf_metric_fs_p2(bf_metric** out);
void bf_metric_free(bf_metric* metric);

bf_status bf_metric_length(const bf_metric* metric, const bf_complex* base, const bf_complex* v,
                           int dim, double* out);

/* ---- Hermite interpolants -------------------------------------------- */

/* Realizes g(alpha_j) = p[j], g'(alpha_j) = k[j] over the node system. */
bf_status bf_interpolant_build(const bf_nodes* nodes, const bf_complex* p, const bf_complex* k,
                               int count, bf_interpolant** out);
void bf_interpolant_free(bf_interpolant* interp);

bf_status bf_interpolant_eval(const bf_interpolant* interp, bf_complex z, bf_complex* out);
bf_status bf_interpolant_eval_deriv(const bf_interpolant* interp, bf_complex z, bf_complex* out);
/* Largest relative value/derivative residuals over the nodes. */
bf_status bf_interpolant_residuals(const bf_interpolant* interp, double* val_res, double* der_res);

/* ---- assembled curves ------------------------------------------------ */

typedef enum bf_variant { BF_VARIANT_PUNCTURED = 0, BF_VARIANT_PLANE = 1 } bf_variant;

typedef enum bf_inner_kind {
    BF_INNER_EXP_TO_CSTAR = 0,
    BF_INNER_IDENTITY_TO_C = 1,
    BF_INNER_DIAGONAL_TO_CN = 2
} bf_inner_kind;

/* p_targets may be NULL (defaults to p_j = j); inner_n is only read for the
 * diagonal inner curve; tol may be NULL for defaults. */
bf_status bf_curve_build(bf_variant variant, bf_inner_kind inner, int inner_n,
                         const bf_metric* metric, const bf_nodes* nodes,
                         const bf_complex* p_targets, int p_count, const bf_tolerances* tol,
                         bf_curve** out);
void bf_curve_free(bf_curve* curve);

int bf_curve_ambient_dim(const bf_curve* curve);
/* out must hold bf_curve_ambient_dim entries. */
bf_status bf_curve_eval_F(const bf_curve* curve, bf_complex z, bf_complex* out);
bf_status bf_curve_eval_F_tangent(const bf_curve* curve, bf_complex z, bf_complex* out);
bf_status bf_curve_deriv_length(const bf_curve* curve, bf_complex z, double* out);
bf_status bf_curve_eval_g(const bf_curve* curve, bf_complex z, bf_complex* out);
bf_status bf_curve_eval_g_deriv(const bf_curve* curve, bf_complex z, bf_complex* out);

/* Blow-up diagnostics: j, point, measured length, lower bound, ratio per row.
 * Pass count = bf_nodes_count entries in each non-NULL array. */
bf_status bf_curve_blowup(const bf_curve* curve, int count, bf_complex* points, double* length_E,
                          double* lower_bound, double* ratio);

/* ---- pipelines -------------------------------------------------------- */

/* command: validate | lemma1 | interpolate | curve | rescale | full.
 * format: "csv" or "json" (NULL means csv). Tolerance overrides come as
 * parallel key/value arrays. On success *summary_json_out (if non-NULL)
 * receives a malloc'd JSON string describing the run; free it with
 * bf_string_free. */
bf_status bf_run_command_json(const char* command, const char* config_json, const char* out_dir,
                              const char* format, const char* const* tol_keys,
                              const double* tol_values, int tol_count, char** summary_json_out);
bf_status bf_run_command_file(const char* command, const char* config_path, const char* out_dir,
                              const char* format, const char* const* tol_keys,
                              const double* tol_values, int tol_count, char** summary_json_out);

void bf_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BRODY_FORGE_H */
