/* wnk: C interface to the Hermite-scale white noise library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return WNK_OK on success; on failure they return an error code
 * and leave a message retrievable with wnk_last_error() (thread-local,
 * valid until the next failing call on the same thread). Output parameters
 * are written only on success.
 */

#ifndef WNK_H
#define WNK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wnk_status {
    WNK_OK = 0,
    WNK_ERR_INVALID_ARGUMENT = 1,
    WNK_ERR_RANGE = 2,
    WNK_ERR_BASIS_MISMATCH = 3,
    WNK_ERR_CONFIG = 4,
    WNK_ERR_IO = 5,
    WNK_ERR_INTERNAL = 6
} wnk_status;

const char* wnk_version(void);
const char* wnk_last_error(void);
const char* wnk_status_name(wnk_status status);

/* ---- basis ---------------------------------------------------------- */

typedef struct wnk_basis wnk_basis;

/* Q <= 0 selects the default max(2K, 64). */
wnk_status wnk_basis_create(int32_t K, int32_t Q, wnk_basis** out);
void wnk_basis_free(wnk_basis* basis);
int32_t wnk_basis_truncation(const wnk_basis* basis);
int32_t wnk_basis_quadrature_order(const wnk_basis* basis);

/* ---- hermite --------------------------------------------------------- */

/* Orthonormal Hermite function e_k(t); supported for 0 <= k <= 4096 and
 * finite t (values are accurate for |t| <= 40 and may underflow to 0). */
wnk_status wnk_hermite_point(int32_t k, double t, double* out);

/* Gauss-Hermite rule for weight exp(-t^2); nodes/weights are caller arrays
 * of length Q. Either pointer may be NULL to skip that output. */
wnk_status wnk_gh_rule(int32_t Q, double* nodes, double* weights);

typedef double (*wnk_real_fn)(double t, void* ctx);

/* ---- coefficient vectors -------------------------------------------- */

typedef struct wnk_test_function wnk_test_function;
typedef struct wnk_distribution wnk_distribution;

/* len <= K; missing trailing coefficients are zero. */
wnk_status wnk_test_function_create(const wnk_basis* basis, const double* coeffs, size_t len,
                                    wnk_test_function** out);
void wnk_test_function_free(wnk_test_function* phi);
int32_t wnk_test_function_dim(const wnk_test_function* phi);
/* Copies min(len, K) coefficients into out. */
wnk_status wnk_test_function_coeffs(const wnk_test_function* phi, double* out, size_t len);

wnk_status wnk_distribution_create(const wnk_basis* basis, const double* coeffs, size_t len,
                                   wnk_distribution** out);
void wnk_distribution_free(wnk_distribution* x);
int32_t wnk_distribution_dim(const wnk_distribution* x);
wnk_status wnk_distribution_coeffs(const wnk_distribution* x, double* out, size_t len);

/* Projection c_k = integral f(t) e_k(t) dt by the basis quadrature rule. */
wnk_status wnk_project(wnk_real_fn f, void* ctx, const wnk_basis* basis,
                       wnk_test_function** out);
wnk_status wnk_test_function_eval(const wnk_test_function* phi, double t, double* out);
wnk_status wnk_l2_norm_sq(const wnk_test_function* phi, double* out);

/* Coefficient-vector JSON files:
 * {"convention":"lambda=2k+2","K":<int>,"coeffs":[...]} */
wnk_status wnk_test_function_save(const wnk_test_function* phi, const char* path);
wnk_status wnk_test_function_load(const char* path, int32_t Q, wnk_test_function** out);
wnk_status wnk_distribution_save(const wnk_distribution* x, const char* path);
wnk_status wnk_distribution_load(const char* path, int32_t Q, wnk_distribution** out);

/* ---- dual scale ------------------------------------------------------ */

wnk_status wnk_norm_primal(const wnk_test_function* phi, int32_t p, double* out);
wnk_status wnk_norm_dual(const wnk_distribution* x, int32_t p, double* out);
wnk_status wnk_pairing(const wnk_distribution* x, const wnk_test_function* phi, double* out);
wnk_status wnk_ball_contains(int32_t level, double radius, const wnk_distribution* x,
                             int32_t* out);
wnk_status wnk_embedding_norm(int32_t k, int32_t n, double* out);
wnk_status wnk_exhaustion_radius(int32_t n, double* out);
/* Writes the least exhaustion level, or 0 when none is found below
 * search_bound (search_bound <= 0 selects the default 64). */
wnk_status wnk_exhaustion_index(const wnk_distribution* x, int32_t search_bound, int32_t* out);
wnk_status wnk_bound_witness(const wnk_distribution* const* family, size_t count, int32_t m,
                             double* out);

/* ---- characteristic functionals -------------------------------------- */

wnk_status wnk_white_noise_cf(const wnk_test_function* phi, double* re, double* im);
wnk_status wnk_dirac_cf(const wnk_distribution* x, const wnk_test_function* phi, double* re,
                        double* im);
wnk_status wnk_empirical_cf(const wnk_distribution* const* samples, size_t count,
                            const wnk_test_function* phi, double* re, double* im);
wnk_status wnk_sample_white_noise(const wnk_basis* basis, uint64_t seed, wnk_distribution** out);
wnk_status wnk_gaussian_mixture_f(const wnk_test_function* const* directions, size_t count,
                                  const wnk_distribution* x, double* out);
wnk_status wnk_finite_rank_gaussian_sample(const wnk_test_function* const* directions,
                                           size_t count, uint64_t seed,
                                           wnk_test_function** out);
wnk_status wnk_fubini_check(const wnk_distribution* const* mu_samples, size_t mu_count,
                            const wnk_test_function* const* directions, size_t dir_count,
                            int32_t n_m, uint64_t seed, double* lhs, double* rhs, double* se_lhs,
                            double* se_rhs);
/* argmax may be NULL. */
wnk_status wnk_m_constant(double tolerance, double* value, double* argmax);

/* ---- invariance principle -------------------------------------------- */

/* innovation is one of "rademacher", "gaussian", "uniform". */
wnk_status wnk_product_cf(const wnk_test_function* phi, int32_t n, const char* innovation,
                          double tail_tol, double* re, double* im);
wnk_status wnk_sample_pairing(const wnk_test_function* phi, int32_t n, const char* innovation,
                              uint64_t seed, double tail_tol, double* out);
wnk_status wnk_rate_estimate(const double* n_values, const double* errors, size_t count,
                             double* slope);

/* ---- experiment runner ------------------------------------------------ */

/* Runs one command described by a JSON config (see the CLI documentation
 * for the schema) and returns the report JSON, the CSV table, and the list
 * of failed assertions. */
typedef struct wnk_run_result wnk_run_result;

wnk_status wnk_run(const char* config_json, wnk_run_result** out);
const char* wnk_run_report_json(const wnk_run_result* result);
const char* wnk_run_table_csv(const wnk_run_result* result);
size_t wnk_run_failure_count(const wnk_run_result* result);
/* NULL when index is out of range. */
const char* wnk_run_failure(const wnk_run_result* result, size_t index);
void wnk_run_result_free(wnk_run_result* result);

#ifdef __cplusplus
}
#endif

#endif /* WNK_H */
