/*
 * lhac: l1-regularized convex minimization
 *
 *   minimize over w:  lambda * ||w||_1 + L(w)
 *
 * with a limited-memory quasi-Newton model in compact form, greedy working
 * sets, and coordinate descent on the piecewise-quadratic subproblems.
 * Supported smooth losses: logistic regression, least squares, and sparse
 * inverse covariance selection. An accelerated proximal-gradient baseline is
 * included for comparison runs.
 *
 * All functions returning lhac_rc set a thread-local message retrievable via
 * lhac_last_error() on failure. Handles are opaque; every *_new/*_free pair
 * must match.
 */

#ifndef LHAC_H
#define LHAC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LHAC_API __declspec(dllexport)
#else
#define LHAC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lhac_rc {
  LHAC_OK = 0,
  LHAC_ERR_ARG = 1,        /* invalid argument or configuration */
  LHAC_ERR_PARSE = 2,      /* malformed input file */
  LHAC_ERR_IO = 3,         /* file cannot be opened or written */
  LHAC_ERR_NOT_PD = 4,     /* matrix not positive definite */
  LHAC_ERR_NOMEM = 5,
  LHAC_ERR_INTERNAL = 6
} lhac_rc;

typedef enum lhac_status {
  LHAC_CONVERGED = 0,
  LHAC_MAX_ITERS = 1,
  LHAC_LINE_SEARCH_FAILURE = 2
} lhac_status;

typedef enum lhac_loss_kind {
  LHAC_LOSS_LOGISTIC = 0,
  LHAC_LOSS_SQUARED = 1,
  LHAC_LOSS_SICS = 2
} lhac_loss_kind;

typedef enum lhac_solver_kind {
  LHAC_SOLVER_LHAC = 0,
  LHAC_SOLVER_FISTA = 1
} lhac_solver_kind;

typedef enum lhac_norm_kind {
  LHAC_NORM_L2 = 0,
  LHAC_NORM_INF = 1
} lhac_norm_kind;

typedef struct lhac_problem lhac_problem;
typedef struct lhac_result lhac_result;

typedef struct lhac_config {
  double epsilon;           /* relative termination tolerance, in (0, 1) */
  int32_t memory;           /* quasi-Newton correction pairs */
  double beta;              /* line-search backtracking factor */
  double sigma;             /* sufficient-decrease constant */
  int32_t max_iters;
  int32_t max_backtracks;
  double ws_fraction;       /* greedy working-set additions, fraction of violators */
  int32_t sweeps_max;       /* cap on coordinate descent passes per iteration */
  int32_t sweep_growth_every;
  int32_t shuffle;          /* nonzero: permute coordinate order inside sweeps */
  uint64_t seed;
  int32_t norm;             /* lhac_norm_kind */
  int32_t reference_bd;     /* nonzero: O(p)-per-coordinate accounting baseline */
} lhac_config;

LHAC_API void lhac_config_init(lhac_config* cfg);
LHAC_API const char* lhac_last_error(void);
LHAC_API const char* lhac_status_name(int status);
LHAC_API const char* lhac_version(void);

/* Problem construction. CSR indices are 0-based with strictly increasing
 * columns per row; y holds labels (logistic, in {-1, +1}) or regression
 * targets. The covariance is row-major order x order and must be symmetric
 * to 1e-8. */
LHAC_API lhac_rc lhac_problem_csr(int loss_kind, int64_t n_rows, int64_t n_cols,
                                  const int64_t* row_ptr, const int64_t* col_idx,
                                  const double* values, const double* y, double lambda,
                                  lhac_problem** out);
LHAC_API lhac_rc lhac_problem_sics(int64_t order, const double* covariance, double lambda,
                                   lhac_problem** out);
LHAC_API lhac_rc lhac_problem_from_libsvm(const char* path, int loss_kind, double lambda,
                                          int64_t features_override, int map_labels,
                                          lhac_problem** out);
LHAC_API lhac_rc lhac_problem_from_covariance_csv(const char* path, double lambda,
                                                  lhac_problem** out);
LHAC_API void lhac_problem_free(lhac_problem* prob);
LHAC_API int64_t lhac_problem_dim(const lhac_problem* prob);

LHAC_API lhac_rc lhac_solve(const lhac_problem* prob, const lhac_config* cfg, int solver_kind,
                            lhac_result** out);

LHAC_API void lhac_result_free(lhac_result* res);
LHAC_API int lhac_result_status(const lhac_result* res);
LHAC_API double lhac_result_objective(const lhac_result* res);
LHAC_API double lhac_result_subgrad_norm(const lhac_result* res);
LHAC_API double lhac_result_subgrad_norm0(const lhac_result* res);
LHAC_API int64_t lhac_result_iterations(const lhac_result* res);
LHAC_API uint64_t lhac_result_flops(const lhac_result* res);
LHAC_API double lhac_result_seconds(const lhac_result* res);
LHAC_API int64_t lhac_result_dim(const lhac_result* res);
LHAC_API const char* lhac_result_message(const lhac_result* res);
LHAC_API lhac_rc lhac_result_copy_solution(const lhac_result* res, double* out, int64_t len);
/* CSV trace: iter,obj,subgrad_norm,ws_size,alpha,sweeps,flops_cum,time_s */
LHAC_API lhac_rc lhac_result_write_trace_csv(const lhac_result* res, const char* path);

/* Seeded fixture writers for experiments and tests. */
LHAC_API lhac_rc lhac_gen_libsvm(const char* path, int loss_kind, int64_t n, int64_t p,
                                 int64_t nnz_true, double density, uint64_t seed);
LHAC_API lhac_rc lhac_gen_covariance_csv(const char* path, int64_t order, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* LHAC_H */
