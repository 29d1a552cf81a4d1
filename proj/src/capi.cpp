#include "lhac.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "fista.hpp"
#include "io.hpp"
#include "loss.hpp"
#include "solver.hpp"
#include "synthetic.hpp"

struct lhac_problem {
  std::unique_ptr<lhac::Loss> loss;
};

struct lhac_result {
  lhac::SolveResult r;
};

namespace {

thread_local std::string g_last_error;

lhac_rc fail(lhac_rc rc, const char* what) {
  g_last_error = what ? what : "";
  return rc;
}

// Maps the library's exception vocabulary onto return codes.
lhac_rc translate_current_exception() {
  try {
    throw;
  } catch (const lhac::ParseError& e) {
    return fail(LHAC_ERR_PARSE, e.what());
  } catch (const lhac::IoError& e) {
    return fail(LHAC_ERR_IO, e.what());
  } catch (const lhac::NotPositiveDefiniteError& e) {
    return fail(LHAC_ERR_NOT_PD, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LHAC_ERR_ARG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LHAC_ERR_NOMEM, "out of memory");
  } catch (const std::exception& e) {
    return fail(LHAC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LHAC_ERR_INTERNAL, "unknown error");
  }
}

lhac::SolverConfig to_config(const lhac_config& cfg) {
  lhac::SolverConfig out;
  out.epsilon = cfg.epsilon;
  out.memory = static_cast<std::size_t>(cfg.memory > 0 ? cfg.memory : 0);
  out.beta = cfg.beta;
  out.sigma = cfg.sigma;
  out.max_iters = static_cast<std::size_t>(cfg.max_iters > 0 ? cfg.max_iters : 0);
  out.max_backtracks = static_cast<std::size_t>(cfg.max_backtracks > 0 ? cfg.max_backtracks : 0);
  out.ws_fraction = cfg.ws_fraction;
  out.sweeps_max = static_cast<std::size_t>(cfg.sweeps_max > 0 ? cfg.sweeps_max : 0);
  out.sweep_growth_every =
      static_cast<std::size_t>(cfg.sweep_growth_every > 0 ? cfg.sweep_growth_every : 0);
  out.shuffle = cfg.shuffle != 0;
  out.seed = cfg.seed;
  out.norm = cfg.norm == LHAC_NORM_INF ? lhac::NormKind::kInf : lhac::NormKind::kL2;
  out.reference_bd = cfg.reference_bd != 0;
  if (cfg.norm != LHAC_NORM_L2 && cfg.norm != LHAC_NORM_INF)
    throw std::invalid_argument("config: unknown norm kind");
  return out;
}

std::unique_ptr<lhac::Loss> make_csr_loss(int loss_kind, lhac::CsrMatrix x,
                                          std::vector<double> y, double lambda) {
  switch (loss_kind) {
    case LHAC_LOSS_LOGISTIC:
      return std::make_unique<lhac::LogisticLoss>(std::move(x), std::move(y), lambda);
    case LHAC_LOSS_SQUARED:
      return std::make_unique<lhac::SquaredLoss>(std::move(x), std::move(y), lambda);
    default:
      throw std::invalid_argument("loss kind does not take instance data");
  }
}

}  // namespace

extern "C" {

void lhac_config_init(lhac_config* cfg) {
  if (!cfg) return;
  cfg->epsilon = 1e-5;
  cfg->memory = 10;
  cfg->beta = 0.5;
  cfg->sigma = 1e-4;
  cfg->max_iters = 500;
  cfg->max_backtracks = 50;
  cfg->ws_fraction = 0.05;
  cfg->sweeps_max = 10;
  cfg->sweep_growth_every = 3;
  cfg->shuffle = 0;
  cfg->seed = 0;
  cfg->norm = LHAC_NORM_L2;
  cfg->reference_bd = 0;
}

const char* lhac_last_error(void) { return g_last_error.c_str(); }

const char* lhac_status_name(int status) {
  switch (status) {
    case LHAC_CONVERGED: return "converged";
    case LHAC_MAX_ITERS: return "max-iters";
    case LHAC_LINE_SEARCH_FAILURE: return "line-search-failure";
    default: return "unknown";
  }
}

const char* lhac_version(void) { return "1.0.0"; }

lhac_rc lhac_problem_csr(int loss_kind, int64_t n_rows, int64_t n_cols, const int64_t* row_ptr,
                         const int64_t* col_idx, const double* values, const double* y,
                         double lambda, lhac_problem** out) {
  if (!out) return fail(LHAC_ERR_ARG, "null output handle");
  *out = nullptr;
  if (n_rows <= 0 || n_cols <= 0 || !row_ptr || !y)
    return fail(LHAC_ERR_ARG, "csr problem: empty shape or null arrays");
  try {
    const std::size_t rows = static_cast<std::size_t>(n_rows);
    const std::size_t nnz = static_cast<std::size_t>(row_ptr[rows]);
    if (nnz > 0 && (!col_idx || !values))
      return fail(LHAC_ERR_ARG, "csr problem: null structure arrays");
    std::vector<std::size_t> rp(rows + 1);
    for (std::size_t i = 0; i <= rows; ++i) {
      if (row_ptr[i] < 0) throw std::invalid_argument("csr problem: negative row pointer");
      rp[i] = static_cast<std::size_t>(row_ptr[i]);
    }
    std::vector<std::size_t> ci(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
      if (col_idx[k] < 0) throw std::invalid_argument("csr problem: negative column index");
      ci[k] = static_cast<std::size_t>(col_idx[k]);
    }
    lhac::CsrMatrix x(rows, static_cast<std::size_t>(n_cols), std::move(rp), std::move(ci),
                      std::vector<double>(values, values + nnz));
    auto prob = std::make_unique<lhac_problem>();
    prob->loss = make_csr_loss(loss_kind, std::move(x), std::vector<double>(y, y + rows), lambda);
    *out = prob.release();
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

lhac_rc lhac_problem_sics(int64_t order, const double* covariance, double lambda,
                          lhac_problem** out) {
  if (!out) return fail(LHAC_ERR_ARG, "null output handle");
  *out = nullptr;
  if (order <= 0 || !covariance) return fail(LHAC_ERR_ARG, "sics problem: empty covariance");
  try {
    const std::size_t n = static_cast<std::size_t>(order);
    lhac::SymmetricDense s(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double a = covariance[i * n + j];
        const double b = covariance[j * n + i];
        if (!std::isfinite(a) || !std::isfinite(b))
          throw std::invalid_argument("sics problem: covariance has non-finite entries");
        if (std::fabs(a - b) > 1e-8)
          throw std::invalid_argument("sics problem: covariance not symmetric");
        s.set(i, j, 0.5 * (a + b));
      }
    auto prob = std::make_unique<lhac_problem>();
    prob->loss = std::make_unique<lhac::SicsLoss>(std::move(s), lambda);
    *out = prob.release();
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

lhac_rc lhac_problem_from_libsvm(const char* path, int loss_kind, double lambda,
                                 int64_t features_override, int map_labels, lhac_problem** out) {
  if (!out) return fail(LHAC_ERR_ARG, "null output handle");
  *out = nullptr;
  if (!path) return fail(LHAC_ERR_ARG, "null path");
  if (features_override < 0) return fail(LHAC_ERR_ARG, "negative feature count");
  try {
    lhac::SvmData data = lhac::load_libsvm(path, static_cast<std::size_t>(features_override));
    if (loss_kind == LHAC_LOSS_LOGISTIC)
      data.labels = lhac::map_labels_pm1(data.labels, map_labels != 0);
    auto prob = std::make_unique<lhac_problem>();
    prob->loss = make_csr_loss(loss_kind, std::move(data.x), std::move(data.labels), lambda);
    *out = prob.release();
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

lhac_rc lhac_problem_from_covariance_csv(const char* path, double lambda, lhac_problem** out) {
  if (!out) return fail(LHAC_ERR_ARG, "null output handle");
  *out = nullptr;
  if (!path) return fail(LHAC_ERR_ARG, "null path");
  try {
    lhac::SymmetricDense s = lhac::load_covariance(path);
    auto prob = std::make_unique<lhac_problem>();
    prob->loss = std::make_unique<lhac::SicsLoss>(std::move(s), lambda);
    *out = prob.release();
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void lhac_problem_free(lhac_problem* prob) { delete prob; }

int64_t lhac_problem_dim(const lhac_problem* prob) {
  return prob ? static_cast<int64_t>(prob->loss->dim()) : 0;
}

lhac_rc lhac_solve(const lhac_problem* prob, const lhac_config* cfg, int solver_kind,
                   lhac_result** out) {
  if (!out) return fail(LHAC_ERR_ARG, "null output handle");
  *out = nullptr;
  if (!prob || !cfg) return fail(LHAC_ERR_ARG, "null problem or config");
  try {
    const lhac::SolverConfig config = to_config(*cfg);
    auto res = std::make_unique<lhac_result>();
    switch (solver_kind) {
      case LHAC_SOLVER_LHAC:
        res->r = lhac::solve(*prob->loss, config);
        break;
      case LHAC_SOLVER_FISTA:
        res->r = lhac::fista_solve(*prob->loss, config);
        break;
      default:
        return fail(LHAC_ERR_ARG, "unknown solver kind");
    }
    *out = res.release();
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void lhac_result_free(lhac_result* res) { delete res; }

int lhac_result_status(const lhac_result* res) {
  if (!res) return LHAC_LINE_SEARCH_FAILURE;
  switch (res->r.status) {
    case lhac::SolveStatus::kConverged: return LHAC_CONVERGED;
    case lhac::SolveStatus::kMaxIters: return LHAC_MAX_ITERS;
    case lhac::SolveStatus::kLineSearchFailure: return LHAC_LINE_SEARCH_FAILURE;
  }
  return LHAC_LINE_SEARCH_FAILURE;
}

double lhac_result_objective(const lhac_result* res) { return res ? res->r.objective : 0.0; }
double lhac_result_subgrad_norm(const lhac_result* res) {
  return res ? res->r.subgrad_norm : 0.0;
}
double lhac_result_subgrad_norm0(const lhac_result* res) {
  return res ? res->r.subgrad_norm0 : 0.0;
}
int64_t lhac_result_iterations(const lhac_result* res) {
  return res ? static_cast<int64_t>(res->r.iterations) : 0;
}
uint64_t lhac_result_flops(const lhac_result* res) { return res ? res->r.flops.total : 0; }
double lhac_result_seconds(const lhac_result* res) { return res ? res->r.seconds : 0.0; }
int64_t lhac_result_dim(const lhac_result* res) {
  return res ? static_cast<int64_t>(res->r.w.size()) : 0;
}
const char* lhac_result_message(const lhac_result* res) {
  return res ? res->r.message.c_str() : "";
}

lhac_rc lhac_result_copy_solution(const lhac_result* res, double* out, int64_t len) {
  if (!res || !out) return fail(LHAC_ERR_ARG, "null result or output");
  if (len != static_cast<int64_t>(res->r.w.size()))
    return fail(LHAC_ERR_ARG, "solution length mismatch");
  std::memcpy(out, res->r.w.data(), res->r.w.size() * sizeof(double));
  return LHAC_OK;
}

lhac_rc lhac_result_write_trace_csv(const lhac_result* res, const char* path) {
  if (!res || !path) return fail(LHAC_ERR_ARG, "null result or path");
  try {
    std::ofstream out(path);
    if (!out) throw lhac::IoError(std::string("cannot write ") + path);
    res->r.trace.write_csv(out);
    if (!out) throw lhac::IoError(std::string("write failed for ") + path);
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

lhac_rc lhac_gen_libsvm(const char* path, int loss_kind, int64_t n, int64_t p, int64_t nnz_true,
                        double density, uint64_t seed) {
  if (!path) return fail(LHAC_ERR_ARG, "null path");
  if (n <= 0 || p <= 0 || nnz_true < 0) return fail(LHAC_ERR_ARG, "fixture: empty shape");
  try {
    if (loss_kind == LHAC_LOSS_LOGISTIC) {
      lhac::LogisticFixture fx = lhac::make_sparse_logistic(
          static_cast<std::size_t>(n), static_cast<std::size_t>(p),
          static_cast<std::size_t>(nnz_true), density, seed);
      lhac::write_libsvm(path, fx.x, fx.labels);
    } else if (loss_kind == LHAC_LOSS_SQUARED) {
      lhac::RegressionFixture fx = lhac::make_sparse_regression(
          static_cast<std::size_t>(n), static_cast<std::size_t>(p),
          static_cast<std::size_t>(nnz_true), density, 0.1, seed);
      lhac::write_libsvm(path, fx.x, fx.targets);
    } else {
      return fail(LHAC_ERR_ARG, "fixture: loss kind takes no instance file");
    }
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

lhac_rc lhac_gen_covariance_csv(const char* path, int64_t order, uint64_t seed) {
  if (!path) return fail(LHAC_ERR_ARG, "null path");
  if (order <= 0) return fail(LHAC_ERR_ARG, "fixture: empty shape");
  try {
    lhac::write_covariance(path, lhac::make_spd_covariance(static_cast<std::size_t>(order), seed));
    return LHAC_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

}  // extern "C"
