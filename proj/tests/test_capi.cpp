#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lhac.h"

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("lhac-capi-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

// One feature, two mirrored instances: the lasso objective is
// lambda |w| + (w - 2)^2 / 2 under LHAC_LOSS_SQUARED, minimized at
// w = 2 - lambda.
lhac_problem* make_tiny_lasso(double lambda) {
  const int64_t row_ptr[] = {0, 1, 2};
  const int64_t col_idx[] = {0, 0};
  const double values[] = {1.0, -1.0};
  const double y[] = {2.0, -2.0};
  lhac_problem* prob = nullptr;
  REQUIRE(lhac_problem_csr(LHAC_LOSS_SQUARED, 2, 1, row_ptr, col_idx, values, y, lambda,
                           &prob) == LHAC_OK);
  REQUIRE(prob != nullptr);
  return prob;
}

}  // namespace

TEST_CASE("config defaults") {
  lhac_config cfg;
  std::memset(&cfg, 0xff, sizeof cfg);
  lhac_config_init(&cfg);
  CHECK(cfg.epsilon == 1e-5);
  CHECK(cfg.memory == 10);
  CHECK(cfg.beta == 0.5);
  CHECK(cfg.sigma == 1e-4);
  CHECK(cfg.max_iters == 500);
  CHECK(cfg.max_backtracks == 50);
  CHECK(cfg.ws_fraction == 0.05);
  CHECK(cfg.sweeps_max == 10);
  CHECK(cfg.sweep_growth_every == 3);
  CHECK(cfg.shuffle == 0);
  CHECK(cfg.seed == 0);
  CHECK(cfg.norm == LHAC_NORM_L2);
  CHECK(cfg.reference_bd == 0);
}

TEST_CASE("status names") {
  CHECK(std::string(lhac_status_name(LHAC_CONVERGED)) == "converged");
  CHECK(std::string(lhac_status_name(LHAC_MAX_ITERS)) == "max-iters");
  CHECK(std::string(lhac_status_name(LHAC_LINE_SEARCH_FAILURE)) == "line-search-failure");
  CHECK(lhac_version() != nullptr);
}

TEST_CASE("solve round trip on a one dimensional lasso") {
  lhac_problem* prob = make_tiny_lasso(1.0);
  CHECK(lhac_problem_dim(prob) == 1);

  lhac_config cfg;
  lhac_config_init(&cfg);
  cfg.epsilon = 1e-10;

  lhac_result* res = nullptr;
  REQUIRE(lhac_solve(prob, &cfg, LHAC_SOLVER_LHAC, &res) == LHAC_OK);
  REQUIRE(res != nullptr);

  CHECK(lhac_result_status(res) == LHAC_CONVERGED);
  CHECK(lhac_result_dim(res) == 1);
  CHECK(lhac_result_iterations(res) >= 1);
  CHECK(lhac_result_flops(res) > 0);
  CHECK(lhac_result_seconds(res) >= 0.0);
  // At w = 0 the gradient is -2, so the shrunk subgradient has norm 2 - lambda.
  CHECK(lhac_result_subgrad_norm0(res) == 1.0);
  CHECK(lhac_result_subgrad_norm(res) <= 1e-10 * 1.0);
  CHECK(lhac_result_objective(res) == doctest::Approx(1.5).epsilon(1e-12));

  double w = -1.0;
  REQUIRE(lhac_result_copy_solution(res, &w, 1) == LHAC_OK);
  CHECK(w == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(lhac_result_copy_solution(res, &w, 2) == LHAC_ERR_ARG);
  CHECK(std::string(lhac_last_error()).find("length") != std::string::npos);

  lhac_result_free(res);
  lhac_problem_free(prob);
}

TEST_CASE("fista solver reaches the same point") {
  lhac_problem* prob = make_tiny_lasso(1.0);
  lhac_config cfg;
  lhac_config_init(&cfg);
  cfg.epsilon = 1e-9;
  lhac_result* res = nullptr;
  REQUIRE(lhac_solve(prob, &cfg, LHAC_SOLVER_FISTA, &res) == LHAC_OK);
  CHECK(lhac_result_status(res) == LHAC_CONVERGED);
  double w = 0.0;
  REQUIRE(lhac_result_copy_solution(res, &w, 1) == LHAC_OK);
  CHECK(w == doctest::Approx(1.0).epsilon(1e-7));
  lhac_result_free(res);
  lhac_problem_free(prob);
}

TEST_CASE("argument validation surfaces messages") {
  lhac_problem* prob = nullptr;

  CHECK(lhac_problem_csr(LHAC_LOSS_SQUARED, 1, 1, nullptr, nullptr, nullptr, nullptr, 1.0,
                         &prob) == LHAC_ERR_ARG);
  CHECK(prob == nullptr);
  CHECK(lhac_last_error()[0] != '\0');

  const int64_t row_ptr[] = {0, 2};
  const int64_t col_idx[] = {1, 0};  // not strictly increasing
  const double values[] = {1.0, 2.0};
  const double y[] = {1.0};
  CHECK(lhac_problem_csr(LHAC_LOSS_SQUARED, 1, 2, row_ptr, col_idx, values, y, 1.0, &prob) ==
        LHAC_ERR_ARG);

  const int64_t ok_col[] = {0, 1};
  const double bad_label[] = {3.0};
  CHECK(lhac_problem_csr(LHAC_LOSS_LOGISTIC, 1, 2, row_ptr, ok_col, values, bad_label, 1.0,
                         &prob) == LHAC_ERR_ARG);
  CHECK(lhac_problem_csr(LHAC_LOSS_SQUARED, 1, 2, row_ptr, ok_col, values, y, -1.0, &prob) ==
        LHAC_ERR_ARG);

  prob = make_tiny_lasso(1.0);
  lhac_config cfg;
  lhac_config_init(&cfg);
  cfg.epsilon = 2.0;
  lhac_result* res = nullptr;
  CHECK(lhac_solve(prob, &cfg, LHAC_SOLVER_LHAC, &res) == LHAC_ERR_ARG);
  CHECK(res == nullptr);
  lhac_config_init(&cfg);
  CHECK(lhac_solve(prob, &cfg, 17, &res) == LHAC_ERR_ARG);
  CHECK(lhac_solve(nullptr, &cfg, LHAC_SOLVER_LHAC, &res) == LHAC_ERR_ARG);
  lhac_problem_free(prob);
}

TEST_CASE("file loading error codes") {
  lhac_problem* prob = nullptr;
  CHECK(lhac_problem_from_libsvm("/nonexistent/x.txt", LHAC_LOSS_LOGISTIC, 1.0, 0, 0, &prob) ==
        LHAC_ERR_IO);

  TempDir dir;
  const auto bad = dir.file("bad.txt");
  std::ofstream(bad) << "+1 junk\n";
  CHECK(lhac_problem_from_libsvm(bad.c_str(), LHAC_LOSS_LOGISTIC, 1.0, 0, 0, &prob) ==
        LHAC_ERR_PARSE);
  CHECK(std::string(lhac_last_error()).find("line 1") != std::string::npos);

  const auto asym = dir.file("asym.csv");
  std::ofstream(asym) << "1.0,0.5\n0.3,1.0\n";
  CHECK(lhac_problem_from_covariance_csv(asym.c_str(), 0.5, &prob) == LHAC_ERR_PARSE);
}

TEST_CASE("sics handles an indefinite covariance") {
  // Construction accepts any symmetric S; with the l1 weight above the
  // largest |S_ij| the objective stays coercive even though S is indefinite.
  const double cov[] = {1.0, 2.0, 2.0, 1.0};
  lhac_problem* prob = nullptr;
  REQUIRE(lhac_problem_sics(2, cov, 3.0, &prob) == LHAC_OK);
  CHECK(lhac_problem_dim(prob) == 3);
  lhac_config cfg;
  lhac_config_init(&cfg);
  cfg.max_iters = 50;
  lhac_result* res = nullptr;
  const lhac_rc rc = lhac_solve(prob, &cfg, LHAC_SOLVER_LHAC, &res);
  CHECK(rc == LHAC_OK);
  if (rc == LHAC_OK) lhac_result_free(res);
  lhac_problem_free(prob);

  const double nan_cov[] = {1.0, 0.0, 0.0, std::nan("")};
  CHECK(lhac_problem_sics(2, nan_cov, 0.5, &prob) == LHAC_ERR_ARG);

  CHECK(lhac_problem_sics(2, cov, 0.5, nullptr) == LHAC_ERR_ARG);
}

TEST_CASE("fista on sics is rejected") {
  const double cov[] = {2.0, 0.1, 0.1, 2.0};
  lhac_problem* prob = nullptr;
  REQUIRE(lhac_problem_sics(2, cov, 0.5, &prob) == LHAC_OK);
  lhac_config cfg;
  lhac_config_init(&cfg);
  lhac_result* res = nullptr;
  CHECK(lhac_solve(prob, &cfg, LHAC_SOLVER_FISTA, &res) == LHAC_ERR_ARG);
  CHECK(res == nullptr);
  lhac_problem_free(prob);
}

TEST_CASE("trace csv lands on disk with the pinned header") {
  TempDir dir;
  lhac_problem* prob = make_tiny_lasso(1.0);
  lhac_config cfg;
  lhac_config_init(&cfg);
  lhac_result* res = nullptr;
  REQUIRE(lhac_solve(prob, &cfg, LHAC_SOLVER_LHAC, &res) == LHAC_OK);

  const auto trace = dir.file("trace.csv");
  REQUIRE(lhac_result_write_trace_csv(res, trace.c_str()) == LHAC_OK);
  std::ifstream in(trace);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "iter,obj,subgrad_norm,ws_size,alpha,sweeps,flops_cum,time_s");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == static_cast<std::size_t>(lhac_result_iterations(res)) + 1);

  CHECK(lhac_result_write_trace_csv(res, "/nonexistent/dir/trace.csv") == LHAC_ERR_IO);

  lhac_result_free(res);
  lhac_problem_free(prob);
}

TEST_CASE("generator entry points write loadable fixtures") {
  TempDir dir;
  const auto svm = dir.file("gen.svm");
  REQUIRE(lhac_gen_libsvm(svm.c_str(), LHAC_LOSS_LOGISTIC, 30, 40, 5, 0.2, 11) == LHAC_OK);
  lhac_problem* prob = nullptr;
  REQUIRE(lhac_problem_from_libsvm(svm.c_str(), LHAC_LOSS_LOGISTIC, 0.5, 40, 0, &prob) ==
          LHAC_OK);
  CHECK(lhac_problem_dim(prob) == 40);
  lhac_problem_free(prob);

  const auto cov = dir.file("gen.csv");
  REQUIRE(lhac_gen_covariance_csv(cov.c_str(), 8, 12) == LHAC_OK);
  REQUIRE(lhac_problem_from_covariance_csv(cov.c_str(), 0.5, &prob) == LHAC_OK);
  CHECK(lhac_problem_dim(prob) == 8 * 9 / 2);
  lhac_problem_free(prob);

  CHECK(lhac_gen_libsvm(svm.c_str(), LHAC_LOSS_SICS, 10, 10, 2, 0.5, 1) == LHAC_ERR_ARG);
  CHECK(lhac_gen_covariance_csv("/nonexistent/dir/c.csv", 4, 1) == LHAC_ERR_IO);
}
