// Command-line front end over the shared library. Reads one problem, runs
// one solver, prints a one-line summary "status,obj,iters,flops,seconds" to
// stdout, and optionally writes the per-iteration trace as CSV.

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lhac.h"

namespace {

struct Args {
  std::string loss = "logistic";
  std::string data;
  double lambda = 1.0;
  double epsilon = 1e-5;
  std::string solver = "lhac";
  std::int32_t memory = 10;
  double ws_fraction = 0.05;
  std::int32_t sweeps_max = 10;
  std::int32_t max_iters = 500;
  std::uint64_t seed = 0;
  std::string trace_out;
  std::string norm = "l2";
  std::int64_t features = 0;
  bool map_labels = false;
  bool shuffle = false;
  bool reference_bd = false;
};

int die(const char* stage) {
  std::fprintf(stderr, "lhac: %s: %s\n", stage, lhac_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  CLI::App app{"l1-regularized convex minimization"};
  app.add_option("--loss", args.loss, "loss model")
      ->check(CLI::IsMember({"logistic", "lasso", "sics"}))
      ->capture_default_str();
  app.add_option("--data", args.data, "input file (instance rows, or covariance CSV for sics)")
      ->required();
  app.add_option("--lambda", args.lambda, "l1 penalty")->capture_default_str();
  app.add_option("--epsilon", args.epsilon, "relative termination tolerance")
      ->capture_default_str();
  app.add_option("--solver", args.solver, "solver")
      ->check(CLI::IsMember({"lhac", "fista"}))
      ->capture_default_str();
  app.add_option("--memory", args.memory, "quasi-Newton correction pairs")
      ->capture_default_str();
  app.add_option("--ws-fraction", args.ws_fraction, "greedy working-set fraction")
      ->capture_default_str();
  app.add_option("--sweeps-max", args.sweeps_max, "max coordinate descent passes per iteration")
      ->capture_default_str();
  app.add_option("--max-iters", args.max_iters, "iteration cap")->capture_default_str();
  app.add_option("--seed", args.seed, "seed for randomized coordinate order")
      ->capture_default_str();
  app.add_option("--trace-out", args.trace_out, "write per-iteration CSV trace here");
  app.add_option("--norm", args.norm, "termination norm")
      ->check(CLI::IsMember({"l2", "inf"}))
      ->capture_default_str();
  app.add_option("--features", args.features, "declared feature count (0 infers from data)")
      ->capture_default_str();
  app.add_flag("--map-labels", args.map_labels, "map any two-class labels onto -1/+1");
  app.add_flag("--shuffle", args.shuffle, "permute coordinate order inside sweeps");
  app.add_flag("--reference-bd", args.reference_bd,
               "account inner products at the dense O(p) baseline cost");
  CLI11_PARSE(app, argc, argv);

  lhac_config cfg;
  lhac_config_init(&cfg);
  cfg.epsilon = args.epsilon;
  cfg.memory = args.memory;
  cfg.ws_fraction = args.ws_fraction;
  cfg.sweeps_max = args.sweeps_max;
  cfg.max_iters = args.max_iters;
  cfg.seed = args.seed;
  cfg.norm = args.norm == "inf" ? LHAC_NORM_INF : LHAC_NORM_L2;
  cfg.shuffle = args.shuffle ? 1 : 0;
  cfg.reference_bd = args.reference_bd ? 1 : 0;

  lhac_problem* prob = nullptr;
  lhac_rc rc;
  if (args.loss == "sics") {
    rc = lhac_problem_from_covariance_csv(args.data.c_str(), args.lambda, &prob);
  } else {
    const int kind = args.loss == "logistic" ? LHAC_LOSS_LOGISTIC : LHAC_LOSS_SQUARED;
    rc = lhac_problem_from_libsvm(args.data.c_str(), kind, args.lambda, args.features,
                                  args.map_labels ? 1 : 0, &prob);
  }
  if (rc != LHAC_OK) return die("load");

  const int solver = args.solver == "fista" ? LHAC_SOLVER_FISTA : LHAC_SOLVER_LHAC;
  lhac_result* res = nullptr;
  rc = lhac_solve(prob, &cfg, solver, &res);
  if (rc != LHAC_OK) {
    lhac_problem_free(prob);
    return die("solve");
  }

  if (!args.trace_out.empty() &&
      lhac_result_write_trace_csv(res, args.trace_out.c_str()) != LHAC_OK) {
    lhac_result_free(res);
    lhac_problem_free(prob);
    return die("trace");
  }

  const int status = lhac_result_status(res);
  std::printf("%s,%.17g,%lld,%llu,%.6f\n", lhac_status_name(status),
              lhac_result_objective(res),
              static_cast<long long>(lhac_result_iterations(res)),
              static_cast<unsigned long long>(lhac_result_flops(res)),
              lhac_result_seconds(res));
  if (status != LHAC_CONVERGED)
    std::fprintf(stderr, "lhac: %s after %lld iterations%s%s\n", lhac_status_name(status),
                 static_cast<long long>(lhac_result_iterations(res)),
                 *lhac_result_message(res) ? ": " : "", lhac_result_message(res));

  lhac_result_free(res);
  lhac_problem_free(prob);
  return status == LHAC_CONVERGED ? 0 : 2;
}
