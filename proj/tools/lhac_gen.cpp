// Writes seeded synthetic problem files: sparse instance rows for logistic
// or lasso runs, or a positive definite covariance CSV for sics.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "lhac.h"

int main(int argc, char** argv) {
  std::string kind = "logistic";
  std::string out;
  std::int64_t n = 200;
  std::int64_t p = 500;
  std::int64_t nnz_true = 20;
  double density = 0.1;
  std::uint64_t seed = 0;

  CLI::App app{"synthetic problem generator"};
  app.add_option("--kind", kind, "problem kind")
      ->check(CLI::IsMember({"logistic", "lasso", "sics"}))
      ->capture_default_str();
  app.add_option("--out", out, "output path")->required();
  app.add_option("--n", n, "instances")->capture_default_str();
  app.add_option("--p", p, "features (matrix order for sics)")->capture_default_str();
  app.add_option("--nnz-true", nnz_true, "nonzeros in the generating weights")
      ->capture_default_str();
  app.add_option("--density", density, "nonzero fraction per instance row")
      ->capture_default_str();
  app.add_option("--seed", seed, "generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  lhac_rc rc;
  if (kind == "sics") {
    rc = lhac_gen_covariance_csv(out.c_str(), p, seed);
  } else {
    const int loss = kind == "logistic" ? LHAC_LOSS_LOGISTIC : LHAC_LOSS_SQUARED;
    rc = lhac_gen_libsvm(out.c_str(), loss, n, p, nnz_true, density, seed);
  }
  if (rc != LHAC_OK) {
    std::fprintf(stderr, "lhac-gen: %s\n", lhac_last_error());
    return 1;
  }
  return 0;
}
