#pragma once

#include <cstdint>

#include "numkit.hpp"

namespace lhac {

// Seeded generators for test and benchmark problems. The same seed always
// produces the same instance.

struct LogisticFixture {
  CsrMatrix x;
  std::vector<double> labels;  // in {-1, +1}
  DenseVector true_w;
};

struct RegressionFixture {
  CsrMatrix x;
  std::vector<double> targets;
  DenseVector true_w;
};

// Sparse design with roughly density * p nonzeros per row and a true weight
// vector with nnz_true nonzero coordinates; labels drawn from the logistic
// model at the true weights.
LogisticFixture make_sparse_logistic(std::size_t n, std::size_t p, std::size_t nnz_true,
                                     double density, std::uint64_t seed);

// Same design; targets are the noisy linear responses.
RegressionFixture make_sparse_regression(std::size_t n, std::size_t p, std::size_t nnz_true,
                                         double density, double noise, std::uint64_t seed);

// Correlation-like positive definite matrix with a small diagonal ridge.
SymmetricDense make_spd_covariance(std::size_t p, std::uint64_t seed);

}  // namespace lhac
