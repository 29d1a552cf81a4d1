#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <ranges>
#include <stdexcept>

namespace lhac {

namespace {

struct SparseDesign {
  CsrMatrix x;
  DenseVector true_w;
};

SparseDesign make_design(std::size_t n, std::size_t p, std::size_t nnz_true, double density,
                         std::mt19937_64& rng) {
  if (n == 0 || p == 0) throw std::invalid_argument("fixture: empty shape");
  if (nnz_true > p) throw std::invalid_argument("fixture: nnz_true exceeds dimension");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("fixture: density must lie in (0, 1]");

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t row_nnz =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(density * p)));

  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  auto population = std::views::iota(std::size_t{0}, p);
  std::vector<std::size_t> cols(row_nnz);
  for (std::size_t r = 0; r < n; ++r) {
    std::sample(population.begin(), population.end(), cols.begin(), row_nnz, rng);
    // iota iterators are input-category for std::sample, so the draw is unordered.
    std::sort(cols.begin(), cols.end());
    for (std::size_t c : cols) {
      col_idx.push_back(c);
      values.push_back(normal(rng));
    }
    row_ptr.push_back(values.size());
  }

  DenseVector true_w(p, 0.0);
  std::vector<std::size_t> support(nnz_true);
  std::sample(population.begin(), population.end(), support.begin(), nnz_true, rng);
  for (std::size_t j : support) {
    const double magnitude = 0.5 + 1.5 * unit(rng);
    true_w[j] = (unit(rng) < 0.5) ? -magnitude : magnitude;
  }

  return {CsrMatrix(n, p, std::move(row_ptr), std::move(col_idx), std::move(values)),
          std::move(true_w)};
}

}  // namespace

LogisticFixture make_sparse_logistic(std::size_t n, std::size_t p, std::size_t nnz_true,
                                     double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SparseDesign design = make_design(n, p, nnz_true, density, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  DenseVector margins(n);
  design.x.multiply(design.true_w, margins);
  std::vector<double> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prob = 1.0 / (1.0 + std::exp(-margins[i]));
    labels[i] = (unit(rng) < prob) ? 1.0 : -1.0;
  }
  return {std::move(design.x), std::move(labels), std::move(design.true_w)};
}

RegressionFixture make_sparse_regression(std::size_t n, std::size_t p, std::size_t nnz_true,
                                         double density, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SparseDesign design = make_design(n, p, nnz_true, density, rng);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> targets(n);
  design.x.multiply(design.true_w, targets);
  for (std::size_t i = 0; i < n; ++i) targets[i] += noise * normal(rng);
  return {std::move(design.x), std::move(targets), std::move(design.true_w)};
}

SymmetricDense make_spd_covariance(std::size_t p, std::uint64_t seed) {
  if (p == 0) throw std::invalid_argument("fixture: empty shape");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> a(p * p);
  for (double& v : a) v = normal(rng);

  // Gram matrix of the rows, scaled to unit diagonal, plus a ridge.
  std::vector<double> gram(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < p; ++k) acc += a[i * p + k] * a[j * p + k];
      gram[i * p + j] = acc;
      gram[j * p + i] = acc;
    }

  SymmetricDense s(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double denom = std::sqrt(gram[i * p + i] * gram[j * p + j]);
      s.set(i, j, 0.95 * gram[i * p + j] / denom);
    }
    s.set(i, i, 1.05);
  }
  return s;
}

}  // namespace lhac
