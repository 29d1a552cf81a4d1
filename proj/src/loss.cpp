#include "loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lhac {

namespace {

// log(1 + exp(-m)) without overflow for large |m|
double log1p_exp_neg(double m) {
  if (m > 0.0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

// 1 / (1 + exp(m)) without overflow
double sigmoid_neg(double m) {
  if (m >= 0.0) {
    const double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

void check_labels(const std::vector<double>& labels, std::size_t rows) {
  if (labels.size() != rows)
    throw std::invalid_argument("logistic: one label per data row required");
  for (double y : labels)
    if (y != 1.0 && y != -1.0)
      throw std::invalid_argument("logistic: labels must be -1 or +1");
}

DenseVector uniform_weights(std::size_t p, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("negative l1 weight");
  return DenseVector(p, lambda);
}

}  // namespace

LogisticLoss::LogisticLoss(CsrMatrix x, std::vector<double> labels, double lambda)
    : LogisticLoss(std::move(x), std::move(labels), DenseVector()) {
  weights_ = uniform_weights(x_.cols(), lambda);
}

LogisticLoss::LogisticLoss(CsrMatrix x, std::vector<double> labels, DenseVector weights)
    : x_(std::move(x)), labels_(std::move(labels)), weights_(std::move(weights)) {
  if (x_.rows() == 0) throw std::invalid_argument("logistic: empty data");
  check_labels(labels_, x_.rows());
  if (!weights_.empty() && weights_.size() != x_.cols())
    throw std::invalid_argument("logistic: weight vector length mismatch");
  for (double v : weights_)
    if (v < 0.0) throw std::invalid_argument("negative l1 weight");
}

double LogisticLoss::value(std::span<const double> w) const {
  const std::size_t n = x_.rows();
  DenseVector u(n);
  x_.multiply(w, u);
  data_access_count_ += x_.nnz();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += log1p_exp_neg(labels_[i] * u[i]);
  return acc / static_cast<double>(n);
}

void LogisticLoss::gradient(std::span<const double> w, DenseVector& out) const {
  const std::size_t n = x_.rows();
  DenseVector u(n);
  x_.multiply(w, u);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = -labels_[i] * sigmoid_neg(labels_[i] * u[i]) / static_cast<double>(n);
  out.assign(x_.cols(), 0.0);
  x_.transpose_multiply_add(u, out);
  data_access_count_ += 2 * x_.nnz();
}

SquaredLoss::SquaredLoss(CsrMatrix x, std::vector<double> targets, double lambda)
    : x_(std::move(x)), targets_(std::move(targets)) {
  if (x_.rows() == 0) throw std::invalid_argument("squared: empty data");
  if (targets_.size() != x_.rows())
    throw std::invalid_argument("squared: one target per data row required");
  weights_ = uniform_weights(x_.cols(), lambda);
}

double SquaredLoss::value(std::span<const double> w) const {
  const std::size_t n = x_.rows();
  DenseVector u(n);
  x_.multiply(w, u);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u[i] - targets_[i];
    acc += r * r;
  }
  return acc / (2.0 * static_cast<double>(n));
}

void SquaredLoss::gradient(std::span<const double> w, DenseVector& out) const {
  const std::size_t n = x_.rows();
  DenseVector u(n);
  x_.multiply(w, u);
  for (std::size_t i = 0; i < n; ++i) u[i] = (u[i] - targets_[i]) / static_cast<double>(n);
  out.assign(x_.cols(), 0.0);
  x_.transpose_multiply_add(u, out);
}

SicsLoss::SicsLoss(SymmetricDense s, double lambda) : p_(s.order()), s_(std::move(s)) {
  if (p_ == 0) throw std::invalid_argument("sics: empty covariance");
  if (lambda < 0.0) throw std::invalid_argument("negative l1 weight");
  weights_.resize(p_ * (p_ + 1) / 2);
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = i; j < p_; ++j)
      weights_[pack_index(i, j)] = (i == j) ? lambda : 2.0 * lambda;
}

std::size_t SicsLoss::pack_index(std::size_t i, std::size_t j) const {
  // Row-wise upper triangle, i <= j.
  return i * p_ - i * (i - 1) / 2 + (j - i);
}

SymmetricDense SicsLoss::unpack(std::span<const double> w) const {
  SymmetricDense x(p_);
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = i; j < p_; ++j) x.set(i, j, w[pack_index(i, j)]);
  return x;
}

DenseVector SicsLoss::initial_point() const {
  DenseVector w(dim(), 0.0);
  for (std::size_t i = 0; i < p_; ++i) w[pack_index(i, i)] = 1.0;
  return w;
}

bool SicsLoss::ensure_factor(std::span<const double> w) const {
  if (w.size() != dim()) throw std::invalid_argument("sics: point length mismatch");
  if (cache_.valid && cache_.w.size() == w.size() &&
      std::equal(w.begin(), w.end(), cache_.w.begin()))
    return true;
  auto factor = cholesky(unpack(w));
  if (!factor) {
    cache_.valid = false;
    return false;
  }
  cache_.valid = true;
  cache_.w.assign(w.begin(), w.end());
  cache_.factor = std::move(*factor);
  cache_.has_inverse = false;
  return true;
}

bool SicsLoss::feasible(std::span<const double> w) const { return ensure_factor(w); }

double SicsLoss::value(std::span<const double> w) const {
  if (!ensure_factor(w))
    throw NotPositiveDefiniteError("sics: objective evaluated at a non-positive-definite point");
  double trace = 0.0;
  for (std::size_t i = 0; i < p_; ++i) {
    trace += s_(i, i) * w[pack_index(i, i)];
    for (std::size_t j = i + 1; j < p_; ++j) trace += 2.0 * s_(i, j) * w[pack_index(i, j)];
  }
  return -logdet_from_factor(cache_.factor) + trace;
}

void SicsLoss::gradient(std::span<const double> w, DenseVector& out) const {
  if (!ensure_factor(w))
    throw NotPositiveDefiniteError("sics: gradient evaluated at a non-positive-definite point");
  if (!cache_.has_inverse) {
    cache_.inverse = inverse_from_factor(cache_.factor);
    cache_.has_inverse = true;
  }
  out.assign(dim(), 0.0);
  for (std::size_t i = 0; i < p_; ++i) {
    out[pack_index(i, i)] = s_(i, i) - cache_.inverse(i, i);
    for (std::size_t j = i + 1; j < p_; ++j)
      out[pack_index(i, j)] = 2.0 * (s_(i, j) - cache_.inverse(i, j));
  }
}

}  // namespace lhac
