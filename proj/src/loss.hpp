#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "numkit.hpp"

namespace lhac {

enum class LossKind { kLogistic, kSquared, kSics };

// Thrown only on misuse: evaluating the SICS objective at a point the caller
// never checked. Line-search probes go through feasible() instead.
struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smooth part L of  F(w) = L(w) + sum_j weights_j |w_j|.
class Loss {
 public:
  virtual ~Loss() = default;
  virtual LossKind kind() const = 0;
  virtual std::size_t dim() const = 0;
  // Per-coordinate nonnegative l1 weights.
  virtual const DenseVector& weights() const = 0;
  virtual double value(std::span<const double> w) const = 0;
  virtual void gradient(std::span<const double> w, DenseVector& out) const = 0;
  // Domain membership; trial points outside it fail the line search.
  virtual bool feasible(std::span<const double>) const { return true; }
  virtual DenseVector initial_point() const { return DenseVector(dim(), 0.0); }
};

// (1/N) sum_n log(1 + exp(-y_n w . x_n)) with labels in {-1, +1}.
class LogisticLoss final : public Loss {
 public:
  LogisticLoss(CsrMatrix x, std::vector<double> labels, double lambda);
  LogisticLoss(CsrMatrix x, std::vector<double> labels, DenseVector weights);

  LossKind kind() const override { return LossKind::kLogistic; }
  std::size_t dim() const override { return x_.cols(); }
  const DenseVector& weights() const override { return weights_; }
  double value(std::span<const double> w) const override;
  void gradient(std::span<const double> w, DenseVector& out) const override;

  // Nonzeros touched so far: one pass per value, two per gradient.
  std::uint64_t data_access_count() const { return data_access_count_; }
  void reset_data_access_count() const { data_access_count_ = 0; }
  const CsrMatrix& data() const { return x_; }

 private:
  CsrMatrix x_;
  std::vector<double> labels_;
  DenseVector weights_;
  mutable std::uint64_t data_access_count_ = 0;
};

// (1/(2N)) || X w - y ||^2
class SquaredLoss final : public Loss {
 public:
  SquaredLoss(CsrMatrix x, std::vector<double> targets, double lambda);

  LossKind kind() const override { return LossKind::kSquared; }
  std::size_t dim() const override { return x_.cols(); }
  const DenseVector& weights() const override { return weights_; }
  double value(std::span<const double> w) const override;
  void gradient(std::span<const double> w, DenseVector& out) const override;
  const CsrMatrix& data() const { return x_; }

 private:
  CsrMatrix x_;
  std::vector<double> targets_;
  DenseVector weights_;
};

// Sparse inverse covariance selection: L(X) = -log det X + tr(S X) over
// positive definite X, parametrized by the packed upper triangle of X
// (row-wise, length p(p+1)/2). The l1 weights are lambda on the diagonal and
// 2 lambda off it, matching lambda ||X||_1 over the full matrix.
class SicsLoss final : public Loss {
 public:
  SicsLoss(SymmetricDense s, double lambda);

  LossKind kind() const override { return LossKind::kSics; }
  std::size_t dim() const override { return weights_.size(); }
  const DenseVector& weights() const override { return weights_; }
  double value(std::span<const double> w) const override;
  void gradient(std::span<const double> w, DenseVector& out) const override;
  bool feasible(std::span<const double> w) const override;
  DenseVector initial_point() const override;

  bool pd_check(std::span<const double> w) const { return feasible(w); }
  std::size_t order() const { return p_; }

  std::size_t pack_index(std::size_t i, std::size_t j) const;
  SymmetricDense unpack(std::span<const double> w) const;

 private:
  // Cholesky factor of the most recent positive definite point, so the
  // accepted iterate's gradient does not refactor.
  struct Cache {
    bool valid = false;
    DenseVector w;
    LowerTriangular factor;
    bool has_inverse = false;
    SymmetricDense inverse;
  };
  bool ensure_factor(std::span<const double> w) const;

  std::size_t p_;
  SymmetricDense s_;
  DenseVector weights_;
  mutable Cache cache_;
};

}  // namespace lhac
