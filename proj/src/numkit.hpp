#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

// Minimal dense/sparse kernels used by the solver. Everything is float64 and
// bit-deterministic: summation order is fixed, no SIMD reassociation assumed.

namespace lhac {

using DenseVector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
bool all_finite(std::span<const double> v);

// Row-major p x c with c small (at most twice the L-BFGS memory). Rows are
// the hot access path of the coordinate descent loop, so they are contiguous.
class TallThinMatrix {
 public:
  TallThinMatrix() = default;
  TallThinMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::size_t real_count() const { return data_.size(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Dense n x n with n at most twice the L-BFGS memory.
class SmallSquareMatrix {
 public:
  SmallSquareMatrix() = default;
  explicit SmallSquareMatrix(std::size_t order)
      : n_(order), data_(order * order, 0.0) {}

  std::size_t order() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::size_t real_count() const { return data_.size(); }

  static SmallSquareMatrix identity(std::size_t order) {
    SmallSquareMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Compressed sparse rows; column indices strictly increasing within each row.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  // Validates the structure; throws std::invalid_argument on violation.
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  // y = A x ; y sized rows()
  void multiply(std::span<const double> x, std::span<double> y) const;
  // y += A^T u ; caller clears y
  void transpose_multiply_add(std::span<const double> u, std::span<double> y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

// Full dense symmetric storage; set() writes both triangles so the two
// halves are bit-identical by construction.
class SymmetricDense {
 public:
  SymmetricDense() = default;
  explicit SymmetricDense(std::size_t order) : n_(order), data_(order * order, 0.0) {}

  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  std::span<const double> data() const { return data_; }

  static SymmetricDense identity(std::size_t order) {
    SymmetricDense m(order);
    for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Lower-triangular Cholesky factor, row-major with the strict upper part zero.
struct LowerTriangular {
  std::size_t order = 0;
  std::vector<double> data;  // row-major order x order

  double at(std::size_t i, std::size_t j) const { return data[i * order + j]; }
  double& at(std::size_t i, std::size_t j) { return data[i * order + j]; }
};

// A = L L^T. Returns nothing when A is not positive definite; the SICS line
// search probes infeasible trial points, so failure is a value here.
std::optional<LowerTriangular> cholesky(const SymmetricDense& a);

// log det(L L^T) = 2 sum log L_ii
double logdet_from_factor(const LowerTriangular& factor);

// (L L^T)^{-1}, symmetric by construction.
SymmetricDense inverse_from_factor(const LowerTriangular& factor);

// (log det A, A^{-1}); nothing when A is not positive definite.
std::optional<std::pair<double, SymmetricDense>> logdet_and_inverse(const SymmetricDense& a);

// Solves A X = B for B with k right-hand-side columns (row-major n x k),
// dense LU with partial pivoting. Returns nothing when a pivot falls below
// 1e-14 times the largest entry of A (degenerate curvature upstream).
std::optional<std::vector<double>> small_solve(const SmallSquareMatrix& a,
                                               std::span<const double> b, std::size_t k);

// A^{-1} via small_solve against the identity.
std::optional<SmallSquareMatrix> small_inverse(const SmallSquareMatrix& a);

}  // namespace lhac
