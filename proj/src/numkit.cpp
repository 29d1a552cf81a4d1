#include "numkit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lhac {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double norm_inf(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::fabs(x));
  return best;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != rows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != values_.size() || col_idx_.size() != values_.size())
    throw std::invalid_argument("csr: inconsistent structure arrays");
  for (std::size_t r = 0; r < rows_; ++r) {
    if (row_ptr_[r] > row_ptr_[r + 1])
      throw std::invalid_argument("csr: row_ptr not monotone");
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (col_idx_[k] >= cols_)
        throw std::invalid_argument("csr: column index out of range");
      if (k > row_ptr_[r] && col_idx_[k - 1] >= col_idx_[k])
        throw std::invalid_argument("csr: column indices not strictly increasing in row " +
                                    std::to_string(r));
    }
  }
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_)
    throw std::invalid_argument("csr multiply: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      acc += values_[k] * x[col_idx_[k]];
    y[r] = acc;
  }
}

void CsrMatrix::transpose_multiply_add(std::span<const double> u, std::span<double> y) const {
  if (u.size() != rows_ || y.size() != cols_)
    throw std::invalid_argument("csr transpose multiply: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    const double ur = u[r];
    if (ur == 0.0) continue;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      y[col_idx_[k]] += values_[k] * ur;
  }
}

std::optional<LowerTriangular> cholesky(const SymmetricDense& a) {
  const std::size_t n = a.order();
  LowerTriangular l;
  l.order = n;
  l.data.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l.at(j, k) * l.at(j, k);
    if (!(diag > 0.0)) return std::nullopt;  // also rejects NaN
    const double ljj = std::sqrt(diag);
    l.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l.at(i, k) * l.at(j, k);
      l.at(i, j) = v / ljj;
    }
  }
  return l;
}

double logdet_from_factor(const LowerTriangular& factor) {
  double acc = 0.0;
  for (std::size_t i = 0; i < factor.order; ++i) acc += std::log(factor.at(i, i));
  return 2.0 * acc;
}

SymmetricDense inverse_from_factor(const LowerTriangular& factor) {
  const std::size_t n = factor.order;
  // W = L^{-1} by forward substitution against the identity, then
  // A^{-1} = W^T W, which is symmetric regardless of rounding.
  std::vector<double> w(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = col; i < n; ++i) {
      double v = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = col; k < i; ++k) v -= factor.at(i, k) * w[k * n + col];
      w[i * n + col] = v / factor.at(i, i);
    }
  }
  SymmetricDense inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = std::max(i, j); k < n; ++k) acc += w[k * n + i] * w[k * n + j];
      inv.set(i, j, acc);
    }
  }
  return inv;
}

std::optional<std::pair<double, SymmetricDense>> logdet_and_inverse(const SymmetricDense& a) {
  auto factor = cholesky(a);
  if (!factor) return std::nullopt;
  return std::make_pair(logdet_from_factor(*factor), inverse_from_factor(*factor));
}

std::optional<std::vector<double>> small_solve(const SmallSquareMatrix& a,
                                               std::span<const double> b, std::size_t k) {
  const std::size_t n = a.order();
  if (b.size() != n * k) throw std::invalid_argument("small_solve: rhs size mismatch");

  double amax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) amax = std::max(amax, std::fabs(a(i, j)));
  const double pivot_tol = 1e-14 * amax;

  std::vector<double> lu(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = a(i, j);
  std::vector<double> x(b.begin(), b.end());

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::fabs(lu[i * n + col]) > std::fabs(lu[pivot * n + col])) pivot = i;
    if (std::fabs(lu[pivot * n + col]) <= pivot_tol) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[col * n + j], lu[pivot * n + j]);
      for (std::size_t j = 0; j < k; ++j) std::swap(x[col * k + j], x[pivot * k + j]);
    }
    const double inv_p = 1.0 / lu[col * n + col];
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = lu[i * n + col] * inv_p;
      if (f == 0.0) continue;
      lu[i * n + col] = f;
      for (std::size_t j = col + 1; j < n; ++j) lu[i * n + j] -= f * lu[col * n + j];
      for (std::size_t j = 0; j < k; ++j) x[i * k + j] -= f * x[col * k + j];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    const double inv_p = 1.0 / lu[col * n + col];
    for (std::size_t j = 0; j < k; ++j) {
      double v = x[col * k + j];
      for (std::size_t i = col + 1; i < n; ++i) v -= lu[col * n + i] * x[i * k + j];
      x[col * k + j] = v * inv_p;
    }
  }
  return x;
}

std::optional<SmallSquareMatrix> small_inverse(const SmallSquareMatrix& a) {
  const std::size_t n = a.order();
  std::vector<double> rhs(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) rhs[i * n + i] = 1.0;
  auto sol = small_solve(a, rhs, n);
  if (!sol) return std::nullopt;
  SmallSquareMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = (*sol)[i * n + j];
  return inv;
}

}  // namespace lhac
