#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "numkit.hpp"

namespace lhac {

// Compact form of the limited-memory BFGS approximation,
//
//   B = gamma I - Q R Q^T,   Q = [gamma S  T],  R = M^{-1},
//   M = [[gamma S^T S, L], [L^T, -D]],
//
// held as Q (p x 2l) and Qhat = R Q^T (stored transposed, p x 2l) so that
// diagonal entries and products against sparse directions cost O(l), not O(p).
class CompactLbfgs {
 public:
  static CompactLbfgs scaled_identity(std::size_t dim, double gamma);

  std::size_t dim() const { return dim_; }
  std::size_t pair_count() const { return q_.cols() / 2; }
  std::size_t cols() const { return q_.cols(); }
  double gamma() const { return gamma_; }

  // (B)_jj = gamma - q_j . qhat_j, clamped below at 1e-10.
  double diag_entry(std::size_t j) const;

  // (B d)_j = gamma d_j - q_j . dhat with dhat = Qhat^T d maintained by the
  // caller. Costs 2 * cols() + 2 flops, independent of dim().
  double bd_entry(std::size_t j, double d_j, std::span<const double> dhat,
                  std::uint64_t* flops = nullptr) const;

  // dhat += z * qhat_j after coordinate j moved by z. Costs 2 * cols() flops.
  void accumulate_dhat(std::size_t j, double z, std::span<double> dhat,
                       std::uint64_t* flops = nullptr) const;

  // dhat = Qhat^T d recomputed from every coordinate; the O(p) reference path.
  void recompute_dhat(std::span<const double> d, std::span<double> dhat,
                      std::uint64_t* flops = nullptr) const;

  // Explicit (B)_ij, O(cols()); test and diagnostic use only.
  double dense_entry(std::size_t i, std::size_t j) const;

  // Reals held beyond the iterate itself: Q, Qhat, and the 2l x 2l middle
  // inverse kept for rebuilds.
  std::size_t aux_real_count() const {
    return q_.real_count() + qhat_t_.real_count() + middle_real_count_;
  }

 private:
  friend class CorrectionPairBuffer;
  std::size_t dim_ = 0;
  double gamma_ = 1.0;
  TallThinMatrix q_;       // row j = q_j, length 2l
  TallThinMatrix qhat_t_;  // row j = qhat_j = (R Q^T) column j
  std::size_t middle_real_count_ = 0;
};

// Sliding window of correction pairs (s, t), oldest first, with cached
// pairwise inner products so each rebuild touches the long vectors once.
class CorrectionPairBuffer {
 public:
  CorrectionPairBuffer(std::size_t dim, std::size_t memory);

  std::size_t dim() const { return dim_; }
  std::size_t memory() const { return memory_; }
  std::size_t size() const { return s_.size(); }
  bool empty() const { return s_.empty(); }

  // Accepts the pair when s.t > 1e-12 ||s|| ||t||, evicting the oldest pair
  // at capacity. Rejected pairs are dropped, not damped.
  bool push_pair(std::span<const double> s, std::span<const double> t);

  void clear();

  // gamma = t_last.t_last / t_last.s_last, or 1 on an empty buffer.
  double gamma() const;

  // Builds the compact representation from scratch. Nothing when the middle
  // matrix is numerically singular; callers typically reset to gamma I.
  std::optional<CompactLbfgs> rebuild() const;

  std::span<const double> s_at(std::size_t i) const { return s_[i]; }
  std::span<const double> t_at(std::size_t i) const { return t_[i]; }

 private:
  std::size_t dim_;
  std::size_t memory_;
  std::vector<DenseVector> s_;  // oldest first
  std::vector<DenseVector> t_;
  // Cached products indexed like s_/t_: ss_[i][j] = s_i . s_j (full),
  // st_[i][j] = s_i . t_j (full), tt_diag_[i] = t_i . t_i.
  std::vector<std::vector<double>> ss_;
  std::vector<std::vector<double>> st_;
  std::vector<double> tt_diag_;
};

}  // namespace lhac
