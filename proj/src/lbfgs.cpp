#include "lbfgs.hpp"

#include <cmath>
#include <stdexcept>

namespace lhac {

namespace {
constexpr double kCurvatureTol = 1e-12;
constexpr double kDiagFloor = 1e-10;
}  // namespace

CompactLbfgs CompactLbfgs::scaled_identity(std::size_t dim, double gamma) {
  CompactLbfgs rep;
  rep.dim_ = dim;
  rep.gamma_ = gamma;
  rep.q_ = TallThinMatrix(dim, 0);
  rep.qhat_t_ = TallThinMatrix(dim, 0);
  rep.middle_real_count_ = 0;
  return rep;
}

double CompactLbfgs::diag_entry(std::size_t j) const {
  double v = gamma_;
  const auto q = q_.row(j);
  const auto qhat = qhat_t_.row(j);
  for (std::size_t c = 0; c < q.size(); ++c) v -= q[c] * qhat[c];
  return std::max(v, kDiagFloor);
}

double CompactLbfgs::bd_entry(std::size_t j, double d_j, std::span<const double> dhat,
                              std::uint64_t* flops) const {
  const auto q = q_.row(j);
  double acc = 0.0;
  for (std::size_t c = 0; c < q.size(); ++c) acc += q[c] * dhat[c];
  if (flops) *flops += 2 * q.size() + 2;
  return gamma_ * d_j - acc;
}

void CompactLbfgs::accumulate_dhat(std::size_t j, double z, std::span<double> dhat,
                                   std::uint64_t* flops) const {
  const auto qhat = qhat_t_.row(j);
  for (std::size_t c = 0; c < qhat.size(); ++c) dhat[c] += z * qhat[c];
  if (flops) *flops += 2 * qhat.size();
}

void CompactLbfgs::recompute_dhat(std::span<const double> d, std::span<double> dhat,
                                  std::uint64_t* flops) const {
  const std::size_t c = cols();
  for (std::size_t e = 0; e < c; ++e) dhat[e] = 0.0;
  // Deliberately touches every coordinate, zero or not.
  for (std::size_t r = 0; r < dim_; ++r) {
    const double dr = d[r];
    const auto qhat = qhat_t_.row(r);
    for (std::size_t e = 0; e < c; ++e) dhat[e] += dr * qhat[e];
  }
  if (flops) *flops += 2 * c * dim_;
}

double CompactLbfgs::dense_entry(std::size_t i, std::size_t j) const {
  double v = (i == j) ? gamma_ : 0.0;
  const auto q = q_.row(i);
  const auto qhat = qhat_t_.row(j);
  for (std::size_t c = 0; c < q.size(); ++c) v -= q[c] * qhat[c];
  return v;
}

CorrectionPairBuffer::CorrectionPairBuffer(std::size_t dim, std::size_t memory)
    : dim_(dim), memory_(memory) {
  if (dim == 0 || memory == 0)
    throw std::invalid_argument("correction buffer: dim and memory must be positive");
}

bool CorrectionPairBuffer::push_pair(std::span<const double> s, std::span<const double> t) {
  if (s.size() != dim_ || t.size() != dim_)
    throw std::invalid_argument("push_pair: size mismatch");
  const double st = dot(s, t);
  const double ss = dot(s, s);
  const double tt = dot(t, t);
  if (!(st > kCurvatureTol * std::sqrt(ss) * std::sqrt(tt))) return false;

  if (s_.size() == memory_) {
    s_.erase(s_.begin());
    t_.erase(t_.begin());
    tt_diag_.erase(tt_diag_.begin());
    ss_.erase(ss_.begin());
    st_.erase(st_.begin());
    for (auto& row : ss_) row.erase(row.begin());
    for (auto& row : st_) row.erase(row.begin());
  }

  const std::size_t l = s_.size();
  std::vector<double> ss_row(l + 1);
  std::vector<double> st_row(l + 1);
  for (std::size_t j = 0; j < l; ++j) {
    ss_row[j] = dot(s, s_[j]);
    st_row[j] = dot(s, t_[j]);
    ss_[j].push_back(ss_row[j]);  // S^T S is symmetric
    st_[j].push_back(dot(s_[j], t));
  }
  ss_row[l] = ss;
  st_row[l] = st;
  ss_.push_back(std::move(ss_row));
  st_.push_back(std::move(st_row));
  tt_diag_.push_back(tt);
  s_.emplace_back(s.begin(), s.end());
  t_.emplace_back(t.begin(), t.end());
  return true;
}

void CorrectionPairBuffer::clear() {
  s_.clear();
  t_.clear();
  ss_.clear();
  st_.clear();
  tt_diag_.clear();
}

double CorrectionPairBuffer::gamma() const {
  if (s_.empty()) return 1.0;
  return tt_diag_.back() / st_.back().back();
}

std::optional<CompactLbfgs> CorrectionPairBuffer::rebuild() const {
  if (s_.empty()) throw std::invalid_argument("rebuild: empty buffer");
  const std::size_t l = s_.size();
  const std::size_t m2 = 2 * l;
  const double g = gamma();

  SmallSquareMatrix mid(m2);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      mid(i, j) = g * ss_[i][j];
      mid(i, l + j) = (i > j) ? st_[i][j] : 0.0;
      mid(l + i, j) = (j > i) ? st_[j][i] : 0.0;
      mid(l + i, l + j) = (i == j) ? -st_[i][i] : 0.0;
    }
  }

  std::vector<double> eye(m2 * m2, 0.0);
  for (std::size_t i = 0; i < m2; ++i) eye[i * m2 + i] = 1.0;
  auto r = small_solve(mid, eye, m2);
  if (!r) return std::nullopt;

  CompactLbfgs rep;
  rep.dim_ = dim_;
  rep.gamma_ = g;
  rep.q_ = TallThinMatrix(dim_, m2);
  rep.qhat_t_ = TallThinMatrix(dim_, m2);
  rep.middle_real_count_ = m2 * m2;
  for (std::size_t row = 0; row < dim_; ++row) {
    auto q = rep.q_.row(row);
    for (std::size_t i = 0; i < l; ++i) {
      q[i] = g * s_[i][row];
      q[l + i] = t_[i][row];
    }
    auto qhat = rep.qhat_t_.row(row);
    for (std::size_t c = 0; c < m2; ++c) {
      double acc = 0.0;
      for (std::size_t e = 0; e < m2; ++e) acc += (*r)[c * m2 + e] * q[e];
      qhat[c] = acc;
    }
  }
  return rep;
}

}  // namespace lhac
