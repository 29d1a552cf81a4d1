#include "fista.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "active_set.hpp"

namespace lhac {

DenseVector prox_l1(std::span<const double> v, std::span<const double> tau) {
  if (v.size() != tau.size()) throw std::invalid_argument("prox_l1: size mismatch");
  DenseVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = v[j];
    const double t = tau[j];
    out[j] = (x > t) ? x - t : (x < -t ? x + t : 0.0);
  }
  return out;
}

SolveResult fista_solve(const Loss& loss, const SolverConfig& cfg) {
  cfg.validate();
  if (loss.kind() == LossKind::kSics)
    throw std::invalid_argument("fista: sics objective not supported");
  const std::size_t p = loss.dim();
  const DenseVector& weights = loss.weights();
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  SolveResult result;
  result.w = loss.initial_point();
  DenseVector y = result.w;
  DenseVector grad(p);
  loss.gradient(result.w, grad);
  double f = loss.value(result.w) + weighted_l1(result.w, weights);
  SubgradientReport report = subgradient(grad, result.w, weights);
  result.subgrad_norm0 = (cfg.norm == NormKind::kL2) ? report.norm_l2 : report.norm_inf;
  const auto current_norm = [&] {
    return (cfg.norm == NormKind::kL2) ? report.norm_l2 : report.norm_inf;
  };

  result.trace.records.push_back({0, f, current_norm(), 0, 0.0, 0, 0, elapsed()});
  result.momentum.push_back(1.0);

  double t = 1.0;
  double lip = 1.0;  // running Lipschitz estimate; step is 1/lip
  DenseVector grad_y(p), shifted(p), tau(p), residual(p);
  result.status = SolveStatus::kMaxIters;

  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    if (current_norm() <= cfg.epsilon * result.subgrad_norm0) {
      result.status = SolveStatus::kConverged;
      break;
    }

    loss.gradient(y, grad_y);
    const double value_y = loss.value(y);

    // Let the step grow again before backtracking it down.
    lip = std::max(lip * 0.5, 1e-12);
    DenseVector next;
    double step = 0.0;
    for (std::size_t bt = 0;; ++bt) {
      step = 1.0 / lip;
      for (std::size_t j = 0; j < p; ++j) {
        shifted[j] = y[j] - step * grad_y[j];
        tau[j] = step * weights[j];
      }
      next = prox_l1(shifted, tau);
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        const double diff = next[j] - y[j];
        lin += grad_y[j] * diff;
        sq += diff * diff;
      }
      const double bound = value_y + lin + 0.5 * lip * sq;
      if (loss.value(next) <= bound) break;
      if (bt >= cfg.max_backtracks) {
        result.status = SolveStatus::kLineSearchFailure;
        result.message = "step-size backtracking exhausted";
        result.objective = f;
        result.subgrad_norm = current_norm();
        result.iterations = k - 1;
        result.seconds = elapsed();
        return result;
      }
      lip *= 2.0;
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t j = 0; j < p; ++j)
      y[j] = next[j] + ((t - 1.0) / t_next) * (next[j] - result.w[j]);
    result.w = std::move(next);
    t = t_next;
    result.momentum.push_back(t);

    loss.gradient(result.w, grad);
    f = loss.value(result.w) + weighted_l1(result.w, weights);
    report = subgradient(grad, result.w, weights);
    result.iterations = k;

    std::size_t nnz = 0;
    for (double v : result.w)
      if (v != 0.0) ++nnz;
    result.trace.records.push_back({k, f, current_norm(), nnz, step, 0, 0, elapsed()});
  }

  if (result.status == SolveStatus::kMaxIters &&
      current_norm() <= cfg.epsilon * result.subgrad_norm0)
    result.status = SolveStatus::kConverged;

  result.objective = f;
  result.subgrad_norm = current_norm();
  result.seconds = elapsed();
  return result;
}

}  // namespace lhac
