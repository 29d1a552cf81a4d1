#include "solver.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "active_set.hpp"
#include "cd.hpp"
#include "lbfgs.hpp"

namespace lhac {

namespace {

double pick_norm(const SubgradientReport& report, NormKind norm) {
  return norm == NormKind::kL2 ? report.norm_l2 : report.norm_inf;
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIters: return "max-iters";
    case SolveStatus::kLineSearchFailure: return "line-search-failure";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("config: epsilon must lie in (0, 1)");
  if (memory == 0) throw std::invalid_argument("config: memory must be positive");
  if (!(beta > 0.0) || beta >= 1.0)
    throw std::invalid_argument("config: beta must lie in (0, 1)");
  if (!(sigma > 0.0) || sigma >= 1.0)
    throw std::invalid_argument("config: sigma must lie in (0, 1)");
  if (max_iters == 0) throw std::invalid_argument("config: max_iters must be positive");
  if (!(ws_fraction > 0.0) || ws_fraction > 1.0)
    throw std::invalid_argument("config: ws_fraction must lie in (0, 1]");
  if (sweeps_max == 0) throw std::invalid_argument("config: sweeps_max must be positive");
  if (sweep_growth_every == 0)
    throw std::invalid_argument("config: sweep_growth_every must be positive");
}

std::size_t SolverConfig::sweeps_at(std::size_t iter) const {
  return std::min(1 + iter / sweep_growth_every, sweeps_max);
}

void SolverTrace::write_csv(std::ostream& out) const {
  out << "iter,obj,subgrad_norm,ws_size,alpha,sweeps,flops_cum,time_s\n";
  char buf[256];
  for (const TraceRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%zu,%.17g,%zu,%llu,%.6f\n", r.iter,
                  r.objective, r.subgrad_norm, r.ws_size, r.alpha, r.sweeps,
                  static_cast<unsigned long long>(r.flops_cum), r.time_s);
    out << buf;
  }
}

std::optional<LineSearchStep> line_search(const Loss& loss, std::span<const double> w,
                                          std::span<const double> d, double delta, double f_w,
                                          const SolverConfig& cfg, std::string* diagnostic) {
  if (!(delta < 0.0)) throw std::invalid_argument("line_search: delta must be negative");
  const std::size_t p = w.size();
  const DenseVector& weights = loss.weights();
  DenseVector trial(p);
  double alpha = 1.0;
  double last_f = 0.0;
  bool last_infeasible = false;
  for (std::size_t i = 0; i <= cfg.max_backtracks; ++i) {
    for (std::size_t j = 0; j < p; ++j) trial[j] = w[j] + alpha * d[j];
    if (!loss.feasible(trial)) {
      last_infeasible = true;
      alpha *= cfg.beta;
      continue;
    }
    const double f_trial = loss.value(trial) + weighted_l1(trial, weights);
    if (f_trial <= f_w + alpha * cfg.sigma * delta)
      return LineSearchStep{alpha, std::move(trial), f_trial, i};
    last_f = f_trial;
    last_infeasible = false;
    alpha *= cfg.beta;
  }
  if (diagnostic) {
    char buf[256];
    if (last_infeasible)
      std::snprintf(buf, sizeof(buf),
                    "line search exhausted %zu backtracks: trial point infeasible at alpha=%.3e",
                    cfg.max_backtracks, alpha / cfg.beta);
    else
      std::snprintf(buf, sizeof(buf),
                    "line search exhausted %zu backtracks: F=%.17g, delta=%.3e, last trial F=%.17g",
                    cfg.max_backtracks, f_w, delta, last_f);
    *diagnostic = buf;
  }
  return std::nullopt;
}

SolveResult solve(const Loss& loss, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t p = loss.dim();
  const DenseVector& weights = loss.weights();
  const auto t0 = std::chrono::steady_clock::now();

  SolveResult result;
  result.w = loss.initial_point();
  DenseVector grad(p);
  loss.gradient(result.w, grad);
  double f = loss.value(result.w) + weighted_l1(result.w, weights);
  SubgradientReport report = subgradient(grad, result.w, weights);
  result.subgrad_norm0 = pick_norm(report, cfg.norm);

  result.trace.records.push_back(
      {0, f, pick_norm(report, cfg.norm), 0, 0.0, 0, 0, elapsed_seconds(t0)});

  CorrectionPairBuffer buffer(p, cfg.memory);
  DenseVector grad_new(p);
  result.status = SolveStatus::kMaxIters;

  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    if (pick_norm(report, cfg.norm) <= cfg.epsilon * result.subgrad_norm0) {
      result.status = SolveStatus::kConverged;
      break;
    }

    std::size_t violators = 0;
    for (double v : report.values)
      if (v != 0.0) ++violators;
    const std::size_t s_k = std::min(
        p, std::max<std::size_t>(
               1, static_cast<std::size_t>(
                      std::ceil(cfg.ws_fraction * static_cast<double>(violators)))));
    const WorkingSet ws = select_working_set(report, result.w, s_k);
    assert(!ws.indices.empty());

    CompactLbfgs rep = CompactLbfgs::scaled_identity(p, 1.0);
    if (!buffer.empty()) {
      auto rebuilt = buffer.rebuild();
      if (rebuilt) {
        rep = std::move(*rebuilt);
      } else {
        // Degenerate middle matrix; fall back to the scaled identity and
        // start collecting pairs again.
        rep = CompactLbfgs::scaled_identity(p, buffer.gamma());
        buffer.clear();
        result.message = "curvature buffer reset: singular middle matrix";
      }
    }

    SubproblemOptions opt;
    opt.sweeps = cfg.sweeps_at(k);
    opt.shuffle = cfg.shuffle;
    opt.seed = cfg.seed + k;
    opt.reference_bd = cfg.reference_bd;
    SubproblemResult sub = solve_subproblem(rep, grad, result.w, ws, weights, opt, &result.flops);

    bool d_zero = true;
    for (std::size_t j : ws.indices)
      if (sub.d[j] != 0.0) {
        d_zero = false;
        break;
      }
    if (d_zero || !(sub.delta < 0.0)) {
      // No usable direction; either we are at the tolerance already or the
      // subproblem cannot improve this working set.
      if (pick_norm(report, cfg.norm) <= cfg.epsilon * result.subgrad_norm0) {
        result.status = SolveStatus::kConverged;
      } else {
        result.status = SolveStatus::kLineSearchFailure;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "subproblem returned no descent direction (delta=%.3e, violation=%.3e)",
                      sub.delta, pick_norm(report, cfg.norm));
        result.message = buf;
      }
      result.iterations = k - 1;
      result.objective = f;
      result.subgrad_norm = pick_norm(report, cfg.norm);
      result.seconds = elapsed_seconds(t0);
      return result;
    }

    std::string diag;
    auto step = line_search(loss, result.w, sub.d, sub.delta, f, cfg, &diag);
    if (!step) {
      result.status = SolveStatus::kLineSearchFailure;
      result.message = diag;
      result.iterations = k;
      result.objective = f;
      result.subgrad_norm = pick_norm(report, cfg.norm);
      result.seconds = elapsed_seconds(t0);
      return result;
    }

    loss.gradient(step->w_new, grad_new);
    DenseVector s(p), t(p);
    for (std::size_t j = 0; j < p; ++j) {
      s[j] = step->w_new[j] - result.w[j];
      t[j] = grad_new[j] - grad[j];
    }
    const bool pair_accepted = buffer.push_pair(s, t);

    StepAudit audit;
    audit.f_before = f;
    audit.f_after = step->f_new;
    audit.delta = sub.delta;
    audit.alpha = step->alpha;
    audit.backtracks = step->backtracks;
    audit.ws_size = ws.indices.size();
    audit.extras = ws.selected_extras;
    audit.pair_accepted = pair_accepted;
    audit.feasible_after = loss.feasible(step->w_new);
    result.audit.push_back(audit);

    result.w = std::move(step->w_new);
    f = step->f_new;
    grad.swap(grad_new);
    report = subgradient(grad, result.w, weights);
    result.flops.outer_iters += 1;
    result.flops.total_sweeps += opt.sweeps;
    result.iterations = k;

    result.trace.records.push_back({k, f, pick_norm(report, cfg.norm), ws.indices.size(),
                                    step->alpha, opt.sweeps, result.flops.total,
                                    elapsed_seconds(t0)});
  }

  if (result.status == SolveStatus::kMaxIters &&
      pick_norm(report, cfg.norm) <= cfg.epsilon * result.subgrad_norm0)
    result.status = SolveStatus::kConverged;

  result.objective = f;
  result.subgrad_norm = pick_norm(report, cfg.norm);
  result.seconds = elapsed_seconds(t0);
  return result;
}

}  // namespace lhac
