#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flops.hpp"
#include "loss.hpp"
#include "numkit.hpp"

namespace lhac {

enum class SolveStatus { kConverged, kMaxIters, kLineSearchFailure };
enum class NormKind { kL2, kInf };

const char* status_name(SolveStatus status);

struct SolverConfig {
  double epsilon = 1e-5;             // stop when violation <= epsilon * initial violation
  std::size_t memory = 10;           // correction pairs kept
  double beta = 0.5;                 // backtracking factor
  double sigma = 1e-4;               // sufficient-decrease constant
  std::size_t max_iters = 500;
  std::size_t max_backtracks = 50;
  double ws_fraction = 0.05;         // greedy additions per iteration, fraction of violators
  std::size_t sweeps_max = 10;       // cap on coordinate descent passes
  std::size_t sweep_growth_every = 3;// passes grow by one every this many iterations
  bool shuffle = false;              // permute coordinate order inside sweeps
  std::uint64_t seed = 0;
  NormKind norm = NormKind::kL2;     // violation norm used for termination
  bool reference_bd = false;         // O(p) per-coordinate baseline accounting

  void validate() const;
  std::size_t sweeps_at(std::size_t iter) const;  // iter is 1-based
};

struct TraceRecord {
  std::size_t iter = 0;
  double objective = 0.0;
  double subgrad_norm = 0.0;
  std::size_t ws_size = 0;
  double alpha = 0.0;
  std::size_t sweeps = 0;
  std::uint64_t flops_cum = 0;
  double time_s = 0.0;
};

struct SolverTrace {
  std::vector<TraceRecord> records;
  // Header plus one row per record; %.17g so reruns are byte-identical
  // everywhere except the wall-time column.
  void write_csv(std::ostream& out) const;
};

// One accepted outer step, kept so invariants can be re-checked after the run.
struct StepAudit {
  double f_before = 0.0;
  double f_after = 0.0;
  double delta = 0.0;   // model decrease: grad . d + weighted l1 difference
  double alpha = 0.0;
  std::size_t backtracks = 0;
  std::size_t ws_size = 0;
  std::size_t extras = 0;  // greedy candidates unioned into the working set
  bool pair_accepted = false;
  bool feasible_after = false;
};

struct SolveResult {
  DenseVector w;
  SolveStatus status = SolveStatus::kMaxIters;
  double objective = 0.0;
  double subgrad_norm0 = 0.0;
  double subgrad_norm = 0.0;
  std::size_t iterations = 0;
  double seconds = 0.0;
  SolverTrace trace;
  FlopAccount flops;
  std::vector<StepAudit> audit;
  std::string message;
  DenseVector momentum;  // acceleration parameters, proximal-gradient runs only
};

struct LineSearchStep {
  double alpha = 0.0;
  DenseVector w_new;
  double f_new = 0.0;
  std::size_t backtracks = 0;
};

// Largest alpha in {1, beta, beta^2, ...} with w + alpha d feasible and
// F(w + alpha d) <= f_w + alpha sigma delta. Nothing after max_backtracks
// halvings; requires delta < 0.
std::optional<LineSearchStep> line_search(const Loss& loss, std::span<const double> w,
                                          std::span<const double> d, double delta, double f_w,
                                          const SolverConfig& cfg, std::string* diagnostic);

SolveResult solve(const Loss& loss, const SolverConfig& cfg);

}  // namespace lhac
