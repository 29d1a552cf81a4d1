#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "active_set.hpp"
#include "flops.hpp"
#include "lbfgs.hpp"
#include "numkit.hpp"

namespace lhac {

// S(x, tau) = sign(x) max(|x| - tau, 0)
double soft_threshold(double x, double tau);

// Exact minimizer of  (a/2) z^2 + b z + lambda_j |c + z|  with a > 0.
double coordinate_step(double a, double b, double c, double lambda_j);

struct SubproblemOptions {
  std::size_t sweeps = 1;    // full passes over the working set
  bool shuffle = false;      // permute coordinate order each sweep
  std::uint64_t seed = 0;    // permutation seed
  bool reference_bd = false; // recompute dhat from all p coordinates per step
  // Test hook, called after every coordinate update with (d, dhat).
  std::function<void(std::span<const double>, std::span<const double>)> on_update;
};

struct SubproblemResult {
  DenseVector d;           // dense, zero outside the working set
  double delta = 0.0;      // grad . d + sum_j weights_j (|w_j + d_j| - |w_j|)
  std::uint64_t flops = 0; // inner-loop flops of this solve
};

// Coordinate descent on  psi(d) = grad . d + d^T B d / 2 + |w + d| weighted,
// restricted to the working set. d starts at zero each call.
SubproblemResult solve_subproblem(const CompactLbfgs& rep, std::span<const double> grad,
                                  std::span<const double> w, const WorkingSet& ws,
                                  std::span<const double> weights,
                                  const SubproblemOptions& opt, FlopAccount* account);

}  // namespace lhac
