#pragma once

#include <span>

#include "solver.hpp"

namespace lhac {

// Componentwise soft threshold: out_j = S(v_j, tau_j).
DenseVector prox_l1(std::span<const double> v, std::span<const double> tau);

// Accelerated proximal gradient with backtracking on the step size, run under
// the same termination rule as solve(). Rejects losses with a restricted
// domain (SICS), where plain proximal steps can leave the feasible set.
SolveResult fista_solve(const Loss& loss, const SolverConfig& cfg);

}  // namespace lhac
