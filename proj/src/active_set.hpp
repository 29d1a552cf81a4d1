#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "numkit.hpp"

namespace lhac {

// Minimum-norm subgradient of F(w) = L(w) + sum_j weights_j |w_j|.
// values[j] is signed where w_j != 0 and holds the violation magnitude
// max(|grad_j| - weights_j, 0) where w_j == 0.
struct SubgradientReport {
  DenseVector values;
  double norm_l2 = 0.0;
  double norm_inf = 0.0;
};

SubgradientReport subgradient(std::span<const double> grad, std::span<const double> w,
                              std::span<const double> weights);

// Working set for one outer iteration: every currently nonzero coordinate
// plus the s_k zero-weight violators with the largest subgradient magnitude.
struct WorkingSet {
  std::vector<std::size_t> indices;  // ascending, duplicate-free
  std::size_t selected_extras = 0;   // greedy candidates unioned in (<= s_k)
};

WorkingSet select_working_set(const SubgradientReport& report, std::span<const double> w,
                              std::size_t s_k);

double weighted_l1(std::span<const double> w, std::span<const double> weights);

}  // namespace lhac
