#include "active_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lhac {

SubgradientReport subgradient(std::span<const double> grad, std::span<const double> w,
                              std::span<const double> weights) {
  const std::size_t p = w.size();
  if (grad.size() != p || weights.size() != p)
    throw std::invalid_argument("subgradient: size mismatch");
  SubgradientReport report;
  report.values.resize(p);
  double acc = 0.0;
  double best = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    double v;
    if (w[j] > 0.0)
      v = grad[j] + weights[j];
    else if (w[j] < 0.0)
      v = grad[j] - weights[j];
    else
      v = std::max(std::fabs(grad[j]) - weights[j], 0.0);
    report.values[j] = v;
    acc += v * v;
    best = std::max(best, std::fabs(v));
  }
  report.norm_l2 = std::sqrt(acc);
  report.norm_inf = best;
  return report;
}

WorkingSet select_working_set(const SubgradientReport& report, std::span<const double> w,
                              std::size_t s_k) {
  const std::size_t p = w.size();
  if (report.values.size() != p)
    throw std::invalid_argument("select_working_set: size mismatch");

  std::vector<std::size_t> violators;  // the nonzero-subgradient set
  for (std::size_t j = 0; j < p; ++j)
    if (report.values[j] != 0.0) violators.push_back(j);

  const std::size_t take = std::min(s_k, violators.size());
  // Largest violation first; ties break toward the lower index so the
  // selection is a pure function of the report.
  std::partial_sort(violators.begin(), violators.begin() + take, violators.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double fa = std::fabs(report.values[a]);
                      const double fb = std::fabs(report.values[b]);
                      if (fa != fb) return fa > fb;
                      return a < b;
                    });

  std::vector<char> chosen(p, 0);
  for (std::size_t j = 0; j < p; ++j)
    if (w[j] != 0.0) chosen[j] = 1;
  for (std::size_t i = 0; i < take; ++i) chosen[violators[i]] = 1;

  WorkingSet ws;
  ws.selected_extras = take;
  for (std::size_t j = 0; j < p; ++j)
    if (chosen[j]) ws.indices.push_back(j);
  return ws;
}

double weighted_l1(std::span<const double> w, std::span<const double> weights) {
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += weights[j] * std::fabs(w[j]);
  return acc;
}

}  // namespace lhac
