#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lhac {

enum class FlopKind {
  kBdEntry,     // one (B d)_j evaluation
  kCoordStep,   // scalar soft-threshold step arithmetic
  kDhatUpdate,  // cached d-hat accumulation
  kDiag,        // diagonal entry precompute
};

// Tallies inner-loop arithmetic so runs can be compared by work instead of
// wall time. Per-coordinate samples are capped; the totals never are.
struct FlopAccount {
  std::uint64_t total = 0;
  std::uint64_t outer_iters = 0;   // accepted outer iterations
  std::uint64_t total_sweeps = 0;  // coordinate descent passes across all iterations

  struct StepSample {
    std::uint32_t bd;    // flops of the (B d)_j evaluation
    std::uint32_t step;  // flops of the whole coordinate update
  };
  std::vector<StepSample> samples;
  static constexpr std::size_t kMaxSamples = 1 << 16;

  void record(FlopKind, std::uint64_t count) { total += count; }

  void sample_step(std::uint64_t bd, std::uint64_t step) {
    if (samples.size() < kMaxSamples)
      samples.push_back({static_cast<std::uint32_t>(bd), static_cast<std::uint32_t>(step)});
  }
};

}  // namespace lhac
