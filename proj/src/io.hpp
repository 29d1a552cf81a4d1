#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "numkit.hpp"

namespace lhac {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line_arg)
      : std::runtime_error(what), line(line_arg) {}
  std::size_t line;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SvmData {
  CsrMatrix x;
  std::vector<double> labels;
};

// Sparse instance-per-line text: "label idx:val idx:val ...", indices
// 1-based and strictly increasing within a line. Blank lines are skipped.
// features_override pins the column count; 0 infers it from the data.
SvmData load_libsvm(const std::string& path, std::size_t features_override = 0);
void write_libsvm(const std::string& path, const CsrMatrix& x,
                  std::span<const double> labels);

// Returns labels in {-1, +1}. Inputs already in that form pass through; any
// other two-valued labeling is mapped (smaller value to -1) when allow_map
// is set, and rejected otherwise.
std::vector<double> map_labels_pm1(const std::vector<double>& labels, bool allow_map);

// Square CSV, comma separated, one matrix row per line. Entries further than
// 1e-8 from symmetry are rejected; the result is (A + A^T) / 2.
SymmetricDense load_covariance(const std::string& path);
void write_covariance(const std::string& path, const SymmetricDense& s);

}  // namespace lhac
