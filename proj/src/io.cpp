#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace lhac {

namespace {

const char* skip_ws(const char* p, const char* end) {
  while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

const char* parse_double(const char* p, const char* end, double& out) {
  // Labels conventionally carry an explicit plus, which from_chars rejects.
  if (p != end && *p == '+' && p + 1 != end && (std::isdigit(static_cast<unsigned char>(p[1])) != 0 || p[1] == '.'))
    ++p;
  auto [next, ec] = std::from_chars(p, end, out);
  return ec == std::errc() ? next : nullptr;
}

const char* parse_index(const char* p, const char* end, std::size_t& out) {
  auto [next, ec] = std::from_chars(p, end, out);
  return ec == std::errc() ? next : nullptr;
}

}  // namespace

SvmData load_libsvm(const std::string& path, std::size_t features_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  std::vector<double> labels;
  std::size_t max_index = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    p = skip_ws(p, end);
    if (p == end) continue;

    double label;
    p = parse_double(p, end, label);
    if (!p) throw ParseError("line " + std::to_string(line_no) + ": malformed label", line_no);
    labels.push_back(label);

    std::size_t last_index = 0;
    while (true) {
      p = skip_ws(p, end);
      if (p == end) break;
      std::size_t index;
      const char* q = parse_index(p, end, index);
      if (!q || q == end || *q != ':')
        throw ParseError("line " + std::to_string(line_no) + ": expected index:value pair",
                         line_no);
      if (index == 0 || index <= last_index)
        throw ParseError("line " + std::to_string(line_no) +
                             ": feature indices must be 1-based and strictly increasing",
                         line_no);
      double value;
      p = parse_double(q + 1, end, value);
      if (!p)
        throw ParseError("line " + std::to_string(line_no) + ": malformed feature value",
                         line_no);
      col_idx.push_back(index - 1);
      values.push_back(value);
      last_index = index;
      max_index = std::max(max_index, index);
    }
    row_ptr.push_back(values.size());
  }

  if (labels.empty()) throw ParseError("no instances in " + path, 0);
  if (features_override != 0 && max_index > features_override)
    throw ParseError("feature index " + std::to_string(max_index) + " exceeds declared count " +
                         std::to_string(features_override),
                     0);
  const std::size_t cols = features_override != 0 ? features_override : max_index;
  if (cols == 0) throw ParseError("no features in " + path, 0);

  SvmData data;
  data.x = CsrMatrix(labels.size(), cols, std::move(row_ptr), std::move(col_idx),
                     std::move(values));
  data.labels = std::move(labels);
  return data;
}

void write_libsvm(const std::string& path, const CsrMatrix& x, std::span<const double> labels) {
  if (labels.size() != x.rows()) throw std::invalid_argument("write_libsvm: label count");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char buf[64];
  const auto row_ptr = x.row_ptr();
  const auto col = x.col_idx();
  const auto val = x.values();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::snprintf(buf, sizeof(buf), "%.17g", labels[r]);
    out << buf;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), " %zu:%.17g", col[k] + 1, val[k]);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

std::vector<double> map_labels_pm1(const std::vector<double>& labels, bool allow_map) {
  bool canonical = true;
  for (double y : labels)
    if (y != 1.0 && y != -1.0) {
      canonical = false;
      break;
    }
  if (canonical) return labels;
  if (!allow_map)
    throw std::invalid_argument(
        "labels are not in {-1, +1}; enable label mapping to convert a two-class labeling");
  std::set<double> distinct(labels.begin(), labels.end());
  if (distinct.size() != 2)
    throw std::invalid_argument("label mapping requires exactly two distinct label values, got " +
                                std::to_string(distinct.size()));
  const double low = *distinct.begin();
  std::vector<double> mapped(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) mapped[i] = labels[i] == low ? -1.0 : 1.0;
  return mapped;
}

SymmetricDense load_covariance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    p = skip_ws(p, end);
    if (p == end) continue;
    std::vector<double> row;
    while (true) {
      double v;
      p = parse_double(p, end, v);
      if (!p) throw ParseError("line " + std::to_string(line_no) + ": malformed entry", line_no);
      row.push_back(v);
      p = skip_ws(p, end);
      if (p == end) break;
      if (*p != ',')
        throw ParseError("line " + std::to_string(line_no) + ": expected comma", line_no);
      p = skip_ws(p + 1, end);
    }
    rows.push_back(std::move(row));
  }

  const std::size_t n = rows.size();
  if (n == 0) throw ParseError("no rows in " + path, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      throw ParseError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " of " + std::to_string(n) +
                           " entries",
                       i + 1);

  SymmetricDense s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (std::fabs(rows[i][j] - rows[j][i]) > 1e-8)
        throw ParseError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")",
                         i + 1);
      s.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
    }
  return s;
}

void write_covariance(const std::string& path, const SymmetricDense& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char buf[64];
  for (std::size_t i = 0; i < s.order(); ++i) {
    for (std::size_t j = 0; j < s.order(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", s(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace lhac
