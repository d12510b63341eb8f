#include "aerial/binning.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "aerial/error.hpp"

namespace aerial {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::size_t NumericBinning::bin_of(double value) const {
  // number of cut points <= value; the last interval is closed above
  std::size_t bin =
      static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), value) -
                               cuts.begin());
  if (bin >= labels.size()) bin = labels.size() - 1;
  return bin;
}

NumericBinning equal_frequency_bin(const std::vector<double>& values, int bins) {
  if (bins < 2) {
    fail(ErrorCode::invalid_argument, "bin count must be at least 2");
  }
  if (values.empty()) {
    fail(ErrorCode::invalid_argument, "cannot bin an empty column");
  }
  std::string bad_rows;
  int bad = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      if (bad++ < 8) {
        if (!bad_rows.empty()) bad_rows += ", ";
        bad_rows += std::to_string(i);
      }
    }
  }
  if (bad > 0) {
    fail(ErrorCode::invalid_argument,
         "non-finite values at rows [" + bad_rows + (bad > 8 ? ", ..." : "") +
             "]");
  }

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  NumericBinning out;
  out.lo = sorted.front();
  out.hi = sorted.back();
  out.requested_bins = bins;

  // Boundary ranks at j*n/bins; a boundary inside a duplicate run moves
  // past the run so ties never straddle a cut.
  for (int j = 1; j < bins; ++j) {
    const std::size_t k = (static_cast<std::size_t>(j) * n) /
                          static_cast<std::size_t>(bins);
    if (k < 1 || k >= n) continue;
    const double left = sorted[k - 1];
    double right = sorted[k];
    if (left == right) {
      const auto past_run =
          std::upper_bound(sorted.begin() + static_cast<std::ptrdiff_t>(k),
                           sorted.end(), left);
      if (past_run == sorted.end()) continue;
      right = *past_run;
    }
    const double cut = left + (right - left) / 2.0;
    if (out.cuts.empty() || cut > out.cuts.back()) {
      out.cuts.push_back(cut);
    }
  }

  const std::size_t bin_count = out.cuts.size() + 1;
  out.labels.reserve(bin_count);
  for (std::size_t b = 0; b < bin_count; ++b) {
    const double lo = (b == 0) ? out.lo : out.cuts[b - 1];
    const double hi = (b + 1 == bin_count) ? out.hi : out.cuts[b];
    const bool last = (b + 1 == bin_count);
    out.labels.push_back("[" + format_number(lo) + "," + format_number(hi) +
                         (last ? "]" : ")"));
  }
  return out;
}

BinningSpec discretize_numeric_columns(RawTable& table, int bins) {
  BinningSpec spec;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    RawColumn& column = table.columns[c];
    if (column.kind != ColumnKind::numeric) continue;

    std::vector<double> present;
    std::vector<std::size_t> rows;
    present.reserve(column.cells.size());
    for (std::size_t r = 0; r < column.cells.size(); ++r) {
      if (column.missing[r]) continue;
      double v = 0.0;
      parses_as_number(column.cells[r], &v);
      if (!std::isfinite(v)) {
        fail(ErrorCode::invalid_argument,
             "column '" + column.name + "' has a non-finite value at row " +
                 std::to_string(r + 1));
      }
      present.push_back(v);
      rows.push_back(r);
    }
    if (present.empty()) {
      // all-missing numeric column degenerates to the missing category
      column.kind = ColumnKind::categorical;
      continue;
    }
    NumericBinning binning = equal_frequency_bin(present, bins);
    for (std::size_t i = 0; i < present.size(); ++i) {
      column.cells[rows[i]] = binning.labels[binning.bin_of(present[i])];
    }
    column.kind = ColumnKind::categorical;
    spec.columns.emplace(c, std::move(binning));
  }
  return spec;
}

}  // namespace aerial
