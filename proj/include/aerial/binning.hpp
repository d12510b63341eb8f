#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aerial/csv.hpp"

namespace aerial {

// Equal-frequency discretization of one numeric column. Intervals are
// right-open [lo, hi) with the last one closed; labels are the interval
// strings used as categories.
struct NumericBinning {
  std::vector<double> cuts;  // strictly increasing interior cut points
  double lo = 0.0;           // observed minimum
  double hi = 0.0;           // observed maximum
  int requested_bins = 0;
  std::vector<std::string> labels;  // one per bin, "[lo,cut)" ... "[cut,hi]"

  std::size_t bin_count() const { return labels.size(); }
  std::size_t bin_of(double value) const;
  const std::string& label_of(double value) const { return labels[bin_of(value)]; }
};

struct BinningSpec {
  // column index -> binning; only numeric columns appear
  std::map<std::size_t, NumericBinning> columns;
};

// Cut points sit between order statistics at the equal-frequency boundary
// ranks; a boundary falling inside a run of duplicates is pushed past the
// run. Duplicate cut points collapse, so heavily tied columns get fewer
// bins than requested.
NumericBinning equal_frequency_bin(const std::vector<double>& values, int bins);

// Replaces every numeric column's cells with bin labels in place and
// returns the spec. Missing cells are left untouched.
BinningSpec discretize_numeric_columns(RawTable& table, int bins);

std::string format_number(double value);

}  // namespace aerial
