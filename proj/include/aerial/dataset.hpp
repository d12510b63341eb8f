#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aerial/binning.hpp"
#include "aerial/csv.hpp"
#include "aerial/schema.hpp"

namespace aerial {

// Transactions as per-feature category indices: exactly one item per
// feature per row.
struct Dataset {
  std::shared_ptr<const FeatureSchema> schema;
  std::vector<std::uint32_t> cells;  // n x k, row-major
  std::size_t n = 0;

  std::size_t k() const { return schema ? schema->feature_count() : 0; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {cells.data() + i * k(), k()};
  }
  std::vector<double> encode(std::size_t i) const {
    return encode_row(*schema, row(i));
  }

  static Dataset from_table(const RawTable& table);
};

struct LoadOptions {
  CsvOptions csv;
  int bins = 10;
};

struct LoadedData {
  Dataset dataset;
  BinningSpec binning;
};

// CSV -> discretized table -> schema -> encoded transactions.
LoadedData load_dataset(const std::string& path, const LoadOptions& options = {});

}  // namespace aerial
