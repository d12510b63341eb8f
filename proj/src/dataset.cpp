#include "aerial/dataset.hpp"

#include <unordered_map>

#include "aerial/error.hpp"

namespace aerial {

Dataset Dataset::from_table(const RawTable& table) {
  auto schema = std::make_shared<FeatureSchema>(FeatureSchema::from_table(table));

  // category -> index lookup per feature
  std::vector<std::unordered_map<std::string, std::uint32_t>> lookup(
      schema->feature_count());
  for (std::size_t f = 0; f < schema->feature_count(); ++f) {
    const auto& cats = schema->features()[f].categories;
    for (std::size_t c = 0; c < cats.size(); ++c) {
      lookup[f].emplace(cats[c], static_cast<std::uint32_t>(c));
    }
  }

  Dataset dataset;
  dataset.schema = schema;
  dataset.n = table.n_rows;
  dataset.cells.resize(table.n_rows * schema->feature_count());
  for (std::size_t r = 0; r < table.n_rows; ++r) {
    for (std::size_t f = 0; f < table.columns.size(); ++f) {
      const RawColumn& column = table.columns[f];
      const std::string& value =
          column.missing[r] ? std::string(kMissingCategory) : column.cells[r];
      dataset.cells[r * schema->feature_count() + f] = lookup[f].at(value);
    }
  }
  return dataset;
}

LoadedData load_dataset(const std::string& path, const LoadOptions& options) {
  RawTable table = load_csv(path, options.csv);
  LoadedData out;
  out.binning = discretize_numeric_columns(table, options.bins);
  out.dataset = Dataset::from_table(table);
  return out;
}

}  // namespace aerial
