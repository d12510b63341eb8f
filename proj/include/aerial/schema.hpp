#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aerial/csv.hpp"

namespace aerial {

// One (feature, category) pair; the atoms rules are made of.
struct Item {
  std::uint32_t feature = 0;
  std::uint32_t category = 0;

  auto operator<=>(const Item&) const = default;
};

struct Feature {
  std::string name;
  std::vector<std::string> categories;  // first-appearance order
};

inline constexpr const char* kMissingCategory = "__missing__";

// Ordered features and their category vocabularies; fixes the layout of the
// flat one-hot vector. Immutable once built.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<Feature> features);

  // Requires every column to be categorical (numeric columns must be
  // discretized first). Category order is first appearance in row order;
  // missing cells map to the "__missing__" category.
  static FeatureSchema from_table(const RawTable& table);

  const std::vector<Feature>& features() const { return features_; }
  std::size_t feature_count() const { return features_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t offset(std::size_t feature) const { return offsets_[feature]; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  std::size_t category_count(std::size_t feature) const {
    return features_[feature].categories.size();
  }

  bool valid(Item item) const {
    return item.feature < features_.size() &&
           item.category < features_[item.feature].categories.size();
  }
  std::size_t flat_index(Item item) const {
    return offsets_[item.feature] + item.category;
  }
  Item item_at(std::size_t flat) const;

  std::optional<Item> find(std::string_view feature,
                           std::string_view category) const;
  // Parses "feature=category" against this schema.
  std::optional<Item> parse_item(std::string_view text) const;
  std::string item_name(Item item) const;

  // All items in flat-index order.
  std::vector<Item> all_items() const;

  std::string to_json_string() const;
  static FeatureSchema from_json_string(const std::string& text);
  std::uint64_t hash() const;  // FNV-1a over the canonical JSON dump

  bool operator==(const FeatureSchema& other) const {
    return features_same(other);
  }

 private:
  bool features_same(const FeatureSchema& other) const;

  std::vector<Feature> features_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

// One-hot encoding of a row of per-feature category indices.
std::vector<double> encode_row(const FeatureSchema& schema,
                               std::span<const std::uint32_t> row);

// Argmax per feature block; inverse of encode_row on valid encodings.
std::vector<std::uint32_t> decode_vector(const FeatureSchema& schema,
                                         std::span<const double> vec);

}  // namespace aerial
