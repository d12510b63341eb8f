#include "aerial/schema.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "aerial/error.hpp"

namespace aerial {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

FeatureSchema::FeatureSchema(std::vector<Feature> features)
    : features_(std::move(features)) {
  offsets_.reserve(features_.size());
  std::size_t offset = 0;
  for (const Feature& feature : features_) {
    if (feature.categories.empty()) {
      fail(ErrorCode::invalid_argument,
           "feature '" + feature.name + "' has no categories");
    }
    for (std::size_t i = 0; i + 1 < feature.categories.size(); ++i) {
      for (std::size_t j = i + 1; j < feature.categories.size(); ++j) {
        if (feature.categories[i] == feature.categories[j]) {
          fail(ErrorCode::invalid_argument,
               "feature '" + feature.name + "' repeats category '" +
                   feature.categories[i] + "'");
        }
      }
    }
    offsets_.push_back(offset);
    offset += feature.categories.size();
  }
  total_dim_ = offset;
}

FeatureSchema FeatureSchema::from_table(const RawTable& table) {
  std::vector<Feature> features;
  features.reserve(table.columns.size());
  for (const RawColumn& column : table.columns) {
    if (column.kind != ColumnKind::categorical) {
      fail(ErrorCode::invalid_argument,
           "column '" + column.name + "' is numeric; discretize it first");
    }
    Feature feature;
    feature.name = column.name;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t r = 0; r < column.cells.size(); ++r) {
      const std::string& value =
          column.missing[r] ? std::string(kMissingCategory) : column.cells[r];
      if (seen.emplace(value, feature.categories.size()).second) {
        feature.categories.push_back(value);
      }
    }
    if (feature.categories.empty()) {
      fail(ErrorCode::invalid_argument,
           "column '" + column.name + "' has no observed categories");
    }
    features.push_back(std::move(feature));
  }
  return FeatureSchema(std::move(features));
}

Item FeatureSchema::item_at(std::size_t flat) const {
  for (std::size_t f = 0; f < features_.size(); ++f) {
    const std::size_t end = offsets_[f] + features_[f].categories.size();
    if (flat < end) {
      return Item{static_cast<std::uint32_t>(f),
                  static_cast<std::uint32_t>(flat - offsets_[f])};
    }
  }
  fail(ErrorCode::invalid_argument,
       "flat index " + std::to_string(flat) + " out of range");
}

std::optional<Item> FeatureSchema::find(std::string_view feature,
                                        std::string_view category) const {
  for (std::size_t f = 0; f < features_.size(); ++f) {
    if (features_[f].name != feature) continue;
    const auto& cats = features_[f].categories;
    for (std::size_t c = 0; c < cats.size(); ++c) {
      if (cats[c] == category) {
        return Item{static_cast<std::uint32_t>(f),
                    static_cast<std::uint32_t>(c)};
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Item> FeatureSchema::parse_item(std::string_view text) const {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  return find(text.substr(0, eq), text.substr(eq + 1));
}

std::string FeatureSchema::item_name(Item item) const {
  return features_[item.feature].name + "=" +
         features_[item.feature].categories[item.category];
}

std::vector<Item> FeatureSchema::all_items() const {
  std::vector<Item> items;
  items.reserve(total_dim_);
  for (std::size_t f = 0; f < features_.size(); ++f) {
    for (std::size_t c = 0; c < features_[f].categories.size(); ++c) {
      items.push_back(
          Item{static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(c)});
    }
  }
  return items;
}

std::string FeatureSchema::to_json_string() const {
  nlohmann::json features = nlohmann::json::array();
  for (const Feature& feature : features_) {
    features.push_back({{"name", feature.name},
                        {"categories", feature.categories}});
  }
  nlohmann::json doc{{"features", features},
                     {"offsets", offsets_},
                     {"total_dim", total_dim_}};
  return doc.dump();
}

FeatureSchema FeatureSchema::from_json_string(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.contains("features")) {
    fail(ErrorCode::parse, "malformed schema JSON");
  }
  std::vector<Feature> features;
  for (const auto& f : doc.at("features")) {
    Feature feature;
    feature.name = f.at("name").get<std::string>();
    feature.categories = f.at("categories").get<std::vector<std::string>>();
    features.push_back(std::move(feature));
  }
  return FeatureSchema(std::move(features));
}

std::uint64_t FeatureSchema::hash() const { return fnv1a(to_json_string()); }

bool FeatureSchema::features_same(const FeatureSchema& other) const {
  if (features_.size() != other.features_.size()) return false;
  for (std::size_t f = 0; f < features_.size(); ++f) {
    if (features_[f].name != other.features_[f].name ||
        features_[f].categories != other.features_[f].categories) {
      return false;
    }
  }
  return true;
}

std::vector<double> encode_row(const FeatureSchema& schema,
                               std::span<const std::uint32_t> row) {
  if (row.size() != schema.feature_count()) {
    fail(ErrorCode::invalid_argument, "row length does not match schema");
  }
  std::vector<double> vec(schema.total_dim(), 0.0);
  for (std::size_t f = 0; f < row.size(); ++f) {
    if (row[f] >= schema.category_count(f)) {
      fail(ErrorCode::invalid_argument,
           "category index " + std::to_string(row[f]) +
               " out of range for feature '" + schema.features()[f].name + "'");
    }
    vec[schema.offset(f) + row[f]] = 1.0;
  }
  return vec;
}

std::vector<std::uint32_t> decode_vector(const FeatureSchema& schema,
                                         std::span<const double> vec) {
  if (vec.size() != schema.total_dim()) {
    fail(ErrorCode::invalid_argument, "vector length does not match schema");
  }
  std::vector<std::uint32_t> row(schema.feature_count(), 0);
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    const std::size_t begin = schema.offset(f);
    const std::size_t count = schema.category_count(f);
    std::size_t best = 0;
    for (std::size_t c = 1; c < count; ++c) {
      if (vec[begin + c] > vec[begin + best]) best = c;
    }
    row[f] = static_cast<std::uint32_t>(best);
  }
  return row;
}

}  // namespace aerial
