#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "aerial/dataset.hpp"
#include "aerial/rng.hpp"
#include "aerial/schema.hpp"

namespace testsupport {

inline aerial::Dataset dataset_from_rows(
    std::vector<aerial::Feature> features,
    const std::vector<std::vector<std::uint32_t>>& rows) {
  aerial::Dataset dataset;
  dataset.schema = std::make_shared<const aerial::FeatureSchema>(
      aerial::FeatureSchema(std::move(features)));
  dataset.n = rows.size();
  dataset.cells.reserve(rows.size() * dataset.schema->feature_count());
  for (const auto& row : rows) {
    dataset.cells.insert(dataset.cells.end(), row.begin(), row.end());
  }
  return dataset;
}

inline std::uint32_t draw(aerial::Rng& rng, const std::vector<double>& probs) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(probs.size() - 1);
}

// f1 = {a,b} 50/50, f2 a deterministic copy of f1, two independent
// three-category noise features. The pair {f1=a, f2=x} has support 0.5 and
// both directions hold with confidence 1.
inline aerial::Dataset planted_pair(std::size_t n, std::uint64_t seed) {
  std::vector<aerial::Feature> features{
      {"f1", {"a", "b"}},
      {"f2", {"x", "y"}},
      {"f3", {"u", "v", "w"}},
      {"f4", {"p", "q", "r"}},
  };
  aerial::Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t f1 = i < n / 2 ? 0u : 1u;
    rows.push_back({f1, f1, static_cast<std::uint32_t>(rng.below(3)),
                    static_cast<std::uint32_t>(rng.below(3))});
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::uint32_t>> shuffled;
  shuffled.reserve(n);
  for (const std::size_t i : order) shuffled.push_back(rows[i]);
  return dataset_from_rows(std::move(features), shuffled);
}

// Three implications planted at confidence 1.0: f1=a -> f2=x, f1=b -> f2=y,
// f1=c -> f2=z, each with support >= 0.3; two noise features.
inline aerial::Dataset planted3(std::size_t n, std::uint64_t seed) {
  std::vector<aerial::Feature> features{
      {"f1", {"a", "b", "c"}},
      {"f2", {"x", "y", "z"}},
      {"f3", {"u", "v", "w"}},
      {"f4", {"p", "q", "r"}},
  };
  aerial::Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t f1 = static_cast<std::uint32_t>(i % 3);
    rows.push_back({f1, f1, static_cast<std::uint32_t>(rng.below(3)),
                    static_cast<std::uint32_t>(rng.below(3))});
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::uint32_t>> shuffled;
  shuffled.reserve(n);
  for (const std::size_t i : order) shuffled.push_back(rows[i]);
  return dataset_from_rows(std::move(features), shuffled);
}

// Exact conditionals: P(f2=x | f1=a) = 0.5, P(f2=x | f1=b) = 0,
// P(f2=y | f1=b) = 1. One noise feature. n must be divisible by 4.
inline aerial::Dataset conditional_dataset(std::size_t n, std::uint64_t seed) {
  std::vector<aerial::Feature> features{
      {"f1", {"a", "b"}},
      {"f2", {"x", "y"}},
      {"f3", {"u", "v", "w"}},
  };
  aerial::Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t f1;
    std::uint32_t f2;
    if (i < n / 2) {
      f1 = 0;
      f2 = (i % 2 == 0) ? 0u : 1u;  // x half the time
    } else {
      f1 = 1;
      f2 = 1;  // always y
    }
    rows.push_back({f1, f2, static_cast<std::uint32_t>(rng.below(3))});
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::vector<std::uint32_t>> shuffled;
  shuffled.reserve(n);
  for (const std::size_t i : order) shuffled.push_back(rows[i]);
  return dataset_from_rows(std::move(features), shuffled);
}

// Binary features coupled in identical pairs; every category appears in
// half the rows, so no singleton should be pruned at reasonable tau_a.
inline aerial::Dataset paired_binary(std::size_t feature_count, std::size_t n,
                                     std::uint64_t seed) {
  std::vector<aerial::Feature> features;
  for (std::size_t f = 0; f < feature_count; ++f) {
    features.push_back(
        {"g" + std::to_string(f), {"0", "1"}});
  }
  aerial::Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> row(feature_count, 0);
    for (std::size_t f = 0; f + 1 < feature_count; f += 2) {
      const std::uint32_t v = static_cast<std::uint32_t>(rng.below(2));
      row[f] = v;
      row[f + 1] = v;
    }
    if (feature_count % 2 == 1) {
      row[feature_count - 1] = static_cast<std::uint32_t>(rng.below(2));
    }
    rows.push_back(std::move(row));
  }
  return dataset_from_rows(std::move(features), rows);
}

// Same shape as the Ljubljana breast-cancer table (286 rows, 9 features,
// 43 categories) with planted clinical-style dependencies. Stands in for
// the UCI file, which is not redistributable with this repo.
inline aerial::Dataset breast_surrogate(std::uint64_t seed) {
  std::vector<aerial::Feature> features{
      {"age", {"20-29", "30-39", "40-49", "50-59", "60-69", "70-79"}},
      {"menopause", {"premeno", "peri", "ge40"}},
      {"tumor_size",
       {"0-4", "5-9", "10-14", "15-19", "20-24", "25-29", "30-34", "35-39",
        "40-44", "45-49", "50-54"}},
      {"inv_nodes", {"0", "1-2", "3-5", "6-8", "9-11", "12-14", "15-17", "18+"}},
      {"node_caps", {"no", "yes"}},
      {"deg_malig", {"1", "2", "3"}},
      {"breast", {"left", "right"}},
      {"breast_quad",
       {"left_low", "left_up", "central", "right_up", "right_low", "unknown"}},
      {"class", {"no-recurrence", "recurrence"}},
  };

  aerial::Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(286);
  for (std::size_t i = 0; i < 286; ++i) {
    const std::uint32_t age =
        draw(rng, {0.10, 0.20, 0.25, 0.20, 0.15, 0.10});
    const std::uint32_t menopause = age <= 1 ? 0u : (age <= 3 ? 1u : 2u);
    const std::uint32_t tumor = draw(
        rng, {0.16, 0.15, 0.13, 0.12, 0.10, 0.09, 0.08, 0.07, 0.05, 0.03, 0.02});
    std::uint32_t inv_nodes;
    if (tumor <= 3) {
      inv_nodes = draw(rng, {0.80, 0.15, 0.05});
    } else if (tumor <= 7) {
      inv_nodes = draw(rng, {0.35, 0.30, 0.20, 0.15});
    } else {
      inv_nodes = 2 + draw(rng, {0.30, 0.25, 0.20, 0.15, 0.07, 0.03});
    }
    const std::uint32_t node_caps =
        inv_nodes == 0 ? 0u : (rng.uniform01() < 0.35 ? 0u : 1u);
    std::uint32_t deg_malig;
    if (tumor <= 3) {
      deg_malig = draw(rng, {0.75, 0.20, 0.05});
    } else if (tumor <= 7) {
      deg_malig = draw(rng, {0.25, 0.50, 0.25});
    } else {
      deg_malig = draw(rng, {0.05, 0.35, 0.60});
    }
    const std::uint32_t breast = static_cast<std::uint32_t>(rng.below(2));
    const std::uint32_t quad = draw(rng, {0.30, 0.25, 0.18, 0.12, 0.10, 0.05});
    double p_no_recurrence;
    if (deg_malig == 0) {
      p_no_recurrence = 0.97;
    } else if (deg_malig == 1) {
      p_no_recurrence = 0.75;
    } else {
      p_no_recurrence = 0.15;
    }
    const std::uint32_t cls = rng.uniform01() < p_no_recurrence ? 0u : 1u;
    rows.push_back({age, menopause, tumor, inv_nodes, node_caps, deg_malig,
                    breast, quad, cls});
  }
  return dataset_from_rows(std::move(features), rows);
}

// Random small dataset for oracle cross-checks: 2..6 features of 2..3
// categories, 1..64 rows.
inline aerial::Dataset random_small_dataset(aerial::Rng& rng) {
  const std::size_t k = 2 + rng.below(5);
  std::vector<aerial::Feature> features;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t cats = 2 + rng.below(2);
    aerial::Feature feature;
    feature.name = "f" + std::to_string(f);
    for (std::size_t c = 0; c < cats; ++c) {
      feature.categories.push_back("c" + std::to_string(c));
    }
    features.push_back(std::move(feature));
  }
  const std::size_t n = 1 + rng.below(64);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> row(k);
    for (std::size_t f = 0; f < k; ++f) {
      row[f] = static_cast<std::uint32_t>(
          rng.below(features[f].categories.size()));
    }
    rows.push_back(std::move(row));
  }
  return dataset_from_rows(std::move(features), rows);
}

inline void write_dataset_csv(const aerial::Dataset& dataset,
                              const std::string& path) {
  std::ofstream out(path);
  const auto& schema = *dataset.schema;
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    if (f > 0) out << ',';
    out << schema.features()[f].name;
  }
  out << '\n';
  for (std::size_t r = 0; r < dataset.n; ++r) {
    const auto row = dataset.row(r);
    for (std::size_t f = 0; f < row.size(); ++f) {
      if (f > 0) out << ',';
      out << schema.features()[f].categories[row[f]];
    }
    out << '\n';
  }
}

}  // namespace testsupport
