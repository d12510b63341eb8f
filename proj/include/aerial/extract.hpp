#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "aerial/autoencoder.hpp"
#include "aerial/schema.hpp"

namespace aerial {

// Antecedent items on pairwise distinct features, single consequent item on
// a feature outside the antecedent.
struct Rule {
  std::vector<Item> antecedent;  // sorted by flat index
  Item consequent;
  std::optional<double> antecedent_prob;  // min marked output at probe time
  std::optional<double> consequent_prob;
  std::optional<double> support;
  std::optional<double> confidence;
};

bool same_structure(const Rule& a, const Rule& b);
// Lexicographic by (antecedent items, consequent item).
bool rule_less(const Rule& a, const Rule& b);
void canonicalize(std::vector<Rule>& rules);

struct ItemsetResult {
  std::vector<Item> items;  // sorted by flat index
  double probe_prob = 0.0;  // min marked output
  std::optional<double> support;
};

struct ExtractConfig {
  int max_antecedents = 2;
  double tau_a = 0.5;
  double tau_c = 0.8;
  double tau_i = 0.5;
  std::optional<std::vector<Item>> antecedent_pool;  // item constraints
  std::optional<std::vector<Item>> consequent_pool;
  std::optional<std::size_t> top_k;
  int workers = 1;  // <= 0: hardware concurrency

  void validate(const FeatureSchema& schema) const;
};

struct ExtractStats {
  std::size_t probes = 0;             // forward passes performed
  std::size_t pruned_categories = 0;  // singletons dropped after level 1
  double seconds = 0.0;
};

struct RuleSet {
  std::shared_ptr<const FeatureSchema> schema;
  std::vector<Rule> rules;
  ExtractStats stats;
};

struct ItemsetSet {
  std::shared_ptr<const FeatureSchema> schema;
  std::vector<ItemsetResult> itemsets;
  ExtractStats stats;
};

// One probe block per feature, filled with 1/c_i.
std::vector<double> uniform_vector(const FeatureSchema& schema);

// Marked copy of `base`: each item's entry set to 1, its siblings to 0.
// Items must reference pairwise distinct features.
std::vector<double> mark(std::span<const double> base,
                         const FeatureSchema& schema,
                         std::span<const Item> items);

// Probe-based rule extraction. Honors the config's item constraints when
// present; the antecedent pool shrinks by low-support pruning after level 1
// while the consequent pool stays fixed.
RuleSet extract_rules(const ForwardModel& model, const ExtractConfig& config);

// Same probe loop keyed on tau_i, no consequent scan.
ItemsetSet extract_itemsets(const ForwardModel& model,
                            const ExtractConfig& config);

// extract_rules with mandatory antecedent/consequent item pools.
RuleSet extract_constrained(const ForwardModel& model,
                            const ExtractConfig& config);

// Per consequent, keep the k rules with the highest antecedent probability;
// ties broken by lexicographic antecedent order.
std::vector<Rule> top_k_filter(std::vector<Rule> rules, std::size_t k);

}  // namespace aerial
