#pragma once

#include <optional>
#include <span>
#include <string>

#include "aerial/dataset.hpp"
#include "aerial/extract.hpp"

namespace aerial {

// Fraction of transactions containing every item. Empty itemset -> 1.
double support(const Dataset& dataset, std::span<const Item> itemset);

// support(X u Y) / support(X); absent when the antecedent never occurs.
std::optional<double> confidence(const Dataset& dataset, const Rule& rule);

// Fraction of transactions matched by at least one rule's antecedent.
double coverage(const Dataset& dataset, std::span<const Rule> rules);

// Fill per-rule support/confidence in place.
void annotate(const Dataset& dataset, std::vector<Rule>& rules);
void annotate(const Dataset& dataset, std::vector<ItemsetResult>& itemsets);

struct Summary {
  std::size_t rule_count = 0;
  std::optional<double> mean_support;
  std::optional<double> mean_confidence;  // over rules with defined confidence
  double coverage = 0.0;
  double seconds = 0.0;
};

Summary summarize(const Dataset& dataset, std::span<const Rule> rules,
                  double wall_seconds);

std::string summary_to_json(const Summary& summary);
std::string summary_to_table(const Summary& summary);

}  // namespace aerial
