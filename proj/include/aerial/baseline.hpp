#pragma once

#include "aerial/dataset.hpp"
#include "aerial/extract.hpp"

namespace aerial {

struct MineParams {
  double min_support = 0.5;
  double min_confidence = 0.8;
  int max_antecedents = 2;

  void validate() const;
};

// Exhaustive miner: frequent itemsets grown over a frequency-sorted prefix
// tree, then single-consequent rules filtered on support and confidence.
// Support and confidence are always populated.
RuleSet mine_exhaustive(const Dataset& dataset, const MineParams& params);

// Direct enumeration over transactions; reference answer for
// mine_exhaustive. Guarded to small category universes.
inline constexpr std::size_t kOracleMaxCategories = 24;
RuleSet brute_force_oracle(const Dataset& dataset, const MineParams& params);

}  // namespace aerial
