#include "aerial/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "aerial/error.hpp"

namespace aerial {

namespace {

using FlatItemset = std::vector<std::uint32_t>;  // flat indices, ascending

struct FpNode {
  std::uint32_t item = 0;
  long count = 0;
  int parent = -1;
  int first_child = -1;
  int next_sibling = -1;
  int header_next = -1;
};

// Prefix tree over transactions with one global item order (frequency
// descending, flat index ascending). Paths are inserted already sorted, so
// conditional pattern bases stay consistent without re-sorting.
struct FpTree {
  std::vector<FpNode> nodes;       // nodes[0] is the root
  std::map<std::uint32_t, int> headers;

  FpTree() { nodes.emplace_back(); }

  void insert(const std::vector<std::uint32_t>& path, long count) {
    int current = 0;
    for (const std::uint32_t item : path) {
      int child = nodes[current].first_child;
      while (child != -1 && nodes[child].item != item) {
        child = nodes[child].next_sibling;
      }
      if (child == -1) {
        child = static_cast<int>(nodes.size());
        FpNode node;
        node.item = item;
        node.parent = current;
        node.next_sibling = nodes[current].first_child;
        nodes[current].first_child = child;
        auto [it, inserted] = headers.emplace(item, -1);
        node.header_next = it->second;
        it->second = child;
        nodes.push_back(node);
      }
      nodes[child].count += count;
      current = child;
    }
  }
};

struct Miner {
  std::size_t n_rows = 0;
  double min_support = 0.0;
  std::size_t max_itemset_size = 0;
  std::vector<std::size_t> order_rank;  // item -> position in global order
  std::map<FlatItemset, long> frequent;

  bool meets_support(long count) const {
    return static_cast<double>(count) / static_cast<double>(n_rows) >=
           min_support;
  }

  void mine(const FpTree& tree, const FlatItemset& suffix) {
    // iterate least-frequent-first so conditional trees shrink
    std::vector<std::pair<std::uint32_t, int>> header_items(
        tree.headers.begin(), tree.headers.end());
    std::sort(header_items.begin(), header_items.end(),
              [&](const auto& a, const auto& b) {
                return order_rank[a.first] > order_rank[b.first];
              });

    for (const auto& [item, head] : header_items) {
      long count = 0;
      for (int node = head; node != -1; node = tree.nodes[node].header_next) {
        count += tree.nodes[node].count;
      }
      if (!meets_support(count)) continue;

      FlatItemset itemset = suffix;
      itemset.push_back(item);
      std::sort(itemset.begin(), itemset.end());
      frequent.emplace(itemset, count);
      if (itemset.size() >= max_itemset_size) continue;

      FpTree conditional;
      for (int node = head; node != -1; node = tree.nodes[node].header_next) {
        std::vector<std::uint32_t> path;
        for (int up = tree.nodes[node].parent; up > 0;
             up = tree.nodes[up].parent) {
          path.push_back(tree.nodes[up].item);
        }
        if (path.empty()) continue;
        std::reverse(path.begin(), path.end());
        conditional.insert(path, tree.nodes[node].count);
      }
      if (!conditional.headers.empty()) {
        mine(conditional, itemset);
      }
    }
  }
};

Rule make_rule(const FeatureSchema& schema, const FlatItemset& antecedent,
               std::uint32_t consequent, double support, double confidence) {
  Rule rule;
  rule.antecedent.reserve(antecedent.size());
  for (const std::uint32_t flat : antecedent) {
    rule.antecedent.push_back(schema.item_at(flat));
  }
  rule.consequent = schema.item_at(consequent);
  rule.support = support;
  rule.confidence = confidence;
  return rule;
}

}  // namespace

void MineParams::validate() const {
  if (!(min_support > 0.0 && min_support <= 1.0)) {
    fail(ErrorCode::invalid_argument, "min support must lie in (0, 1]");
  }
  if (!(min_confidence > 0.0 && min_confidence <= 1.0)) {
    fail(ErrorCode::invalid_argument, "min confidence must lie in (0, 1]");
  }
  if (max_antecedents < 1) {
    fail(ErrorCode::invalid_argument, "max antecedents must be at least 1");
  }
}

RuleSet mine_exhaustive(const Dataset& dataset, const MineParams& params) {
  params.validate();
  if (dataset.n == 0 || !dataset.schema) {
    fail(ErrorCode::invalid_argument, "cannot mine an empty dataset");
  }
  const auto start = std::chrono::steady_clock::now();
  const FeatureSchema& schema = *dataset.schema;
  const std::size_t dim = schema.total_dim();

  std::vector<long> item_count(dim, 0);
  for (std::size_t r = 0; r < dataset.n; ++r) {
    const auto row = dataset.row(r);
    for (std::size_t f = 0; f < row.size(); ++f) {
      ++item_count[schema.offset(f) + row[f]];
    }
  }

  Miner miner;
  miner.n_rows = dataset.n;
  miner.min_support = params.min_support;
  miner.max_itemset_size = static_cast<std::size_t>(params.max_antecedents) + 1;

  // global order: frequency descending, flat index ascending
  std::vector<std::uint32_t> frequent_items;
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (miner.meets_support(item_count[i])) frequent_items.push_back(i);
  }
  std::sort(frequent_items.begin(), frequent_items.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (item_count[a] != item_count[b]) {
                return item_count[a] > item_count[b];
              }
              return a < b;
            });
  miner.order_rank.assign(dim, dim);
  for (std::size_t pos = 0; pos < frequent_items.size(); ++pos) {
    miner.order_rank[frequent_items[pos]] = pos;
  }

  FpTree tree;
  std::vector<std::uint32_t> path;
  for (std::size_t r = 0; r < dataset.n; ++r) {
    const auto row = dataset.row(r);
    path.clear();
    for (std::size_t f = 0; f < row.size(); ++f) {
      const std::uint32_t flat =
          static_cast<std::uint32_t>(schema.offset(f)) + row[f];
      if (miner.order_rank[flat] < dim) path.push_back(flat);
    }
    std::sort(path.begin(), path.end(), [&](std::uint32_t a, std::uint32_t b) {
      return miner.order_rank[a] < miner.order_rank[b];
    });
    if (!path.empty()) tree.insert(path, 1);
  }

  miner.mine(tree, {});

  RuleSet out;
  out.schema = dataset.schema;
  const double n = static_cast<double>(dataset.n);
  for (const auto& [itemset, count] : miner.frequent) {
    if (itemset.size() < 2) continue;
    for (std::size_t drop = 0; drop < itemset.size(); ++drop) {
      if (itemset.size() - 1 >
          static_cast<std::size_t>(params.max_antecedents)) {
        break;
      }
      FlatItemset antecedent;
      antecedent.reserve(itemset.size() - 1);
      for (std::size_t i = 0; i < itemset.size(); ++i) {
        if (i != drop) antecedent.push_back(itemset[i]);
      }
      const long antecedent_count = miner.frequent.at(antecedent);
      const double confidence =
          static_cast<double>(count) / static_cast<double>(antecedent_count);
      if (confidence >= params.min_confidence) {
        out.rules.push_back(make_rule(schema, antecedent, itemset[drop],
                                      static_cast<double>(count) / n,
                                      confidence));
      }
    }
  }
  canonicalize(out.rules);
  out.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

RuleSet brute_force_oracle(const Dataset& dataset, const MineParams& params) {
  params.validate();
  if (dataset.n == 0 || !dataset.schema) {
    fail(ErrorCode::invalid_argument, "cannot mine an empty dataset");
  }
  const FeatureSchema& schema = *dataset.schema;
  if (schema.total_dim() > kOracleMaxCategories) {
    fail(ErrorCode::invalid_argument,
         "oracle guard: category universe exceeds " +
             std::to_string(kOracleMaxCategories));
  }

  const std::vector<Item> items = schema.all_items();
  const double n = static_cast<double>(dataset.n);

  const auto contains = [&](std::size_t row, const std::vector<Item>& set) {
    const auto cells = dataset.row(row);
    for (const Item& item : set) {
      if (cells[item.feature] != item.category) return false;
    }
    return true;
  };

  RuleSet out;
  out.schema = dataset.schema;

  std::vector<Item> antecedent;
  const auto visit = [&](const auto& self, std::size_t start) -> void {
    if (!antecedent.empty()) {
      long count_x = 0;
      std::vector<char> in_row(dataset.n, 0);
      for (std::size_t r = 0; r < dataset.n; ++r) {
        if (contains(r, antecedent)) {
          in_row[r] = 1;
          ++count_x;
        }
      }
      if (count_x > 0) {
        for (const Item& consequent : items) {
          bool shares_feature = false;
          for (const Item& item : antecedent) {
            if (item.feature == consequent.feature) {
              shares_feature = true;
              break;
            }
          }
          if (shares_feature) continue;
          long count_xy = 0;
          for (std::size_t r = 0; r < dataset.n; ++r) {
            if (in_row[r] &&
                dataset.row(r)[consequent.feature] == consequent.category) {
              ++count_xy;
            }
          }
          const double support = static_cast<double>(count_xy) / n;
          const double confidence =
              static_cast<double>(count_xy) / static_cast<double>(count_x);
          if (support >= params.min_support &&
              confidence >= params.min_confidence) {
            Rule rule;
            rule.antecedent = antecedent;
            rule.consequent = consequent;
            rule.support = support;
            rule.confidence = confidence;
            out.rules.push_back(std::move(rule));
          }
        }
      }
    }
    if (antecedent.size() ==
        static_cast<std::size_t>(params.max_antecedents)) {
      return;
    }
    for (std::size_t i = start; i < items.size(); ++i) {
      bool shares_feature = false;
      for (const Item& item : antecedent) {
        if (item.feature == items[i].feature) {
          shares_feature = true;
          break;
        }
      }
      if (shares_feature) continue;
      antecedent.push_back(items[i]);
      self(self, i + 1);
      antecedent.pop_back();
    }
  };
  visit(visit, 0);

  canonicalize(out.rules);
  return out;
}

}  // namespace aerial
