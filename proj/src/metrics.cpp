#include "aerial/metrics.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "aerial/error.hpp"

namespace aerial {

namespace {

bool row_contains(const Dataset& dataset, std::size_t row,
                  std::span<const Item> items) {
  const auto cells = dataset.row(row);
  for (const Item& item : items) {
    if (cells[item.feature] != item.category) return false;
  }
  return true;
}

}  // namespace

double support(const Dataset& dataset, std::span<const Item> itemset) {
  if (dataset.n == 0) return 0.0;
  for (const Item& item : itemset) {
    if (!dataset.schema->valid(item)) {
      fail(ErrorCode::invalid_argument, "item not in schema");
    }
  }
  long count = 0;
  for (std::size_t r = 0; r < dataset.n; ++r) {
    if (row_contains(dataset, r, itemset)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(dataset.n);
}

std::optional<double> confidence(const Dataset& dataset, const Rule& rule) {
  long count_x = 0;
  long count_xy = 0;
  for (std::size_t r = 0; r < dataset.n; ++r) {
    if (!row_contains(dataset, r, rule.antecedent)) continue;
    ++count_x;
    if (dataset.row(r)[rule.consequent.feature] == rule.consequent.category) {
      ++count_xy;
    }
  }
  if (count_x == 0) return std::nullopt;
  return static_cast<double>(count_xy) / static_cast<double>(count_x);
}

double coverage(const Dataset& dataset, std::span<const Rule> rules) {
  if (dataset.n == 0 || rules.empty()) return 0.0;
  long covered = 0;
  for (std::size_t r = 0; r < dataset.n; ++r) {
    for (const Rule& rule : rules) {
      if (row_contains(dataset, r, rule.antecedent)) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(dataset.n);
}

void annotate(const Dataset& dataset, std::vector<Rule>& rules) {
  for (Rule& rule : rules) {
    long count_x = 0;
    long count_xy = 0;
    for (std::size_t r = 0; r < dataset.n; ++r) {
      if (!row_contains(dataset, r, rule.antecedent)) continue;
      ++count_x;
      if (dataset.row(r)[rule.consequent.feature] == rule.consequent.category) {
        ++count_xy;
      }
    }
    rule.support = static_cast<double>(count_xy) /
                   static_cast<double>(std::max<std::size_t>(dataset.n, 1));
    if (count_x > 0) {
      rule.confidence =
          static_cast<double>(count_xy) / static_cast<double>(count_x);
    } else {
      rule.confidence.reset();
    }
  }
}

void annotate(const Dataset& dataset, std::vector<ItemsetResult>& itemsets) {
  for (ItemsetResult& itemset : itemsets) {
    itemset.support = support(dataset, itemset.items);
  }
}

Summary summarize(const Dataset& dataset, std::span<const Rule> rules,
                  double wall_seconds) {
  Summary summary;
  summary.rule_count = rules.size();
  summary.seconds = wall_seconds;
  summary.coverage = coverage(dataset, rules);

  double support_sum = 0.0;
  std::size_t support_count = 0;
  double confidence_sum = 0.0;
  std::size_t confidence_count = 0;
  for (const Rule& rule : rules) {
    double rule_support;
    std::optional<double> rule_confidence;
    if (rule.support) {
      rule_support = *rule.support;
      rule_confidence = rule.confidence;
    } else {
      std::vector<Item> full = rule.antecedent;
      full.push_back(rule.consequent);
      rule_support = support(dataset, full);
      rule_confidence = confidence(dataset, rule);
    }
    support_sum += rule_support;
    ++support_count;
    if (rule_confidence) {
      confidence_sum += *rule_confidence;
      ++confidence_count;
    }
  }
  if (support_count > 0) {
    summary.mean_support = support_sum / static_cast<double>(support_count);
  }
  if (confidence_count > 0) {
    summary.mean_confidence =
        confidence_sum / static_cast<double>(confidence_count);
  }
  return summary;
}

std::string summary_to_json(const Summary& summary) {
  nlohmann::json doc{
      {"rules", summary.rule_count},
      {"time_s", summary.seconds},
      {"coverage", summary.coverage},
      {"mean_support", summary.mean_support
                           ? nlohmann::json(*summary.mean_support)
                           : nlohmann::json(nullptr)},
      {"mean_confidence", summary.mean_confidence
                              ? nlohmann::json(*summary.mean_confidence)
                              : nlohmann::json(nullptr)},
  };
  return doc.dump();
}

std::string summary_to_table(const Summary& summary) {
  char line[160];
  char support_buf[32] = "-";
  char confidence_buf[32] = "-";
  if (summary.mean_support) {
    std::snprintf(support_buf, sizeof(support_buf), "%.3f",
                  *summary.mean_support);
  }
  if (summary.mean_confidence) {
    std::snprintf(confidence_buf, sizeof(confidence_buf), "%.3f",
                  *summary.mean_confidence);
  }
  std::string out = "#Rules    Time (s)    Cov.      Support   Conf.\n";
  std::snprintf(line, sizeof(line), "%-10zu%-12.3f%-10.3f%-10s%-10s",
                summary.rule_count, summary.seconds, summary.coverage,
                support_buf, confidence_buf);
  out += line;
  out += '\n';
  return out;
}

}  // namespace aerial
