#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "aerial/extract.hpp"

namespace aerial {

// JSON lines, one rule per line:
//   {"antecedent": ["f=a", ...], "consequent": "g=b",
//    "antecedent_prob": .., "consequent_prob": .., "support": .., "confidence": ..}
// Optional fields are omitted when absent.
std::string rule_to_json_line(const FeatureSchema& schema, const Rule& rule);
void write_rules_jsonl(const RuleSet& rules, std::ostream& out);
void write_rules_csv(const RuleSet& rules, std::ostream& out);
void write_rules(const RuleSet& rules, const std::string& path,
                 const std::string& format);  // "jsonl" or "csv"

// Reads a JSONL rule file; items are resolved against `schema`.
RuleSet read_rules_jsonl(std::istream& in,
                         std::shared_ptr<const FeatureSchema> schema);
RuleSet read_rules_jsonl(const std::string& path,
                         std::shared_ptr<const FeatureSchema> schema);

void write_itemsets_jsonl(const ItemsetSet& itemsets, std::ostream& out);
void write_itemsets_csv(const ItemsetSet& itemsets, std::ostream& out);
void write_itemsets(const ItemsetSet& itemsets, const std::string& path,
                    const std::string& format);

}  // namespace aerial
