#include "aerial/rule_io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "aerial/error.hpp"

namespace aerial {

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (const char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted += '"';
  return quoted;
}

std::string join_items(const FeatureSchema& schema,
                       const std::vector<Item>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ';';
    out += schema.item_name(items[i]);
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::io, "cannot write " + path);
  }
  return out;
}

void put_optional(nlohmann::json& doc, const char* key,
                  const std::optional<double>& value) {
  if (value) doc[key] = *value;
}

}  // namespace

std::string rule_to_json_line(const FeatureSchema& schema, const Rule& rule) {
  nlohmann::json antecedent = nlohmann::json::array();
  for (const Item& item : rule.antecedent) {
    antecedent.push_back(schema.item_name(item));
  }
  nlohmann::json doc{{"antecedent", antecedent},
                     {"consequent", schema.item_name(rule.consequent)}};
  put_optional(doc, "antecedent_prob", rule.antecedent_prob);
  put_optional(doc, "consequent_prob", rule.consequent_prob);
  put_optional(doc, "support", rule.support);
  put_optional(doc, "confidence", rule.confidence);
  return doc.dump();
}

void write_rules_jsonl(const RuleSet& rules, std::ostream& out) {
  for (const Rule& rule : rules.rules) {
    out << rule_to_json_line(*rules.schema, rule) << '\n';
  }
}

void write_rules_csv(const RuleSet& rules, std::ostream& out) {
  out << "antecedent,consequent,antecedent_prob,consequent_prob,support,"
         "confidence\n";
  for (const Rule& rule : rules.rules) {
    out << csv_field(join_items(*rules.schema, rule.antecedent)) << ','
        << csv_field(rules.schema->item_name(rule.consequent)) << ',';
    if (rule.antecedent_prob) out << *rule.antecedent_prob;
    out << ',';
    if (rule.consequent_prob) out << *rule.consequent_prob;
    out << ',';
    if (rule.support) out << *rule.support;
    out << ',';
    if (rule.confidence) out << *rule.confidence;
    out << '\n';
  }
}

void write_rules(const RuleSet& rules, const std::string& path,
                 const std::string& format) {
  std::ofstream out = open_out(path);
  if (format == "jsonl" || format == "json") {
    write_rules_jsonl(rules, out);
  } else if (format == "csv") {
    write_rules_csv(rules, out);
  } else {
    fail(ErrorCode::invalid_argument, "unknown rule format '" + format + "'");
  }
}

RuleSet read_rules_jsonl(std::istream& in,
                         std::shared_ptr<const FeatureSchema> schema) {
  RuleSet out;
  out.schema = schema;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded()) {
      fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                                 ": malformed rule JSON");
    }
    Rule rule;
    for (const auto& name : doc.at("antecedent")) {
      const auto item = schema->parse_item(name.get<std::string>());
      if (!item) {
        fail(ErrorCode::schema_mismatch,
             "line " + std::to_string(line_no) + ": unknown item '" +
                 name.get<std::string>() + "'");
      }
      rule.antecedent.push_back(*item);
    }
    const std::string consequent_name = doc.at("consequent").get<std::string>();
    const auto consequent = schema->parse_item(consequent_name);
    if (!consequent) {
      fail(ErrorCode::schema_mismatch, "line " + std::to_string(line_no) +
                                           ": unknown item '" +
                                           consequent_name + "'");
    }
    rule.consequent = *consequent;
    if (doc.contains("antecedent_prob")) {
      rule.antecedent_prob = doc.at("antecedent_prob").get<double>();
    }
    if (doc.contains("consequent_prob")) {
      rule.consequent_prob = doc.at("consequent_prob").get<double>();
    }
    if (doc.contains("support")) {
      rule.support = doc.at("support").get<double>();
    }
    if (doc.contains("confidence")) {
      rule.confidence = doc.at("confidence").get<double>();
    }
    std::sort(rule.antecedent.begin(), rule.antecedent.end());
    out.rules.push_back(std::move(rule));
  }
  return out;
}

RuleSet read_rules_jsonl(const std::string& path,
                         std::shared_ptr<const FeatureSchema> schema) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io, "cannot open " + path);
  }
  return read_rules_jsonl(in, std::move(schema));
}

void write_itemsets_jsonl(const ItemsetSet& itemsets, std::ostream& out) {
  for (const ItemsetResult& itemset : itemsets.itemsets) {
    nlohmann::json items = nlohmann::json::array();
    for (const Item& item : itemset.items) {
      items.push_back(itemsets.schema->item_name(item));
    }
    nlohmann::json doc{{"items", items}, {"probe_prob", itemset.probe_prob}};
    if (itemset.support) doc["support"] = *itemset.support;
    out << doc.dump() << '\n';
  }
}

void write_itemsets_csv(const ItemsetSet& itemsets, std::ostream& out) {
  out << "items,probe_prob,support\n";
  for (const ItemsetResult& itemset : itemsets.itemsets) {
    out << csv_field(join_items(*itemsets.schema, itemset.items)) << ','
        << itemset.probe_prob << ',';
    if (itemset.support) out << *itemset.support;
    out << '\n';
  }
}

void write_itemsets(const ItemsetSet& itemsets, const std::string& path,
                    const std::string& format) {
  std::ofstream out = open_out(path);
  if (format == "jsonl" || format == "json") {
    write_itemsets_jsonl(itemsets, out);
  } else if (format == "csv") {
    write_itemsets_csv(itemsets, out);
  } else {
    fail(ErrorCode::invalid_argument, "unknown itemset format '" + format + "'");
  }
}

}  // namespace aerial
