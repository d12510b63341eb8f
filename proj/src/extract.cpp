#include "aerial/extract.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "aerial/error.hpp"

namespace aerial {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Item> canonical_pool(const FeatureSchema& schema,
                                 const std::optional<std::vector<Item>>& pool) {
  std::vector<Item> items;
  if (pool) {
    if (pool->empty()) {
      fail(ErrorCode::invalid_argument, "constraint item set is empty");
    }
    items = *pool;
    for (const Item& item : items) {
      if (!schema.valid(item)) {
        fail(ErrorCode::invalid_argument,
             "constraint item (" + std::to_string(item.feature) + "," +
                 std::to_string(item.category) + ") not in schema");
      }
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
  } else {
    items = schema.all_items();
  }
  return items;
}

// Combinations of `size` pool items on pairwise distinct features, in
// lexicographic pool order, flattened with stride `size`.
void valid_combinations(const std::vector<Item>& pool, int size,
                        std::vector<Item>& current, std::size_t start,
                        std::vector<Item>& out) {
  if (static_cast<int>(current.size()) == size) {
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    bool feature_taken = false;
    for (const Item& chosen : current) {
      if (chosen.feature == pool[i].feature) {
        feature_taken = true;
        break;
      }
    }
    if (feature_taken) continue;
    current.push_back(pool[i]);
    valid_combinations(pool, size, current, i + 1, out);
    current.pop_back();
  }
}

std::vector<Item> level_combinations(const std::vector<Item>& pool, int size) {
  std::vector<Item> out;
  std::vector<Item> current;
  current.reserve(static_cast<std::size_t>(size));
  valid_combinations(pool, size, current, 0, out);
  return out;
}

enum class Mode { rules, itemsets };

struct WorkerResult {
  std::vector<Rule> rules;
  std::vector<ItemsetResult> itemsets;
  std::vector<std::size_t> low_support;  // combo indices (level 1 only)
};

struct LevelContext {
  const ForwardModel* model = nullptr;
  const FeatureSchema* schema = nullptr;
  const std::vector<double>* base = nullptr;
  const std::vector<Item>* combos = nullptr;
  const std::vector<Item>* consequents = nullptr;
  int level = 1;
  Mode mode = Mode::rules;
  double accept_threshold = 0.0;  // tau_a or tau_i
  double tau_c = 0.0;
};

void process_range(const LevelContext& ctx, std::size_t begin, std::size_t end,
                   WorkerResult& result) {
  const std::size_t stride = static_cast<std::size_t>(ctx.level);
  for (std::size_t idx = begin; idx < end; ++idx) {
    const Item* combo = ctx.combos->data() + idx * stride;
    const std::span<const Item> items(combo, stride);
    const std::vector<double> probe = mark(*ctx.base, *ctx.schema, items);
    const std::vector<double> output = ctx.model->forward(probe);

    double score = 1.0;
    for (const Item& item : items) {
      score = std::min(score, output[ctx.schema->flat_index(item)]);
    }

    if (score < ctx.accept_threshold) {
      if (ctx.level == 1) result.low_support.push_back(idx);
      continue;
    }

    if (ctx.mode == Mode::itemsets) {
      ItemsetResult itemset;
      itemset.items.assign(items.begin(), items.end());
      itemset.probe_prob = score;
      result.itemsets.push_back(std::move(itemset));
      continue;
    }

    for (const Item& candidate : *ctx.consequents) {
      bool same_feature = false;
      for (const Item& item : items) {
        if (item.feature == candidate.feature) {
          same_feature = true;
          break;
        }
      }
      if (same_feature) continue;
      const double prob = output[ctx.schema->flat_index(candidate)];
      if (prob > ctx.tau_c) {
        Rule rule;
        rule.antecedent.assign(items.begin(), items.end());
        rule.consequent = candidate;
        rule.antecedent_prob = score;
        rule.consequent_prob = prob;
        result.rules.push_back(std::move(rule));
      }
    }
  }
}

struct EngineOutput {
  std::vector<Rule> rules;
  std::vector<ItemsetResult> itemsets;
  ExtractStats stats;
};

EngineOutput run_engine(const ForwardModel& model, const ExtractConfig& config,
                        Mode mode) {
  const auto schema_ptr = model.schema_ptr();
  const FeatureSchema& schema = *schema_ptr;
  config.validate(schema);

  const auto start_time = Clock::now();
  std::vector<Item> pool = canonical_pool(schema, config.antecedent_pool);
  const std::vector<Item> consequents =
      canonical_pool(schema, config.consequent_pool);
  const std::vector<double> base = uniform_vector(schema);

  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
  }

  EngineOutput out;
  for (int level = 1; level <= config.max_antecedents; ++level) {
    const std::vector<Item> combos = level_combinations(pool, level);
    const std::size_t combo_count =
        combos.size() / static_cast<std::size_t>(level);
    if (combo_count == 0) continue;
    out.stats.probes += combo_count;

    LevelContext ctx;
    ctx.model = &model;
    ctx.schema = &schema;
    ctx.base = &base;
    ctx.combos = &combos;
    ctx.consequents = &consequents;
    ctx.level = level;
    ctx.mode = mode;
    ctx.accept_threshold = mode == Mode::rules ? config.tau_a : config.tau_i;
    ctx.tau_c = config.tau_c;

    const std::size_t n_workers = std::min<std::size_t>(
        static_cast<std::size_t>(workers), combo_count);
    std::vector<WorkerResult> results(n_workers);
    if (n_workers <= 1) {
      process_range(ctx, 0, combo_count, results[0]);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(n_workers);
      const std::size_t chunk = (combo_count + n_workers - 1) / n_workers;
      for (std::size_t w = 0; w < n_workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(combo_count, begin + chunk);
        threads.emplace_back(
            [&, begin, end, w] { process_range(ctx, begin, end, results[w]); });
      }
      for (std::thread& t : threads) t.join();
    }

    std::vector<char> low(pool.size(), 0);
    for (WorkerResult& result : results) {
      std::move(result.rules.begin(), result.rules.end(),
                std::back_inserter(out.rules));
      std::move(result.itemsets.begin(), result.itemsets.end(),
                std::back_inserter(out.itemsets));
      if (level == 1) {
        for (const std::size_t idx : result.low_support) low[idx] = 1;
      }
    }

    if (level == 1) {
      std::vector<Item> kept;
      kept.reserve(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!low[i]) kept.push_back(pool[i]);
      }
      out.stats.pruned_categories = pool.size() - kept.size();
      pool = std::move(kept);
    }
  }

  canonicalize(out.rules);
  std::sort(out.itemsets.begin(), out.itemsets.end(),
            [](const ItemsetResult& a, const ItemsetResult& b) {
              return std::lexicographical_compare(a.items.begin(), a.items.end(),
                                                  b.items.begin(), b.items.end());
            });
  out.stats.seconds = seconds_since(start_time);
  return out;
}

}  // namespace

void ExtractConfig::validate(const FeatureSchema& schema) const {
  if (max_antecedents < 1) {
    fail(ErrorCode::invalid_argument, "max antecedents must be at least 1");
  }
  for (const double tau : {tau_a, tau_c, tau_i}) {
    if (!(tau > 0.0 && tau < 1.0)) {
      fail(ErrorCode::invalid_argument, "thresholds must lie in (0, 1)");
    }
  }
  for (const auto& pool : {antecedent_pool, consequent_pool}) {
    if (!pool) continue;
    if (pool->empty()) {
      fail(ErrorCode::invalid_argument, "constraint item set is empty");
    }
    for (const Item& item : *pool) {
      if (!schema.valid(item)) {
        fail(ErrorCode::invalid_argument,
             "constraint item (" + std::to_string(item.feature) + "," +
                 std::to_string(item.category) + ") not in schema");
      }
    }
  }
}

bool same_structure(const Rule& a, const Rule& b) {
  return a.consequent == b.consequent && a.antecedent == b.antecedent;
}

bool rule_less(const Rule& a, const Rule& b) {
  if (a.antecedent != b.antecedent) {
    return std::lexicographical_compare(a.antecedent.begin(), a.antecedent.end(),
                                        b.antecedent.begin(), b.antecedent.end());
  }
  return a.consequent < b.consequent;
}

void canonicalize(std::vector<Rule>& rules) {
  std::sort(rules.begin(), rules.end(), rule_less);
  rules.erase(std::unique(rules.begin(), rules.end(), same_structure),
              rules.end());
}

std::vector<double> uniform_vector(const FeatureSchema& schema) {
  std::vector<double> v(schema.total_dim());
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    const std::size_t begin = schema.offset(f);
    const std::size_t count = schema.category_count(f);
    const double p = 1.0 / static_cast<double>(count);
    for (std::size_t c = 0; c < count; ++c) {
      v[begin + c] = p;
    }
  }
  return v;
}

std::vector<double> mark(std::span<const double> base,
                         const FeatureSchema& schema,
                         std::span<const Item> items) {
  if (base.size() != schema.total_dim()) {
    fail(ErrorCode::invalid_argument, "base vector length mismatch");
  }
  std::vector<double> v(base.begin(), base.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!schema.valid(items[i])) {
      fail(ErrorCode::invalid_argument, "marked item not in schema");
    }
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (items[i].feature == items[j].feature) {
        fail(ErrorCode::invalid_argument,
             "cannot mark two categories of feature '" +
                 schema.features()[items[i].feature].name + "'");
      }
    }
  }
  for (const Item& item : items) {
    const std::size_t begin = schema.offset(item.feature);
    const std::size_t count = schema.category_count(item.feature);
    for (std::size_t c = 0; c < count; ++c) {
      v[begin + c] = 0.0;
    }
    v[begin + item.category] = 1.0;
  }
  return v;
}

RuleSet extract_rules(const ForwardModel& model, const ExtractConfig& config) {
  EngineOutput out = run_engine(model, config, Mode::rules);
  RuleSet rules;
  rules.schema = model.schema_ptr();
  rules.rules = std::move(out.rules);
  rules.stats = out.stats;
  if (config.top_k) {
    rules.rules = top_k_filter(std::move(rules.rules), *config.top_k);
  }
  return rules;
}

ItemsetSet extract_itemsets(const ForwardModel& model,
                            const ExtractConfig& config) {
  EngineOutput out = run_engine(model, config, Mode::itemsets);
  ItemsetSet itemsets;
  itemsets.schema = model.schema_ptr();
  itemsets.itemsets = std::move(out.itemsets);
  itemsets.stats = out.stats;
  return itemsets;
}

RuleSet extract_constrained(const ForwardModel& model,
                            const ExtractConfig& config) {
  if (!config.antecedent_pool || !config.consequent_pool) {
    fail(ErrorCode::invalid_argument,
         "constrained extraction requires antecedent and consequent item sets");
  }
  return extract_rules(model, config);
}

std::vector<Rule> top_k_filter(std::vector<Rule> rules, std::size_t k) {
  if (k == 0) return {};
  for (const Rule& rule : rules) {
    if (!rule.antecedent_prob) {
      fail(ErrorCode::invalid_argument,
           "top-k filter requires antecedent probe probabilities");
    }
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.consequent != b.consequent) return a.consequent < b.consequent;
    if (*a.antecedent_prob != *b.antecedent_prob) {
      return *a.antecedent_prob > *b.antecedent_prob;
    }
    return std::lexicographical_compare(a.antecedent.begin(), a.antecedent.end(),
                                        b.antecedent.begin(), b.antecedent.end());
  });
  std::vector<Rule> kept;
  kept.reserve(rules.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i > 0 && rules[i].consequent == rules[i - 1].consequent) {
      ++run;
    } else {
      run = 0;
    }
    if (run < k) kept.push_back(std::move(rules[i]));
  }
  canonicalize(kept);
  return kept;
}

}  // namespace aerial
