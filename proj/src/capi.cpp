#include "aerial.h"

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "aerial/autoencoder.hpp"
#include "aerial/baseline.hpp"
#include "aerial/dataset.hpp"
#include "aerial/error.hpp"
#include "aerial/extract.hpp"
#include "aerial/metrics.hpp"
#include "aerial/rule_io.hpp"
#include "aerial/version.hpp"

namespace {

thread_local std::string g_last_error;

aerial_status status_of(aerial::ErrorCode code) {
  switch (code) {
    case aerial::ErrorCode::invalid_argument:
      return AERIAL_ERR_INVALID_ARGUMENT;
    case aerial::ErrorCode::io:
      return AERIAL_ERR_IO;
    case aerial::ErrorCode::parse:
      return AERIAL_ERR_PARSE;
    case aerial::ErrorCode::schema_mismatch:
      return AERIAL_ERR_SCHEMA_MISMATCH;
    case aerial::ErrorCode::numeric:
      return AERIAL_ERR_NUMERIC;
  }
  return AERIAL_ERR_INVALID_ARGUMENT;
}

template <typename Fn>
aerial_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return AERIAL_OK;
  } catch (const aerial::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AERIAL_ERR_INVALID_ARGUMENT;
  }
}

char* copy_string(const std::string& text) {
  char* out = new (std::nothrow) char[text.size() + 1];
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::optional<std::vector<aerial::Item>> parse_item_list(
    const aerial::FeatureSchema& schema, const char* const* names,
    size_t count) {
  if (!names || count == 0) return std::nullopt;
  std::vector<aerial::Item> items;
  items.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const auto item = schema.parse_item(names[i]);
    if (!item) {
      aerial::fail(aerial::ErrorCode::invalid_argument,
                   std::string("constraint item '") + names[i] +
                       "' not in schema");
    }
    items.push_back(*item);
  }
  return items;
}

aerial::ExtractConfig to_config(const aerial::FeatureSchema& schema,
                                const aerial_extract_options& options) {
  aerial::ExtractConfig config;
  config.max_antecedents = options.max_antecedents;
  config.tau_a = options.tau_a;
  config.tau_c = options.tau_c;
  config.tau_i = options.tau_i;
  if (options.top_k > 0) config.top_k = options.top_k;
  config.workers = options.workers;
  config.antecedent_pool = parse_item_list(schema, options.antecedent_items,
                                           options.antecedent_item_count);
  config.consequent_pool = parse_item_list(schema, options.consequent_items,
                                           options.consequent_item_count);
  return config;
}

}  // namespace

struct aerial_dataset {
  aerial::Dataset dataset;
};

struct aerial_model {
  aerial::AutoencoderModel model;
};

struct aerial_rules {
  aerial::RuleSet rules;
};

struct aerial_itemsets {
  aerial::ItemsetSet itemsets;
};

extern "C" {

const char* aerial_version(void) { return aerial::kVersion; }

const char* aerial_last_error(void) { return g_last_error.c_str(); }

void aerial_string_free(char* text) { delete[] text; }

void aerial_csv_options_init(aerial_csv_options* options) {
  if (!options) return;
  options->delimiter = ',';
  options->has_header = 1;
  options->bins = 10;
}

aerial_status aerial_dataset_load_csv(const char* path,
                                      const aerial_csv_options* options,
                                      aerial_dataset** out) {
  return guarded([&] {
    if (!path || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial_csv_options defaults;
    aerial_csv_options_init(&defaults);
    const aerial_csv_options& opts = options ? *options : defaults;
    aerial::LoadOptions load;
    load.csv.delimiter = opts.delimiter;
    load.csv.has_header = opts.has_header != 0;
    load.bins = opts.bins;
    auto handle = std::make_unique<aerial_dataset>();
    handle->dataset = aerial::load_dataset(path, load).dataset;
    *out = handle.release();
  });
}

void aerial_dataset_free(aerial_dataset* dataset) { delete dataset; }

size_t aerial_dataset_rows(const aerial_dataset* dataset) {
  return dataset ? dataset->dataset.n : 0;
}

size_t aerial_dataset_features(const aerial_dataset* dataset) {
  return dataset ? dataset->dataset.k() : 0;
}

size_t aerial_dataset_dim(const aerial_dataset* dataset) {
  return dataset && dataset->dataset.schema
             ? dataset->dataset.schema->total_dim()
             : 0;
}

aerial_status aerial_dataset_schema_json(const aerial_dataset* dataset,
                                         char** out) {
  return guarded([&] {
    if (!dataset || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    *out = copy_string(dataset->dataset.schema->to_json_string());
  });
}

uint64_t aerial_dataset_schema_hash(const aerial_dataset* dataset) {
  return dataset && dataset->dataset.schema ? dataset->dataset.schema->hash()
                                            : 0;
}

void aerial_train_options_init(aerial_train_options* options) {
  if (!options) return;
  aerial::TrainConfig defaults;
  options->learning_rate = defaults.learning_rate;
  options->weight_decay = defaults.weight_decay;
  options->epochs = defaults.epochs;
  options->batch_size = defaults.batch_size;
  options->hidden_layers = defaults.hidden_layers;
  options->seed = defaults.seed;
}

aerial_status aerial_train(const aerial_dataset* dataset,
                           const aerial_train_options* options,
                           aerial_model** out) {
  return guarded([&] {
    if (!dataset || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial_train_options defaults;
    aerial_train_options_init(&defaults);
    const aerial_train_options& opts = options ? *options : defaults;
    aerial::TrainConfig config;
    config.learning_rate = opts.learning_rate;
    config.weight_decay = opts.weight_decay;
    config.epochs = opts.epochs;
    config.batch_size = opts.batch_size;
    config.hidden_layers = opts.hidden_layers;
    config.seed = opts.seed;
    auto handle = std::make_unique<aerial_model>(
        aerial_model{aerial::train(dataset->dataset, config).model});
    *out = handle.release();
  });
}

void aerial_model_free(aerial_model* model) { delete model; }

aerial_status aerial_model_save(const aerial_model* model, const char* path) {
  return guarded([&] {
    if (!model || !path) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    model->model.save(path);
  });
}

aerial_status aerial_model_load(const char* path, aerial_model** out) {
  return guarded([&] {
    if (!path || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    auto handle = std::make_unique<aerial_model>(
        aerial_model{aerial::AutoencoderModel::load(path)});
    *out = handle.release();
  });
}

uint64_t aerial_model_schema_hash(const aerial_model* model) {
  return model ? model->model.schema_hash() : 0;
}

void aerial_extract_options_init(aerial_extract_options* options) {
  if (!options) return;
  aerial::ExtractConfig defaults;
  options->max_antecedents = defaults.max_antecedents;
  options->tau_a = defaults.tau_a;
  options->tau_c = defaults.tau_c;
  options->tau_i = defaults.tau_i;
  options->top_k = 0;
  options->workers = defaults.workers;
  options->antecedent_items = nullptr;
  options->antecedent_item_count = 0;
  options->consequent_items = nullptr;
  options->consequent_item_count = 0;
}

aerial_status aerial_extract_rules(const aerial_model* model,
                                   const aerial_extract_options* options,
                                   aerial_rules** out) {
  return guarded([&] {
    if (!model || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial_extract_options defaults;
    aerial_extract_options_init(&defaults);
    const aerial_extract_options& opts = options ? *options : defaults;
    const aerial::ExtractConfig config = to_config(model->model.schema(), opts);
    auto handle = std::make_unique<aerial_rules>(
        aerial_rules{aerial::extract_rules(model->model, config)});
    *out = handle.release();
  });
}

aerial_status aerial_extract_itemsets(const aerial_model* model,
                                      const aerial_extract_options* options,
                                      aerial_itemsets** out) {
  return guarded([&] {
    if (!model || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial_extract_options defaults;
    aerial_extract_options_init(&defaults);
    const aerial_extract_options& opts = options ? *options : defaults;
    const aerial::ExtractConfig config = to_config(model->model.schema(), opts);
    auto handle = std::make_unique<aerial_itemsets>(
        aerial_itemsets{aerial::extract_itemsets(model->model, config)});
    *out = handle.release();
  });
}

aerial_status aerial_mine_exhaustive(const aerial_dataset* dataset,
                                     const aerial_mine_params* params,
                                     aerial_rules** out) {
  return guarded([&] {
    if (!dataset || !params || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial::MineParams mine;
    mine.min_support = params->min_support;
    mine.min_confidence = params->min_confidence;
    mine.max_antecedents = params->max_antecedents;
    auto handle = std::make_unique<aerial_rules>(
        aerial_rules{aerial::mine_exhaustive(dataset->dataset, mine)});
    *out = handle.release();
  });
}

void aerial_rules_free(aerial_rules* rules) { delete rules; }

size_t aerial_rules_count(const aerial_rules* rules) {
  return rules ? rules->rules.rules.size() : 0;
}

size_t aerial_rules_probe_count(const aerial_rules* rules) {
  return rules ? rules->rules.stats.probes : 0;
}

double aerial_rules_extract_seconds(const aerial_rules* rules) {
  return rules ? rules->rules.stats.seconds : 0.0;
}

aerial_status aerial_rules_annotate(aerial_rules* rules,
                                    const aerial_dataset* dataset) {
  return guarded([&] {
    if (!rules || !dataset) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    if (*rules->rules.schema != *dataset->dataset.schema) {
      aerial::fail(aerial::ErrorCode::schema_mismatch,
                   "rule schema does not match the dataset");
    }
    aerial::annotate(dataset->dataset, rules->rules.rules);
  });
}

aerial_status aerial_rules_write(const aerial_rules* rules, const char* path,
                                 const char* format) {
  return guarded([&] {
    if (!rules || !path || !format) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial::write_rules(rules->rules, path, format);
  });
}

aerial_status aerial_rules_read(const char* path, const aerial_dataset* dataset,
                                aerial_rules** out) {
  return guarded([&] {
    if (!path || !dataset || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    auto handle = std::make_unique<aerial_rules>(aerial_rules{
        aerial::read_rules_jsonl(path, dataset->dataset.schema)});
    *out = handle.release();
  });
}

aerial_status aerial_rules_summary_json(const aerial_rules* rules,
                                        const aerial_dataset* dataset,
                                        double wall_seconds, char** out) {
  return guarded([&] {
    if (!rules || !dataset || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    const aerial::Summary summary =
        aerial::summarize(dataset->dataset, rules->rules.rules, wall_seconds);
    *out = copy_string(aerial::summary_to_json(summary));
  });
}

aerial_status aerial_rules_summary_table(const aerial_rules* rules,
                                         const aerial_dataset* dataset,
                                         double wall_seconds, char** out) {
  return guarded([&] {
    if (!rules || !dataset || !out) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    const aerial::Summary summary =
        aerial::summarize(dataset->dataset, rules->rules.rules, wall_seconds);
    *out = copy_string(aerial::summary_to_table(summary));
  });
}

void aerial_itemsets_free(aerial_itemsets* itemsets) { delete itemsets; }

size_t aerial_itemsets_count(const aerial_itemsets* itemsets) {
  return itemsets ? itemsets->itemsets.itemsets.size() : 0;
}

size_t aerial_itemsets_probe_count(const aerial_itemsets* itemsets) {
  return itemsets ? itemsets->itemsets.stats.probes : 0;
}

double aerial_itemsets_extract_seconds(const aerial_itemsets* itemsets) {
  return itemsets ? itemsets->itemsets.stats.seconds : 0.0;
}

aerial_status aerial_itemsets_annotate(aerial_itemsets* itemsets,
                                       const aerial_dataset* dataset) {
  return guarded([&] {
    if (!itemsets || !dataset) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    if (*itemsets->itemsets.schema != *dataset->dataset.schema) {
      aerial::fail(aerial::ErrorCode::schema_mismatch,
                   "itemset schema does not match the dataset");
    }
    aerial::annotate(dataset->dataset, itemsets->itemsets.itemsets);
  });
}

aerial_status aerial_itemsets_write(const aerial_itemsets* itemsets,
                                    const char* path, const char* format) {
  return guarded([&] {
    if (!itemsets || !path || !format) {
      aerial::fail(aerial::ErrorCode::invalid_argument, "null argument");
    }
    aerial::write_itemsets(itemsets->itemsets, path, format);
  });
}

}  // extern "C"
