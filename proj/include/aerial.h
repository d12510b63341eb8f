/* C interface to the aerial rule-mining library.
 *
 * Every function that can fail returns an aerial_status; AERIAL_OK is 0.
 * On failure aerial_last_error() returns a thread-local message describing
 * what went wrong. Objects are opaque handles released with the matching
 * _free function; strings returned through char** are released with
 * aerial_string_free.
 */
#ifndef AERIAL_H
#define AERIAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AERIAL_API __declspec(dllexport)
#else
#define AERIAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aerial_status {
  AERIAL_OK = 0,
  AERIAL_ERR_INVALID_ARGUMENT = 1,
  AERIAL_ERR_IO = 2,
  AERIAL_ERR_PARSE = 3,
  AERIAL_ERR_SCHEMA_MISMATCH = 4,
  AERIAL_ERR_NUMERIC = 5,
} aerial_status;

typedef struct aerial_dataset aerial_dataset;
typedef struct aerial_model aerial_model;
typedef struct aerial_rules aerial_rules;
typedef struct aerial_itemsets aerial_itemsets;

AERIAL_API const char* aerial_version(void);
/* Message for the last failing call on this thread; empty if none. */
AERIAL_API const char* aerial_last_error(void);
AERIAL_API void aerial_string_free(char* text);

/* ---- datasets ---------------------------------------------------------- */

typedef struct aerial_csv_options {
  char delimiter;  /* default ',' */
  int has_header;  /* default 1 */
  int bins;        /* equal-frequency bins for numeric columns, default 10 */
} aerial_csv_options;

AERIAL_API void aerial_csv_options_init(aerial_csv_options* options);
AERIAL_API aerial_status aerial_dataset_load_csv(const char* path,
                                                 const aerial_csv_options* options,
                                                 aerial_dataset** out);
AERIAL_API void aerial_dataset_free(aerial_dataset* dataset);
AERIAL_API size_t aerial_dataset_rows(const aerial_dataset* dataset);
AERIAL_API size_t aerial_dataset_features(const aerial_dataset* dataset);
AERIAL_API size_t aerial_dataset_dim(const aerial_dataset* dataset);
AERIAL_API aerial_status aerial_dataset_schema_json(const aerial_dataset* dataset,
                                                    char** out);
AERIAL_API uint64_t aerial_dataset_schema_hash(const aerial_dataset* dataset);

/* ---- training ---------------------------------------------------------- */

typedef struct aerial_train_options {
  double learning_rate; /* default 5e-3 */
  double weight_decay;  /* default 2e-8 */
  int epochs;           /* default 2 */
  int batch_size;       /* 0 = automatic */
  int hidden_layers;    /* 0 = automatic (1..3) */
  uint64_t seed;
} aerial_train_options;

AERIAL_API void aerial_train_options_init(aerial_train_options* options);
AERIAL_API aerial_status aerial_train(const aerial_dataset* dataset,
                                      const aerial_train_options* options,
                                      aerial_model** out);
AERIAL_API void aerial_model_free(aerial_model* model);
AERIAL_API aerial_status aerial_model_save(const aerial_model* model,
                                           const char* path);
AERIAL_API aerial_status aerial_model_load(const char* path, aerial_model** out);
AERIAL_API uint64_t aerial_model_schema_hash(const aerial_model* model);

/* ---- extraction -------------------------------------------------------- */

typedef struct aerial_extract_options {
  int max_antecedents; /* default 2 */
  double tau_a;        /* default 0.5 */
  double tau_c;        /* default 0.8 */
  double tau_i;        /* default 0.5 */
  size_t top_k;        /* 0 = disabled */
  int workers;         /* <= 0 = all cores, default 1 */
  /* optional item constraints, entries formatted "feature=category" */
  const char* const* antecedent_items;
  size_t antecedent_item_count;
  const char* const* consequent_items;
  size_t consequent_item_count;
} aerial_extract_options;

AERIAL_API void aerial_extract_options_init(aerial_extract_options* options);
AERIAL_API aerial_status aerial_extract_rules(const aerial_model* model,
                                              const aerial_extract_options* options,
                                              aerial_rules** out);
AERIAL_API aerial_status aerial_extract_itemsets(
    const aerial_model* model, const aerial_extract_options* options,
    aerial_itemsets** out);

/* ---- exhaustive baseline ----------------------------------------------- */

typedef struct aerial_mine_params {
  double min_support;
  double min_confidence;
  int max_antecedents;
} aerial_mine_params;

AERIAL_API aerial_status aerial_mine_exhaustive(const aerial_dataset* dataset,
                                                const aerial_mine_params* params,
                                                aerial_rules** out);

/* ---- rule sets --------------------------------------------------------- */

AERIAL_API void aerial_rules_free(aerial_rules* rules);
AERIAL_API size_t aerial_rules_count(const aerial_rules* rules);
/* Forward passes performed during extraction (0 for the baseline miner). */
AERIAL_API size_t aerial_rules_probe_count(const aerial_rules* rules);
AERIAL_API double aerial_rules_extract_seconds(const aerial_rules* rules);
/* Fill per-rule support/confidence measured on the dataset. */
AERIAL_API aerial_status aerial_rules_annotate(aerial_rules* rules,
                                               const aerial_dataset* dataset);
/* format: "jsonl" or "csv" */
AERIAL_API aerial_status aerial_rules_write(const aerial_rules* rules,
                                            const char* path,
                                            const char* format);
AERIAL_API aerial_status aerial_rules_read(const char* path,
                                           const aerial_dataset* dataset,
                                           aerial_rules** out);
/* Rule count, mean support/confidence, coverage and wall time as JSON. */
AERIAL_API aerial_status aerial_rules_summary_json(const aerial_rules* rules,
                                                   const aerial_dataset* dataset,
                                                   double wall_seconds,
                                                   char** out);
AERIAL_API aerial_status aerial_rules_summary_table(const aerial_rules* rules,
                                                    const aerial_dataset* dataset,
                                                    double wall_seconds,
                                                    char** out);

/* ---- itemset sets ------------------------------------------------------ */

AERIAL_API void aerial_itemsets_free(aerial_itemsets* itemsets);
AERIAL_API size_t aerial_itemsets_count(const aerial_itemsets* itemsets);
AERIAL_API size_t aerial_itemsets_probe_count(const aerial_itemsets* itemsets);
AERIAL_API double aerial_itemsets_extract_seconds(const aerial_itemsets* itemsets);
AERIAL_API aerial_status aerial_itemsets_annotate(aerial_itemsets* itemsets,
                                                  const aerial_dataset* dataset);
AERIAL_API aerial_status aerial_itemsets_write(const aerial_itemsets* itemsets,
                                               const char* path,
                                               const char* format);

#ifdef __cplusplus
}
#endif

#endif /* AERIAL_H */
