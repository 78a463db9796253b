// Copyright 2026 The HINT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the HINT library. All objects are opaque handles created
 * and destroyed through this API. Functions return HINT_OK on success or an
 * error status; hint_last_error() then describes the failure. Strings
 * returned through char** out-parameters must be released with
 * hint_string_free(). */

#ifndef HINT_HINT_H_
#define HINT_HINT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(HINT_BUILDING_LIBRARY)
#define HINT_API __attribute__((visibility("default")))
#else
#define HINT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hint_status {
  HINT_OK = 0,
  HINT_ERR_INVALID_ARGUMENT = 1,
  HINT_ERR_SHAPE = 2,
  HINT_ERR_NUMERIC = 3,
  HINT_ERR_PARSE = 4,
  HINT_ERR_IO = 5,
  HINT_ERR_CONFIG = 6,
  HINT_ERR_NOT_FOUND = 7,
  HINT_ERR_INTERNAL = 99
} hint_status;

typedef enum hint_mode {
  HINT_MODE_BASE = 0,
  HINT_MODE_HINT = 1,
  HINT_MODE_ATTN_ALIGN = 2
} hint_mode;

typedef struct hint_config hint_config;
typedef struct hint_dataset hint_dataset;
typedef struct hint_model hint_model;

/* Called once per training epoch with the epoch's JSON log line. */
typedef void (*hint_epoch_fn)(const char* log_json, void* user);

/* Message for the last failure on the calling thread ("" if none). */
HINT_API const char* hint_last_error(void);
HINT_API const char* hint_version(void);
HINT_API void hint_string_free(char* s);

/* Configuration */
HINT_API hint_status hint_config_new(hint_config** out);
HINT_API hint_status hint_config_from_json(const char* json, hint_config** out);
HINT_API hint_status hint_config_from_file(const char* path, hint_config** out);
/* `value` is JSON text; bare words are taken as strings. */
HINT_API hint_status hint_config_set(hint_config* cfg, const char* key,
                                     const char* value);
HINT_API hint_status hint_config_validate(const hint_config* cfg);
HINT_API hint_status hint_config_to_json(const hint_config* cfg, char** out);
HINT_API void hint_config_free(hint_config* cfg);

/* Datasets (JSONL, one example per line) */
HINT_API hint_status hint_generate(const hint_config* cfg,
                                   const char* train_path,
                                   const char* test_path);
HINT_API hint_status hint_dataset_load(const char* path, hint_dataset** out);
HINT_API hint_status hint_dataset_save(const hint_dataset* data,
                                       const char* path);
HINT_API size_t hint_dataset_size(const hint_dataset* data);
HINT_API void hint_dataset_free(hint_dataset* data);

/* Models */
HINT_API hint_status hint_model_init(const hint_config* cfg, uint64_t seed,
                                     hint_model** out);
HINT_API hint_status hint_model_load(const hint_config* cfg, const char* path,
                                     hint_model** out);
HINT_API hint_status hint_model_save(const hint_model* model, const char* path);
HINT_API hint_status hint_model_clone(const hint_model* model, hint_model** out);
HINT_API void hint_model_free(hint_model* model);

typedef enum hint_stage {
  /* Base-mode training at pretrain_lr; `mode` is ignored. */
  HINT_STAGE_PRETRAIN = 0,
  /* Training in `mode` at lr. */
  HINT_STAGE_FINETUNE = 1
} hint_stage;

/* Trains `model` in place. `epochs` of 0 selects the configured count for the
 * stage. The supervised fraction, optimizer and seed come from `cfg`.
 * `clamped` (optional) reports that fewer raster-bearing examples were
 * available than requested. */
HINT_API hint_status hint_train(hint_model* model, const hint_dataset* data,
                                const hint_config* cfg, hint_stage stage,
                                hint_mode mode, size_t epochs,
                                hint_epoch_fn on_epoch, void* user,
                                int* clamped);

/* Evaluation report as a JSON object. */
HINT_API hint_status hint_evaluate(const hint_model* model,
                                   const hint_dataset* data, char** out_json);

/* Per-proposal dump for the example with the given id, as JSON. */
HINT_API hint_status hint_explain(const hint_model* model,
                                  const hint_dataset* data, const char* id,
                                  char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* HINT_HINT_H_ */
