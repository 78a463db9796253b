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

#include "hint/hint.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "hint/checkpoint.hpp"
#include "hint/config.hpp"
#include "hint/dataset.hpp"
#include "hint/error.hpp"
#include "hint/eval.hpp"
#include "hint/model.hpp"
#include "hint/synthdata.hpp"
#include "hint/tuning.hpp"

struct hint_config {
  hint::RunConfig cfg;
};

struct hint_dataset {
  hint::Dataset data;
};

struct hint_model {
  hint::ModelParams params;
};

namespace {

thread_local std::string g_last_error;

hint_status status_of(hint::ErrorCode code) {
  switch (code) {
    case hint::ErrorCode::kInvalidArgument: return HINT_ERR_INVALID_ARGUMENT;
    case hint::ErrorCode::kShape: return HINT_ERR_SHAPE;
    case hint::ErrorCode::kNumeric: return HINT_ERR_NUMERIC;
    case hint::ErrorCode::kParse: return HINT_ERR_PARSE;
    case hint::ErrorCode::kIo: return HINT_ERR_IO;
    case hint::ErrorCode::kConfig: return HINT_ERR_CONFIG;
    case hint::ErrorCode::kNotFound: return HINT_ERR_NOT_FOUND;
  }
  return HINT_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread-local
// error message.
template <typename F>
hint_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HINT_OK;
  } catch (const hint::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HINT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HINT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    hint::fail(hint::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hint::TrainMode mode_of(hint_mode mode) {
  switch (mode) {
    case HINT_MODE_BASE: return hint::TrainMode::kBase;
    case HINT_MODE_HINT: return hint::TrainMode::kHint;
    case HINT_MODE_ATTN_ALIGN: return hint::TrainMode::kAttnAlign;
  }
  hint::fail(hint::ErrorCode::kInvalidArgument, "unknown training mode");
}

}  // namespace

extern "C" {

const char* hint_last_error(void) { return g_last_error.c_str(); }

const char* hint_version(void) { return "0.1.0"; }

void hint_string_free(char* s) { std::free(s); }

hint_status hint_config_new(hint_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new hint_config{};
  });
}

hint_status hint_config_from_json(const char* json, hint_config** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new hint_config{hint::RunConfig::from_json(json)};
  });
}

hint_status hint_config_from_file(const char* path, hint_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new hint_config{hint::RunConfig::from_file(path)};
  });
}

hint_status hint_config_set(hint_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    cfg->cfg.set(key, value);
  });
}

hint_status hint_config_validate(const hint_config* cfg) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->cfg.validate();
  });
}

hint_status hint_config_to_json(const hint_config* cfg, char** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = copy_string(cfg->cfg.to_json());
  });
}

void hint_config_free(hint_config* cfg) { delete cfg; }

hint_status hint_generate(const hint_config* cfg, const char* train_path,
                          const char* test_path) {
  return guarded([&] {
    need(cfg, "cfg");
    need(train_path, "train_path");
    need(test_path, "test_path");
    cfg->cfg.validate();
    auto [train, test] = hint::generate_benchmark(cfg->cfg.gen);
    hint::write_jsonl(train_path, train);
    hint::write_jsonl(test_path, test);
  });
}

hint_status hint_dataset_load(const char* path, hint_dataset** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new hint_dataset{hint::read_jsonl(path)};
  });
}

hint_status hint_dataset_save(const hint_dataset* data, const char* path) {
  return guarded([&] {
    need(data, "data");
    need(path, "path");
    hint::write_jsonl(path, data->data);
  });
}

size_t hint_dataset_size(const hint_dataset* data) {
  return data == nullptr ? 0 : data->data.size();
}

void hint_dataset_free(hint_dataset* data) { delete data; }

hint_status hint_model_init(const hint_config* cfg, uint64_t seed, hint_model** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    cfg->cfg.validate();
    *out = new hint_model{hint::init_params(cfg->cfg.hyper, seed)};
  });
}

hint_status hint_model_load(const hint_config* cfg, const char* path, hint_model** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(path, "path");
    need(out, "out");
    *out = new hint_model{hint::load_checkpoint(path, cfg->cfg.hyper)};
  });
}

hint_status hint_model_save(const hint_model* model, const char* path) {
  return guarded([&] {
    need(model, "model");
    need(path, "path");
    hint::save_checkpoint(path, model->params);
  });
}

hint_status hint_model_clone(const hint_model* model, hint_model** out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = new hint_model{model->params};
  });
}

void hint_model_free(hint_model* model) { delete model; }

hint_status hint_train(hint_model* model, const hint_dataset* data,
                       const hint_config* cfg, hint_stage stage, hint_mode mode,
                       size_t epochs, hint_epoch_fn on_epoch, void* user,
                       int* clamped) {
  return guarded([&] {
    need(model, "model");
    need(data, "data");
    need(cfg, "cfg");
    cfg->cfg.validate();
    hint::TrainConfig tc;
    switch (stage) {
      case HINT_STAGE_PRETRAIN:
        tc = cfg->cfg.pretrain_stage();
        break;
      case HINT_STAGE_FINETUNE:
        tc = cfg->cfg.finetune_stage(mode_of(mode));
        break;
      default:
        hint::fail(hint::ErrorCode::kInvalidArgument, "unknown training stage");
    }
    if (epochs > 0) tc.epochs = epochs;
    hint::EpochCallback cb;
    if (on_epoch != nullptr) {
      cb = [&](const hint::EpochLog& log, const hint::ModelParams&) {
        on_epoch(hint::epoch_log_json(log).c_str(), user);
      };
    }
    hint::FinetuneResult r = hint::finetune(model->params, data->data, tc, cb);
    model->params = std::move(r.params);
    if (clamped != nullptr) *clamped = r.supervision_clamped ? 1 : 0;
  });
}

hint_status hint_evaluate(const hint_model* model, const hint_dataset* data,
                          char** out_json) {
  return guarded([&] {
    need(model, "model");
    need(data, "data");
    need(out_json, "out_json");
    *out_json = copy_string(hint::report_to_json(hint::evaluate(model->params, data->data)));
  });
}

hint_status hint_explain(const hint_model* model, const hint_dataset* data,
                         const char* id, char** out_json) {
  return guarded([&] {
    need(model, "model");
    need(data, "data");
    need(id, "id");
    need(out_json, "out_json");
    for (const hint::Example& ex : data->data) {
      if (ex.id == id) {
        *out_json = copy_string(hint::explanation_to_json(hint::explain(model->params, ex)));
        return;
      }
    }
    hint::fail(hint::ErrorCode::kNotFound, std::string("no example with id \"") + id + "\"");
  });
}

}  // extern "C"
