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

#include "hint/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hint/error.hpp"
#include "json_io.hpp"

namespace hint {

namespace {

using detail::Json;
using detail::OrderedJson;

struct Field {
  std::function<void(RunConfig&, const Json&)> set;
  std::function<OrderedJson(const RunConfig&)> get;
};

std::size_t as_count(const std::string& key, const Json& v) {
  if (!v.is_number_unsigned()) fail(ErrorCode::kConfig, key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

double as_real(const std::string& key, const Json& v) {
  if (!v.is_number()) fail(ErrorCode::kConfig, key + " must be a number");
  return v.get<double>();
}

std::string as_text(const std::string& key, const Json& v) {
  if (!v.is_string()) fail(ErrorCode::kConfig, key + " must be a string");
  return v.get<std::string>();
}

#define HINT_COUNT_FIELD(name, expr)                                             \
  {name, Field{[](RunConfig& c, const Json& v) { expr = as_count(name, v); },   \
               [](const RunConfig& c) { return OrderedJson(expr); }}}
#define HINT_REAL_FIELD(name, expr)                                              \
  {name, Field{[](RunConfig& c, const Json& v) { expr = as_real(name, v); },    \
               [](const RunConfig& c) { return OrderedJson(expr); }}}

// Key order here is the order of the echoed effective configuration.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      HINT_COUNT_FIELD("vocab_size", c.hyper.vocab_size),
      HINT_COUNT_FIELD("embed_dim", c.hyper.embed_dim),
      HINT_COUNT_FIELD("hidden_dim", c.hyper.hidden_dim),
      {"feature_dim",
       Field{[](RunConfig& c, const Json& v) {
               c.hyper.feature_dim = c.gen.feature_dim = as_count("feature_dim", v);
             },
             [](const RunConfig& c) { return OrderedJson(c.hyper.feature_dim); }}},
      {"num_proposals",
       Field{[](RunConfig& c, const Json& v) {
               c.hyper.num_proposals = c.gen.num_proposals = as_count("num_proposals", v);
             },
             [](const RunConfig& c) { return OrderedJson(c.hyper.num_proposals); }}},
      {"num_answers",
       Field{[](RunConfig& c, const Json& v) {
               c.hyper.num_answers = c.gen.num_answers = as_count("num_answers", v);
             },
             [](const RunConfig& c) { return OrderedJson(c.hyper.num_answers); }}},
      HINT_REAL_FIELD("lambda", c.train.lambda),
      HINT_REAL_FIELD("lr", c.train.adam.lr),
      HINT_REAL_FIELD("beta1", c.train.adam.beta1),
      HINT_REAL_FIELD("beta2", c.train.adam.beta2),
      HINT_REAL_FIELD("eps", c.train.adam.eps),
      HINT_COUNT_FIELD("batch_size", c.train.batch_size),
      HINT_REAL_FIELD("tie_eps", c.train.tie_eps),
      HINT_REAL_FIELD("supervised_fraction", c.train.supervised_fraction),
      {"mode",
       Field{[](RunConfig& c, const Json& v) { c.train.mode = parse_train_mode(as_text("mode", v)); },
             [](const RunConfig& c) { return OrderedJson(to_string(c.train.mode)); }}},
      {"seed",
       Field{[](RunConfig& c, const Json& v) {
               c.train.seed = c.gen.seed = as_count("seed", v);
             },
             [](const RunConfig& c) { return OrderedJson(c.train.seed); }}},
      HINT_COUNT_FIELD("pretrain_epochs", c.pretrain_epochs),
      HINT_COUNT_FIELD("finetune_epochs", c.finetune_epochs),
      HINT_REAL_FIELD("pretrain_lr", c.pretrain_lr),
      HINT_COUNT_FIELD("grid", c.gen.grid),
      HINT_COUNT_FIELD("num_classes", c.gen.num_classes),
      HINT_REAL_FIELD("noise_sigma", c.gen.noise_sigma),
      HINT_REAL_FIELD("bias_train", c.gen.bias_train),
      HINT_REAL_FIELD("bias_test", c.gen.bias_test),
      HINT_COUNT_FIELD("n_train", c.gen.n_train),
      HINT_COUNT_FIELD("n_test", c.gen.n_test),
      HINT_COUNT_FIELD("min_box", c.gen.min_box),
      HINT_COUNT_FIELD("max_box", c.gen.max_box),
      {"raster_style",
       Field{[](RunConfig& c, const Json& v) { c.gen.raster_style = as_text("raster_style", v); },
             [](const RunConfig& c) { return OrderedJson(c.gen.raster_style); }}},
  };
  return table;
}

#undef HINT_COUNT_FIELD
#undef HINT_REAL_FIELD

const Field& lookup(const std::string& key) {
  for (const auto& [name, f] : fields()) {
    if (name == key) return f;
  }
  fail(ErrorCode::kConfig, "unknown configuration key \"" + key + "\"");
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, f] : fields()) out.push_back(name);
    return out;
  }();
  return names;
}

RunConfig RunConfig::from_json(std::string_view json) {
  Json j;
  try {
    j = Json::parse(json);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kConfig, std::string("malformed configuration JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kConfig, "configuration must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) lookup(key).set(cfg, value);
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfig, "cannot open configuration " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const Field& f = lookup(key);
  Json v;
  try {
    v = Json::parse(value);
  } catch (const Json::parse_error&) {
    v = value;
  }
  f.set(*this, v);
}

std::string RunConfig::to_json() const {
  OrderedJson j;
  for (const auto& [name, f] : fields()) j[name] = f.get(*this);
  return detail::dump(j, 2);
}

void RunConfig::validate() const {
  hyper.validate();
  gen.validate();
  train.validate();
  require(pretrain_lr > 0.0, ErrorCode::kConfig, "pretrain_lr must be positive");
  require(gen.num_classes + 1 <= hyper.vocab_size, ErrorCode::kConfig,
          "vocab_size must cover the question-type token and every class token");
}

TrainConfig RunConfig::pretrain_stage() const {
  TrainConfig t = train;
  t.mode = TrainMode::kBase;
  t.epochs = pretrain_epochs;
  t.adam.lr = pretrain_lr;
  return t;
}

TrainConfig RunConfig::finetune_stage(TrainMode mode) const {
  TrainConfig t = train;
  t.mode = mode;
  t.epochs = finetune_epochs;
  return t;
}

}  // namespace hint
