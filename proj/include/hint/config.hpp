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

#ifndef HINT_CONFIG_HPP_
#define HINT_CONFIG_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hint/model.hpp"
#include "hint/synthdata.hpp"
#include "hint/tuning.hpp"

namespace hint {

// Flat JSON run configuration. Proposal count, feature dim, answer count and
// seed are shared between the model, the generator and training.
struct RunConfig {
  HyperParams hyper;
  TrainConfig train;
  GenConfig gen;
  std::size_t pretrain_epochs = 20;
  std::size_t finetune_epochs = 10;
  // Base-mode pretraining uses its own learning rate; `train.adam.lr` drives
  // fine-tuning.
  double pretrain_lr = 3e-4;

  // Rejects unknown keys and ill-typed values.
  static RunConfig from_json(std::string_view json);
  static RunConfig from_file(const std::string& path);

  // Sets one key from its JSON text, e.g. set("lr", "0.01"). Bare words that
  // are not valid JSON are taken as strings.
  void set(const std::string& key, const std::string& value);

  std::string to_json() const;
  void validate() const;

  // Base-mode pretraining: pretrain_epochs at pretrain_lr.
  TrainConfig pretrain_stage() const;
  // Fine-tuning in `mode`: finetune_epochs at the configured lr.
  TrainConfig finetune_stage(TrainMode mode) const;

  static const std::vector<std::string>& keys();
};

}  // namespace hint

#endif  // HINT_CONFIG_HPP_
