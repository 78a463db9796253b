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

// Importance-alignment fine-tuning: misranked-pair ranking loss between
// network importance and human importance, combined with the task loss and
// optimized through a gradient-of-gradient step.

#ifndef HINT_TUNING_HPP_
#define HINT_TUNING_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hint/autodiff.hpp"
#include "hint/dataset.hpp"
#include "hint/importance.hpp"
#include "hint/model.hpp"

namespace hint {

enum class TrainMode { kBase, kHint, kAttnAlign };

std::string to_string(TrainMode mode);
TrainMode parse_train_mode(const std::string& name);

struct TrainConfig {
  double lambda = 10.0;  // task-loss multiplier
  AdamConfig adam;
  std::size_t epochs = 10;
  std::size_t batch_size = 32;
  double tie_eps = 1e-6;
  double supervised_fraction = 0.06;
  TrainMode mode = TrainMode::kHint;
  std::uint64_t seed = 0;

  void validate() const;
};

// (lower, higher): humans rank `higher` above `lower` but the network
// importance of `lower` is at least that of `higher`.
struct RankPair {
  std::size_t lower = 0;
  std::size_t higher = 0;
  bool operator==(const RankPair&) const = default;
};

using MisrankedPairs = std::vector<RankPair>;

// Exhaustive enumeration of pairs with s[higher] - s[lower] > tie_eps and
// alpha[lower] >= alpha[higher].
MisrankedPairs misranked_pairs(std::span<const double> alpha,
                               std::span<const double> human,
                               double tie_eps);

// Sum over pairs of |alpha[lower] - alpha[higher]|. The pairs must come from
// the values of `alpha`, so each term is non-negative and is built as the
// plain difference; its gradient is +1 on `lower` and -1 on `higher`.
ad::Var ranking_loss(ad::Graph& graph, std::span<const ad::Var> alpha,
                     const MisrankedPairs& pairs);

struct LossTerms {
  ad::Var total;
  ad::Var task;
  ad::Var rank;  // null when no ranking term was built
  bool supervised = false;
  std::size_t num_pairs = 0;
};

// ranking_loss(alpha) + lambda * task. Falls back to lambda * task when
// `human` is null or not supervisable.
LossTerms hint_loss(ad::Graph& graph, const BoundParams& params,
                    const Example& example, const HumanImportance* human,
                    const TrainConfig& cfg);

// Same structure, ranking the model's attention weights instead of alpha.
LossTerms attn_align_loss(ad::Graph& graph, const BoundParams& params,
                          const Example& example, const HumanImportance* human,
                          const TrainConfig& cfg);

// lambda * task only.
LossTerms base_loss(ad::Graph& graph, const BoundParams& params,
                    const Example& example, const TrainConfig& cfg);

struct EpochLog {
  std::size_t epoch = 0;
  double mean_task_loss = 0.0;
  double mean_rank_loss = 0.0;
  std::size_t supervised_count = 0;
};

std::string epoch_log_json(const EpochLog& log);

// Indices of raster-bearing, supervisable examples that keep supervision:
// round(fraction * data.size()) of them, sampled without replacement.
// `clamped` is set when fewer were available than requested.
std::vector<std::size_t> select_supervised(const Dataset& data,
                                           double fraction,
                                           std::uint64_t seed,
                                           bool* clamped = nullptr);

struct FinetuneResult {
  ModelParams params;
  std::vector<EpochLog> log;
  std::size_t supervised_examples = 0;
  bool supervision_clamped = false;
};

using EpochCallback =
    std::function<void(const EpochLog&, const ModelParams&)>;

// Shuffled mini-batch Adam on the mode-specific loss, batch loss being the
// mean over examples.
FinetuneResult finetune(ModelParams params, const Dataset& data,
                        const TrainConfig& cfg,
                        const EpochCallback& on_epoch = {});

}  // namespace hint

#endif  // HINT_TUNING_HPP_
