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

#include "hint/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hint/error.hpp"
#include "json_io.hpp"
#include "rng.hpp"

namespace hint {

std::string to_string(TrainMode mode) {
  switch (mode) {
    case TrainMode::kBase: return "base";
    case TrainMode::kHint: return "hint";
    case TrainMode::kAttnAlign: return "attn_align";
  }
  return "?";
}

TrainMode parse_train_mode(const std::string& name) {
  if (name == "base") return TrainMode::kBase;
  if (name == "hint") return TrainMode::kHint;
  if (name == "attn_align") return TrainMode::kAttnAlign;
  fail(ErrorCode::kConfig, "unknown mode \"" + name + "\" (expected base, hint or attn_align)");
}

void TrainConfig::validate() const {
  require(lambda >= 0.0, ErrorCode::kConfig, "lambda must be >= 0");
  require(supervised_fraction >= 0.0 && supervised_fraction <= 1.0,
          ErrorCode::kConfig, "supervised_fraction must lie in [0, 1]");
  require(batch_size > 0, ErrorCode::kConfig, "batch_size must be positive");
  require(tie_eps >= 0.0, ErrorCode::kConfig, "tie_eps must be >= 0");
  require(adam.lr > 0.0 && adam.eps > 0.0 && adam.beta1 >= 0.0 &&
              adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0,
          ErrorCode::kConfig, "invalid optimizer settings");
}

MisrankedPairs misranked_pairs(std::span<const double> alpha,
                               std::span<const double> human,
                               double tie_eps) {
  require(alpha.size() == human.size(), ErrorCode::kShape,
          "misranked_pairs: " + std::to_string(alpha.size()) +
              " network scores vs " + std::to_string(human.size()) +
              " human scores");
  MisrankedPairs pairs;
  const std::size_t k = alpha.size();
  for (std::size_t lo = 0; lo < k; ++lo) {
    for (std::size_t hi = 0; hi < k; ++hi) {
      if (lo == hi) continue;
      if (human[hi] - human[lo] > tie_eps && alpha[lo] >= alpha[hi]) {
        pairs.push_back({lo, hi});
      }
    }
  }
  return pairs;
}

ad::Var ranking_loss(ad::Graph& graph, std::span<const ad::Var> alpha,
                     const MisrankedPairs& pairs) {
  if (pairs.empty()) return graph.constant(Tensor::scalar(0.0));
  ad::Var total;
  for (const RankPair& p : pairs) {
    require(p.lower < alpha.size() && p.higher < alpha.size() &&
                p.lower != p.higher,
            ErrorCode::kInvalidArgument, "ranking_loss: invalid pair");
    ad::Var term = ad::sub(alpha[p.lower], alpha[p.higher]);
    total = total.valid() ? ad::add(total, term) : term;
  }
  return total;
}

namespace {

LossTerms ranked_loss(ad::Graph& graph, const ModelOutput& out,
                      const Example& example, const HumanImportance* human,
                      const TrainConfig& cfg, bool use_attention) {
  LossTerms t;
  t.task = task_loss(out, example.answer);
  ad::Var weighted = ad::scale(t.task, cfg.lambda);
  if (human == nullptr || !human->supervisable) {
    t.total = weighted;
    return t;
  }
  require(human->proposals.size() == out.proposal_leaves.size(),
          ErrorCode::kShape, "human importance does not match proposal count");

  std::vector<ad::Var> nodes;
  std::vector<double> values;
  if (use_attention) {
    const std::size_t k = out.attention.size();
    for (std::size_t r = 0; r < k; ++r) nodes.push_back(ad::pick(out.attention, r));
    auto a = out.attention.value().data();
    values.assign(a.begin(), a.end());
  } else {
    NetworkImportance alpha = network_importance(out, example.answer, true);
    nodes = std::move(alpha.nodes);
    values = std::move(alpha.values);
  }
  MisrankedPairs pairs = misranked_pairs(values, human->scores(), cfg.tie_eps);
  t.supervised = true;
  t.num_pairs = pairs.size();
  t.rank = ranking_loss(graph, nodes, pairs);
  t.total = ad::add(t.rank, weighted);
  return t;
}

}  // namespace

LossTerms hint_loss(ad::Graph& graph, const BoundParams& params,
                    const Example& example, const HumanImportance* human,
                    const TrainConfig& cfg) {
  return ranked_loss(graph, forward(graph, params, example), example, human,
                     cfg, false);
}

LossTerms attn_align_loss(ad::Graph& graph, const BoundParams& params,
                          const Example& example, const HumanImportance* human,
                          const TrainConfig& cfg) {
  return ranked_loss(graph, forward(graph, params, example), example, human,
                     cfg, true);
}

LossTerms base_loss(ad::Graph& graph, const BoundParams& params,
                    const Example& example, const TrainConfig& cfg) {
  return ranked_loss(graph, forward(graph, params, example), example, nullptr,
                     cfg, false);
}

std::string epoch_log_json(const EpochLog& log) {
  detail::OrderedJson j;
  j["epoch"] = log.epoch;
  j["mean_task_loss"] = log.mean_task_loss;
  j["mean_rank_loss"] = log.mean_rank_loss;
  j["supervised_count"] = log.supervised_count;
  return detail::dump(j);
}

std::vector<std::size_t> select_supervised(const Dataset& data,
                                           double fraction,
                                           std::uint64_t seed,
                                           bool* clamped) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& ex = data[i];
    if (ex.attention && !ex.attention->all_zero()) candidates.push_back(i);
  }
  const auto wanted = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(data.size())));
  if (clamped) *clamped = wanted > candidates.size();
  const std::size_t take = std::min(wanted, candidates.size());

  // Partial Fisher-Yates.
  std::mt19937_64 rng(detail::mix_seed(seed, detail::kStreamSupervision));
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
    std::swap(candidates[i], candidates[pick(rng)]);
  }
  candidates.resize(take);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

FinetuneResult finetune(ModelParams params, const Dataset& data,
                        const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  require(!data.empty(), ErrorCode::kInvalidArgument, "training set is empty");
  for (const auto& ex : data) check_example(params.hyper, ex);

  FinetuneResult result;

  // Supervision only matters for the ranking modes; base mode never looks.
  std::vector<std::optional<HumanImportance>> human(data.size());
  if (cfg.mode != TrainMode::kBase) {
    for (std::size_t i : select_supervised(data, cfg.supervised_fraction,
                                           cfg.seed, &result.supervision_clamped)) {
      HumanImportance hi = human_importance(data[i]);
      if (hi.supervisable) {
        human[i] = std::move(hi);
        ++result.supervised_examples;
      }
    }
  }

  AdamState state = AdamState::for_params(params);
  std::mt19937_64 shuffle_rng(detail::mix_seed(cfg.seed, detail::kStreamShuffle));
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(shuffle_rng)]);
    }

    double task_sum = 0.0;
    double rank_sum = 0.0;
    std::size_t sup_count = 0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      std::array<std::vector<double>, kParamCount> acc;
      for (std::size_t p = 0; p < kParamCount; ++p) {
        acc[p].assign(params.tensors[p].size(), 0.0);
      }

      for (std::size_t b = start; b < end; ++b) {
        const Example& ex = data[order[b]];
        const HumanImportance* hi = human[order[b]] ? &*human[order[b]] : nullptr;
        ad::Graph graph;
        BoundParams bound = bind_params(graph, params, true);
        LossTerms loss;
        switch (cfg.mode) {
          case TrainMode::kBase: loss = base_loss(graph, bound, ex, cfg); break;
          case TrainMode::kHint: loss = hint_loss(graph, bound, ex, hi, cfg); break;
          case TrainMode::kAttnAlign:
            loss = attn_align_loss(graph, bound, ex, hi, cfg);
            break;
        }
        task_sum += loss.task.item();
        if (loss.supervised) {
          ++sup_count;
          rank_sum += loss.rank.item();
        }
        std::vector<ad::Var> grads = graph.grad(loss.total, bound.vars, false);
        for (std::size_t p = 0; p < kParamCount; ++p) {
          auto g = grads[p].value().data();
          for (std::size_t j = 0; j < g.size(); ++j) acc[p][j] += g[j];
        }
      }

      const double inv = 1.0 / static_cast<double>(end - start);
      ParamTensors mean_grads;
      for (std::size_t p = 0; p < kParamCount; ++p) {
        for (double& v : acc[p]) v *= inv;
        mean_grads[p] = Tensor(params.tensors[p].shape(), std::move(acc[p]));
      }
      adam_step(params, mean_grads, state, cfg.adam);
    }

    EpochLog log;
    log.epoch = epoch;
    log.mean_task_loss = task_sum / static_cast<double>(data.size());
    log.mean_rank_loss = sup_count ? rank_sum / static_cast<double>(sup_count) : 0.0;
    log.supervised_count = sup_count;
    result.log.push_back(log);
    if (on_epoch) on_epoch(log, params);
  }
  result.params = std::move(params);
  return result;
}

}  // namespace hint
