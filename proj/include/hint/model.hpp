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

// Toy question-guided attention classifier over region proposals.
//
//   q      = tanh(W_q^T mean(embed[tokens]))
//   e_j    = w_a^T tanh(W_v^T v_j + W_u^T q)
//   a      = softmax(e)
//   v_hat  = sum_j a_j v_j
//   logits = W_o^T (tanh(W_h^T v_hat) * tanh(W_g^T q))

#ifndef HINT_MODEL_HPP_
#define HINT_MODEL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hint/autodiff.hpp"
#include "hint/dataset.hpp"
#include "hint/tensor.hpp"

namespace hint {

struct HyperParams {
  std::size_t vocab_size = 32;
  std::size_t embed_dim = 16;
  std::size_t hidden_dim = 32;
  std::size_t feature_dim = 16;
  std::size_t num_proposals = 8;
  std::size_t num_answers = 4;

  void validate() const;
  bool operator==(const HyperParams&) const = default;
};

enum class ParamId : std::size_t { kEmbed, kWq, kWv, kWu, kWa, kWh, kWg, kWo };
inline constexpr std::size_t kParamCount = 8;
inline constexpr std::array<std::string_view, kParamCount> kParamNames = {
    "embed", "W_q", "W_v", "W_u", "w_a", "W_h", "W_g", "W_o"};

Shape param_shape(const HyperParams& hp, ParamId id);

using ParamTensors = std::array<Tensor, kParamCount>;

struct ModelParams {
  HyperParams hyper;
  ParamTensors tensors;

  const Tensor& operator[](ParamId id) const {
    return tensors[static_cast<std::size_t>(id)];
  }
  bool operator==(const ModelParams&) const = default;

  static ModelParams zeros(const HyperParams& hp);
};

// Glorot-uniform initialization from a seeded generator.
ModelParams init_params(const HyperParams& hp, std::uint64_t seed);

// Parameters inserted into a graph as leaves.
struct BoundParams {
  HyperParams hyper;
  std::array<ad::Var, kParamCount> vars;

  ad::Var operator[](ParamId id) const {
    return vars[static_cast<std::size_t>(id)];
  }
};

BoundParams bind_params(ad::Graph& graph, const ModelParams& params,
                        bool requires_grad);

struct ModelOutput {
  ad::Var logits;                        // [num_answers]
  ad::Var attention;                     // [num_proposals], softmax weights
  std::vector<ad::Var> proposal_leaves;  // num_proposals leaves of [feature_dim]
};

// Validates the example against the hyperparameters. Proposal features enter
// as requires-grad leaves.
ModelOutput forward(ad::Graph& graph, const BoundParams& params,
                    const Example& example);
// Same, with proposal features supplied separately (used for occlusion).
ModelOutput forward(ad::Graph& graph, const BoundParams& params,
                    std::span<const std::size_t> question,
                    std::span<const std::vector<double>> features);
// Binds `params` as constants.
ModelOutput forward(ad::Graph& graph, const ModelParams& params,
                    const Example& example);

// Negative log-likelihood of `answer` under softmax(logits).
ad::Var task_loss(const ModelOutput& output, std::size_t answer);

void check_example(const HyperParams& hp, const Example& example);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::array<std::vector<double>, kParamCount> m;
  std::array<std::vector<double>, kParamCount> v;
  std::uint64_t step = 0;

  static AdamState for_params(const ModelParams& params);
};

void adam_step(ModelParams& params, const ParamTensors& grads,
               AdamState& state, const AdamConfig& cfg);

}  // namespace hint

#endif  // HINT_MODEL_HPP_
