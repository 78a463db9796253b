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

#include "hint/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "hint/error.hpp"

namespace hint {

void HyperParams::validate() const {
  require(vocab_size > 0 && embed_dim > 0 && hidden_dim > 0 &&
              feature_dim > 0 && num_proposals > 0 && num_answers > 0,
          ErrorCode::kConfig, "hyperparameters must all be positive");
}

Shape param_shape(const HyperParams& hp, ParamId id) {
  switch (id) {
    case ParamId::kEmbed: return {hp.vocab_size, hp.embed_dim};
    case ParamId::kWq: return {hp.embed_dim, hp.hidden_dim};
    case ParamId::kWv: return {hp.feature_dim, hp.hidden_dim};
    case ParamId::kWu: return {hp.hidden_dim, hp.hidden_dim};
    case ParamId::kWa: return {hp.hidden_dim};
    case ParamId::kWh: return {hp.feature_dim, hp.hidden_dim};
    case ParamId::kWg: return {hp.hidden_dim, hp.hidden_dim};
    case ParamId::kWo: return {hp.hidden_dim, hp.num_answers};
  }
  fail(ErrorCode::kInvalidArgument, "unknown parameter id");
}

ModelParams ModelParams::zeros(const HyperParams& hp) {
  hp.validate();
  ModelParams p;
  p.hyper = hp;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    p.tensors[i] = Tensor::zeros(param_shape(hp, static_cast<ParamId>(i)));
  }
  return p;
}

ModelParams init_params(const HyperParams& hp, std::uint64_t seed) {
  hp.validate();
  std::mt19937_64 rng(seed);
  ModelParams p;
  p.hyper = hp;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    Shape shape = param_shape(hp, static_cast<ParamId>(i));
    const double fan_in = static_cast<double>(shape[0]);
    const double fan_out = shape.size() > 1 ? static_cast<double>(shape[1]) : 1.0;
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    std::vector<double> data(shape_size(shape));
    for (double& v : data) v = dist(rng);
    p.tensors[i] = Tensor(std::move(shape), std::move(data));
  }
  return p;
}

BoundParams bind_params(ad::Graph& graph, const ModelParams& params,
                        bool requires_grad) {
  BoundParams b;
  b.hyper = params.hyper;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    b.vars[i] = graph.leaf(params.tensors[i], requires_grad);
  }
  return b;
}

namespace {

void check_inputs(const HyperParams& hp, std::span<const std::size_t> question,
                  std::span<const std::vector<double>> features) {
  require(!question.empty(), ErrorCode::kShape, "question has no tokens");
  for (std::size_t t : question) {
    require(t < hp.vocab_size, ErrorCode::kShape,
            "question token " + std::to_string(t) + " outside vocabulary of " +
                std::to_string(hp.vocab_size));
  }
  require(features.size() == hp.num_proposals, ErrorCode::kShape,
          "expected " + std::to_string(hp.num_proposals) + " proposals, got " +
              std::to_string(features.size()));
  for (const auto& f : features) {
    require(f.size() == hp.feature_dim, ErrorCode::kShape,
            "expected proposal features of dim " +
                std::to_string(hp.feature_dim) + ", got " +
                std::to_string(f.size()));
  }
}

}  // namespace

void check_example(const HyperParams& hp, const Example& example) {
  std::vector<std::vector<double>> features;
  features.reserve(example.proposals.size());
  for (const auto& p : example.proposals) features.push_back(p.feature);
  check_inputs(hp, example.question, features);
  require(example.answer < hp.num_answers, ErrorCode::kShape,
          "answer " + std::to_string(example.answer) + " outside " +
              std::to_string(hp.num_answers) + " answers");
}

ModelOutput forward(ad::Graph& graph, const BoundParams& params,
                    std::span<const std::size_t> question,
                    std::span<const std::vector<double>> features) {
  const HyperParams& hp = params.hyper;
  check_inputs(hp, question, features);
  const std::size_t h = hp.hidden_dim;
  const std::size_t k = hp.num_proposals;

  ModelOutput out;

  // Question encoding: mean of token embeddings, one tanh layer.
  ad::Var tokens = ad::gather_rows(params[ParamId::kEmbed], question);
  ad::Var mean = ad::scale(ad::sum(tokens, 0), 1.0 / static_cast<double>(question.size()));
  ad::Var q = ad::tanh(ad::matmul(ad::reshape(mean, {1, hp.embed_dim}), params[ParamId::kWq]));

  out.proposal_leaves.reserve(k);
  for (const auto& f : features) {
    out.proposal_leaves.push_back(graph.leaf(Tensor::vector(f), true));
  }
  ad::Var v = ad::stack(out.proposal_leaves);  // [K x D]

  // Additive attention.
  ad::Var qu = ad::reshape(ad::matmul(q, params[ParamId::kWu]), {h});
  ad::Var hidden = ad::tanh(ad::add_row_bias(ad::matmul(v, params[ParamId::kWv]), qu));
  ad::Var scores = ad::matmul(hidden, ad::reshape(params[ParamId::kWa], {h, 1}));
  out.attention = ad::softmax(ad::reshape(scores, {k}));

  // Pooling and multiplicative fusion.
  ad::Var pooled = ad::matmul(ad::reshape(out.attention, {1, k}), v);  // [1 x D]
  ad::Var fused = ad::mul(ad::tanh(ad::matmul(pooled, params[ParamId::kWh])),
                          ad::tanh(ad::matmul(q, params[ParamId::kWg])));
  out.logits = ad::reshape(ad::matmul(fused, params[ParamId::kWo]), {hp.num_answers});
  return out;
}

ModelOutput forward(ad::Graph& graph, const BoundParams& params,
                    const Example& example) {
  std::vector<std::vector<double>> features;
  features.reserve(example.proposals.size());
  for (const auto& p : example.proposals) features.push_back(p.feature);
  return forward(graph, params, example.question, features);
}

ModelOutput forward(ad::Graph& graph, const ModelParams& params,
                    const Example& example) {
  return forward(graph, bind_params(graph, params, false), example);
}

ad::Var task_loss(const ModelOutput& output, std::size_t answer) {
  require(answer < output.logits.size(), ErrorCode::kInvalidArgument,
          "answer index " + std::to_string(answer) + " out of range");
  return ad::neg(ad::pick(ad::log_softmax(output.logits), answer));
}

AdamState AdamState::for_params(const ModelParams& params) {
  AdamState s;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    s.m[i].assign(params.tensors[i].size(), 0.0);
    s.v[i].assign(params.tensors[i].size(), 0.0);
  }
  return s;
}

void adam_step(ModelParams& params, const ParamTensors& grads,
               AdamState& state, const AdamConfig& cfg) {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    require(grads[i].shape() == params.tensors[i].shape(), ErrorCode::kShape,
            "adam_step: gradient shape mismatch for " +
                std::string(kParamNames[i]));
    require(state.m[i].size() == grads[i].size() &&
                state.v[i].size() == grads[i].size(),
            ErrorCode::kShape, "adam_step: optimizer state shape mismatch");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    auto g = grads[i].data();
    std::vector<double> w(params.tensors[i].data().begin(), params.tensors[i].data().end());
    auto& m = state.m[i];
    auto& v = state.v[i];
    for (std::size_t j = 0; j < w.size(); ++j) {
      m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g[j];
      v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g[j] * g[j];
      w[j] -= cfg.lr * (m[j] / c1) / (std::sqrt(v[j] / c2) + cfg.eps);
    }
    params.tensors[i] = Tensor(params.tensors[i].shape(), std::move(w));
  }
}

}  // namespace hint
