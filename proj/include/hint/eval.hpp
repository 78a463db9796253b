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

#ifndef HINT_EVAL_HPP_
#define HINT_EVAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hint/dataset.hpp"
#include "hint/model.hpp"
#include "hint/raster.hpp"

namespace hint {

struct Correlation {
  double value = 0.0;    // 0 when undefined
  bool defined = false;  // false when either side is constant
};

// Pearson correlation of average ranks (ties share the mean rank).
Correlation spearman(std::span<const double> x, std::span<const double> y);

// Average 1-based ranks.
std::vector<double> average_ranks(std::span<const double> x);

std::size_t argmax(std::span<const double> values);

// delta_r = logit_pred(full) - logit_pred(proposal r zeroed), where pred is
// the argmax of the unmasked logits.
std::vector<double> occlusion_importance(const ModelParams& params,
                                         const Example& example);

struct Faithfulness {
  std::optional<double> corr_grad_occlusion;
  std::optional<double> corr_attn_occlusion;
  std::size_t n_examples = 0;
  std::size_t excluded_grad = 0;
  std::size_t excluded_attn = 0;
};

// Mean per-example Spearman between occlusion deltas and (a) alpha for the
// predicted answer, (b) attention weights.
Faithfulness faithfulness(const ModelParams& params, const Dataset& data);

// Raster binarized at 0.5 * max versus a box, in pixels. Empty when the
// raster is all zero.
std::optional<double> box_mask_iou(const Box& box, const AttentionRaster& raster);

// IoU for the box of the highest-attention proposal.
double iou_top(const ModelParams& params, const Example& example);

struct EvalReport {
  double accuracy = 0.0;
  std::optional<double> spearman_grad_human;
  std::optional<double> spearman_attn_human;
  std::optional<double> corr_grad_occlusion;
  std::optional<double> corr_attn_occlusion;
  std::optional<double> iou_top;
  std::size_t n_examples = 0;
  std::size_t n_supervisable = 0;
  // Per-example correlations skipped because one side was constant.
  std::size_t excluded_correlations = 0;
  std::map<std::string, double> per_question_type_accuracy;
};

EvalReport evaluate(const ModelParams& params, const Dataset& data);
std::string report_to_json(const EvalReport& report);

struct ProposalExplanation {
  Box box;
  std::optional<double> human;
  double alpha = 0.0;
  double attention = 0.0;
  double occlusion = 0.0;
};

struct Explanation {
  std::string id;
  std::size_t answer = 0;
  std::size_t predicted = 0;
  std::vector<ProposalExplanation> proposals;
};

Explanation explain(const ModelParams& params, const Example& example);
std::string explanation_to_json(const Explanation& e);

}  // namespace hint

#endif  // HINT_EVAL_HPP_
