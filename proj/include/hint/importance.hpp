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

#ifndef HINT_IMPORTANCE_HPP_
#define HINT_IMPORTANCE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hint/autodiff.hpp"
#include "hint/model.hpp"
#include "hint/raster.hpp"

namespace hint {

struct ProposalEnergy {
  double e_in = 0.0;   // mean raster value inside the box
  double e_out = 0.0;  // mean raster value outside the box
  double score = 0.0;  // e_in / (e_in + e_out), in [0, 1]
};

struct HumanImportance {
  std::vector<ProposalEnergy> proposals;
  // False when the raster carries no energy; scores are then all zero and
  // the example must not be used for ranking supervision.
  bool supervisable = true;

  std::vector<double> scores() const;
};

// Normalized attention energy inside each box relative to outside it.
HumanImportance human_importance(const AttentionRaster& raster,
                                 std::span<const Box> boxes);
HumanImportance human_importance(const Example& example);

struct NetworkImportance {
  // Scalar nodes, differentiable w.r.t. parameters when built with
  // create_graph.
  std::vector<ad::Var> nodes;
  std::vector<double> values;
};

// Per proposal: sum over feature components of d logits[answer] / d feature.
NetworkImportance network_importance(const ModelOutput& output,
                                     std::size_t answer, bool create_graph);

}  // namespace hint

#endif  // HINT_IMPORTANCE_HPP_
