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

#include "hint/importance.hpp"

#include <string>

#include "hint/error.hpp"

namespace hint {

std::vector<double> HumanImportance::scores() const {
  std::vector<double> s;
  s.reserve(proposals.size());
  for (const auto& p : proposals) s.push_back(p.score);
  return s;
}

HumanImportance human_importance(const AttentionRaster& raster,
                                 std::span<const Box> boxes) {
  const std::size_t h = raster.height();
  const std::size_t w = raster.width();
  for (const Box& b : boxes) {
    require(b.fits(h, w), ErrorCode::kInvalidArgument,
            "box [" + std::to_string(b.x1) + "," + std::to_string(b.y1) + "," +
                std::to_string(b.x2) + "," + std::to_string(b.y2) +
                ") outside raster " + std::to_string(h) + "x" +
                std::to_string(w));
  }

  HumanImportance out;
  out.proposals.resize(boxes.size());
  if (raster.all_zero()) {
    out.supervisable = false;
    return out;
  }

  const double cells = static_cast<double>(h * w);
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const Box& b = boxes[k];
    double inside = 0.0;
    double outside = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < w; ++j) {
        const double a = raster.at(i, j);
        if (b.contains(static_cast<int>(i), static_cast<int>(j))) {
          inside += a;
        } else {
          outside += a;
        }
      }
    }
    const double area = static_cast<double>(b.area());
    ProposalEnergy& e = out.proposals[k];
    e.e_in = inside / area;
    // A box covering the whole grid has no outside.
    e.e_out = area < cells ? outside / (cells - area) : 0.0;
    const double denom = e.e_in + e.e_out;
    e.score = denom > 0.0 ? e.e_in / denom : 0.0;
  }
  return out;
}

HumanImportance human_importance(const Example& example) {
  require(example.attention.has_value(), ErrorCode::kInvalidArgument,
          "example " + example.id + " has no attention raster");
  std::vector<Box> boxes;
  boxes.reserve(example.proposals.size());
  for (const auto& p : example.proposals) boxes.push_back(p.box);
  return human_importance(*example.attention, boxes);
}

NetworkImportance network_importance(const ModelOutput& output,
                                     std::size_t answer, bool create_graph) {
  require(answer < output.logits.size(), ErrorCode::kInvalidArgument,
          "answer index " + std::to_string(answer) + " out of range");
  ad::Graph& g = *output.logits.graph();
  ad::Var score = ad::pick(output.logits, answer);
  std::vector<ad::Var> grads = g.grad(score, output.proposal_leaves, create_graph);

  NetworkImportance out;
  out.nodes.reserve(grads.size());
  out.values.reserve(grads.size());
  for (ad::Var gr : grads) {
    ad::Var alpha = ad::sum(gr);
    out.nodes.push_back(alpha);
    out.values.push_back(alpha.item());
  }
  return out;
}

}  // namespace hint
