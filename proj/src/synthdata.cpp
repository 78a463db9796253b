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

#include "hint/synthdata.hpp"

#include <cstdio>
#include <random>

#include "hint/error.hpp"
#include "rng.hpp"

namespace hint {

namespace {

constexpr int kMaxBoxTries = 1000;

bool box_contains(const Box& outer, const Box& inner) {
  return outer.x1 <= inner.x1 && outer.y1 <= inner.y1 &&
         outer.x2 >= inner.x2 && outer.y2 >= inner.y2;
}

Box random_box(const GenConfig& cfg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> side(static_cast<int>(cfg.min_box),
                                          static_cast<int>(cfg.max_box));
  const int w = side(rng);
  const int h = side(rng);
  const int grid = static_cast<int>(cfg.grid);
  std::uniform_int_distribution<int> x(0, grid - w);
  std::uniform_int_distribution<int> y(0, grid - h);
  Box b;
  b.x1 = x(rng);
  b.y1 = y(rng);
  b.x2 = b.x1 + w;
  b.y2 = b.y1 + h;
  return b;
}

std::vector<double> make_feature(const GenConfig& cfg, std::size_t cls,
                                 std::size_t attr, std::mt19937_64& rng) {
  std::vector<double> f(cfg.feature_dim, 0.0);
  f[cls] = 1.0;
  f[cfg.num_classes + attr] = 1.0;
  std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
  if (cfg.noise_sigma > 0.0) {
    for (double& v : f) v += noise(rng);
  }
  return f;
}

}  // namespace

void GenConfig::validate() const {
  require(grid > 0 && num_proposals > 0 && num_classes > 1 && num_answers > 1,
          ErrorCode::kConfig, "grid, proposals, classes and answers must be positive (classes, answers >= 2)");
  require(num_classes + num_answers <= feature_dim, ErrorCode::kConfig,
          "feature_dim must hold the class and attribute one-hots");
  require(bias_train >= 0.0 && bias_train <= 1.0, ErrorCode::kConfig,
          "bias_train must lie in [0, 1]");
  require(bias_test <= 1.0, ErrorCode::kConfig, "bias_test must be <= 1");
  require(noise_sigma >= 0.0, ErrorCode::kConfig, "noise_sigma must be >= 0");
  require(min_box > 0 && min_box <= max_box && max_box <= grid,
          ErrorCode::kConfig, "box sides must satisfy 0 < min_box <= max_box <= grid");
  require(raster_style == "uniform_in_box", ErrorCode::kConfig,
          "unsupported raster_style \"" + raster_style + "\"");
}

std::size_t majority_answer(const GenConfig& cfg, std::size_t cls) {
  return cls % cfg.num_answers;
}

void attach_attention(Example& example, const GenConfig& cfg) {
  require(example.referent.has_value() &&
              *example.referent < example.proposals.size(),
          ErrorCode::kInvalidArgument, "attach_attention: unknown referent");
  const Box& b = example.proposals[*example.referent].box;
  std::vector<double> values(cfg.grid * cfg.grid, 0.0);
  for (int i = b.y1; i < b.y2; ++i) {
    for (int j = b.x1; j < b.x2; ++j) values[i * cfg.grid + j] = 1.0;
  }
  example.attention = AttentionRaster(cfg.grid, cfg.grid, std::move(values));
}

Dataset generate_split(const GenConfig& cfg, double bias, std::size_t n,
                       std::uint64_t seed, const std::string& id_prefix) {
  cfg.validate();
  require(bias >= 0.0 && bias <= 1.0, ErrorCode::kConfig, "bias must lie in [0, 1]");
  // Distractors must not swallow the referent box; that needs at least one
  // position smaller than the grid.
  require(cfg.num_proposals == 1 || cfg.min_box < cfg.grid, ErrorCode::kConfig,
          "infeasible box constraints: min_box must be smaller than the grid");

  Dataset out;
  out.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::mt19937_64 rng(detail::mix_seed(seed, idx));
    std::uniform_int_distribution<std::size_t> pick_class(0, cfg.num_classes - 1);
    std::uniform_int_distribution<std::size_t> pick_attr(0, cfg.num_answers - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    const std::size_t cls = pick_class(rng);
    const std::size_t major = majority_answer(cfg, cls);
    std::size_t answer = major;
    if (coin(rng) >= bias) {
      // Uniform over the other answers.
      std::uniform_int_distribution<std::size_t> other(0, cfg.num_answers - 2);
      answer = other(rng);
      if (answer >= major) ++answer;
    }

    Example ex;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06zu", idx);
    ex.id = id_prefix + buf;
    ex.question = {kQuestionTypeToken, class_token(cls)};
    ex.answer = answer;

    std::uniform_int_distribution<std::size_t> pick_slot(0, cfg.num_proposals - 1);
    const std::size_t referent = pick_slot(rng);
    ex.referent = referent;
    ex.proposals.resize(cfg.num_proposals);
    const Box ref_box = random_box(cfg, rng);
    for (std::size_t r = 0; r < cfg.num_proposals; ++r) {
      Proposal& p = ex.proposals[r];
      if (r == referent) {
        p.box = ref_box;
        p.feature = make_feature(cfg, cls, answer, rng);
        continue;
      }
      int tries = 0;
      do {
        require(++tries <= kMaxBoxTries, ErrorCode::kConfig,
                "infeasible box constraints: cannot place distractor boxes");
        p.box = random_box(cfg, rng);
      } while (box_contains(p.box, ref_box));
      std::uniform_int_distribution<std::size_t> other_class(0, cfg.num_classes - 2);
      std::size_t dc = other_class(rng);
      if (dc >= cls) ++dc;
      p.feature = make_feature(cfg, dc, pick_attr(rng), rng);
    }
    attach_attention(ex, cfg);
    out.push_back(std::move(ex));
  }
  return out;
}

std::pair<Dataset, Dataset> generate_benchmark(const GenConfig& cfg) {
  cfg.validate();
  Dataset train = generate_split(cfg, cfg.bias_train, cfg.n_train,
                                 detail::mix_seed(cfg.seed, detail::kStreamTrainSplit),
                                 "train-");
  Dataset test = generate_split(cfg, cfg.effective_bias_test(), cfg.n_test,
                                detail::mix_seed(cfg.seed, detail::kStreamTestSplit),
                                "test-");
  return {std::move(train), std::move(test)};
}

}  // namespace hint
