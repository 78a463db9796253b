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

// Synthetic changing-priors benchmark. Each question names an object class;
// the answer is the attribute of the single proposal of that class. In the
// training split the answer is tied to the class by a majority map with
// probability `bias`, so a question-only predictor looks good in training
// but not on a split with a different bias.

#ifndef HINT_SYNTHDATA_HPP_
#define HINT_SYNTHDATA_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "hint/dataset.hpp"

namespace hint {

struct GenConfig {
  std::size_t grid = 32;
  std::size_t num_proposals = 8;
  std::size_t num_classes = 8;
  std::size_t num_answers = 4;
  std::size_t feature_dim = 16;
  double noise_sigma = 0.1;
  double bias_train = 0.9;
  double bias_test = -1.0;  // negative: uniform, i.e. 1 / num_answers
  std::size_t n_train = 5000;
  std::size_t n_test = 1000;
  std::size_t min_box = 4;
  std::size_t max_box = 16;
  std::string raster_style = "uniform_in_box";
  std::uint64_t seed = 0;

  double effective_bias_test() const {
    return bias_test < 0.0 ? 1.0 / static_cast<double>(num_answers) : bias_test;
  }
  void validate() const;
};

inline constexpr std::size_t kQuestionTypeToken = 0;
inline std::size_t class_token(std::size_t cls) { return cls + 1; }

// The answer favoured for `cls` in biased splits.
std::size_t majority_answer(const GenConfig& cfg, std::size_t cls);

Dataset generate_split(const GenConfig& cfg, double bias, std::size_t n,
                       std::uint64_t seed, const std::string& id_prefix);

// Raster equal to 1 inside the referent box and 0 elsewhere.
void attach_attention(Example& example, const GenConfig& cfg);

// Train and test splits from cfg.seed.
std::pair<Dataset, Dataset> generate_benchmark(const GenConfig& cfg);

}  // namespace hint

#endif  // HINT_SYNTHDATA_HPP_
