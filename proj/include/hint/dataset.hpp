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

#ifndef HINT_DATASET_HPP_
#define HINT_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hint/raster.hpp"

namespace hint {

struct Proposal {
  Box box;
  std::vector<double> feature;

  bool operator==(const Proposal&) const = default;
};

// One question about one image. `referent` is generator-side ground truth
// kept for diagnostics only; training and evaluation never read it.
struct Example {
  std::string id;
  std::vector<std::size_t> question;
  std::size_t answer = 0;
  std::vector<Proposal> proposals;
  std::optional<AttentionRaster> attention;
  std::optional<std::size_t> referent;

  bool operator==(const Example&) const = default;
};

using Dataset = std::vector<Example>;

// One JSON object per line:
// {"id","question","answer","proposals":[{"box","feature"}],"attention","referent"}
std::string example_to_json(const Example& example);
// `line_no` is 1-based and only used in error messages.
Example example_from_json(const std::string& line, std::size_t line_no);

void write_jsonl(const std::filesystem::path& path, const Dataset& data);
Dataset read_jsonl(const std::filesystem::path& path);

}  // namespace hint

#endif  // HINT_DATASET_HPP_
