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

// Binary checkpoint layout (all integers and floats little-endian):
//
//   "HNTC" | u32 version = 1 | u32 tensor count
//   per tensor: u16 name length | name bytes | u8 ndim | u32 dims[ndim]
//   payloads of all tensors, in declaration order, as f64

#ifndef HINT_CHECKPOINT_HPP_
#define HINT_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hint/model.hpp"

namespace hint {

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> checkpoint_bytes(const ModelParams& params);
// Names and shapes must match those implied by `hp`.
ModelParams checkpoint_from_bytes(std::span<const std::uint8_t> bytes,
                                  const HyperParams& hp);

void save_checkpoint(const std::filesystem::path& path,
                     const ModelParams& params);
ModelParams load_checkpoint(const std::filesystem::path& path,
                            const HyperParams& hp);

}  // namespace hint

#endif  // HINT_CHECKPOINT_HPP_
