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

#ifndef HINT_SRC_JSON_IO_HPP_
#define HINT_SRC_JSON_IO_HPP_

#include <string>

#include "hint/raster.hpp"
#include "json.hpp"

namespace hint::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

AttentionRaster raster_from_json(const Json& j);
OrderedJson raster_to_json(const AttentionRaster& raster);

// Dumps with shortest round-trip doubles.
std::string dump(const OrderedJson& j, int indent = -1);

}  // namespace hint::detail

#endif  // HINT_SRC_JSON_IO_HPP_
