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

#include "hint/raster.hpp"

#include <algorithm>
#include <cmath>

#include "hint/error.hpp"
#include "json_io.hpp"

namespace hint {

bool Box::fits(std::size_t h, std::size_t w) const {
  return x1 >= 0 && y1 >= 0 && x1 < x2 && y1 < y2 &&
         static_cast<std::size_t>(x2) <= w && static_cast<std::size_t>(y2) <= h;
}

AttentionRaster::AttentionRaster(std::size_t h, std::size_t w,
                                 std::vector<double> values)
    : h_(h), w_(w), values_(std::move(values)) {
  require(h_ > 0 && w_ > 0, ErrorCode::kShape,
          "raster dimensions must be positive");
  require(values_.size() == h_ * w_, ErrorCode::kShape,
          "raster data length " + std::to_string(values_.size()) +
              " != h*w = " + std::to_string(h_ * w_));
  for (double v : values_) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::kInvalidArgument,
            "raster values must be finite and non-negative");
  }
}

double AttentionRaster::total() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double AttentionRaster::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

bool AttentionRaster::all_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

AttentionRaster average_rasters(std::span<const AttentionRaster> rasters) {
  require(!rasters.empty(), ErrorCode::kInvalidArgument,
          "cannot average an empty raster list");
  const std::size_t h = rasters[0].height();
  const std::size_t w = rasters[0].width();
  std::vector<double> acc(h * w, 0.0);
  for (const auto& r : rasters) {
    require(r.height() == h && r.width() == w, ErrorCode::kShape,
            "rasters to average differ in size");
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += r.values()[i];
  }
  if (rasters.size() > 1) {
    for (double& v : acc) v /= static_cast<double>(rasters.size());
  }
  return AttentionRaster(h, w, std::move(acc));
}

namespace detail {

AttentionRaster raster_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("h") || !j.contains("w") ||
      !j.contains("data")) {
    fail(ErrorCode::kParse, "raster must be an object with h, w and data");
  }
  const auto& h = j.at("h");
  const auto& w = j.at("w");
  const auto& data = j.at("data");
  if (!h.is_number_unsigned() || !w.is_number_unsigned() || !data.is_array()) {
    fail(ErrorCode::kParse, "raster h/w must be non-negative integers and data an array");
  }
  const auto rows = h.get<std::size_t>();
  const auto cols = w.get<std::size_t>();
  if (data.size() != rows * cols) {
    fail(ErrorCode::kParse, "raster data length " + std::to_string(data.size()) +
                                " != h*w = " + std::to_string(rows * cols));
  }
  std::vector<double> values;
  values.reserve(data.size());
  for (const auto& v : data) {
    if (!v.is_number()) fail(ErrorCode::kParse, "raster data must be numeric");
    values.push_back(v.get<double>());
    if (values.back() < 0.0) fail(ErrorCode::kParse, "raster values must be non-negative");
  }
  return AttentionRaster(rows, cols, std::move(values));
}

OrderedJson raster_to_json(const AttentionRaster& raster) {
  OrderedJson j;
  j["h"] = raster.height();
  j["w"] = raster.width();
  j["data"] = std::vector<double>(raster.values().begin(), raster.values().end());
  return j;
}

std::string dump(const OrderedJson& j, int indent) { return j.dump(indent); }

}  // namespace detail

AttentionRaster parse_raster(std::string_view json) {
  detail::Json j;
  try {
    j = detail::Json::parse(json);
  } catch (const detail::Json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("malformed raster JSON: ") + e.what());
  }
  return detail::raster_from_json(j);
}

std::string emit_raster(const AttentionRaster& raster) {
  return detail::dump(detail::raster_to_json(raster));
}

}  // namespace hint
