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

#ifndef HINT_RASTER_HPP_
#define HINT_RASTER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hint {

// Half-open pixel box [x1, x2) x [y1, y2). x indexes columns, y rows.
struct Box {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  long area() const { return static_cast<long>(x2 - x1) * (y2 - y1); }
  bool contains(int row, int col) const {
    return row >= y1 && row < y2 && col >= x1 && col < x2;
  }
  bool fits(std::size_t h, std::size_t w) const;
  bool operator==(const Box&) const = default;
};

// h x w grid of non-negative values, row-major.
class AttentionRaster {
 public:
  AttentionRaster() = default;
  AttentionRaster(std::size_t h, std::size_t w, std::vector<double> values);

  std::size_t height() const { return h_; }
  std::size_t width() const { return w_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * w_ + col];
  }
  double total() const;
  double max() const;
  bool all_zero() const;

  bool operator==(const AttentionRaster&) const = default;

 private:
  std::size_t h_ = 0;
  std::size_t w_ = 0;
  std::vector<double> values_;
};

// Elementwise mean of equally sized rasters.
AttentionRaster average_rasters(std::span<const AttentionRaster> rasters);

// {"h": int, "w": int, "data": [...]} with data.size() == h * w.
AttentionRaster parse_raster(std::string_view json);
std::string emit_raster(const AttentionRaster& raster);

}  // namespace hint

#endif  // HINT_RASTER_HPP_
