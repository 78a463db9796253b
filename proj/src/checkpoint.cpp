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

#include "hint/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "hint/error.hpp"

namespace hint {

namespace {

constexpr char kMagic[4] = {'H', 'N', 'T', 'C'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<T>(bytes_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return v;
  }

  std::string string(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    require(pos_ + n <= bytes_.size(), ErrorCode::kParse, "checkpoint is truncated");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> checkpoint_bytes(const ModelParams& params) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(kParamCount));
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const auto name = kParamNames[i];
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    const Shape& shape = params.tensors[i].shape();
    out.push_back(static_cast<std::uint8_t>(shape.size()));
    for (std::size_t d : shape) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d));
  }
  for (const Tensor& t : params.tensors) {
    for (double v : t.data()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

ModelParams checkpoint_from_bytes(std::span<const std::uint8_t> bytes,
                                  const HyperParams& hp) {
  hp.validate();
  Reader in(bytes);
  require(in.string(4) == std::string(kMagic, 4), ErrorCode::kParse,
          "not a checkpoint (bad magic)");
  const auto version = in.get<std::uint32_t>();
  require(version == kCheckpointVersion, ErrorCode::kParse,
          "unsupported checkpoint version " + std::to_string(version));
  const auto count = in.get<std::uint32_t>();
  require(count == kParamCount, ErrorCode::kShape,
          "checkpoint holds " + std::to_string(count) + " tensors, expected " +
              std::to_string(kParamCount));

  std::array<Shape, kParamCount> shapes;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const auto len = in.get<std::uint16_t>();
    const std::string name = in.string(len);
    require(name == kParamNames[i], ErrorCode::kShape,
            "checkpoint tensor " + std::to_string(i) + " is \"" + name +
                "\", expected \"" + std::string(kParamNames[i]) + "\"");
    const auto ndim = in.get<std::uint8_t>();
    for (std::uint8_t d = 0; d < ndim; ++d) shapes[i].push_back(in.get<std::uint32_t>());
    const Shape expected = param_shape(hp, static_cast<ParamId>(i));
    require(shapes[i] == expected, ErrorCode::kShape,
            "checkpoint tensor " + name + " has shape " + shape_string(shapes[i]) +
                ", configuration expects " + shape_string(expected));
  }

  ModelParams p;
  p.hyper = hp;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    std::vector<double> data(shape_size(shapes[i]));
    for (double& v : data) v = std::bit_cast<double>(in.get<std::uint64_t>());
    require(all_finite(data), ErrorCode::kNumeric,
            "checkpoint tensor " + std::string(kParamNames[i]) + " is not finite");
    p.tensors[i] = Tensor(shapes[i], std::move(data));
  }
  require(in.done(), ErrorCode::kParse, "trailing bytes after checkpoint payload");
  return p;
}

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params) {
  const auto bytes = checkpoint_bytes(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "failed writing " + path.string());
}

ModelParams load_checkpoint(const std::filesystem::path& path, const HyperParams& hp) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return checkpoint_from_bytes(bytes, hp);
}

}  // namespace hint
