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

#ifndef HINT_ERROR_HPP_
#define HINT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hint {

// Error categories. The numeric values are mirrored by the C API status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kShape = 2,
  kNumeric = 3,
  kParse = 4,
  kIo = 5,
  kConfig = 6,
  kNotFound = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace hint

#endif  // HINT_ERROR_HPP_
