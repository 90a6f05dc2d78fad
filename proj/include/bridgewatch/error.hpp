/*
 * Copyright 2026 The bridgewatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BRIDGEWATCH_ERROR_HPP_
#define BRIDGEWATCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bridgewatch {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kIo,
  kInternal,
};

// All library failures are reported as this exception. The C API maps the
// code onto bw_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error InvalidArgumentError(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}
inline Error ParseError(const std::string& message) {
  return Error(ErrorCode::kParse, message);
}
inline Error IoError(const std::string& message) {
  return Error(ErrorCode::kIo, message);
}

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_ERROR_HPP_
