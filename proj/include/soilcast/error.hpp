/*
 * Copyright 2026 The Soilcast Authors.
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

#ifndef SOILCAST_ERROR_HPP_
#define SOILCAST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace soilcast {

enum class Errc {
  kInvalidArgument,
  kInsufficientData,
  kDegenerate,
  kParse,
  kIo,
};

// Thrown by every fallible operation in the library. The code lets callers
// distinguish "not enough data" and "degenerate input" from plain misuse.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace soilcast

#endif  // SOILCAST_ERROR_HPP_
