// Copyright 2026 The memsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMSCHED_ERROR_HPP
#define MEMSCHED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace memsched {

enum class ErrorCode {
  kParse,       // malformed input text
  kValidate,    // structurally well-formed but violates an invariant
  kUnmapped,    // graph symbol has no placement
  kInfeasible,  // no schedule exists under the given horizon
  kTooLarge,    // instance exceeds a documented size guard
  kInvalidArg,  // precondition violated by the caller
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }

  // 1-based line of the offending input for parse/validate errors, 0 if
  // the error is not tied to a text location.
  int line() const { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

}  // namespace memsched

#endif  // MEMSCHED_ERROR_HPP
