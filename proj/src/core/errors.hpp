// Copyright 2025-2026 The qrlc developers
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

#pragma once

#include <stdexcept>
#include <string>

namespace qrlc {

// Error categories. The numeric values double as process exit codes and as
// C-API status codes, so they must stay stable.
enum class ErrCode {
  generic = 1,
  parse = 2,        // malformed config, circuit file, model file, target spec
  resource = 3,     // memory budget, unwritable path
  budget = 4,       // search budget exhausted (a status, not a failure)
  fingerprint = 5,  // model paired with the wrong action space
};

class Error : public std::runtime_error {
 public:
  Error(ErrCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrCode code() const { return code_; }

 private:
  ErrCode code_;
};

[[noreturn]] inline void fail(ErrCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace qrlc
