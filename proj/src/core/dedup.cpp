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

#include "core/dedup.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>

namespace qrlc {

std::string dedup_key(const CMat& u) {
  CMat c = canonical_phase(u);
  std::string key;
  key.reserve(c.data().size() * 16);
  for (const cplx& v : c.data()) {
    int64_t q[2] = {std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6)};
    char buf[16];
    std::memcpy(buf, q, 16);
    key.append(buf, 16);
  }
  return key;
}

}  // namespace qrlc
