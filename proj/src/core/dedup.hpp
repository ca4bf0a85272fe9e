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

#include <string>

#include "core/linalg.hpp"

namespace qrlc {

// Identity key for unitaries modulo global phase: canonicalize the phase,
// then quantize every real/imaginary part to 1e-6 buckets and pack the
// resulting integers. Quantization is coarse enough to absorb accumulated
// 1e-10-scale arithmetic noise and far finer than the entry granularity of
// any supported gate set, so equal keys imply phase-equivalent matrices.
// The training environment and the exhaustive verifier share this one
// definition so they agree on state identity by construction.
std::string dedup_key(const CMat& u);

}  // namespace qrlc
