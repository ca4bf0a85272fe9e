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

#include <cstdint>
#include <string>
#include <vector>

#include "core/gates.hpp"
#include "core/linalg.hpp"

namespace qrlc {

// Haar-distributed special unitary via QR of a complex Ginibre matrix
// (modified Gram-Schmidt yields the positive-diagonal factorization, which is
// already phase-corrected), then a determinant phase fix into SU(dim).
// Deterministic per seed.
CMat haar_unitary(int dim, uint64_t seed);

// Benchmark target shaped like a KAK circuit: three fixed CNOT gates on the
// pair (qubits 1-2 for a two-qubit register, 1-3 for three qubits),
// interleaved with four single-qubit layers. n_single gates are drawn
// uniformly from `pool`, assigned to layers round-robin and to a uniformly
// random qubit of the pair. Throws if the pool is empty, contains a two-qubit
// gate, or n_single < 1.
CMat kak_template_target(const std::vector<NativeGate>& pool, int n_single,
                         uint64_t seed, int num_qubits);

// exp(-i gamma/2 Z (x) Z) = diag(e^{-i g/2}, e^{i g/2}, e^{i g/2}, e^{-i g/2})
CMat rzz(double gamma);

// Discrete Fourier transform matrix F[j][k] = exp(2 pi i jk / 2^M) / 2^{M/2}
// in the register's fixed bit order (no terminal qubit reversal).
CMat qft(int num_qubits);

// The same operator composed with the bit-reversal permutation, i.e. the
// unitary a swap-free Fourier circuit implements.
CMat qft_bit_reversed(int num_qubits);

CMat bit_reversal_perm(int num_qubits);

// Parses a target specifier into a concrete unitary. Accepted forms:
//   "id"              identity
//   "qftM"            e.g. "qft3"
//   "qftrevM"         bit-reversed variant
//   "rzz:GAMMA"       e.g. "rzz:1.5708" (two-qubit)
//   "haar:SEED"       Haar-random on the configured register size
//   "kak:N:SEED"      KAK-template target from the configured gate pool
//   "swap"            the two-qubit SWAP gate
//   "explicit:PATH"   JSON file {"dim": d, "entries": [[re, im], ...]}
// `space` supplies the single-qubit pool for "kak" targets and may be null
// otherwise. Throws ErrCode::parse on malformed specs.
CMat resolve_target(const std::string& spec, int num_qubits, const ActionSpace* space);

// Parses an input-state specifier: a string of per-qubit tokens from
// {0, 1, +, -} (e.g. "+00"), or "haar:SEED" for a random state.
StateVec resolve_input_state(const std::string& spec, int num_qubits);

}  // namespace qrlc
