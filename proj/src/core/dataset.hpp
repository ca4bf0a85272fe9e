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
#include <unordered_map>
#include <vector>

#include "core/gates.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"

namespace qrlc {

// A synthesized unitary paired with its training value: the negated loop at
// which its phase-canonical form was first produced. In the exhaustive regime
// that is the exact gate distance to the start percept.
struct Percept {
  CMat unitary;               // phase-canonical
  int value = 0;              // <= 0
  std::vector<uint16_t> seq;  // action indices, in application order onto the start
  int loop = 0;
};

struct GenConfig {
  int loops = 8;                // L
  int exhaustive_horizon = 3;   // l*: exhaustive for l <= l*, sampled beyond
  int budget = 200000;          // per-loop sample cap beyond l*
  uint64_t seed = 1;
  double perturbation = 0.002;  // start-percept rotation-angle bound; 0 disables
  size_t memory_budget_bytes = size_t(4) << 30;
};

// One generation step. `fresh` holds the percepts first seen at this loop;
// `child_values` holds, for every parent and every action, the exact value of
// the resulting child (exhaustive regime only; row-major parents x actions).
struct LoopData {
  int loop_index = 0;
  std::vector<Percept> fresh;
  std::vector<int8_t> child_values;

  bool exhaustive() const { return !child_values.empty(); }
};

class TrainingSet {
 public:
  int num_qubits = 0;
  int num_actions = 0;
  uint64_t space_fingerprint = 0;
  GenConfig cfg;
  std::vector<Percept> start;  // single perturbed-identity percept, loop 0
  std::vector<LoopData> loops;

  const LoopData& loop(int l) const { return loops.at(l - 1); }
  // Parents fed to loop l's expansion (and to exact-label training at loop l).
  const std::vector<Percept>& parents_of(int l) const {
    return l <= 1 ? start : loops.at(l - 2).fresh;
  }
  size_t total_percepts() const;
};

// Product over qubits of cos(a/2) I - i sin(a/2) (j1 X + j2 Y + j3 Z) with a
// fresh random axis per qubit and one angle a drawn from
// [-perturbation, perturbation]. The infidelity to the identity is bounded by
// 1 - cos(a/2)^M < 1e-4 for the default bound.
CMat perturbed_identity(int num_qubits, uint64_t seed);
CMat perturbed_identity_scaled(int num_qubits, double perturbation, Rng& rng);

// Applies every action to every parent (exhaustive, loop <= horizon) or
// samples (parent, action) pairs up to the budget (beyond). `seen` maps dedup
// keys to first-production values and is updated in place by exhaustive
// expansion only. Throws on empty parents or a zero sample budget.
LoopData expand_loop(const std::vector<Percept>& parents, const ActionSpace& space,
                     int loop_index, const GenConfig& cfg,
                     std::unordered_map<std::string, int>& seen, Rng& rng);

TrainingSet generate_training_set(const ActionSpace& space, const GenConfig& cfg);

// On-disk shards, one file per loop (the loop-0 file carries the start
// percept). Exact child labels are not stored; load_shards rebuilds them from
// the dedup index implied by the stored percepts.
void save_shards(const TrainingSet& ts, const std::string& dir);
TrainingSet load_shards(const std::string& dir, const ActionSpace& space, const GenConfig& cfg);

}  // namespace qrlc
