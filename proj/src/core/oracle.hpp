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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/dataset.hpp"
#include "core/gates.hpp"
#include "core/linalg.hpp"

namespace qrlc {

struct OracleEntry {
  int distance = 0;
  std::vector<uint16_t> witness;  // action indices whose product reaches the entry
};

// Exhaustive breadth-first closure of the action alphabet up to a depth bound:
// exact minimal gate counts for every reachable unitary modulo phase, plus a
// witness sequence per entry. Shares the dedup key with the training
// environment so both agree on state identity.
class ValueTable {
 public:
  static ValueTable build(const ActionSpace& space, int max_depth,
                          size_t memory_budget_bytes = size_t(4) << 30);

  // Exact minimal gate count, or nullopt if the unitary lies beyond max_depth.
  std::optional<int> distance(const CMat& u) const;
  const OracleEntry* lookup(const std::string& key) const;

  int max_depth() const { return max_depth_; }
  uint64_t fingerprint() const { return fingerprint_; }
  size_t size() const { return entries_.size(); }
  int dim() const { return dim_; }
  const std::unordered_map<std::string, OracleEntry>& entries() const { return entries_; }

  // Re-builds an entry's unitary from its witness.
  CMat witness_unitary(const OracleEntry& e, const ActionSpace& space) const;

  void save(const std::string& path) const;
  static ValueTable load(const std::string& path, const ActionSpace& space);

 private:
  int max_depth_ = 0;
  int dim_ = 0;
  uint64_t fingerprint_ = 0;
  std::unordered_map<std::string, OracleEntry> entries_;
};

struct VerifyReport {
  size_t checked = 0;     // stored percepts examined
  size_t covered = 0;     // found in the table
  size_t mismatches = 0;  // exhaustive-regime value disagreements (failures)
  size_t noise = 0;       // sampled-regime overestimates (expected label noise)
  std::vector<std::string> worst;

  bool ok() const { return mismatches == 0; }
};

// Compares every stored percept value against the table. Each percept's group
// element is re-derived from its generating sequence (the stored matrix may
// carry the start-percept perturbation, which is irrelevant to gate distance).
VerifyReport verify_values(const TrainingSet& ts, const ValueTable& table,
                           const ActionSpace& space);

}  // namespace qrlc
