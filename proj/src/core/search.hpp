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
#include <memory>
#include <vector>

#include "core/circuit.hpp"
#include "core/gates.hpp"
#include "core/linalg.hpp"
#include "core/oracle.hpp"
#include "core/qnet.hpp"

namespace qrlc {

// Cost-to-go source for the search: one value per action for a batch of
// phase-canonical residual unitaries. Implementations must be pure and
// thread-compatible.
class QSource {
 public:
  virtual ~QSource() = default;
  virtual int num_actions() const = 0;
  virtual uint64_t fingerprint() const = 0;
  virtual RMat q_values(const std::vector<const CMat*>& residuals) const = 0;
};

// Network-backed values (eval-mode inference).
class ModelQ : public QSource {
 public:
  explicit ModelQ(NetworkParams params) : params_(std::move(params)) {}
  int num_actions() const override { return params_.shape.output; }
  uint64_t fingerprint() const override { return params_.fingerprint; }
  RMat q_values(const std::vector<const CMat*>& residuals) const override;
  const NetworkParams& params() const { return params_; }

 private:
  NetworkParams params_;
};

// Exact values from an exhaustive table; states beyond the table depth score
// as one step worse than the deepest enumerated shell.
class OracleQ : public QSource {
 public:
  OracleQ(const ValueTable& table, const ActionSpace& space)
      : table_(table), space_(space) {}
  int num_actions() const override { return space_.size(); }
  uint64_t fingerprint() const override { return table_.fingerprint(); }
  RMat q_values(const std::vector<const CMat*>& residuals) const override;

 private:
  const ValueTable& table_;
  const ActionSpace& space_;
};

enum class SearchMode { greedy, frontier };

struct SearchConfig {
  int depth = 200;              // maximum actions along any path
  double epsilon = 1e-4;        // termination infidelity
  int frontier_width = 128;
  double time_budget_sec = 600.0;
  SearchMode mode = SearchMode::frontier;
  uint64_t seed = 0;            // recorded in provenance only
};

struct SearchNode {
  CMat residual;               // phase-canonical remaining unitary
  int g = 0;                   // negated actions spent
  std::vector<uint16_t> path;  // chosen action indices, in search order
};

// Node evaluation: actions spent plus estimated cost-to-go of taking `action`.
double eval_f(const SearchNode& node, int action, const QSource& q);

struct CompileResult {
  CircuitDoc circuit;  // gates in application order; metrics filled in
  double f1 = 0.0;
  int n1 = 0, n2 = 0;
  CompileStatus status = CompileStatus::converged;
  long nodes_expanded = 0;
  double elapsed_ms = 0.0;
  std::vector<uint16_t> chosen_actions;  // search order (before inversion)
  std::vector<double> stage_f1;          // multi-stage runs: fidelity after each stage
};

// Single-path descent: repeatedly apply the best-scoring action to the
// residual. On budget exhaustion the best prefix seen is returned.
CompileResult greedy_rollout(const CMat& target, const QSource& q, const ActionSpace& space,
                             const SearchConfig& cfg);

// Width-capped best-first variant: every live node expands with its single
// best action per iteration; unseen successors form the next generation,
// ranked by f. On exhaustion the visited node closest to the identity wins.
CompileResult frontier_search(const CMat& target, const QSource& q, const ActionSpace& space,
                              const SearchConfig& cfg);

// Staged compilation: each model compiles the residual left by its
// predecessors, and the gate lists concatenate. Stage fidelities never
// decrease; returns early once within epsilon.
CompileResult multi_dqn_search(const CMat& target,
                               const std::vector<const QSource*>& models,
                               const std::vector<const ActionSpace*>& spaces,
                               const SearchConfig& cfg);

}  // namespace qrlc
