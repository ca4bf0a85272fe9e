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
#include <vector>

#include "core/config.hpp"
#include "core/oracle.hpp"
#include "core/search.hpp"

namespace qrlc {

struct TrainOutput {
  std::vector<std::string> model_files;  // one per loop
  std::string final_model;
  std::string log_file;
  uint64_t fingerprint = 0;
  int loops = 0;
  double final_loss = 0.0;
  std::string summary_json() const;
};

// Full precompilation pass: dataset generation (or shard reuse when
// paths.dataset_dir holds one), loop-wise training, one checkpoint per loop
// plus the final model and a per-epoch loss log under out_dir.
TrainOutput run_training(const RunConfig& cfg, const std::string& out_dir);

// Staged search over the given models, optionally followed by single-qubit
// angle refinement. Fills provenance (target spec, seed, fingerprints).
CompileResult run_compile(const RunConfig& cfg,
                          const std::vector<const NetworkParams*>& models,
                          const std::string& target_spec, bool variational);

// Builds a circuit from an explicit gate template (comma-separated "NAME@q" /
// "NAME@a-b" / "u3@q" items; u3 angles start at a seeded random draw) and
// optimizes its single-qubit angles against the target. No model involved.
CompileResult run_template_compile(const RunConfig& cfg, const std::string& template_spec,
                                   const std::string& target_spec);

// Re-optimizes the single-qubit angles of doc's gate list against the target
// and attaches the refined section.
void refine_circuit(const RunConfig& cfg, CircuitDoc& doc, const CMat& target);

struct EvalOutput {
  double stored_f1 = 0.0;
  double recomputed_f1 = 0.0;
  bool f1_consistent = true;  // |stored - recomputed| <= 1e-8
  bool has_refined = false;
  double refined_stored_f1 = 0.0;
  double refined_recomputed_f1 = 0.0;
  bool refined_consistent = true;

  struct TvRow {
    std::string input;
    double tv_circuit_ideal = 0.0;
    double tv_ideal_uniform = 0.0;
  };
  std::vector<TvRow> tv;

  bool oracle_checked = false;
  int oracle_distance = -1;  // -1 when the target lies beyond the table
  int circuit_length = 0;
  bool oracle_optimal = false;

  bool ok() const { return f1_consistent && refined_consistent; }
  std::string to_json() const;
};

// Independent re-check of a circuit document: fidelity recomputation from the
// stored gate list, optional output-distribution distances for the requested
// input states, optional gate-count comparison against an exhaustive table.
EvalOutput run_eval(const RunConfig& cfg, const CircuitDoc& doc,
                    const std::string& target_override, const std::string& tv_inputs_csv,
                    const ValueTable* oracle);

}  // namespace qrlc
