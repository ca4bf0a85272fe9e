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

#include "core/dataset.hpp"
#include "core/gates.hpp"
#include "core/qnet.hpp"
#include "core/search.hpp"
#include "core/variational.hpp"

namespace qrlc {

// Full run configuration. Flat sectioned key-value files and programmatic
// overrides both funnel through apply_override, so the CLI, the C API and
// config files agree on key names:
//
//   [gateset]     num_qubits, gates (list or a named set: G21 G22 G23 G31 G32
//                 G33 G34)
//   [topology]    edges = none | chain | full | explicit pairs "1-2 2-3"
//   [train]       loops, exhaustive_horizon, budget, perturbation, lr, delta,
//                 minibatch, epoch_factor, hidden1, hidden2, blocks, seed
//   [search]      mode, depth, epsilon, frontier_width, time_budget_sec
//   [variational] steps, lr, restarts, jitter, phase_invariant
//   [paths]       model_dir, dataset_dir, output
//   [general]     preset (applied before every other key in the file)
struct RunConfig {
  std::string preset_name = "desk";
  int num_qubits = 1;
  std::string gates_text = "X/2 -X/2 Y/2 -Y/2 T Tdg";
  std::string topology_text = "none";

  GenConfig gen;
  TrainConfig train_cfg;
  SearchConfig search;
  VarConfig var;

  std::string model_dir, dataset_dir, output;

  Topology build_topology() const;
  ActionSpace build_space() const;
};

// Shipped presets: "desk" (single-qubit, minutes on a laptop),
// "two-qubit-paper" and "three-qubit-paper" (full-scale hyper-parameters).
RunConfig config_preset(const std::string& name);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& cfg, const std::string& path);

// key is "section.name", e.g. "train.loops". Throws ErrCode::parse for
// unknown keys or unparseable values.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);
std::string config_get(const RunConfig& cfg, const std::string& key);

}  // namespace qrlc
