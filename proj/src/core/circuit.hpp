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
#include <vector>

namespace qrlc {

// One placed gate in a circuit listing. Gates are always listed in
// application order: the first entry acts first. Parametric gates carry their
// angles ("u3" carries three).
struct GateOp {
  std::string name;
  std::vector<int> qubits;  // 1-based; qubit 1 is the most significant bit
  std::vector<double> angles;
};

enum class CompileStatus { converged, budget_exhausted };

struct RefinedSection {
  std::vector<GateOp> gates;
  double f1_initial = 0.0;
  double f1_refined = 0.0;
};

// Self-contained circuit document; everything needed to re-simulate the
// circuit and recompute its fidelity lives in the file.
struct CircuitDoc {
  int format_version = 1;
  int num_qubits = 0;
  std::string bit_order = "q1-msb";
  std::vector<GateOp> gates;

  // metrics
  double f1 = 0.0;
  int n1 = 0, n2 = 0;
  double elapsed_ms = 0.0;

  CompileStatus status = CompileStatus::converged;

  // provenance
  uint64_t model_fingerprint = 0;
  std::string search_mode;
  uint64_t seed = 0;
  std::string target_spec;
  long nodes_expanded = 0;

  std::optional<RefinedSection> refined;
};

std::string circuit_to_json(const CircuitDoc& doc);
CircuitDoc circuit_from_json(const std::string& text);
void write_circuit(const CircuitDoc& doc, const std::string& path);
CircuitDoc read_circuit(const std::string& path);

}  // namespace qrlc
