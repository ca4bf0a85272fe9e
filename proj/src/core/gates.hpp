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
#include <utility>
#include <vector>

#include "core/linalg.hpp"

namespace qrlc {

// A gate the hardware executes directly, before placement on qubits.
//
// Supported names:
//   "P/k", "-P/k"  for P in {X,Y,Z}: the rotation R_P(+-pi/k), e.g. "X/2",
//                  "-Y/6", "Z/128"
//   "T", "Tdg", "H", "CZ"
//   "V1", "V1dg", "V2", "V2dg", "V3", "V3dg"
//   "RX", "RY", "RZ", "RPHI"  (parametric; angle in radians required)
// Rotations follow the half-angle convention R_P(theta) = exp(-i theta P / 2);
// RPHI(phi) is the fixed pi/2 rotation about cos(phi) X + sin(phi) Y.
struct NativeGate {
  std::string name;
  int arity = 1;
  CMat matrix;
  std::optional<double> angle;

  // Display form, e.g. "RZ(0.7853981634)"; non-parametric gates print as-is.
  std::string display() const;
};

CMat gate_matrix(const std::string& name, std::optional<double> angle = {});
NativeGate make_gate(const std::string& name, std::optional<double> angle = {});

// Parses a whitespace-separated gate list such as "X/2 -X/2 T Tdg CZ".
// Parametric gates take the form NAME:angle, e.g. "RZ:0.5".
std::vector<NativeGate> parse_gate_list(const std::string& text);

// Qubit connectivity. Qubits are 1-based; edges are the unordered pairs on
// which two-qubit gates may act, kept in configuration order so that action
// indices are stable.
struct Topology {
  int num_qubits = 1;
  std::vector<std::pair<int, int>> edges;

  static Topology none(int m) { return Topology{m, {}}; }
  static Topology chain(int m);
  static Topology full(int m);

  void validate() const;
};

// Embed a 1- or 2-qubit gate on the given (1-based) qubits of an M-qubit
// register. Qubit 1 is the most significant bit of the basis index. Works for
// non-adjacent pairs.
CMat lift_gate(const CMat& g, const std::vector<int>& qubits, int num_qubits);

// One placed gate: a full-register unitary plus provenance.
struct Action {
  std::string label;        // e.g. "T@2", "CZ@1-3"
  NativeGate gate;          // local definition
  std::vector<int> qubits;  // ascending placement
  CMat matrix;              // lifted to 2^M x 2^M
  bool two_qubit = false;
};

// The ordered alphabet of placed gates the search and the value function range
// over. Construction lifts every single-qubit gate to each qubit position and
// every two-qubit gate to each topology edge, in gate-major order, and fails
// unless the set is closed under inversion.
class ActionSpace {
 public:
  static ActionSpace build(const std::vector<NativeGate>& gates, const Topology& topo);

  int size() const { return static_cast<int>(actions_.size()); }
  int num_qubits() const { return num_qubits_; }
  int dim() const { return 1 << num_qubits_; }
  const Action& action(int i) const { return actions_[i]; }
  const std::vector<Action>& actions() const { return actions_; }
  int inverse_index(int i) const { return inverse_[i]; }
  const Topology& topology() const { return topo_; }

  // FNV-1a over the ordered action labels; pins model files to the action
  // ordering they were trained with.
  uint64_t fingerprint() const { return fingerprint_; }

 private:
  int num_qubits_ = 0;
  Topology topo_;
  std::vector<Action> actions_;
  std::vector<int> inverse_;
  uint64_t fingerprint_ = 0;
};

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 14695981039346656037ULL);

}  // namespace qrlc
