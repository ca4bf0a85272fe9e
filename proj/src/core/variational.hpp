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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/circuit.hpp"
#include "core/gates.hpp"
#include "core/linalg.hpp"

namespace qrlc {

// Hardware-native single-qubit parameterization:
//   u3(theta, phi, lam) = RZ(phi - pi/2) RX(pi/2) RZ(pi - theta) RX(pi/2) RZ(lam - pi/2)
// with the usual half-angle rotation conventions. A closed form:
//   [[ e^{-i(phi+lam)/2} cos(t/2),      -i e^{-i(phi-lam)/2} sin(t/2) ],
//    [ -i e^{ i(phi-lam)/2} sin(t/2),    e^{ i(phi+lam)/2} cos(t/2)  ]]
CMat u3(double theta, double phi, double lam);

// Inverse of u3 up to global phase, with the branch fixed to theta in [0, pi]
// and phi, lam in (-pi, pi]; diagonal and anti-diagonal inputs take the
// theta = 0 / theta = pi branch with the free angle split set to zero.
std::array<double, 3> euler_angles(const CMat& g);

// A compiled gate list with every single-qubit gate replaced by a u3 slot.
// Evaluating at the initialization angles reproduces the source sequence's
// unitary; two-qubit gates stay fixed.
class Ansatz {
 public:
  // `space` (optional) enforces that every gate belongs to the action space.
  static Ansatz from_circuit(const CircuitDoc& doc, const ActionSpace* space = nullptr);

  int num_qubits() const { return num_qubits_; }
  int dim() const { return 1 << num_qubits_; }
  int num_params() const { return 3 * static_cast<int>(u3_slots_.size()); }

  std::vector<double> initial_params() const;
  CMat evaluate(const std::vector<double>& params) const;
  // Loss gradient d/dparams of 2^M - Re Tr(target^dag V) (or the
  // phase-invariant 2^M - |Tr| variant).
  void loss_and_grad(const std::vector<double>& params, const CMat& target,
                     bool phase_invariant, double& loss,
                     std::vector<double>& grad) const;

  // Gate list at the given parameters, u3 slots carrying explicit angles.
  std::vector<GateOp> to_gates(const std::vector<double>& params) const;

 private:
  struct Slot {
    bool parametric = false;
    int qubit = 0;                 // u3 slots
    std::array<double, 3> init{};  // u3 initialization angles
    CMat fixed;                    // lifted matrix for fixed slots
    GateOp source;                 // original gate (for export of fixed slots)
  };

  int num_qubits_ = 0;
  std::vector<Slot> slots_;       // application order
  std::vector<int> u3_slots_;     // indices of parametric slots
};

struct VarConfig {
  int steps = 500;
  double lr = 0.01;
  int restarts = 5;
  double jitter = 0.1;  // std-dev of the angle perturbation for restarts > 1
  uint64_t seed = 1;
  bool phase_invariant = false;
};

struct VarResult {
  std::vector<double> best_params;
  double best_f1 = 0.0;
  double init_f1 = 0.0;
  std::vector<double> raw_trace;       // per-step loss of the winning restart
  std::vector<double> smoothed_trace;  // running minimum of raw_trace
};

// Adam descent on the fidelity loss, restarted with jittered initializations.
// The returned parameters are never worse (by fidelity) than the start point.
VarResult optimize(const Ansatz& ansatz, const CMat& target, const VarConfig& cfg);

}  // namespace qrlc
