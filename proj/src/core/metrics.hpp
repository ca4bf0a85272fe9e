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
#include <utility>
#include <vector>

#include "core/circuit.hpp"
#include "core/linalg.hpp"

namespace qrlc {

// (N1, N2): gate counts by arity.
std::pair<int, int> gate_counts(const std::vector<GateOp>& gates);

// Half-L1 distance between outcome distributions. Throws on length mismatch.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Full-register matrix of one listed gate ("u3" included).
CMat gate_full_matrix(const GateOp& g, int num_qubits);

// Product of the gate list in application order (first gate acts first).
CMat circuit_unitary(const std::vector<GateOp>& gates, int num_qubits);

// Computational-basis outcome probabilities after running the gate list.
std::vector<double> output_distribution(const std::vector<GateOp>& gates,
                                        const StateVec& input, int num_qubits);

struct ReportRow {
  std::string target;
  std::string status;
  double f1 = 0.0;
  int n1 = 0, n2 = 0;
  double elapsed_ms = 0.0;
  long nodes_expanded = 0;
};

struct CompileReport {
  std::vector<ReportRow> rows;
  double mean_f1 = 0.0, std_f1 = 0.0;
  double mean_n1 = 0.0, std_n1 = 0.0;
  double mean_n2 = 0.0, std_n2 = 0.0;
  double mean_elapsed_ms = 0.0, std_elapsed_ms = 0.0;
};

CompileReport compile_report(const std::vector<ReportRow>& rows);
std::string report_csv(const CompileReport& report);
std::string report_json(const CompileReport& report);

}  // namespace qrlc
