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

#include "core/metrics.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/gates.hpp"
#include "core/variational.hpp"

namespace qrlc {

std::pair<int, int> gate_counts(const std::vector<GateOp>& gates) {
  int n1 = 0, n2 = 0;
  for (const GateOp& g : gates) {
    if (g.qubits.size() == 1)
      ++n1;
    else
      ++n2;
  }
  return {n1, n2};
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) fail(ErrCode::generic, "tv_distance: length mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return acc / 2.0;
}

CMat gate_full_matrix(const GateOp& g, int num_qubits) {
  CMat local;
  if (g.name == "u3") {
    if (g.angles.size() != 3) fail(ErrCode::parse, "u3 gate needs 3 angles");
    local = u3(g.angles[0], g.angles[1], g.angles[2]);
  } else {
    std::optional<double> angle;
    if (!g.angles.empty()) angle = g.angles[0];
    local = gate_matrix(g.name, angle);
  }
  return lift_gate(local, g.qubits, num_qubits);
}

CMat circuit_unitary(const std::vector<GateOp>& gates, int num_qubits) {
  CMat v = CMat::identity(1 << num_qubits);
  for (const GateOp& g : gates) v = gate_full_matrix(g, num_qubits) * v;
  return v;
}

std::vector<double> output_distribution(const std::vector<GateOp>& gates,
                                        const StateVec& input, int num_qubits) {
  if (input.dim() != (1 << num_qubits))
    fail(ErrCode::generic, "output_distribution: input dimension mismatch");
  StateVec s = input;
  for (const GateOp& g : gates) s = apply(gate_full_matrix(g, num_qubits), s);
  std::vector<double> probs(s.amps.size());
  for (size_t i = 0; i < s.amps.size(); ++i) probs[i] = std::norm(s.amps[i]);
  return probs;
}

namespace {

void mean_std(const std::vector<double>& xs, double& mean, double& std_dev) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  std_dev = std::sqrt(var / static_cast<double>(xs.size()));
}

}  // namespace

CompileReport compile_report(const std::vector<ReportRow>& rows) {
  if (rows.empty()) fail(ErrCode::generic, "compile_report: no rows");
  CompileReport rep;
  rep.rows = rows;
  std::vector<double> f1s, n1s, n2s, ts;
  for (const ReportRow& r : rows) {
    f1s.push_back(r.f1);
    n1s.push_back(r.n1);
    n2s.push_back(r.n2);
    ts.push_back(r.elapsed_ms);
  }
  mean_std(f1s, rep.mean_f1, rep.std_f1);
  mean_std(n1s, rep.mean_n1, rep.std_n1);
  mean_std(n2s, rep.mean_n2, rep.std_n2);
  mean_std(ts, rep.mean_elapsed_ms, rep.std_elapsed_ms);
  return rep;
}

std::string report_csv(const CompileReport& report) {
  std::ostringstream out;
  out << "target,status,f1,n1,n2,elapsed_ms,nodes_expanded\n";
  out.precision(12);
  for (const ReportRow& r : report.rows)
    out << r.target << ',' << r.status << ',' << r.f1 << ',' << r.n1 << ',' << r.n2 << ','
        << r.elapsed_ms << ',' << r.nodes_expanded << '\n';
  out << "mean,," << report.mean_f1 << ',' << report.mean_n1 << ',' << report.mean_n2 << ','
      << report.mean_elapsed_ms << ",\n";
  out << "std,," << report.std_f1 << ',' << report.std_n1 << ',' << report.std_n2 << ','
      << report.std_elapsed_ms << ",\n";
  return out.str();
}

std::string report_json(const CompileReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows)
    rows.push_back({{"target", r.target},
                    {"status", r.status},
                    {"f1", r.f1},
                    {"n1", r.n1},
                    {"n2", r.n2},
                    {"elapsed_ms", r.elapsed_ms},
                    {"nodes_expanded", r.nodes_expanded}});
  nlohmann::json j = {
      {"rows", rows},
      {"summary",
       {{"mean_f1", report.mean_f1},
        {"std_f1", report.std_f1},
        {"mean_n1", report.mean_n1},
        {"std_n1", report.std_n1},
        {"mean_n2", report.mean_n2},
        {"std_n2", report.std_n2},
        {"mean_elapsed_ms", report.mean_elapsed_ms},
        {"std_elapsed_ms", report.std_elapsed_ms}}}};
  return j.dump(2) + "\n";
}

}  // namespace qrlc
