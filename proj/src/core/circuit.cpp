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

#include "core/circuit.hpp"

#include <fstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace qrlc {

using nlohmann::json;

namespace {

json gates_to_json(const std::vector<GateOp>& gates) {
  json arr = json::array();
  for (const GateOp& g : gates) {
    json item = {{"name", g.name}, {"qubits", g.qubits}};
    if (!g.angles.empty()) item["angles"] = g.angles;
    arr.push_back(std::move(item));
  }
  return arr;
}

std::vector<GateOp> gates_from_json(const json& arr) {
  std::vector<GateOp> gates;
  for (const json& item : arr) {
    GateOp g;
    g.name = item.at("name").get<std::string>();
    g.qubits = item.at("qubits").get<std::vector<int>>();
    if (item.contains("angles")) g.angles = item["angles"].get<std::vector<double>>();
    gates.push_back(std::move(g));
  }
  return gates;
}

}  // namespace

std::string circuit_to_json(const CircuitDoc& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["num_qubits"] = doc.num_qubits;
  j["bit_order"] = doc.bit_order;
  j["gates"] = gates_to_json(doc.gates);
  j["metrics"] = {{"f1", doc.f1},
                  {"n1", doc.n1},
                  {"n2", doc.n2},
                  {"elapsed_ms", doc.elapsed_ms}};
  j["status"] = doc.status == CompileStatus::converged ? "converged" : "budget_exhausted";
  j["provenance"] = {{"model_fingerprint", std::to_string(doc.model_fingerprint)},
                     {"search_mode", doc.search_mode},
                     {"seed", doc.seed},
                     {"target", doc.target_spec},
                     {"nodes_expanded", doc.nodes_expanded}};
  if (doc.refined) {
    j["refined"] = {{"gates", gates_to_json(doc.refined->gates)},
                    {"f1_initial", doc.refined->f1_initial},
                    {"f1_refined", doc.refined->f1_refined}};
  }
  return j.dump(2) + "\n";
}

CircuitDoc circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrCode::parse, std::string("circuit file: bad JSON: ") + e.what());
  }
  try {
    CircuitDoc doc;
    doc.format_version = j.at("format_version").get<int>();
    if (doc.format_version != 1) fail(ErrCode::parse, "circuit file: unsupported version");
    doc.num_qubits = j.at("num_qubits").get<int>();
    doc.bit_order = j.at("bit_order").get<std::string>();
    if (doc.bit_order != "q1-msb")
      fail(ErrCode::parse, "circuit file: unsupported bit order " + doc.bit_order);
    doc.gates = gates_from_json(j.at("gates"));
    const json& m = j.at("metrics");
    doc.f1 = m.at("f1").get<double>();
    doc.n1 = m.at("n1").get<int>();
    doc.n2 = m.at("n2").get<int>();
    doc.elapsed_ms = m.at("elapsed_ms").get<double>();
    std::string status = j.value("status", "converged");
    doc.status =
        status == "converged" ? CompileStatus::converged : CompileStatus::budget_exhausted;
    if (j.contains("provenance")) {
      const json& p = j["provenance"];
      doc.model_fingerprint = std::stoull(p.value("model_fingerprint", "0"));
      doc.search_mode = p.value("search_mode", "");
      doc.seed = p.value("seed", uint64_t(0));
      doc.target_spec = p.value("target", "");
      doc.nodes_expanded = p.value("nodes_expanded", 0L);
    }
    if (j.contains("refined")) {
      RefinedSection r;
      r.gates = gates_from_json(j["refined"].at("gates"));
      r.f1_initial = j["refined"].at("f1_initial").get<double>();
      r.f1_refined = j["refined"].at("f1_refined").get<double>();
      doc.refined = std::move(r);
    }
    return doc;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrCode::parse, std::string("circuit file: missing or malformed field: ") + e.what());
  }
}

void write_circuit(const CircuitDoc& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrCode::resource, "circuit file: cannot write " + path);
  out << circuit_to_json(doc);
}

CircuitDoc read_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrCode::parse, "circuit file: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return circuit_from_json(text);
}

}  // namespace qrlc
