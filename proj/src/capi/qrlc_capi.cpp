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

#include "qrlc/qrlc.h"

#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/metrics.hpp"
#include "core/oracle.hpp"
#include "core/pipeline.hpp"
#include "core/qnet.hpp"
#include "core/search.hpp"
#include "core/targets.hpp"

using namespace qrlc;

struct qrlc_config {
  RunConfig cfg;
};
struct qrlc_model {
  NetworkParams params;
};
struct qrlc_circuit {
  CircuitDoc doc;
};
struct qrlc_oracle {
  ValueTable table;
};

namespace {

thread_local std::string g_last_error;

qrlc_status status_of(ErrCode code) {
  switch (code) {
    case ErrCode::parse: return QRLC_ERR_PARSE;
    case ErrCode::resource: return QRLC_ERR_RESOURCE;
    case ErrCode::budget: return QRLC_BUDGET_EXHAUSTED;
    case ErrCode::fingerprint: return QRLC_ERR_FINGERPRINT;
    default: return QRLC_ERROR;
  }
}

template <typename Fn>
qrlc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QRLC_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QRLC_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* qrlc_version(void) { return "0.1.0"; }

const char* qrlc_last_error(void) { return g_last_error.c_str(); }

void qrlc_string_free(char* s) { delete[] s; }

qrlc_status qrlc_config_preset(const char* name, qrlc_config** out) {
  return guarded([&] {
    if (!name || !out) fail(ErrCode::parse, "null argument");
    *out = new qrlc_config{config_preset(name)};
    return QRLC_OK;
  });
}

qrlc_status qrlc_config_load(const char* path, qrlc_config** out) {
  return guarded([&] {
    if (!path || !out) fail(ErrCode::parse, "null argument");
    *out = new qrlc_config{load_config(path)};
    return QRLC_OK;
  });
}

qrlc_status qrlc_config_set(qrlc_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    if (!cfg || !key || !value) fail(ErrCode::parse, "null argument");
    apply_override(cfg->cfg, key, value);
    return QRLC_OK;
  });
}

qrlc_status qrlc_config_get(const qrlc_config* cfg, const char* key, char** out) {
  return guarded([&] {
    if (!cfg || !key || !out) fail(ErrCode::parse, "null argument");
    *out = dup_string(config_get(cfg->cfg, key));
    return QRLC_OK;
  });
}

void qrlc_config_free(qrlc_config* cfg) { delete cfg; }

qrlc_status qrlc_train(const qrlc_config* cfg, const char* out_dir, char** summary_json) {
  return guarded([&] {
    if (!cfg) fail(ErrCode::parse, "null config");
    std::string dir = out_dir ? out_dir : cfg->cfg.model_dir;
    if (dir.empty())
      fail(ErrCode::parse, "no output directory (pass one or set paths.model_dir)");
    TrainOutput result = run_training(cfg->cfg, dir);
    if (summary_json) *summary_json = dup_string(result.summary_json());
    return QRLC_OK;
  });
}

qrlc_status qrlc_model_open(const char* path, qrlc_model** out) {
  return guarded([&] {
    if (!path || !out) fail(ErrCode::parse, "null argument");
    *out = new qrlc_model{load_model(path)};
    return QRLC_OK;
  });
}

uint64_t qrlc_model_fingerprint(const qrlc_model* model) {
  return model ? model->params.fingerprint : 0;
}

int qrlc_model_loop(const qrlc_model* model) {
  return model ? model->params.loop_index : -1;
}

void qrlc_model_free(qrlc_model* model) { delete model; }

qrlc_status qrlc_compile(const qrlc_config* cfg, qrlc_model* const* models,
                         size_t num_models, const char* target, int variational,
                         qrlc_circuit** out) {
  return guarded([&] {
    if (!cfg || !models || num_models == 0 || !target || !out)
      fail(ErrCode::parse, "null argument");
    std::vector<const NetworkParams*> params;
    params.reserve(num_models);
    for (size_t i = 0; i < num_models; ++i) {
      if (!models[i]) fail(ErrCode::parse, "null model handle");
      params.push_back(&models[i]->params);
    }
    CompileResult result = run_compile(cfg->cfg, params, target, variational != 0);
    *out = new qrlc_circuit{std::move(result.circuit)};
    return result.status == CompileStatus::converged ? QRLC_OK : QRLC_BUDGET_EXHAUSTED;
  });
}

qrlc_status qrlc_compile_template(const qrlc_config* cfg, const char* template_spec,
                                  const char* target, qrlc_circuit** out) {
  return guarded([&] {
    if (!cfg || !template_spec || !target || !out) fail(ErrCode::parse, "null argument");
    CompileResult result = run_template_compile(cfg->cfg, template_spec, target);
    *out = new qrlc_circuit{std::move(result.circuit)};
    return result.status == CompileStatus::converged ? QRLC_OK : QRLC_BUDGET_EXHAUSTED;
  });
}

qrlc_status qrlc_circuit_read(const char* path, qrlc_circuit** out) {
  return guarded([&] {
    if (!path || !out) fail(ErrCode::parse, "null argument");
    *out = new qrlc_circuit{read_circuit(path)};
    return QRLC_OK;
  });
}

qrlc_status qrlc_circuit_write(const qrlc_circuit* circuit, const char* path) {
  return guarded([&] {
    if (!circuit || !path) fail(ErrCode::parse, "null argument");
    write_circuit(circuit->doc, path);
    return QRLC_OK;
  });
}

qrlc_status qrlc_circuit_json(const qrlc_circuit* circuit, char** out) {
  return guarded([&] {
    if (!circuit || !out) fail(ErrCode::parse, "null argument");
    *out = dup_string(circuit_to_json(circuit->doc));
    return QRLC_OK;
  });
}

double qrlc_circuit_f1(const qrlc_circuit* circuit) {
  return circuit ? circuit->doc.f1 : -1.0;
}

double qrlc_circuit_refined_f1(const qrlc_circuit* circuit) {
  if (!circuit || !circuit->doc.refined) return -1.0;
  return circuit->doc.refined->f1_refined;
}

int qrlc_circuit_n1(const qrlc_circuit* circuit) { return circuit ? circuit->doc.n1 : -1; }
int qrlc_circuit_n2(const qrlc_circuit* circuit) { return circuit ? circuit->doc.n2 : -1; }

int qrlc_circuit_converged(const qrlc_circuit* circuit) {
  return circuit && circuit->doc.status == CompileStatus::converged ? 1 : 0;
}

void qrlc_circuit_free(qrlc_circuit* circuit) { delete circuit; }

qrlc_status qrlc_circuit_refine(const qrlc_config* cfg, qrlc_circuit* circuit,
                                const char* target) {
  return guarded([&] {
    if (!cfg || !circuit || !target) fail(ErrCode::parse, "null argument");
    ActionSpace space = cfg->cfg.build_space();
    CMat u = resolve_target(target, cfg->cfg.num_qubits, &space);
    refine_circuit(cfg->cfg, circuit->doc, u);
    return QRLC_OK;
  });
}

qrlc_status qrlc_eval(const qrlc_config* cfg, const qrlc_circuit* circuit,
                      const char* target, const char* tv_inputs,
                      const qrlc_oracle* oracle, char** report_json) {
  return guarded([&] {
    if (!cfg || !circuit) fail(ErrCode::parse, "null argument");
    EvalOutput out = run_eval(cfg->cfg, circuit->doc, target ? target : "",
                              tv_inputs ? tv_inputs : "",
                              oracle ? &oracle->table : nullptr);
    if (report_json) *report_json = dup_string(out.to_json());
    if (!out.ok()) {
      g_last_error = "stored and recomputed fidelities disagree beyond 1e-8";
      return QRLC_ERROR;
    }
    return QRLC_OK;
  });
}

qrlc_status qrlc_report(const qrlc_circuit* const* circuits, size_t num_circuits,
                        char** csv_out, char** json_out) {
  return guarded([&] {
    if (!circuits || num_circuits == 0) fail(ErrCode::parse, "null argument");
    std::vector<ReportRow> rows;
    rows.reserve(num_circuits);
    for (size_t i = 0; i < num_circuits; ++i) {
      if (!circuits[i]) fail(ErrCode::parse, "null circuit handle");
      const CircuitDoc& doc = circuits[i]->doc;
      ReportRow row;
      row.target = doc.target_spec.empty() ? "circuit_" + std::to_string(i) : doc.target_spec;
      row.status =
          doc.status == CompileStatus::converged ? "converged" : "budget_exhausted";
      row.f1 = doc.refined ? doc.refined->f1_refined : doc.f1;
      row.n1 = doc.n1;
      row.n2 = doc.n2;
      row.elapsed_ms = doc.elapsed_ms;
      row.nodes_expanded = doc.nodes_expanded;
      rows.push_back(std::move(row));
    }
    CompileReport report = compile_report(rows);
    if (csv_out) *csv_out = dup_string(report_csv(report));
    if (json_out) *json_out = dup_string(report_json(report));
    return QRLC_OK;
  });
}

qrlc_status qrlc_oracle_build(const qrlc_config* cfg, int depth, qrlc_oracle** out) {
  return guarded([&] {
    if (!cfg || !out) fail(ErrCode::parse, "null argument");
    ActionSpace space = cfg->cfg.build_space();
    *out = new qrlc_oracle{ValueTable::build(space, depth, cfg->cfg.gen.memory_budget_bytes)};
    return QRLC_OK;
  });
}

qrlc_status qrlc_oracle_save(const qrlc_oracle* oracle, const char* path) {
  return guarded([&] {
    if (!oracle || !path) fail(ErrCode::parse, "null argument");
    oracle->table.save(path);
    return QRLC_OK;
  });
}

qrlc_status qrlc_oracle_open(const qrlc_config* cfg, const char* path, qrlc_oracle** out) {
  return guarded([&] {
    if (!cfg || !path || !out) fail(ErrCode::parse, "null argument");
    ActionSpace space = cfg->cfg.build_space();
    *out = new qrlc_oracle{ValueTable::load(path, space)};
    return QRLC_OK;
  });
}

int qrlc_oracle_distance(const qrlc_oracle* oracle, const qrlc_config* cfg,
                         const char* target) {
  qrlc_status st = guarded([&] {
    if (!oracle || !cfg || !target) fail(ErrCode::parse, "null argument");
    return QRLC_OK;
  });
  if (st != QRLC_OK) return -1;
  try {
    ActionSpace space = cfg->cfg.build_space();
    CMat u = resolve_target(target, cfg->cfg.num_qubits, &space);
    return oracle->table.distance(u).value_or(-1);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1;
  }
}

void qrlc_oracle_free(qrlc_oracle* oracle) { delete oracle; }

}  // extern "C"
