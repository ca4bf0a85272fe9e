/*
 * Copyright 2025-2026 The qrlc developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the qrlc compiler: deep-value-guided synthesis of native
 * gate sequences for small unitaries, with variational angle refinement.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions return qrlc_status; on any non-OK status qrlc_last_error()
 * carries a thread-local description. Strings returned through char** are
 * heap-allocated and must be released with qrlc_string_free().
 */

#ifndef QRLC_H
#define QRLC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as the CLI's exit codes. */
typedef enum qrlc_status {
  QRLC_OK = 0,
  QRLC_ERROR = 1,             /* generic failure (details in qrlc_last_error) */
  QRLC_ERR_PARSE = 2,         /* malformed config, file, or target spec */
  QRLC_ERR_RESOURCE = 3,      /* memory budget or I/O failure */
  QRLC_BUDGET_EXHAUSTED = 4,  /* search ran out of depth or time; result still valid */
  QRLC_ERR_FINGERPRINT = 5    /* model paired with the wrong action space */
} qrlc_status;

typedef struct qrlc_config qrlc_config;
typedef struct qrlc_model qrlc_model;
typedef struct qrlc_circuit qrlc_circuit;
typedef struct qrlc_oracle qrlc_oracle;

const char* qrlc_version(void);
const char* qrlc_last_error(void);
void qrlc_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Configuration                                                       */
/* ------------------------------------------------------------------ */

/* Presets: "desk", "two-qubit-paper", "three-qubit-paper". */
qrlc_status qrlc_config_preset(const char* name, qrlc_config** out);
/* Sectioned key-value file; a "preset" key rebases before other keys. */
qrlc_status qrlc_config_load(const char* path, qrlc_config** out);
/* key is "section.name", e.g. "train.loops" or "search.mode". */
qrlc_status qrlc_config_set(qrlc_config* cfg, const char* key, const char* value);
qrlc_status qrlc_config_get(const qrlc_config* cfg, const char* key, char** out);
void qrlc_config_free(qrlc_config* cfg);

/* ------------------------------------------------------------------ */
/* Precompilation (training)                                           */
/* ------------------------------------------------------------------ */

/*
 * Generates (or reuses) the training set and runs the loop-wise training.
 * Writes one model file per loop plus model.qrlc and training_log.csv under
 * out_dir. summary_json (optional) receives a run summary.
 */
qrlc_status qrlc_train(const qrlc_config* cfg, const char* out_dir, char** summary_json);

qrlc_status qrlc_model_open(const char* path, qrlc_model** out);
uint64_t qrlc_model_fingerprint(const qrlc_model* model);
int qrlc_model_loop(const qrlc_model* model);
void qrlc_model_free(qrlc_model* model);

/* ------------------------------------------------------------------ */
/* Compilation (inference)                                             */
/* ------------------------------------------------------------------ */

/*
 * Compiles `target` (e.g. "qft3", "rzz:1.5708", "haar:7", "kak:12:3", "swap",
 * "id", "explicit:FILE") with the given models staged in order. With
 * variational != 0 the single-qubit angles of the result are re-optimized and
 * the refined circuit is attached. Returns QRLC_BUDGET_EXHAUSTED when the
 * search stopped early; *out is still a valid best-effort circuit then.
 */
qrlc_status qrlc_compile(const qrlc_config* cfg, qrlc_model* const* models,
                         size_t num_models, const char* target, int variational,
                         qrlc_circuit** out);

/*
 * Builds a circuit from an explicit gate template (comma-separated items
 * "NAME@q", "NAME@a-b", or "u3@q"; u3 slots start at seeded random angles) and
 * variationally optimizes it against `target`. No model required.
 */
qrlc_status qrlc_compile_template(const qrlc_config* cfg, const char* template_spec,
                                  const char* target, qrlc_circuit** out);

qrlc_status qrlc_circuit_read(const char* path, qrlc_circuit** out);
qrlc_status qrlc_circuit_write(const qrlc_circuit* circuit, const char* path);
qrlc_status qrlc_circuit_json(const qrlc_circuit* circuit, char** out);
double qrlc_circuit_f1(const qrlc_circuit* circuit);
/* Refined fidelity, or -1 when no refined section is attached. */
double qrlc_circuit_refined_f1(const qrlc_circuit* circuit);
int qrlc_circuit_n1(const qrlc_circuit* circuit);
int qrlc_circuit_n2(const qrlc_circuit* circuit);
int qrlc_circuit_converged(const qrlc_circuit* circuit);
void qrlc_circuit_free(qrlc_circuit* circuit);

/* Re-optimizes doc's single-qubit angles against `target` in place. */
qrlc_status qrlc_circuit_refine(const qrlc_config* cfg, qrlc_circuit* circuit,
                                const char* target);

/* ------------------------------------------------------------------ */
/* Evaluation                                                          */
/* ------------------------------------------------------------------ */

/*
 * Independent re-check of a circuit: recomputes the fidelity from the stored
 * gate list (against `target`, or the circuit's own spec when NULL), computes
 * output-distribution distances for the comma-separated input states in
 * tv_inputs (tokens over 0/1/+/- or "haar:SEED"), and compares the gate count
 * against an exhaustive table when given. Returns QRLC_ERROR when the stored
 * and recomputed fidelities disagree beyond 1e-8 (report still written).
 */
qrlc_status qrlc_eval(const qrlc_config* cfg, const qrlc_circuit* circuit,
                      const char* target, const char* tv_inputs,
                      const qrlc_oracle* oracle, char** report_json);

/*
 * Aggregate report over several circuits: per-circuit rows plus mean and
 * standard deviation of fidelity, gate counts and timing. Either output may
 * be NULL.
 */
qrlc_status qrlc_report(const qrlc_circuit* const* circuits, size_t num_circuits,
                        char** csv_out, char** json_out);

/* ------------------------------------------------------------------ */
/* Exhaustive tables                                                   */
/* ------------------------------------------------------------------ */

qrlc_status qrlc_oracle_build(const qrlc_config* cfg, int depth, qrlc_oracle** out);
qrlc_status qrlc_oracle_save(const qrlc_oracle* oracle, const char* path);
qrlc_status qrlc_oracle_open(const qrlc_config* cfg, const char* path, qrlc_oracle** out);
/* Exact gate distance of `target`, or -1 when beyond the table depth. */
int qrlc_oracle_distance(const qrlc_oracle* oracle, const qrlc_config* cfg,
                         const char* target);
void qrlc_oracle_free(qrlc_oracle* oracle);

#ifdef __cplusplus
}
#endif

#endif /* QRLC_H */
