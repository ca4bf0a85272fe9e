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

// Command-line front end. Everything goes through the public C API; exit
// codes are the qrlc_status values (0 ok, 2 config/parse, 3 resource,
// 4 search budget exhausted, 5 model/action-space fingerprint mismatch).

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrlc/qrlc.h"

namespace {

struct ConfigOptions {
  std::string config_file;
  std::string preset = "desk";
  std::vector<std::string> overrides;
  std::string seed;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--config", opts.config_file, "Configuration file");
  cmd->add_option("--preset", opts.preset,
                  "Built-in preset: desk, two-qubit-paper, three-qubit-paper");
  cmd->add_option("--set", opts.overrides, "Override a config key, e.g. --set train.loops=4");
  cmd->add_option("--seed", opts.seed, "Master seed (train, generation, search)");
}

int fail_with(qrlc_status status) {
  std::fprintf(stderr, "error: %s\n", qrlc_last_error());
  return static_cast<int>(status);
}

using ConfigPtr = std::unique_ptr<qrlc_config, decltype(&qrlc_config_free)>;

// Builds the run configuration: file or preset first, then --set pairs in
// order, then convenience flags. Returns nullptr after printing the failure.
ConfigPtr make_config(const ConfigOptions& opts, int& exit_code) {
  qrlc_config* raw = nullptr;
  qrlc_status st = opts.config_file.empty() ? qrlc_config_preset(opts.preset.c_str(), &raw)
                                            : qrlc_config_load(opts.config_file.c_str(), &raw);
  if (st != QRLC_OK) {
    exit_code = fail_with(st);
    return ConfigPtr(nullptr, &qrlc_config_free);
  }
  ConfigPtr cfg(raw, &qrlc_config_free);
  for (const std::string& kv : opts.overrides) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set wants key=value, got '%s'\n", kv.c_str());
      exit_code = 2;
      return ConfigPtr(nullptr, &qrlc_config_free);
    }
    st = qrlc_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != QRLC_OK) {
      exit_code = fail_with(st);
      return ConfigPtr(nullptr, &qrlc_config_free);
    }
  }
  if (!opts.seed.empty()) {
    st = qrlc_config_set(cfg.get(), "train.seed", opts.seed.c_str());
    if (st != QRLC_OK) {
      exit_code = fail_with(st);
      return ConfigPtr(nullptr, &qrlc_config_free);
    }
  }
  return cfg;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      if (start < s.size()) out.push_back(s.substr(start));
      break;
    }
    if (comma > start) out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  // Linear-algebra worker threads; OpenBLAS reads this at first use.
  if (const char* threads = std::getenv("QRLC_THREADS")) {
    setenv("OPENBLAS_NUM_THREADS", threads, 0);
    setenv("OMP_NUM_THREADS", threads, 0);
  }

  CLI::App app{"qrlc: value-network-guided compiler for small unitaries"};
  app.require_subcommand(1);

  ConfigOptions train_opts, compile_opts, eval_opts, oracle_opts;

  // train
  auto* train_cmd = app.add_subcommand("train", "Generate data and train the value network");
  add_config_options(train_cmd, train_opts);
  std::string train_out;
  train_cmd->add_option("--out", train_out, "Output directory for models and the loss log");

  // compile
  auto* compile_cmd = app.add_subcommand("compile", "Decompose a target unitary");
  add_config_options(compile_cmd, compile_opts);
  std::string models_csv, target, mode, circuit_out, template_spec;
  bool variational = false;
  double depth = -1, epsilon = -1;
  compile_cmd->add_option("--model", models_csv,
                          "Model file(s), comma-separated for staged search");
  compile_cmd->add_option("--target", target, "Target spec (qft3, rzz:1.5708, haar:SEED, ...)")
      ->required();
  compile_cmd->add_option("--mode", mode, "Search mode: greedy or frontier");
  compile_cmd->add_flag("--variational", variational, "Refine single-qubit angles afterwards");
  compile_cmd->add_option("--depth", depth, "Maximum search depth");
  compile_cmd->add_option("--epsilon", epsilon, "Termination infidelity");
  compile_cmd->add_option("--template", template_spec,
                          "Skip the search; optimize this gate template (u3@1,CZ@1-2,...)");
  compile_cmd->add_option("--out", circuit_out, "Circuit file to write (default circuit.json)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Re-check circuit files");
  add_config_options(eval_cmd, eval_opts);
  std::string eval_circuit, eval_target, tv_inputs, oracle_file, report_prefix;
  eval_cmd->add_option("--circuit", eval_circuit, "Circuit file(s), comma-separated")
      ->required();
  eval_cmd->add_option("--target", eval_target, "Target spec (defaults to the stored one)");
  eval_cmd->add_option("--tv", tv_inputs,
                       "Comma-separated input states for distribution distances (e.g. 000,+00)");
  eval_cmd->add_option("--oracle", oracle_file, "Exhaustive table for length checks");
  eval_cmd->add_option("--report", report_prefix,
                       "Write an aggregate report to PREFIX.csv and PREFIX.json");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Build an exhaustive distance table");
  add_config_options(oracle_cmd, oracle_opts);
  int oracle_depth = 3;
  std::string oracle_out;
  oracle_cmd->add_option("--depth", oracle_depth, "Enumeration depth");
  oracle_cmd->add_option("--out", oracle_out, "Table file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int exit_code = 0;

  if (train_cmd->parsed()) {
    ConfigPtr cfg = make_config(train_opts, exit_code);
    if (!cfg) return exit_code;
    char* summary = nullptr;
    qrlc_status st =
        qrlc_train(cfg.get(), train_out.empty() ? nullptr : train_out.c_str(), &summary);
    if (st != QRLC_OK) return fail_with(st);
    std::printf("%s", summary);
    qrlc_string_free(summary);
    return 0;
  }

  if (compile_cmd->parsed()) {
    ConfigPtr cfg = make_config(compile_opts, exit_code);
    if (!cfg) return exit_code;
    if (!mode.empty() && qrlc_config_set(cfg.get(), "search.mode", mode.c_str()) != QRLC_OK)
      return fail_with(QRLC_ERR_PARSE);
    if (depth > 0 &&
        qrlc_config_set(cfg.get(), "search.depth", std::to_string((int)depth).c_str()) != QRLC_OK)
      return fail_with(QRLC_ERR_PARSE);
    if (epsilon > 0 &&
        qrlc_config_set(cfg.get(), "search.epsilon", std::to_string(epsilon).c_str()) != QRLC_OK)
      return fail_with(QRLC_ERR_PARSE);

    qrlc_circuit* circuit = nullptr;
    qrlc_status st;
    std::vector<qrlc_model*> models;
    if (!template_spec.empty()) {
      st = qrlc_compile_template(cfg.get(), template_spec.c_str(), target.c_str(), &circuit);
    } else {
      if (models_csv.empty()) {
        std::fprintf(stderr, "error: compile needs --model or --template\n");
        return 2;
      }
      for (const std::string& path : split_csv(models_csv)) {
        qrlc_model* m = nullptr;
        qrlc_status open_st = qrlc_model_open(path.c_str(), &m);
        if (open_st != QRLC_OK) {
          for (qrlc_model* mm : models) qrlc_model_free(mm);
          return fail_with(open_st);
        }
        models.push_back(m);
      }
      st = qrlc_compile(cfg.get(), models.data(), models.size(), target.c_str(),
                        variational ? 1 : 0, &circuit);
      for (qrlc_model* m : models) qrlc_model_free(m);
    }
    if (st != QRLC_OK && st != QRLC_BUDGET_EXHAUSTED) return fail_with(st);

    std::string out_path = circuit_out.empty() ? "circuit.json" : circuit_out;
    qrlc_status wst = qrlc_circuit_write(circuit, out_path.c_str());
    if (wst != QRLC_OK) {
      qrlc_circuit_free(circuit);
      return fail_with(wst);
    }
    double refined = qrlc_circuit_refined_f1(circuit);
    std::printf("wrote %s: F1 %.8f%s, N1 %d, N2 %d, %s\n", out_path.c_str(),
                qrlc_circuit_f1(circuit),
                refined >= 0 ? (" (refined " + std::to_string(refined) + ")").c_str() : "",
                qrlc_circuit_n1(circuit), qrlc_circuit_n2(circuit),
                qrlc_circuit_converged(circuit) ? "converged" : "budget exhausted");
    qrlc_circuit_free(circuit);
    return static_cast<int>(st);
  }

  if (eval_cmd->parsed()) {
    ConfigPtr cfg = make_config(eval_opts, exit_code);
    if (!cfg) return exit_code;

    std::vector<qrlc_circuit*> circuits;
    auto cleanup = [&] {
      for (qrlc_circuit* c : circuits) qrlc_circuit_free(c);
    };
    for (const std::string& path : split_csv(eval_circuit)) {
      qrlc_circuit* c = nullptr;
      qrlc_status st = qrlc_circuit_read(path.c_str(), &c);
      if (st != QRLC_OK) {
        cleanup();
        return fail_with(st);
      }
      circuits.push_back(c);
    }

    qrlc_oracle* oracle = nullptr;
    if (!oracle_file.empty()) {
      qrlc_status st = qrlc_oracle_open(cfg.get(), oracle_file.c_str(), &oracle);
      if (st != QRLC_OK) {
        cleanup();
        return fail_with(st);
      }
    }

    qrlc_status worst = QRLC_OK;
    for (qrlc_circuit* circuit : circuits) {
      char* report = nullptr;
      qrlc_status st =
          qrlc_eval(cfg.get(), circuit, eval_target.empty() ? nullptr : eval_target.c_str(),
                    tv_inputs.empty() ? nullptr : tv_inputs.c_str(), oracle, &report);
      if (report) {
        std::printf("%s", report);
        qrlc_string_free(report);
      }
      if (st != QRLC_OK) {
        std::fprintf(stderr, "error: %s\n", qrlc_last_error());
        if (worst == QRLC_OK) worst = st;
      }
    }

    if (!report_prefix.empty()) {
      char* csv = nullptr;
      char* json = nullptr;
      qrlc_status st = qrlc_report(circuits.data(), circuits.size(), &csv, &json);
      if (st == QRLC_OK) {
        std::FILE* f = std::fopen((report_prefix + ".csv").c_str(), "w");
        if (f) {
          std::fputs(csv, f);
          std::fclose(f);
        }
        f = std::fopen((report_prefix + ".json").c_str(), "w");
        if (f) {
          std::fputs(json, f);
          std::fclose(f);
        }
        qrlc_string_free(csv);
        qrlc_string_free(json);
      } else if (worst == QRLC_OK) {
        worst = st;
      }
    }
    qrlc_oracle_free(oracle);
    cleanup();
    return static_cast<int>(worst);
  }

  if (oracle_cmd->parsed()) {
    ConfigPtr cfg = make_config(oracle_opts, exit_code);
    if (!cfg) return exit_code;
    qrlc_oracle* oracle = nullptr;
    qrlc_status st = qrlc_oracle_build(cfg.get(), oracle_depth, &oracle);
    if (st != QRLC_OK) return fail_with(st);
    st = qrlc_oracle_save(oracle, oracle_out.c_str());
    qrlc_oracle_free(oracle);
    if (st != QRLC_OK) return fail_with(st);
    std::printf("wrote %s\n", oracle_out.c_str());
    return 0;
  }

  return 2;
}
