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

// End-to-end runs of the installed binary: exit codes, determinism, file
// outputs. The binary path comes from the build system.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef QRLC_CLI_PATH
#error "QRLC_CLI_PATH must be defined by the build"
#endif

namespace fs = std::filesystem;

namespace {

const std::string kBin = QRLC_CLI_PATH;
const std::string kTinyTrain =
    " --preset desk --set train.loops=2 --set train.exhaustive_horizon=2"
    " --set train.hidden1=32 --set train.hidden2=24 --set train.blocks=1"
    " --set train.epoch_factor=20";

int run(const std::string& args) {
  int rc = std::system((kBin + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& p) const { return (path / p).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("definitely-not-a-command") == 2);
  CHECK(run("compile") == 2);  // missing --target
  CHECK(run("train --config /nonexistent.ini") == 2);
  CHECK(run("train --set not-a-pair") == 2);
  CHECK(run("train --set bogus.key=1") == 2);
}

TEST_CASE("training is deterministic per seed") {
  TempDir dir("qrlc_cli_det");
  CHECK(run("train" + kTinyTrain + " --seed 9 --out " + (dir / "a")) == 0);
  CHECK(run("train" + kTinyTrain + " --seed 9 --out " + (dir / "b")) == 0);
  CHECK(run("train" + kTinyTrain + " --seed 10 --out " + (dir / "c")) == 0);

  std::string a = slurp(dir / "a/model.qrlc");
  std::string b = slurp(dir / "b/model.qrlc");
  std::string c = slurp(dir / "c/model.qrlc");
  REQUIRE_FALSE(a.empty());
  CHECK(a == b);        // bit-identical
  CHECK_FALSE(a == c);  // seed changes the run
}

TEST_CASE("compile and eval round trip") {
  TempDir dir("qrlc_cli_pipeline");
  REQUIRE(run("train" + kTinyTrain + " --seed 3 --out " + (dir / "m")) == 0);

  // Identity target converges trivially: exit 0.
  std::string circuit = dir / "id.json";
  CHECK(run("compile --preset desk --model " + (dir / "m/model.qrlc") +
            " --target id --out " + circuit) == 0);
  CHECK(fs::exists(circuit));
  CHECK(run("eval --preset desk --circuit " + circuit) == 0);

  // A generic target exhausts the toy model's budget: exit 4, file written.
  std::string hard = dir / "hard.json";
  CHECK(run("compile --preset desk --model " + (dir / "m/model.qrlc") +
            " --target haar:3 --depth 20 --out " + hard) == 4);
  CHECK(fs::exists(hard));
  CHECK(run("eval --preset desk --circuit " + hard) == 0);

  // Tampering with the recorded fidelity is caught: exit 1.
  {
    std::string text = slurp(hard);
    size_t pos = text.find("\"f1\":");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, text.find(',', pos) - pos, "\"f1\": 0.99");
    std::ofstream out(hard);
    out << text;
  }
  CHECK(run("eval --preset desk --circuit " + hard) == 1);

  // Wrong action space for the model: exit 5.
  CHECK(run("compile --preset desk --set gateset.gates=G22 --set gateset.num_qubits=2"
            " --set topology.edges=none --model " +
            (dir / "m/model.qrlc") + " --target id --out " + (dir / "x.json")) == 5);

  // Length check against an exhaustive table.
  std::string table = dir / "t.qrlt";
  REQUIRE(run("oracle --preset desk --depth 2 --out " + table) == 0);
  CHECK(run("eval --preset desk --circuit " + circuit + " --oracle " + table) == 0);

  // Unreadable circuit file: exit 2.
  CHECK(run("eval --preset desk --circuit /nonexistent.json") == 2);
}

TEST_CASE("three-qubit pipeline with refinement") {
  TempDir dir("qrlc_cli_3q");
  const std::string cfg3 =
      " --preset desk --set gateset.num_qubits=3 --set gateset.gates=G31"
      " --set topology.edges=chain";

  REQUIRE(run("train" + cfg3 +
              " --set train.loops=2 --set train.exhaustive_horizon=2"
              " --set train.hidden1=32 --set train.hidden2=24 --set train.blocks=1"
              " --set train.epoch_factor=10 --seed 4 --out " +
              (dir / "m")) == 0);

  // A barely-trained model will not reach the Fourier operator, but the full
  // pipeline must still produce a circuit file carrying both the searched and
  // the refined fidelities.
  std::string circuit = dir / "qft.json";
  int rc = run("compile" + cfg3 + " --model " + (dir / "m/model.qrlc") +
               " --target qft3 --variational --depth 12"
               " --set variational.steps=120 --set variational.restarts=2 --out " +
               circuit);
  CHECK((rc == 0 || rc == 4));
  REQUIRE(fs::exists(circuit));
  std::string text = slurp(circuit);
  CHECK(text.find("\"refined\"") != std::string::npos);
  CHECK(text.find("\"f1_initial\"") != std::string::npos);
  CHECK(text.find("\"f1_refined\"") != std::string::npos);

  CHECK(run("eval" + cfg3 + " --circuit " + circuit + " --tv 000,+++") == 0);
}

TEST_CASE("oracle table workflow") {
  TempDir dir("qrlc_cli_oracle");
  std::string table = dir / "t.qrlt";
  CHECK(run("oracle --preset desk --depth 2 --out " + table) == 0);
  CHECK(fs::exists(table));

  // Template compilation needs no model; rzz over one CZ.
  std::string circuit = dir / "rzz.json";
  CHECK(run("compile --preset desk --set gateset.num_qubits=2 --set gateset.gates=G21"
            " --set topology.edges=full --set variational.steps=2000"
            " --template u3@1,u3@2,CZ@1-2,u3@1,u3@2 --target rzz:1.5707963268 --out " +
            circuit) == 0);
  CHECK(run("eval --preset desk --set gateset.num_qubits=2 --set gateset.gates=G21"
            " --set topology.edges=full --circuit " +
            circuit + " --tv 00,+0") == 0);

  // Aggregate report over repeated circuit files.
  std::string prefix = dir / "report";
  CHECK(run("eval --preset desk --set gateset.num_qubits=2 --set gateset.gates=G21"
            " --set topology.edges=full --circuit " +
            circuit + "," + circuit + " --report " + prefix) == 0);
  CHECK(fs::exists(prefix + ".csv"));
  CHECK(fs::exists(prefix + ".json"));
  CHECK(slurp(prefix + ".csv").find("target,status,f1") != std::string::npos);
}
