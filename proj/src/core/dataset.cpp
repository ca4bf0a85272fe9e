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

#include "core/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "core/dedup.hpp"
#include "core/errors.hpp"

namespace qrlc {

size_t TrainingSet::total_percepts() const {
  size_t n = 0;
  for (const LoopData& l : loops) n += l.fresh.size();
  return n;
}

CMat perturbed_identity_scaled(int num_qubits, double perturbation, Rng& rng) {
  if (num_qubits < 1 || num_qubits > 3)
    fail(ErrCode::parse, "perturbed_identity: 1..3 qubits supported");
  double alpha = perturbation == 0.0 ? 0.0 : rng.uniform(-perturbation, perturbation);
  double c = std::cos(alpha / 2), s = std::sin(alpha / 2);

  CMat out = CMat::identity(1);
  for (int q = 0; q < num_qubits; ++q) {
    auto [j1, j2, j3] = rng.unit_vector3();
    CMat factor = CMat::from_rows(
        {{cplx(c, -s * j3), cplx(-s * j2, -s * j1)},
         {cplx(s * j2, -s * j1), cplx(c, s * j3)}});
    out = tensor(out, factor);
  }
  return out;
}

CMat perturbed_identity(int num_qubits, uint64_t seed) {
  Rng rng(seed ^ 0x243f6a8885a308d3ULL);
  return perturbed_identity_scaled(num_qubits, 0.002, rng);
}

namespace {

size_t percept_bytes(const Percept& p) {
  return p.unitary.data().size() * sizeof(cplx) + p.seq.size() * 2 + 64;
}

}  // namespace

LoopData expand_loop(const std::vector<Percept>& parents, const ActionSpace& space,
                     int loop_index, const GenConfig& cfg,
                     std::unordered_map<std::string, int>& seen, Rng& rng) {
  if (parents.empty()) fail(ErrCode::generic, "expand_loop: empty parent set");
  int d = space.size();
  LoopData out;
  out.loop_index = loop_index;

  if (loop_index <= cfg.exhaustive_horizon) {
    out.child_values.resize(parents.size() * d);
    for (size_t i = 0; i < parents.size(); ++i) {
      for (int j = 0; j < d; ++j) {
        CMat child = canonical_phase(space.action(j).matrix * parents[i].unitary);
        std::string key = dedup_key(child);
        auto it = seen.find(key);
        int value;
        if (it != seen.end()) {
          value = it->second;  // first production wins
        } else {
          value = -loop_index;
          seen.emplace(std::move(key), value);
          Percept p;
          p.unitary = std::move(child);
          p.value = value;
          p.seq = parents[i].seq;
          p.seq.push_back(static_cast<uint16_t>(j));
          p.loop = loop_index;
          out.fresh.push_back(std::move(p));
        }
        out.child_values[i * d + j] = static_cast<int8_t>(value);
      }
    }
  } else {
    if (cfg.budget < 1) fail(ErrCode::parse, "expand_loop: sample budget must be >= 1");
    out.fresh.reserve(cfg.budget);
    for (int k = 0; k < cfg.budget; ++k) {
      const Percept& parent = parents[rng.uniform_int(static_cast<int>(parents.size()))];
      int j = rng.uniform_int(d);
      Percept p;
      p.unitary = canonical_phase(space.action(j).matrix * parent.unitary);
      p.value = -loop_index;
      p.seq = parent.seq;
      p.seq.push_back(static_cast<uint16_t>(j));
      p.loop = loop_index;
      out.fresh.push_back(std::move(p));
    }
  }
  return out;
}

TrainingSet generate_training_set(const ActionSpace& space, const GenConfig& cfg) {
  if (cfg.loops < 1 || cfg.exhaustive_horizon < 1 || cfg.budget < 1)
    fail(ErrCode::parse, "generate_training_set: loops, horizon and budget must be >= 1");

  TrainingSet ts;
  ts.num_qubits = space.num_qubits();
  ts.num_actions = space.size();
  ts.space_fingerprint = space.fingerprint();
  ts.cfg = cfg;

  Rng rng(cfg.seed ^ 0x9216d5d98979fb1bULL);
  Percept start;
  start.unitary = canonical_phase(
      perturbed_identity_scaled(space.num_qubits(), cfg.perturbation, rng));
  start.value = 0;
  start.loop = 0;
  ts.start.push_back(std::move(start));

  std::unordered_map<std::string, int> seen;
  seen.emplace(dedup_key(ts.start[0].unitary), 0);

  size_t bytes = percept_bytes(ts.start[0]);
  for (int l = 1; l <= cfg.loops; ++l) {
    const std::vector<Percept>& parents = ts.parents_of(l);
    LoopData data;
    data.loop_index = l;
    if (!parents.empty()) data = expand_loop(parents, space, l, cfg, seen, rng);
    for (const Percept& p : data.fresh) bytes += percept_bytes(p);
    bytes += data.child_values.size();
    if (bytes > cfg.memory_budget_bytes)
      fail(ErrCode::resource,
           "generate_training_set: memory budget exceeded at loop " + std::to_string(l));
    ts.loops.push_back(std::move(data));
  }
  return ts;
}

// ---------------------------------------------------------------------------
// Shard format: "QRLW" | u16 version | u8 M | u16 d | u16 loop | u32 count,
// then per percept: i8 value | u16 seq_len | u16 indices | 2*4^M f64 entries.
// ---------------------------------------------------------------------------

namespace {

constexpr char kShardMagic[4] = {'Q', 'R', 'L', 'W'};
constexpr uint16_t kShardVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrCode::parse, "shard: truncated file");
  return v;
}

std::string shard_path(const std::string& dir, int loop) {
  char name[32];
  std::snprintf(name, sizeof(name), "loop_%03d.qrlw", loop);
  return dir + "/" + name;
}

void save_one(const std::string& path, const std::vector<Percept>& percepts,
              int num_qubits, int d, int loop) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrCode::resource, "shard: cannot write " + path);
  out.write(kShardMagic, 4);
  put<uint16_t>(out, kShardVersion);
  put<uint8_t>(out, static_cast<uint8_t>(num_qubits));
  put<uint16_t>(out, static_cast<uint16_t>(d));
  put<uint16_t>(out, static_cast<uint16_t>(loop));
  put<uint32_t>(out, static_cast<uint32_t>(percepts.size()));
  for (const Percept& p : percepts) {
    put<int8_t>(out, static_cast<int8_t>(p.value));
    put<uint16_t>(out, static_cast<uint16_t>(p.seq.size()));
    for (uint16_t idx : p.seq) put<uint16_t>(out, idx);
    for (const cplx& v : p.unitary.data()) {
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
}

std::vector<Percept> load_one(const std::string& path, int num_qubits, int d, int loop) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrCode::parse, "shard: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kShardMagic, 4) != 0)
    fail(ErrCode::parse, "shard: bad magic in " + path);
  if (get<uint16_t>(in) != kShardVersion) fail(ErrCode::parse, "shard: unsupported version");
  if (get<uint8_t>(in) != num_qubits) fail(ErrCode::parse, "shard: qubit count mismatch");
  if (get<uint16_t>(in) != d) fail(ErrCode::parse, "shard: action count mismatch");
  if (get<uint16_t>(in) != loop) fail(ErrCode::parse, "shard: loop index mismatch");
  uint32_t count = get<uint32_t>(in);

  int dim = 1 << num_qubits;
  std::vector<Percept> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    Percept p;
    p.loop = loop;
    p.value = get<int8_t>(in);
    uint16_t len = get<uint16_t>(in);
    p.seq.resize(len);
    for (uint16_t k = 0; k < len; ++k) p.seq[k] = get<uint16_t>(in);
    p.unitary = CMat(dim);
    for (cplx& v : p.unitary.data()) {
      double re = get<double>(in);
      double im = get<double>(in);
      v = cplx(re, im);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

void save_shards(const TrainingSet& ts, const std::string& dir) {
  std::filesystem::create_directories(dir);
  save_one(shard_path(dir, 0), ts.start, ts.num_qubits, ts.num_actions, 0);
  for (const LoopData& l : ts.loops)
    save_one(shard_path(dir, l.loop_index), l.fresh, ts.num_qubits, ts.num_actions,
             l.loop_index);
}

TrainingSet load_shards(const std::string& dir, const ActionSpace& space,
                        const GenConfig& cfg) {
  TrainingSet ts;
  ts.num_qubits = space.num_qubits();
  ts.num_actions = space.size();
  ts.space_fingerprint = space.fingerprint();
  ts.cfg = cfg;
  ts.start = load_one(shard_path(dir, 0), ts.num_qubits, ts.num_actions, 0);
  if (ts.start.size() != 1) fail(ErrCode::parse, "shard: loop 0 must hold one percept");

  std::unordered_map<std::string, int> seen;
  seen.emplace(dedup_key(ts.start[0].unitary), 0);

  for (int l = 1; l <= cfg.loops; ++l) {
    LoopData data;
    data.loop_index = l;
    std::string path = shard_path(dir, l);
    if (std::filesystem::exists(path))
      data.fresh = load_one(path, ts.num_qubits, ts.num_actions, l);
    if (l <= cfg.exhaustive_horizon)
      for (const Percept& p : data.fresh) seen.emplace(dedup_key(p.unitary), p.value);
    ts.loops.push_back(std::move(data));
  }

  // Rebuild the exact per-action child labels the shards do not carry.
  for (int l = 1; l <= cfg.exhaustive_horizon && l <= cfg.loops; ++l) {
    const std::vector<Percept>& parents = ts.parents_of(l);
    LoopData& data = ts.loops[l - 1];
    data.child_values.resize(parents.size() * space.size());
    for (size_t i = 0; i < parents.size(); ++i) {
      for (int j = 0; j < space.size(); ++j) {
        CMat child = canonical_phase(space.action(j).matrix * parents[i].unitary);
        auto it = seen.find(dedup_key(child));
        if (it == seen.end())
          fail(ErrCode::parse, "shard: exhaustive loops are incomplete (missing child)");
        data.child_values[i * space.size() + j] = static_cast<int8_t>(it->second);
      }
    }
  }
  return ts;
}

}  // namespace qrlc
