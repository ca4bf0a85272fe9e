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

#include "core/oracle.hpp"

#include <cstring>
#include <fstream>

#include "core/dedup.hpp"
#include "core/errors.hpp"

namespace qrlc {

ValueTable ValueTable::build(const ActionSpace& space, int max_depth,
                             size_t memory_budget_bytes) {
  if (max_depth < 0) fail(ErrCode::parse, "bfs: depth must be >= 0");

  ValueTable table;
  table.max_depth_ = max_depth;
  table.dim_ = space.dim();
  table.fingerprint_ = space.fingerprint();

  CMat identity = CMat::identity(space.dim());
  table.entries_.emplace(dedup_key(identity), OracleEntry{0, {}});

  size_t bytes = 0;
  // Level-synchronous expansion; each level's unitaries are rebuilt from the
  // previous level's matrices, kept only while the level is live.
  std::vector<std::pair<CMat, std::vector<uint16_t>>> level;
  level.emplace_back(identity, std::vector<uint16_t>{});

  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<std::pair<CMat, std::vector<uint16_t>>> next;
    for (const auto& [u, seq] : level) {
      for (int j = 0; j < space.size(); ++j) {
        CMat child = canonical_phase(space.action(j).matrix * u);
        std::string key = dedup_key(child);
        if (table.entries_.count(key)) continue;
        std::vector<uint16_t> child_seq = seq;
        child_seq.push_back(static_cast<uint16_t>(j));
        bytes += key.size() + child_seq.size() * 2 + child.data().size() * sizeof(cplx) + 96;
        if (bytes > memory_budget_bytes)
          fail(ErrCode::resource,
               "bfs: memory budget exceeded at depth " + std::to_string(depth));
        table.entries_.emplace(std::move(key), OracleEntry{depth, child_seq});
        next.emplace_back(std::move(child), std::move(child_seq));
      }
    }
    if (next.empty()) break;  // group closure exhausted
    level = std::move(next);
  }
  return table;
}

std::optional<int> ValueTable::distance(const CMat& u) const {
  if (u.dim() != dim_) fail(ErrCode::generic, "oracle distance: dimension mismatch");
  const OracleEntry* e = lookup(dedup_key(u));
  if (!e) return std::nullopt;
  return e->distance;
}

const OracleEntry* ValueTable::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

CMat ValueTable::witness_unitary(const OracleEntry& e, const ActionSpace& space) const {
  CMat u = CMat::identity(space.dim());
  for (uint16_t j : e.witness) u = space.action(j).matrix * u;
  return canonical_phase(u);
}

// Table file: "QRLT" | u16 version | u8 M | u16 d | u64 fingerprint |
// u16 max_depth | u64 count, then per entry: u32 key_len | key bytes |
// u16 distance | u16 witness_len | u16 indices.
namespace {
constexpr char kTableMagic[4] = {'Q', 'R', 'L', 'T'};
constexpr uint16_t kTableVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrCode::parse, "oracle table: truncated file");
  return v;
}
}  // namespace

void ValueTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrCode::resource, "oracle table: cannot write " + path);
  out.write(kTableMagic, 4);
  put<uint16_t>(out, kTableVersion);
  int m = 0;
  for (int d = dim_; d > 1; d >>= 1) ++m;
  put<uint8_t>(out, static_cast<uint8_t>(m));
  put<uint16_t>(out, 0);  // reserved
  put<uint64_t>(out, fingerprint_);
  put<uint16_t>(out, static_cast<uint16_t>(max_depth_));
  put<uint64_t>(out, entries_.size());
  for (const auto& [key, e] : entries_) {
    put<uint32_t>(out, static_cast<uint32_t>(key.size()));
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    put<uint16_t>(out, static_cast<uint16_t>(e.distance));
    put<uint16_t>(out, static_cast<uint16_t>(e.witness.size()));
    for (uint16_t w : e.witness) put<uint16_t>(out, w);
  }
}

ValueTable ValueTable::load(const std::string& path, const ActionSpace& space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrCode::parse, "oracle table: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kTableMagic, 4) != 0)
    fail(ErrCode::parse, "oracle table: bad magic");
  if (get<uint16_t>(in) != kTableVersion)
    fail(ErrCode::parse, "oracle table: unsupported version");
  int m = get<uint8_t>(in);
  get<uint16_t>(in);  // reserved
  uint64_t fp = get<uint64_t>(in);
  if (fp != space.fingerprint())
    fail(ErrCode::fingerprint,
         "oracle table built for a different action space (file " + std::to_string(fp) +
             ", configured " + std::to_string(space.fingerprint()) + ")");
  ValueTable table;
  table.dim_ = 1 << m;
  table.fingerprint_ = fp;
  table.max_depth_ = get<uint16_t>(in);
  uint64_t count = get<uint64_t>(in);
  for (uint64_t i = 0; i < count; ++i) {
    uint32_t klen = get<uint32_t>(in);
    std::string key(klen, '\0');
    in.read(key.data(), klen);
    if (!in) fail(ErrCode::parse, "oracle table: truncated file");
    OracleEntry e;
    e.distance = get<uint16_t>(in);
    uint16_t wlen = get<uint16_t>(in);
    e.witness.resize(wlen);
    for (uint16_t k = 0; k < wlen; ++k) e.witness[k] = get<uint16_t>(in);
    table.entries_.emplace(std::move(key), std::move(e));
  }
  return table;
}

VerifyReport verify_values(const TrainingSet& ts, const ValueTable& table,
                           const ActionSpace& space) {
  if (ts.space_fingerprint != space.fingerprint() ||
      table.fingerprint() != space.fingerprint())
    fail(ErrCode::fingerprint, "verify_values: action-space fingerprint mismatch");

  VerifyReport report;
  for (const LoopData& loop : ts.loops) {
    bool exhaustive = loop.loop_index <= ts.cfg.exhaustive_horizon;
    for (const Percept& p : loop.fresh) {
      ++report.checked;
      CMat element = CMat::identity(space.dim());
      for (uint16_t j : p.seq) element = space.action(j).matrix * element;
      const OracleEntry* e = table.lookup(dedup_key(element));
      if (!e) continue;  // beyond table depth
      ++report.covered;
      if (exhaustive) {
        if (p.value != -e->distance) {
          ++report.mismatches;
          if (report.worst.size() < 8)
            report.worst.push_back("loop " + std::to_string(loop.loop_index) + ": stored " +
                                   std::to_string(p.value) + ", oracle " +
                                   std::to_string(-e->distance));
        }
      } else if (p.value < -e->distance) {
        ++report.noise;
      } else if (p.value > -e->distance) {
        // A sampled label can only overestimate distance (it counts the
        // generating walk); an underestimate means corrupted data.
        ++report.mismatches;
        if (report.worst.size() < 8)
          report.worst.push_back("loop " + std::to_string(loop.loop_index) +
                                 " (sampled): stored " + std::to_string(p.value) +
                                 " above oracle " + std::to_string(-e->distance));
      }
    }
  }
  return report;
}

}  // namespace qrlc
