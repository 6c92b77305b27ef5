// Copyright 2026 The IRELAND Authors
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
//
// Run manifests: a single key=value text file per tool invocation that
// records the command, the full effective configuration, the seed, input
// file digests, and (optionally) wall-clock timestamps.  The manifest is
// written before any result file so that a crashed or aborted run still
// leaves a record of what was attempted, and rewritten with the end
// timestamp once the run completes.

#ifndef IRELAND_MANIFEST_HPP_
#define IRELAND_MANIFEST_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ireland {

// Tool version stamped into every manifest.
inline constexpr const char kToolVersion[] = "1.0.0";

// FNV-1a 64-bit digest of a byte buffer.
std::uint64_t fnv1a64(const void* data, std::size_t size);

// FNV-1a 64-bit digest of a file's bytes; throws std::runtime_error when the
// file cannot be opened.
std::uint64_t fnv1a64_file(const std::string& path);

// 16 lowercase hex characters.
std::string fnv1a64_hex(std::uint64_t digest);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  // When false, started_at/finished_at lines are omitted entirely so that
  // reruns produce byte-identical manifests.
  bool record_timestamps = true;
  std::string started_at;
  std::string finished_at;
  // Effective configuration (flags merged over config-file values), echoed
  // in insertion order as `config.<key>=<value>` lines.
  std::vector<std::pair<std::string, std::string>> config;
  // Input files as (path, hex digest) pairs, emitted as
  // `input.<path>=fnv1a:<hex>` lines.
  std::vector<std::pair<std::string, std::string>> inputs;
  // Free-form run records (retention skips, budget flags, ...), one
  // `note=<text>` line each, in order.
  std::vector<std::string> notes;

  void add_config(const std::string& key, const std::string& value);
  // Digests the file immediately; throws std::runtime_error when unreadable.
  void add_input(const std::string& path);
  void add_note(const std::string& note);
  // Sets started_at (and clears finished_at) when timestamps are recorded.
  void stamp_start();
  // Sets finished_at when timestamps are recorded.
  void stamp_finish();
};

// Writes the manifest, replacing any previous content at `path`.
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace ireland

#endif  // IRELAND_MANIFEST_HPP_
