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

#include "ireland/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace ireland {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const unsigned char* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t digest = kFnvOffset;
  for (std::size_t i = 0; i < size; ++i) {
    digest ^= static_cast<std::uint64_t>(bytes[i]);
    digest *= kFnvPrime;
  }
  return digest;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input for digest: " + path);
  std::uint64_t digest = kFnvOffset;
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof(buffer));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      digest ^= static_cast<std::uint64_t>(static_cast<unsigned char>(buffer[i]));
      digest *= kFnvPrime;
    }
  }
  return digest;
}

std::string fnv1a64_hex(std::uint64_t digest) {
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(digest));
  return std::string(out);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char out[32];
  std::strftime(out, sizeof(out), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string(out);
}

void RunManifest::add_config(const std::string& key, const std::string& value) {
  config.emplace_back(key, value);
}

void RunManifest::add_input(const std::string& path) {
  inputs.emplace_back(path, fnv1a64_hex(fnv1a64_file(path)));
}

void RunManifest::add_note(const std::string& note) { notes.push_back(note); }

void RunManifest::stamp_start() {
  if (!record_timestamps) return;
  started_at = utc_timestamp();
  finished_at.clear();
}

void RunManifest::stamp_finish() {
  if (!record_timestamps) return;
  finished_at = utc_timestamp();
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << "command=" << manifest.command << "\n";
  out << "version=" << kToolVersion << "\n";
  out << "seed=" << manifest.seed << "\n";
  if (manifest.record_timestamps) {
    if (!manifest.started_at.empty()) {
      out << "started_at=" << manifest.started_at << "\n";
    }
    if (!manifest.finished_at.empty()) {
      out << "finished_at=" << manifest.finished_at << "\n";
    }
  }
  for (const auto& [key, value] : manifest.config) {
    out << "config." << key << "=" << value << "\n";
  }
  for (const auto& [file, digest] : manifest.inputs) {
    out << "input." << file << "=fnv1a:" << digest << "\n";
  }
  for (const auto& note : manifest.notes) {
    out << "note=" << note << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ireland
