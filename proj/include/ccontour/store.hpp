// Copyright 2026 The ccontour Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/records.hpp"

namespace ccontour {

template <typename R>
struct Stored {
  std::uint64_t id = 0;
  R record;
};

// Append-only study log: records.jsonl plus a masks/ directory.
//
// Each line is `kind TAB json TAB crc32` where the checksum covers the json
// text. Reopening drops a torn trailing line; a damaged line anywhere else is
// an IoError. Appends are serialized; scans may run concurrently.
class Store {
 public:
  static constexpr int kSchemaVersion = 1;

  explicit Store(std::filesystem::path dir);

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::uint64_t append(const Session& s);
  // Writes the rendered masks under masks/ before the log line.
  std::uint64_t append(AnnotationRecord r);
  std::uint64_t append(const SurveyRecord& s);

  template <typename R>
  std::vector<Stored<R>> scan(
      const std::function<bool(const R&)>& filter = {}) const {
    std::shared_lock lock(mu_);
    std::vector<Stored<R>> out;
    for (const auto& e : entries_) {
      if (e.kind != R::kKind) continue;
      R rec = R::from_json(e.body);
      if (!filter || filter(rec)) out.push_back({e.id, std::move(rec)});
    }
    return out;
  }

  std::size_t size() const;
  std::uint64_t last_id() const;

  SegMask load_mask(const std::string& relative_path) const;

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path records_path() const { return dir_ / "records.jsonl"; }

  // Schema header line followed by records.jsonl verbatim.
  void export_to(std::ostream& out) const;
  std::string export_string() const;
  // Rebuilds a store directory from an export stream. Every line is
  // checksum-verified; the target must not already hold records.
  static void import_from(std::istream& in, const std::filesystem::path& dir);

  static std::string format_line(std::string_view kind, const std::string& body);

 private:
  struct Entry {
    std::string kind;
    std::uint64_t id;
    nlohmann::json body;
  };

  std::uint64_t append_line(std::string_view kind, nlohmann::json body);
  void load();

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
  std::vector<Entry> entries_;
  std::uint64_t last_id_ = 0;
};

}  // namespace ccontour
