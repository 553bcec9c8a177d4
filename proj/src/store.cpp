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

#include "ccontour/store.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccontour/error.hpp"
#include "ccontour/png.hpp"

namespace ccontour {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kExportFormat = "ccontour-records";

std::string crc_hex(std::string_view body) {
  const uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                          static_cast<uInt>(body.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

struct ParsedLine {
  std::string kind;
  json doc;
};

// Returns false when the line is malformed or its checksum does not match.
bool parse_line(std::string_view line, ParsedLine& out) {
  const auto t1 = line.find('\t');
  if (t1 == std::string_view::npos) return false;
  const auto t2 = line.rfind('\t');
  if (t2 == t1) return false;
  const std::string_view kind = line.substr(0, t1);
  const std::string_view body = line.substr(t1 + 1, t2 - t1 - 1);
  const std::string_view crc = line.substr(t2 + 1);
  if (crc != crc_hex(body)) return false;
  try {
    out.doc = json::parse(body);
  } catch (const json::exception&) {
    return false;
  }
  out.kind = std::string(kind);
  return out.doc.is_object() && out.doc.contains("id") && out.doc.at("id").is_number_unsigned();
}

void write_all(const fs::path& path, std::string_view data, bool append) {
  const int flags = O_WRONLY | O_CREAT | (append ? O_APPEND : O_TRUNC);
  const int fd = ::open(path.c_str(), flags, 0644);
  if (fd < 0) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t w = ::write(fd, data.data() + done, data.size() - done);
    if (w < 0) {
      if (errno == EINTR) continue;
      const std::string err = std::strerror(errno);
      ::close(fd);
      throw IoError("write failed on " + path.string() + ": " + err);
    }
    done += static_cast<std::size_t>(w);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    throw IoError("sync failed on " + path.string());
  }
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

}  // namespace

std::string Store::format_line(std::string_view kind, const std::string& body) {
  std::string line;
  line.reserve(kind.size() + body.size() + 12);
  line.append(kind).append("\t").append(body).append("\t").append(crc_hex(body));
  line.push_back('\n');
  return line;
}

Store::Store(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_ / "masks", ec);
  if (ec) throw IoError("cannot create store at " + dir_.string() + ": " + ec.message());
  load();
}

void Store::load() {
  const fs::path path = records_path();
  if (!fs::exists(path)) return;
  const std::string data = read_file(path);
  std::size_t pos = 0;
  std::size_t good_end = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    const bool complete = nl != std::string::npos;
    const std::string_view line(data.data() + pos, (complete ? nl : data.size()) - pos);
    ParsedLine parsed;
    const bool ok = complete && parse_line(line, parsed);
    if (!ok) {
      const bool trailing = !complete || nl + 1 == data.size();
      if (!trailing) {
        throw IoError("store " + path.string() + ": damaged record at byte " +
                      std::to_string(pos));
      }
      break;  // torn final write
    }
    const std::uint64_t id = parsed.doc.at("id").get<std::uint64_t>();
    if (id <= last_id_) {
      throw IoError("store " + path.string() + ": record ids not increasing at byte " +
                    std::to_string(pos));
    }
    last_id_ = id;
    entries_.push_back({parsed.kind, id, parsed.doc.at("data")});
    pos = nl + 1;
    good_end = pos;
  }
  if (good_end < data.size()) {
    // Drop the torn tail so later appends start on a clean line.
    fs::resize_file(path, good_end);
  }
}

std::uint64_t Store::append_line(std::string_view kind, json body) {
  std::unique_lock lock(mu_);
  const std::uint64_t id = last_id_ + 1;
  const json doc{{"id", id}, {"data", body}};
  write_all(records_path(), format_line(kind, doc.dump()), true);
  last_id_ = id;
  entries_.push_back({std::string(kind), id, std::move(body)});
  return id;
}

std::uint64_t Store::append(const Session& s) {
  s.validate();
  return append_line(Session::kKind, s.to_json());
}

std::uint64_t Store::append(AnnotationRecord r) {
  r.validate();
  const std::string base = safe_name(r.task_id);
  r.mask_paths.clear();
  if (r.method == Method::kSingular) {
    r.mask_paths.push_back("masks/" + base + ".png");
  } else {
    r.mask_paths.push_back("masks/" + base + "_min.png");
    r.mask_paths.push_back("masks/" + base + "_max.png");
  }
  {
    std::unique_lock lock(mu_);
    for (std::size_t k = 0; k < r.masks.size(); ++k) {
      write_all(dir_ / r.mask_paths[k], encode_mask_png(r.masks[k]), false);
    }
  }
  return append_line(AnnotationRecord::kKind, r.to_json());
}

std::uint64_t Store::append(const SurveyRecord& s) {
  s.validate();
  return append_line(SurveyRecord::kKind, s.to_json());
}

std::size_t Store::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::uint64_t Store::last_id() const {
  std::shared_lock lock(mu_);
  return last_id_;
}

SegMask Store::load_mask(const std::string& relative_path) const {
  return read_mask(dir_ / relative_path);
}

void Store::export_to(std::ostream& out) const {
  std::shared_lock lock(mu_);
  const json header{{"schema_version", kSchemaVersion}, {"format", kExportFormat}};
  out << header.dump() << '\n';
  const fs::path path = records_path();
  if (fs::exists(path)) out << read_file(path);
}

std::string Store::export_string() const {
  std::ostringstream ss;
  export_to(ss);
  return ss.str();
}

void Store::import_from(std::istream& in, const fs::path& dir) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("import: empty export stream");
  json h;
  try {
    h = json::parse(header);
  } catch (const json::exception&) {
    throw IoError("import: malformed header");
  }
  if (h.value("format", "") != kExportFormat || h.value("schema_version", 0) != kSchemaVersion) {
    throw IoError("import: unsupported export header " + header);
  }
  std::ostringstream rest;
  rest << in.rdbuf();
  const std::string body = rest.str();
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t nl = body.find('\n', pos);
    ParsedLine parsed;
    if (nl == std::string::npos ||
        !parse_line(std::string_view(body).substr(pos, nl - pos), parsed)) {
      throw IoError("import: damaged record at byte " + std::to_string(pos));
    }
    pos = nl + 1;
  }
  std::error_code ec;
  fs::create_directories(dir / "masks", ec);
  if (ec) throw IoError("import: cannot create " + dir.string());
  const fs::path target = dir / "records.jsonl";
  if (fs::exists(target) && fs::file_size(target) > 0) {
    throw IoError("import: target store is not empty");
  }
  write_all(target, body, false);
}

}  // namespace ccontour
