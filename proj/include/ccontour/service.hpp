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
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/records.hpp"
#include "ccontour/store.hpp"

namespace ccontour {

// Images the service can hand out, loaded from a dataset manifest.
struct Dataset {
  std::string id;
  std::filesystem::path root;
  int width = 0;
  int height = 0;
  std::vector<std::string> image_ids;
  std::map<std::string, std::filesystem::path> image_paths;
};

// Accepts a manifest.json or a directory containing one. The id comes from
// the manifest's "id" field, falling back to the directory name.
Dataset load_dataset(const std::filesystem::path& path);

// Annotation study logic behind the HTTP API. All state is rebuilt from the
// store on construction; every mutation goes through one mutex, which makes
// next_task/submit_annotation linearizable per session.
class StudyService {
 public:
  StudyService(Store& store, std::vector<Dataset> datasets);

  // Even-indexed sessions annotate singular first, odd ones cc first. Images
  // are picked least-assigned-first per method.
  Session create_session(const std::string& annotator_id,
                         const std::string& dataset_id,
                         int images_per_method = 40);

  // Lowest-position unsubmitted task, or nullopt when the session is done.
  std::optional<TaskAssignment> next_task(const std::string& session_id) const;

  std::uint64_t submit_annotation(const nlohmann::json& payload);
  std::uint64_t submit_survey(const nlohmann::json& payload);

  // Same document as the CLI report, over stored annotations.
  std::string metrics_report(const std::string& dataset_id) const;

  std::string image_png(const std::string& image_id) const;

  std::string export_records() const;

  // Number of assignments of an image for a method, for auditing coverage.
  int assignment_count(const std::string& dataset_id,
                       const std::string& image_id, Method m) const;

 private:
  struct SessionState {
    Session session;
    std::set<std::string> submitted;
    std::set<Method> surveyed;
  };

  const Dataset& dataset(const std::string& id) const;
  SessionState& session_state(const std::string& id);
  const SessionState& session_state(const std::string& id) const;
  void track(const Session& s);

  Store& store_;
  std::map<std::string, Dataset> datasets_;
  mutable std::mutex mu_;
  std::vector<std::string> session_order_;
  std::map<std::string, SessionState> sessions_;
  // dataset -> method -> image -> count
  std::map<std::string, std::map<Method, std::map<std::string, int>>> counts_;
};

}  // namespace ccontour
