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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/seg_mask.hpp"

namespace ccontour {

enum class Method { kSingular, kCC };

std::string_view to_string(Method m);
// Throws InvalidArgument for anything but "singular" / "cc".
Method method_from_string(std::string_view s);

struct TaskAssignment {
  std::string task_id;
  std::string session_id;
  std::string image_id;
  Method method = Method::kSingular;
  int position = 0;
};

struct Session {
  static constexpr std::string_view kKind = "session";

  std::string session_id;
  std::string annotator_id;
  std::string dataset_id;
  std::array<Method, 2> method_order{Method::kSingular, Method::kCC};
  std::string created_at;
  std::vector<TaskAssignment> tasks;

  std::vector<std::string> task_ids() const;
  void validate() const;
  nlohmann::json to_json() const;
  static Session from_json(const nlohmann::json& j);
};

struct AnnotationRecord {
  static constexpr std::string_view kKind = "annotation";

  std::string session_id;
  std::string task_id;
  std::string image_id;
  Method method = Method::kSingular;
  // Wire-form contour layers as submitted: a list for singular, {min, max}
  // for cc.
  nlohmann::json contours;
  // Rendered masks, in memory only: one for singular, {min, max} for cc. The
  // store persists them and fills mask_paths.
  std::vector<SegMask> masks;
  std::vector<std::string> mask_paths;
  std::int64_t client_duration_ms = 0;
  nlohmann::json phase_ms = nlohmann::json::object();
  std::string server_received_at;
  std::int64_t edit_ops = 0;

  // Checks the rendered masks; cc records need min contained in max.
  void validate() const;
  nlohmann::json to_json() const;
  static AnnotationRecord from_json(const nlohmann::json& j);
};

// NASA-TLX responses on a 1-10 scale.
struct SurveyRecord {
  static constexpr std::string_view kKind = "survey";

  std::string session_id;
  Method method = Method::kSingular;
  int mental_demand = 0;
  int physical_demand = 0;
  int temporal_demand = 0;
  int performance = 0;
  int effort = 0;
  int frustration = 0;

  void validate() const;
  nlohmann::json to_json() const;
  static SurveyRecord from_json(const nlohmann::json& j);
};

// Current UTC time as ISO-8601 with millisecond precision.
std::string utc_now();

}  // namespace ccontour
