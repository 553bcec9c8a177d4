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

#include "ccontour/records.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <set>

#include "ccontour/error.hpp"
#include "ccontour/mask.hpp"

namespace ccontour {

using nlohmann::json;

std::string_view to_string(Method m) {
  return m == Method::kSingular ? "singular" : "cc";
}

Method method_from_string(std::string_view s) {
  if (s == "singular") return Method::kSingular;
  if (s == "cc") return Method::kCC;
  throw InvalidArgument("unknown method '" + std::string(s) + "'");
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()).count() % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(ms));
  return buf;
}

std::vector<std::string> Session::task_ids() const {
  std::vector<std::string> ids;
  ids.reserve(tasks.size());
  for (const auto& t : tasks) ids.push_back(t.task_id);
  return ids;
}

void Session::validate() const {
  if (session_id.empty()) throw InvalidArgument("Session: empty session_id");
  if (method_order[0] == method_order[1]) {
    throw InvalidArgument("Session: method_order must contain both methods once");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    if (t.position != static_cast<int>(i) || t.session_id != session_id ||
        !ids.insert(t.task_id).second) {
      throw InvalidArgument("Session: malformed task list");
    }
  }
}

json Session::to_json() const {
  json tj = json::array();
  for (const auto& t : tasks) {
    tj.push_back({{"task_id", t.task_id},
                  {"image_id", t.image_id},
                  {"method", to_string(t.method)},
                  {"position", t.position}});
  }
  return {{"session_id", session_id},
          {"annotator_id", annotator_id},
          {"dataset_id", dataset_id},
          {"method_order", {to_string(method_order[0]), to_string(method_order[1])}},
          {"created_at", created_at},
          {"task_ids", task_ids()},
          {"tasks", tj}};
}

Session Session::from_json(const json& j) {
  Session s;
  s.session_id = j.at("session_id").get<std::string>();
  s.annotator_id = j.at("annotator_id").get<std::string>();
  s.dataset_id = j.at("dataset_id").get<std::string>();
  s.method_order = {method_from_string(j.at("method_order").at(0).get<std::string>()),
                    method_from_string(j.at("method_order").at(1).get<std::string>())};
  s.created_at = j.at("created_at").get<std::string>();
  for (const auto& t : j.at("tasks")) {
    s.tasks.push_back({t.at("task_id").get<std::string>(), s.session_id,
                       t.at("image_id").get<std::string>(),
                       method_from_string(t.at("method").get<std::string>()),
                       t.at("position").get<int>()});
  }
  return s;
}

void AnnotationRecord::validate() const {
  if (client_duration_ms < 0) throw InvalidArgument("annotation: negative client duration");
  if (edit_ops < 0) throw InvalidArgument("annotation: negative edit-op count");
  if (task_id.empty() || session_id.empty()) {
    throw InvalidArgument("annotation: missing session or task id");
  }
  const std::size_t expected = method == Method::kSingular ? 1 : 2;
  if (masks.size() != expected) {
    throw InvalidArgument("annotation: expected " + std::to_string(expected) + " rendered masks");
  }
  if (method == Method::kCC &&
      (!masks[0].same_dims(masks[1]) || !is_subset(masks[0], masks[1]))) {
    throw Unprocessable("annotation: min region is not contained in max region");
  }
}

json AnnotationRecord::to_json() const {
  return {{"session_id", session_id},
          {"task_id", task_id},
          {"image_id", image_id},
          {"method", to_string(method)},
          {"contours", contours},
          {"masks", mask_paths},
          {"client_duration_ms", client_duration_ms},
          {"phase_ms", phase_ms},
          {"server_received_at", server_received_at},
          {"edit_ops", edit_ops}};
}

AnnotationRecord AnnotationRecord::from_json(const json& j) {
  AnnotationRecord r;
  r.session_id = j.at("session_id").get<std::string>();
  r.task_id = j.at("task_id").get<std::string>();
  r.image_id = j.at("image_id").get<std::string>();
  r.method = method_from_string(j.at("method").get<std::string>());
  r.contours = j.at("contours");
  r.mask_paths = j.at("masks").get<std::vector<std::string>>();
  r.client_duration_ms = j.at("client_duration_ms").get<std::int64_t>();
  r.phase_ms = j.value("phase_ms", json::object());
  r.server_received_at = j.at("server_received_at").get<std::string>();
  r.edit_ops = j.at("edit_ops").get<std::int64_t>();
  return r;
}

void SurveyRecord::validate() const {
  for (int v : {mental_demand, physical_demand, temporal_demand, performance, effort,
                frustration}) {
    if (v < 1 || v > 10) throw Unprocessable("survey: responses must be integers in [1, 10]");
  }
  if (session_id.empty()) throw InvalidArgument("survey: missing session id");
}

json SurveyRecord::to_json() const {
  return {{"session_id", session_id},
          {"method", to_string(method)},
          {"mental_demand", mental_demand},
          {"physical_demand", physical_demand},
          {"temporal_demand", temporal_demand},
          {"performance", performance},
          {"effort", effort},
          {"frustration", frustration}};
}

SurveyRecord SurveyRecord::from_json(const json& j) {
  SurveyRecord s;
  s.session_id = j.at("session_id").get<std::string>();
  s.method = method_from_string(j.at("method").get<std::string>());
  s.mental_demand = j.at("mental_demand").get<int>();
  s.physical_demand = j.at("physical_demand").get<int>();
  s.temporal_demand = j.at("temporal_demand").get<int>();
  s.performance = j.at("performance").get<int>();
  s.effort = j.at("effort").get<int>();
  s.frustration = j.at("frustration").get<int>();
  return s;
}

}  // namespace ccontour
