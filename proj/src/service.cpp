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

#include "ccontour/service.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "ccontour/error.hpp"
#include "ccontour/geometry.hpp"
#include "ccontour/mask.hpp"
#include "ccontour/png.hpp"
#include "ccontour/report.hpp"

namespace ccontour {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<Point> parse_points(const json& pts) {
  if (!pts.is_array()) throw Unprocessable("contour must be a list of [x, y] pairs");
  std::vector<Point> out;
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw Unprocessable("contour vertices must be [x, y] number pairs");
    }
    const Point q{p[0].get<double>(), p[1].get<double>()};
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
      throw Unprocessable("contour vertices must be finite");
    }
    if (out.empty() || !(out.back() == q)) out.push_back(q);
  }
  while (out.size() > 1 && out.back() == out.front()) out.pop_back();
  if (out.size() < 3) throw Unprocessable("contour needs at least 3 distinct vertices");
  return out;
}

// A layer is an ordered list of edits starting from an empty region. Each
// element is either a bare contour (added) or {"mode": ..., "points": ...}.
SegMask render_layer(const json& layer, int width, int height) {
  if (!layer.is_array()) throw Unprocessable("contour layer must be a list");
  SegMask m(width, height);
  for (const auto& item : layer) {
    CompositeMode mode = CompositeMode::kAdd;
    const json* pts = &item;
    if (item.is_object()) {
      const std::string mode_name = item.value("mode", "add");
      if (mode_name == "subtract") {
        mode = CompositeMode::kSubtract;
      } else if (mode_name != "add") {
        throw Unprocessable("unknown edit mode '" + mode_name + "'");
      }
      if (!item.contains("points")) throw Unprocessable("edit without points");
      pts = &item.at("points");
    }
    m = composite(m, Contour(parse_points(*pts)), mode);
  }
  return m;
}

std::int64_t non_negative_int(const json& payload, const char* key) {
  if (!payload.contains(key)) return 0;
  const json& v = payload.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw Unprocessable(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::int64_t>();
}

std::string required_string(const json& payload, const char* key) {
  if (!payload.is_object() || !payload.contains(key) || !payload.at(key).is_string()) {
    throw InvalidArgument(std::string("missing string field '") + key + "'");
  }
  return payload.at(key).get<std::string>();
}

}  // namespace

Dataset load_dataset(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "manifest.json" : path;
  if (!fs::exists(file)) throw IoError("dataset manifest not found: " + file.string());
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  Dataset d;
  d.root = file.parent_path();
  d.id = doc.value("id", fs::absolute(d.root).lexically_normal().filename().string());
  if (!doc.contains("samples") || doc.at("samples").empty()) {
    throw IoError(file.string() + ": no samples");
  }
  for (const auto& s : doc.at("samples")) {
    const std::string id = s.at("id").get<std::string>();
    d.image_ids.push_back(id);
    d.image_paths[id] = d.root / s.at("image").get<std::string>();
  }
  const GrayImage first = decode_png(read_file(d.image_paths.at(d.image_ids.front())));
  d.width = first.width;
  d.height = first.height;
  return d;
}

StudyService::StudyService(Store& store, std::vector<Dataset> datasets) : store_(store) {
  for (auto& d : datasets) {
    const std::string id = d.id;
    datasets_.emplace(id, std::move(d));
  }
  for (const auto& s : store_.scan<Session>()) track(s.record);
  for (const auto& a : store_.scan<AnnotationRecord>()) {
    auto it = sessions_.find(a.record.session_id);
    if (it != sessions_.end()) it->second.submitted.insert(a.record.task_id);
  }
  for (const auto& s : store_.scan<SurveyRecord>()) {
    auto it = sessions_.find(s.record.session_id);
    if (it != sessions_.end()) it->second.surveyed.insert(s.record.method);
  }
}

void StudyService::track(const Session& s) {
  session_order_.push_back(s.session_id);
  sessions_[s.session_id] = SessionState{s, {}, {}};
  for (const auto& t : s.tasks) ++counts_[s.dataset_id][t.method][t.image_id];
}

const Dataset& StudyService::dataset(const std::string& id) const {
  auto it = datasets_.find(id);
  if (it == datasets_.end()) throw NotFound("unknown dataset '" + id + "'");
  return it->second;
}

StudyService::SessionState& StudyService::session_state(const std::string& id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return it->second;
}

const StudyService::SessionState& StudyService::session_state(const std::string& id) const {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return it->second;
}

Session StudyService::create_session(const std::string& annotator_id,
                                     const std::string& dataset_id,
                                     int images_per_method) {
  std::lock_guard lock(mu_);
  const Dataset& ds = dataset(dataset_id);
  if (images_per_method < 1) throw InvalidArgument("images_per_method must be >= 1");
  if (ds.image_ids.size() < static_cast<std::size_t>(images_per_method)) {
    throw InvalidArgument("dataset '" + dataset_id + "' has " +
                          std::to_string(ds.image_ids.size()) + " images, " +
                          std::to_string(images_per_method) + " requested per method");
  }

  const std::size_t ordinal = session_order_.size();
  Session s;
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%04zu", ordinal);
  s.session_id = buf;
  s.annotator_id = annotator_id;
  s.dataset_id = dataset_id;
  s.method_order = ordinal % 2 == 0 ? std::array{Method::kSingular, Method::kCC}
                                    : std::array{Method::kCC, Method::kSingular};
  s.created_at = utc_now();

  std::set<std::string> in_session;
  for (Method m : s.method_order) {
    const auto& counts = counts_[dataset_id][m];
    std::vector<std::tuple<int, int, std::size_t>> ranked;
    for (std::size_t i = 0; i < ds.image_ids.size(); ++i) {
      const auto it = counts.find(ds.image_ids[i]);
      const int c = it == counts.end() ? 0 : it->second;
      ranked.emplace_back(c, in_session.count(ds.image_ids[i]) ? 1 : 0, i);
    }
    std::sort(ranked.begin(), ranked.end());
    for (int k = 0; k < images_per_method; ++k) {
      const std::string& image = ds.image_ids[std::get<2>(ranked[k])];
      const int pos = static_cast<int>(s.tasks.size());
      std::snprintf(buf, sizeof buf, "-t%03d", pos);
      s.tasks.push_back({s.session_id + buf, s.session_id, image, m, pos});
      in_session.insert(image);
    }
  }
  store_.append(s);
  track(s);
  return s;
}

std::optional<TaskAssignment> StudyService::next_task(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  const SessionState& st = session_state(session_id);
  for (const auto& t : st.session.tasks) {
    if (!st.submitted.count(t.task_id)) return t;
  }
  return std::nullopt;
}

std::uint64_t StudyService::submit_annotation(const json& payload) {
  const std::string session_id = required_string(payload, "session_id");
  const std::string task_id = required_string(payload, "task_id");
  const std::string method_name = required_string(payload, "method");

  std::lock_guard lock(mu_);
  SessionState& st = session_state(session_id);
  const auto task = std::find_if(st.session.tasks.begin(), st.session.tasks.end(),
                                 [&](const TaskAssignment& t) { return t.task_id == task_id; });
  if (task == st.session.tasks.end()) {
    throw NotFound("task '" + task_id + "' is not part of session '" + session_id + "'");
  }
  if (st.submitted.count(task_id)) {
    throw Conflict("task '" + task_id + "' was already submitted");
  }
  Method method;
  try {
    method = method_from_string(method_name);
  } catch (const InvalidArgument& e) {
    throw Unprocessable(e.what());
  }
  if (method != task->method) {
    throw Unprocessable("task '" + task_id + "' expects method " +
                        std::string(to_string(task->method)));
  }
  const Dataset& ds = dataset(st.session.dataset_id);
  if (!payload.contains("contours")) throw Unprocessable("missing contours");
  const json& contours = payload.at("contours");

  AnnotationRecord rec;
  rec.session_id = session_id;
  rec.task_id = task_id;
  rec.image_id = task->image_id;
  rec.method = method;
  rec.contours = contours;
  if (method == Method::kSingular) {
    rec.masks.push_back(render_layer(contours, ds.width, ds.height));
  } else {
    if (!contours.is_object() || !contours.contains("min") || !contours.contains("max")) {
      throw Unprocessable("cc contours must be {\"min\": [...], \"max\": [...]}");
    }
    rec.masks.push_back(render_layer(contours.at("min"), ds.width, ds.height));
    rec.masks.push_back(render_layer(contours.at("max"), ds.width, ds.height));
    if (rec.masks[0].empty()) throw Unprocessable("cc min region is empty");
  }
  rec.client_duration_ms = non_negative_int(payload, "client_duration_ms");
  rec.edit_ops = non_negative_int(payload, "edit_ops");
  if (payload.contains("phase_ms")) {
    if (!payload.at("phase_ms").is_object()) throw Unprocessable("phase_ms must be an object");
    rec.phase_ms = payload.at("phase_ms");
  }
  rec.server_received_at = utc_now();
  rec.validate();

  const std::uint64_t id = store_.append(std::move(rec));
  st.submitted.insert(task_id);
  return id;
}

std::uint64_t StudyService::submit_survey(const json& payload) {
  const std::string session_id = required_string(payload, "session_id");
  const std::string method_name = required_string(payload, "method");
  SurveyRecord s;
  s.session_id = session_id;
  s.method = method_from_string(method_name);
  const std::pair<const char*, int*> fields[] = {
      {"mental_demand", &s.mental_demand}, {"physical_demand", &s.physical_demand},
      {"temporal_demand", &s.temporal_demand}, {"performance", &s.performance},
      {"effort", &s.effort}, {"frustration", &s.frustration}};
  for (const auto& [key, dst] : fields) {
    if (!payload.contains(key) || !payload.at(key).is_number_integer()) {
      throw Unprocessable(std::string("survey field '") + key + "' must be an integer");
    }
    const auto v = payload.at(key).get<std::int64_t>();
    if (v < 1 || v > 10) throw Unprocessable(std::string("survey field '") + key + "' out of [1, 10]");
    *dst = static_cast<int>(v);
  }

  std::lock_guard lock(mu_);
  SessionState& st = session_state(session_id);
  for (const auto& t : st.session.tasks) {
    if (t.method == s.method && !st.submitted.count(t.task_id)) {
      throw Conflict("survey for " + method_name + " before its tasks are finished");
    }
  }
  if (st.surveyed.count(s.method)) throw Conflict("survey for " + method_name + " already submitted");
  const std::uint64_t id = store_.append(s);
  st.surveyed.insert(s.method);
  return id;
}

std::string StudyService::metrics_report(const std::string& dataset_id) const {
  std::map<std::string, ImageAnnotations> by_image;
  {
    std::lock_guard lock(mu_);
    dataset(dataset_id);
    for (const auto& a : store_.scan<AnnotationRecord>()) {
      const auto it = sessions_.find(a.record.session_id);
      if (it == sessions_.end() || it->second.session.dataset_id != dataset_id) continue;
      ImageAnnotations& img = by_image[a.record.image_id];
      img.image_id = a.record.image_id;
      if (a.record.method == Method::kSingular) {
        img.singular.push_back({store_.load_mask(a.record.mask_paths.at(0))});
      } else {
        img.cc.emplace_back(store_.load_mask(a.record.mask_paths.at(0)),
                            store_.load_mask(a.record.mask_paths.at(1)));
      }
    }
  }
  if (by_image.empty()) throw NotFound("no annotations stored for dataset '" + dataset_id + "'");
  std::vector<ImageAnnotations> images;
  for (auto& [id, img] : by_image) images.push_back(std::move(img));
  return ccontour::metrics_report(std::move(images));
}

std::string StudyService::image_png(const std::string& image_id) const {
  for (const auto& [id, ds] : datasets_) {
    const auto it = ds.image_paths.find(image_id);
    if (it != ds.image_paths.end()) return read_file(it->second);
  }
  throw NotFound("unknown image '" + image_id + "'");
}

std::string StudyService::export_records() const { return store_.export_string(); }

int StudyService::assignment_count(const std::string& dataset_id, const std::string& image_id,
                                   Method m) const {
  std::lock_guard lock(mu_);
  const auto d = counts_.find(dataset_id);
  if (d == counts_.end()) return 0;
  const auto mm = d->second.find(m);
  if (mm == d->second.end()) return 0;
  const auto it = mm->second.find(image_id);
  return it == mm->second.end() ? 0 : it->second;
}

}  // namespace ccontour
