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

#include "ccontour/aggregate.hpp"

#include <fstream>
#include <set>

#include "ccontour/error.hpp"
#include "ccontour/png.hpp"

namespace ccontour {

namespace fs = std::filesystem;

AnnotationSet::AnnotationSet(std::string image_id,
                             std::vector<SingularAnnotation> annotations)
    : image_id_(std::move(image_id)), annotations_(std::move(annotations)) {
  if (annotations_.empty()) throw InvalidArgument("AnnotationSet: no annotations");
  for (const auto& a : annotations_) {
    if (!a.mask.same_dims(annotations_.front().mask)) {
      throw InvalidArgument("AnnotationSet: members differ in dimensions");
    }
  }
}

std::vector<Partition> AnnotationSet::partitions() const {
  std::vector<Partition> out;
  out.reserve(annotations_.size());
  for (const auto& a : annotations_) out.push_back(partition_singular(a));
  return out;
}

TrainingLabel::TrainingLabel(std::string image_id, SegMask min_channel,
                             SegMask max_channel)
    : image_id_(std::move(image_id)),
      min_(std::move(min_channel)),
      max_(std::move(max_channel)) {
  if (image_id_.empty()) throw InvalidArgument("TrainingLabel: empty id");
  if (!min_.same_dims(max_) || !is_subset(min_, max_)) {
    throw InvalidArgument("TrainingLabel " + image_id_ +
                          ": min channel not contained in max channel");
  }
}

SegMask majority_consensus(const AnnotationSet& set, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("majority_consensus: threshold must be in (0, 1]");
  }
  const auto& anns = set.annotations();
  SegMask out(set.width(), set.height());
  const double n = static_cast<double>(anns.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t votes = 0;
    for (const auto& a : anns) votes += a.mask.at(i);
    out.set_at(i, static_cast<double>(votes) / n >= threshold);
  }
  return out;
}

CCAnnotation pseudo_cc(const AnnotationSet& set) {
  const auto& anns = set.annotations();
  SegMask inter = anns.front().mask;
  SegMask uni = anns.front().mask;
  for (std::size_t k = 1; k < anns.size(); ++k) {
    inter = mask_intersection(inter, anns[k].mask);
    uni = mask_union(uni, anns[k].mask);
  }
  return CCAnnotation(std::move(inter), std::move(uni));
}

CapacityReport leave_one_out_capacity(const AnnotationSet& set) {
  if (set.size() < 2) {
    throw InvalidArgument("leave_one_out_capacity: need at least 2 annotations");
  }
  const std::vector<Partition> parts = set.partitions();
  CapacityReport out;
  for (std::size_t held = 0; held < parts.size(); ++held) {
    std::vector<Partition> refs;
    refs.reserve(parts.size() - 1);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k != held) refs.push_back(parts[k]);
    }
    const CapacityReport fold = capacity(parts[held], refs);
    out.per_reference_terms.push_back({fold.expected_underflow, fold.expected_overflow});
    out.expected_underflow += fold.expected_underflow;
    out.expected_overflow += fold.expected_overflow;
  }
  out.expected_underflow /= static_cast<double>(parts.size());
  out.expected_overflow /= static_cast<double>(parts.size());
  return out;
}

CapacityReport cc_capacity(const CCAnnotation& cc, const AnnotationSet& set) {
  if (!cc.min().same_dims(set.annotations().front().mask)) {
    throw InvalidArgument("cc_capacity: dimension mismatch");
  }
  return capacity(partition_cc(cc), set.partitions());
}

nlohmann::json export_labels(const std::vector<TrainingLabel>& labels,
                             const fs::path& out_dir) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!is_subset(l.min_channel(), l.max_channel())) {
      throw InvalidArgument("export_labels: label " + l.image_id() + " violates min <= max");
    }
    if (l.image_id().find('/') != std::string::npos || !seen.insert(l.image_id()).second) {
      throw InvalidArgument("export_labels: bad or duplicate id " + l.image_id());
    }
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("export_labels: cannot create " + out_dir.string() + ": " + ec.message());

  nlohmann::json manifest{{"version", 1}, {"labels", nlohmann::json::array()}};
  for (const auto& l : labels) {
    const std::string min_name = l.image_id() + "_min.png";
    const std::string max_name = l.image_id() + "_max.png";
    write_mask(out_dir / min_name, l.min_channel());
    write_mask(out_dir / max_name, l.max_channel());
    manifest["labels"].push_back({{"id", l.image_id()},
                                  {"width", l.min_channel().width()},
                                  {"height", l.min_channel().height()},
                                  {"min", min_name},
                                  {"max", max_name}});
  }
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

std::vector<TrainingLabel> read_labels(const fs::path& manifest_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("read_labels: " + std::string(e.what()));
  }
  if (doc.value("version", 0) != 1 || !doc.contains("labels")) {
    throw IoError("read_labels: unsupported manifest " + manifest_path.string());
  }
  const fs::path root = manifest_path.parent_path();
  std::vector<TrainingLabel> out;
  for (const auto& e : doc["labels"]) {
    SegMask mn = read_mask(root / e.at("min").get<std::string>());
    SegMask mx = read_mask(root / e.at("max").get<std::string>());
    if (mn.width() != e.at("width").get<int>() || mn.height() != e.at("height").get<int>()) {
      throw IoError("read_labels: dimensions disagree with manifest for " +
                    e.at("id").get<std::string>());
    }
    out.emplace_back(e.at("id").get<std::string>(), std::move(mn), std::move(mx));
  }
  return out;
}

}  // namespace ccontour
