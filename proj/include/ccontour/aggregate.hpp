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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/mask.hpp"
#include "ccontour/metrics.hpp"

namespace ccontour {

// Singular annotations of one image; all members share dimensions.
class AnnotationSet {
 public:
  AnnotationSet(std::string image_id, std::vector<SingularAnnotation> annotations);

  const std::string& image_id() const { return image_id_; }
  const std::vector<SingularAnnotation>& annotations() const {
    return annotations_;
  }
  std::size_t size() const { return annotations_.size(); }
  int width() const { return annotations_.front().mask.width(); }
  int height() const { return annotations_.front().mask.height(); }

  std::vector<Partition> partitions() const;

 private:
  std::string image_id_;
  std::vector<SingularAnnotation> annotations_;
};

// Two-channel training label (min channel, max channel).
class TrainingLabel {
 public:
  TrainingLabel(std::string image_id, SegMask min_channel, SegMask max_channel);

  const std::string& image_id() const { return image_id_; }
  const SegMask& min_channel() const { return min_; }
  const SegMask& max_channel() const { return max_; }

 private:
  std::string image_id_;
  SegMask min_;
  SegMask max_;
};

// Pixel set iff (votes / |S|) >= threshold, threshold in (0, 1].
SegMask majority_consensus(const AnnotationSet& set, double threshold = 0.5);

// min = intersection, max = union of the members.
CCAnnotation pseudo_cc(const AnnotationSet& set);

// Each member in turn is the candidate against the remaining members; the
// report averages all folds. per_reference_terms holds one entry per fold.
CapacityReport leave_one_out_capacity(const AnnotationSet& set);

CapacityReport cc_capacity(const CCAnnotation& cc, const AnnotationSet& set);

// Writes {id}_min.png, {id}_max.png and manifest.json into out_dir. Returns
// the manifest document. All labels are validated before anything is
// written.
nlohmann::json export_labels(const std::vector<TrainingLabel>& labels,
                             const std::filesystem::path& out_dir);

// Reads a manifest written by export_labels.
std::vector<TrainingLabel> read_labels(const std::filesystem::path& manifest_path);

}  // namespace ccontour
