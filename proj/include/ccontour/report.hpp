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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/mask.hpp"

namespace ccontour {

// Every annotation collected for one image.
struct ImageAnnotations {
  std::string image_id;
  std::vector<SingularAnnotation> singular;
  std::vector<CCAnnotation> cc;
};

// Per-image metrics; fields stay empty when the data cannot support them
// (fewer than two singular annotations, no cc annotation, ...).
struct ImageMetrics {
  std::string image_id;
  std::size_t n_singular = 0;
  std::size_t n_cc = 0;
  std::optional<double> expected_underflow;  // cc vs singular set, mean over cc
  std::optional<double> expected_overflow;
  std::optional<double> baseline_underflow;  // leave-one-out singular
  std::optional<double> baseline_overflow;
  std::optional<double> uncertain_area;  // mean over cc
  std::optional<double> ensemble_spread;
  std::optional<double> disagreement_singular;
  std::optional<double> disagreement_min;
  std::optional<double> disagreement_max;

  nlohmann::json to_json() const;
};

ImageMetrics image_metrics(const ImageAnnotations& image);

// Dataset-level means and tests over the images where both sides exist.
nlohmann::json summarize(const std::vector<ImageMetrics>& images);

// One JSON line per image (sorted by image id) and a final summary line.
// Identical input gives identical bytes.
std::string metrics_report(std::vector<ImageAnnotations> images);

// Plain-text headline of a summary document.
std::string headline_text(const nlohmann::json& summary);

}  // namespace ccontour
