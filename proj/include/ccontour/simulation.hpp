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
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/foggyblob.hpp"
#include "ccontour/report.hpp"

namespace ccontour {

// Annotator population for a simulated study. Each image gets fresh singular
// annotators whose sensitivities are drawn uniformly from the range; cc
// annotators share thresholds.
struct SimulationPlan {
  std::size_t singular_annotators = 3;
  std::size_t cc_annotators = 1;
  Range<double> sensitivity_range{0.0, 1.0};
  double singular_jitter = 0.0;
  double cc_low_threshold = 0.3;
  double cc_high_threshold = 0.7;
  double cc_jitter = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

SimulationPlan plan_from_json(const nlohmann::json& j, SimulationPlan base);
nlohmann::json to_json(const SimulationPlan& plan);

// Profiles for one image, keyed by the sample seed.
std::vector<AnnotatorProfile> singular_profiles(const SimulationPlan& plan,
                                                std::uint64_t sample_seed);
std::vector<AnnotatorProfile> cc_profiles(const SimulationPlan& plan,
                                          std::uint64_t sample_seed);

ImageAnnotations simulate_image(const FoggySample& sample,
                                const SimulationPlan& plan);

// Reads a dataset manifest written by generate_dataset.
struct DatasetManifest {
  std::filesystem::path root;
  nlohmann::json doc;
  FoggyConfig config;
  std::vector<std::string> ids;
};
DatasetManifest read_dataset_manifest(const std::filesystem::path& path);

// Regenerates each sample from the manifest's config, simulates the plan and
// writes singular/ and cc/ PNGs plus annotations.json. Returns the index.
nlohmann::json simulate_study(const std::filesystem::path& dataset_manifest,
                              const SimulationPlan& plan,
                              const std::filesystem::path& out_dir);

// Loads annotations.json (or a directory holding one).
std::vector<ImageAnnotations> load_annotation_index(
    const std::filesystem::path& path);

}  // namespace ccontour
