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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccontour/mask.hpp"
#include "ccontour/png.hpp"

namespace ccontour {

template <typename T>
struct Range {
  T lo;
  T hi;
};

// Synthetic "central mass with blurred branches" generator parameters.
// Fractions of half-size are relative to image_size / 2.
struct FoggyConfig {
  int image_size = 128;
  Range<double> core_radius_range{0.18, 0.30};
  int core_perturb_harmonics = 5;
  double core_perturb_amp = 0.25;
  Range<int> branch_count_range{2, 6};
  Range<double> branch_length_range{0.2, 0.5};
  Range<double> branch_width_range{3.0, 9.0};
  Range<double> branch_intensity_range{0.25, 0.75};
  double blur_sigma = 2.5;
  int noise_amp = 4;
  std::uint64_t seed = 0;

  // Throws InvalidArgument when a range is inverted or a bound is violated.
  void validate() const;
};

nlohmann::json to_json(const FoggyConfig& cfg);
FoggyConfig config_from_json(const nlohmann::json& j);

struct FoggySample {
  std::size_t index = 0;
  // Seed of this sample's construction; also keys simulated annotator draws.
  std::uint64_t sample_seed = 0;
  double core_radius = 0.0;  // unperturbed radius in pixels
  GrayImage image;
  SegMask core_mask;
  // Branch regions outside the core, one per branch.
  std::vector<SegMask> branch_masks;
  std::vector<double> branch_intensities;
};

struct AnnotatorProfile {
  std::uint64_t seed = 0;
  double sensitivity = 0.5;
  double boundary_jitter = 0.0;
  double low_threshold = 0.3;
  double high_threshold = 0.7;

  void validate() const;
};

// Pure function of (cfg, index).
FoggySample generate_sample(const FoggyConfig& cfg, std::size_t index);

std::string sample_id(std::size_t index);

// Writes images/, masks/ and manifest.json under out_dir; returns the
// manifest. Samples are generated in parallel, the manifest is written last.
nlohmann::json generate_dataset(const FoggyConfig& cfg, std::size_t n,
                                const std::filesystem::path& out_dir);

// Per-branch uniform draw used by simulate_singular; exposed for tests.
double branch_draw(const FoggySample& sample, const AnnotatorProfile& profile,
                   std::size_t branch);
// Signed integer boundary offset in [-jitter, jitter].
int jitter_offset(const FoggySample& sample, const AnnotatorProfile& profile);

SingularAnnotation simulate_singular(const FoggySample& sample,
                                     const AnnotatorProfile& profile);
CCAnnotation simulate_cc(const FoggySample& sample,
                         const AnnotatorProfile& profile);

}  // namespace ccontour
