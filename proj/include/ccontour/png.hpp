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

#include "ccontour/seg_mask.hpp"

namespace ccontour {

// 8-bit single-channel raster.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  bool operator==(const GrayImage&) const = default;
};

// PNG bytes depend only on the pixels: fixed compression settings, no
// timestamps or text chunks.
std::string encode_png(const GrayImage& img);
GrayImage decode_png(const std::string& bytes);

// Masks map to 0 (background) and 255 (set); decoding treats nonzero as set.
std::string encode_mask_png(const SegMask& m);
SegMask decode_mask_png(const std::string& bytes);

void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

void write_mask(const std::filesystem::path& path, const SegMask& m);
SegMask read_mask(const std::filesystem::path& path);

}  // namespace ccontour
