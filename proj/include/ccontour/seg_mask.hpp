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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ccontour {

// Binary raster region over a fixed width x height grid, row-major.
class SegMask {
 public:
  SegMask() = default;
  SegMask(int width, int height);
  SegMask(int width, int height, std::vector<std::uint8_t> bits);

  static SegMask Full(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const;

  bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v = true) { bits_[index(x, y)] = v ? 1 : 0; }

  bool at(std::size_t i) const { return bits_[i] != 0; }
  void set_at(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }

  // One byte per pixel, each 0 or 1.
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool same_dims(const SegMask& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }

  bool operator==(const SegMask&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace ccontour
