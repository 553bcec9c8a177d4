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

#include "ccontour/seg_mask.hpp"

#include <algorithm>
#include <string>

#include "ccontour/error.hpp"

namespace ccontour {

SegMask::SegMask(int width, int height) : SegMask(width, height, {}) {}

SegMask::SegMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 0 || height < 0) {
    throw InvalidArgument("SegMask: negative dimensions");
  }
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bits_.empty()) {
    bits_.assign(n, 0);
  } else if (bits_.size() != n) {
    throw InvalidArgument("SegMask: expected " + std::to_string(n) +
                          " bits, got " + std::to_string(bits_.size()));
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

SegMask SegMask::Full(int width, int height) {
  SegMask m(width, height);
  std::fill(m.bits_.begin(), m.bits_.end(), std::uint8_t{1});
  return m;
}

bool SegMask::empty() const {
  return std::none_of(bits_.begin(), bits_.end(),
                      [](std::uint8_t b) { return b != 0; });
}

}  // namespace ccontour
