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

#include "ccontour/mask.hpp"

#include <algorithm>
#include <string>

#include "ccontour/error.hpp"

namespace ccontour {

namespace {

void require_same_dims(const SegMask& a, const SegMask& b, const char* what) {
  if (!a.same_dims(b)) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.width()) + "x" +
                          std::to_string(a.height()) + " vs " +
                          std::to_string(b.width()) + "x" +
                          std::to_string(b.height()) + ")");
  }
}

template <typename Op>
SegMask combine(const SegMask& a, const SegMask& b, const char* what, Op op) {
  require_same_dims(a, b, what);
  SegMask out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) out.set_at(i, op(a.at(i), b.at(i)));
  return out;
}

struct Overlap {
  std::size_t inter = 0;
  std::size_t uni = 0;
  std::size_t sum = 0;
};

Overlap overlap(const SegMask& a, const SegMask& b, const char* what) {
  require_same_dims(a, b, what);
  Overlap o;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a.at(i);
    const bool y = b.at(i);
    o.inter += x && y;
    o.uni += x || y;
    o.sum += std::size_t(x) + std::size_t(y);
  }
  if (o.uni == 0) throw InvalidArgument(std::string(what) + ": both masks empty");
  return o;
}

SegMask morph(const SegMask& m, int radius, bool grow) {
  if (radius <= 0) return m;
  const int w = m.width();
  const int h = m.height();
  // Separable square element: a row pass then a column pass.
  SegMask rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = !grow;
      for (int dx = -radius; dx <= radius; ++dx) {
        const int nx = x + dx;
        const bool s = nx >= 0 && nx < w && m.get(nx, y);
        if (grow ? s : !s) {
          v = grow;
          break;
        }
      }
      rows.set(x, y, v);
    }
  }
  SegMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = !grow;
      for (int dy = -radius; dy <= radius; ++dy) {
        const int ny = y + dy;
        const bool s = ny >= 0 && ny < h && rows.get(x, ny);
        if (grow ? s : !s) {
          v = grow;
          break;
        }
      }
      out.set(x, y, v);
    }
  }
  return out;
}

}  // namespace

CCAnnotation::CCAnnotation(SegMask min, SegMask max)
    : min_(std::move(min)), max_(std::move(max)) {
  require_same_dims(min_, max_, "CCAnnotation");
  if (!is_subset(min_, max_)) {
    throw InvalidArgument("CCAnnotation: min region is not contained in max");
  }
}

std::size_t area(const SegMask& m) {
  std::size_t n = 0;
  for (std::uint8_t b : m.bits()) n += b;
  return n;
}

double iou(const SegMask& a, const SegMask& b) {
  const Overlap o = overlap(a, b, "iou");
  return static_cast<double>(o.inter) / static_cast<double>(o.uni);
}

double dice(const SegMask& a, const SegMask& b) {
  const Overlap o = overlap(a, b, "dice");
  return 2.0 * static_cast<double>(o.inter) / static_cast<double>(o.sum);
}

SegMask mask_union(const SegMask& a, const SegMask& b) {
  return combine(a, b, "mask_union", [](bool x, bool y) { return x || y; });
}

SegMask mask_intersection(const SegMask& a, const SegMask& b) {
  return combine(a, b, "mask_intersection", [](bool x, bool y) { return x && y; });
}

SegMask mask_difference(const SegMask& a, const SegMask& b) {
  return combine(a, b, "mask_difference", [](bool x, bool y) { return x && !y; });
}

SegMask mask_complement(const SegMask& m) {
  SegMask out(m.width(), m.height());
  for (std::size_t i = 0; i < m.size(); ++i) out.set_at(i, !m.at(i));
  return out;
}

bool is_subset(const SegMask& a, const SegMask& b) {
  require_same_dims(a, b, "is_subset");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.at(i) && !b.at(i)) return false;
  }
  return true;
}

SegMask composite(const SegMask& m, const Contour& c, CompositeMode mode) {
  const SegMask region = rasterize(c, m.width(), m.height());
  return mode == CompositeMode::kAdd ? mask_union(m, region)
                                     : mask_difference(m, region);
}

Partition partition_cc(const CCAnnotation& a) {
  return {a.min(), mask_difference(a.max(), a.min()), mask_complement(a.max())};
}

Partition partition_singular(const SingularAnnotation& a) {
  return {a.mask, SegMask(a.mask.width(), a.mask.height()),
          mask_complement(a.mask)};
}

SegMask dilate(const SegMask& m, int radius) { return morph(m, radius, true); }

SegMask erode(const SegMask& m, int radius) { return morph(m, radius, false); }

}  // namespace ccontour
