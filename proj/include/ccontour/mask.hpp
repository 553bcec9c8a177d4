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

#include "ccontour/geometry.hpp"
#include "ccontour/seg_mask.hpp"

namespace ccontour {

struct SingularAnnotation {
  SegMask mask;
};

// Paired high-confidence (min) and low-confidence (max) regions. Construction
// rejects pairs with mismatched dims or min not contained in max.
class CCAnnotation {
 public:
  CCAnnotation(SegMask min, SegMask max);

  const SegMask& min() const { return min_; }
  const SegMask& max() const { return max_; }

 private:
  SegMask min_;
  SegMask max_;
};

// Positive / uncertain / negative pixel sets: disjoint and exhaustive.
struct Partition {
  SegMask pos;
  SegMask unc;
  SegMask neg;
};

enum class CompositeMode { kAdd, kSubtract };

std::size_t area(const SegMask& m);

// Throws InvalidArgument on dimension mismatch or when both masks are empty.
double iou(const SegMask& a, const SegMask& b);
double dice(const SegMask& a, const SegMask& b);

SegMask mask_union(const SegMask& a, const SegMask& b);
SegMask mask_intersection(const SegMask& a, const SegMask& b);
SegMask mask_difference(const SegMask& a, const SegMask& b);
SegMask mask_complement(const SegMask& m);
bool is_subset(const SegMask& a, const SegMask& b);

SegMask composite(const SegMask& m, const Contour& c, CompositeMode mode);

Partition partition_cc(const CCAnnotation& a);
Partition partition_singular(const SingularAnnotation& a);

// Square-element morphology; radius 0 returns the input unchanged.
SegMask dilate(const SegMask& m, int radius);
SegMask erode(const SegMask& m, int radius);

}  // namespace ccontour
