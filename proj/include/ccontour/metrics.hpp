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
#include <span>
#include <utility>
#include <vector>

#include "ccontour/geometry.hpp"
#include "ccontour/mask.hpp"

namespace ccontour {

struct CapacityTerm {
  double underflow = 0.0;
  double overflow = 0.0;
};

struct CapacityReport {
  double expected_underflow = 0.0;
  double expected_overflow = 0.0;
  std::vector<CapacityTerm> per_reference_terms;
};

// |a.pos \ b.pos|: how far a fails as a lower bound of b.
std::size_t underflow(const Partition& a, const Partition& b);
// |a.neg \ b.neg|: how far a fails as an upper bound of b.
std::size_t overflow(const Partition& a, const Partition& b);

// Mean of underflow(a, s) / |a.pos u s.pos| over the reference set. Terms with
// a zero denominator contribute 0.
double expected_underflow(const Partition& a, std::span<const Partition> refs);
// Mean of overflow(a, s) / |~a.neg u ~s.neg|, same zero rule.
double expected_overflow(const Partition& a, std::span<const Partition> refs);

// Both expectations plus the per-reference terms they average.
CapacityReport capacity(const Partition& a, std::span<const Partition> refs);

// Mean pairwise discrete Frechet distance of the canonicalized contours divided
// by the mean of the contours' longest chords.
double disagreement(std::span<const Contour> contours);

std::size_t uncertain_area(const CCAnnotation& a);

// area(union) - area(intersection) over the ensemble.
std::size_t ensemble_spread(std::span<const SingularAnnotation> set);

}  // namespace ccontour
