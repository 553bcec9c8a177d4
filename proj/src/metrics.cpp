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

#include "ccontour/metrics.hpp"

#include <algorithm>
#include <string>

#include "ccontour/error.hpp"

namespace ccontour {

namespace {

void require_same_dims(const Partition& a, const Partition& b, const char* what) {
  if (!a.pos.same_dims(b.pos)) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch");
  }
}

struct TermCounts {
  std::size_t under = 0;
  std::size_t under_denom = 0;
  std::size_t over = 0;
  std::size_t over_denom = 0;
};

// One pass over the pixels for all four counts.
TermCounts term_counts(const Partition& a, const Partition& s) {
  require_same_dims(a, s, "capacity");
  TermCounts c;
  for (std::size_t i = 0; i < a.pos.size(); ++i) {
    const bool ap = a.pos.at(i);
    const bool sp = s.pos.at(i);
    const bool an = a.neg.at(i);
    const bool sn = s.neg.at(i);
    c.under += ap && !sp;
    c.under_denom += ap || sp;
    c.over += an && !sn;
    c.over_denom += !an || !sn;
  }
  return c;
}

double ratio(std::size_t num, std::size_t denom) {
  return denom == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(denom);
}

}  // namespace

std::size_t underflow(const Partition& a, const Partition& b) {
  require_same_dims(a, b, "underflow");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.pos.size(); ++i) n += a.pos.at(i) && !b.pos.at(i);
  return n;
}

std::size_t overflow(const Partition& a, const Partition& b) {
  require_same_dims(a, b, "overflow");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.neg.size(); ++i) n += a.neg.at(i) && !b.neg.at(i);
  return n;
}

CapacityReport capacity(const Partition& a, std::span<const Partition> refs) {
  if (refs.empty()) throw InvalidArgument("capacity: empty reference set");
  CapacityReport r;
  r.per_reference_terms.reserve(refs.size());
  double su = 0.0;
  double so = 0.0;
  for (const Partition& s : refs) {
    const TermCounts c = term_counts(a, s);
    const CapacityTerm t{ratio(c.under, c.under_denom), ratio(c.over, c.over_denom)};
    su += t.underflow;
    so += t.overflow;
    r.per_reference_terms.push_back(t);
  }
  r.expected_underflow = su / static_cast<double>(refs.size());
  r.expected_overflow = so / static_cast<double>(refs.size());
  return r;
}

double expected_underflow(const Partition& a, std::span<const Partition> refs) {
  return capacity(a, refs).expected_underflow;
}

double expected_overflow(const Partition& a, std::span<const Partition> refs) {
  return capacity(a, refs).expected_overflow;
}

double disagreement(std::span<const Contour> contours) {
  if (contours.size() < 2) {
    throw InvalidArgument("disagreement: need at least 2 contours");
  }
  std::vector<Contour> canon;
  canon.reserve(contours.size());
  double chord_sum = 0.0;
  for (const Contour& c : contours) {
    canon.push_back(canonicalize(c));
    chord_sum += longest_chord(c.vertices());
  }
  const double mean_chord = chord_sum / static_cast<double>(contours.size());
  if (!(mean_chord > 0.0)) {
    throw InvalidArgument("disagreement: zero mean longest chord");
  }
  double dist_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    for (std::size_t j = i + 1; j < canon.size(); ++j) {
      dist_sum += discrete_frechet(canon[i].vertices(), canon[j].vertices());
      ++pairs;
    }
  }
  return dist_sum / static_cast<double>(pairs) / mean_chord;
}

std::size_t uncertain_area(const CCAnnotation& a) {
  return area(a.max()) - area(a.min());
}

std::size_t ensemble_spread(std::span<const SingularAnnotation> set) {
  if (set.empty()) throw InvalidArgument("ensemble_spread: empty set");
  SegMask uni = set.front().mask;
  SegMask inter = set.front().mask;
  for (const auto& s : set.subspan(1)) {
    uni = mask_union(uni, s.mask);
    inter = mask_intersection(inter, s.mask);
  }
  return area(uni) - area(inter);
}

}  // namespace ccontour
