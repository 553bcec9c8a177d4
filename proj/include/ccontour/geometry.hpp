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

#include <span>
#include <vector>

#include "ccontour/seg_mask.hpp"

namespace ccontour {

// Pixel-space coordinate: x grows rightward (columns), y downward (rows).
struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

// Open curve with at least one vertex and no repeated consecutive vertices.
class Polyline {
 public:
  explicit Polyline(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<Point> vertices_;
};

// Implicitly closed curve: at least three vertices, no repeated consecutive
// vertices including the wrap-around pair.
class Contour {
 public:
  explicit Contour(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  bool operator==(const Contour&) const = default;

 private:
  std::vector<Point> vertices_;
};

// Discrete Frechet distance under the Euclidean metric. O(|a| |b|) time,
// O(min(|a|, |b|)) memory. Throws InvalidArgument on empty input.
double discrete_frechet(std::span<const Point> a, std::span<const Point> b);
inline double discrete_frechet(const Polyline& a, const Polyline& b) {
  return discrete_frechet(a.vertices(), b.vertices());
}

// Largest pairwise Euclidean distance; 0 for a single point.
double longest_chord(std::span<const Point> points);

// Even-odd fill sampled at pixel centers (i + 0.5, j + 0.5). Vertices may lie
// outside the grid.
SegMask rasterize(const Contour& c, int width, int height);
SegMask rasterize(std::span<const Point> polygon, int width, int height);

// Moore-neighbor trace (8-connectivity) of the largest connected component,
// clockwise on screen from its top-left pixel. Vertices are pixel centers.
// Traces with fewer than three vertices (one or two pixels) are replaced by
// the bounding rectangle of the component's pixel squares, so a single pixel
// becomes the unit square around its center. Throws InvalidArgument on an
// empty mask.
Contour boundary(const SegMask& m);

// Rotates to start at the smallest vertex by (y, x) and orients clockwise in
// image coordinates. Zero-area contours keep whichever direction gives the
// lexicographically smaller sequence. Idempotent.
Contour canonicalize(const Contour& c);

// Twice the signed shoelace area; positive means clockwise on screen.
double signed_area2(std::span<const Point> polygon);

}  // namespace ccontour
