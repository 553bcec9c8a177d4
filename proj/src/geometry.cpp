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

#include "ccontour/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccontour/error.hpp"

namespace ccontour {

namespace {

void require_finite(std::span<const Point> pts, const char* what) {
  for (const Point& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidArgument(std::string(what) + ": non-finite coordinate");
    }
  }
}

double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

bool yx_less(Point a, Point b) {
  return a.y < b.y || (a.y == b.y && a.x < b.x);
}

// Lexicographic (y, x) comparison of two cyclic sequences read from the given
// starting offsets.
bool rotation_less(std::span<const Point> v, std::size_t a, std::size_t b) {
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point pa = v[(a + k) % n];
    const Point pb = v[(b + k) % n];
    if (yx_less(pa, pb)) return true;
    if (yx_less(pb, pa)) return false;
  }
  return false;
}

std::vector<Point> smallest_rotation(std::span<const Point> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (rotation_less(v, i, best)) best = i;
  }
  std::vector<Point> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(v[(best + k) % v.size()]);
  return out;
}

bool sequence_less(const std::vector<Point>& a, const std::vector<Point>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      yx_less);
}

struct Pixel {
  int x;
  int y;
  bool operator==(const Pixel&) const = default;
};

// Clockwise on screen, starting west.
constexpr std::array<int, 8> kDx{-1, -1, 0, 1, 1, 1, 0, -1};
constexpr std::array<int, 8> kDy{0, -1, -1, -1, 0, 1, 1, 1};

int direction_index(Pixel from, Pixel to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  for (int k = 0; k < 8; ++k) {
    if (kDx[k] == dx && kDy[k] == dy) return k;
  }
  return 0;
}

}  // namespace

double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

Polyline::Polyline(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidArgument("Polyline: no vertices");
  require_finite(vertices_, "Polyline");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i - 1]) {
      throw InvalidArgument("Polyline: repeated consecutive vertex");
    }
  }
}

Contour::Contour(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw InvalidArgument("Contour: needs at least 3 vertices");
  }
  require_finite(vertices_, "Contour");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[(i + 1) % vertices_.size()]) {
      throw InvalidArgument("Contour: repeated consecutive vertex");
    }
  }
}

double discrete_frechet(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) {
    throw InvalidArgument("discrete_frechet: empty polyline");
  }
  if (a.size() < b.size()) std::swap(a, b);
  // Coupling DP on squared distances; sqrt is monotone so it commutes with the
  // min/max recurrence.
  std::vector<double> prev(b.size());
  std::vector<double> cur(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = squared_distance(a[i], b[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = d;
      } else if (i == 0) {
        reach = cur[j - 1];
      } else if (j == 0) {
        reach = prev[j];
      } else {
        reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
      }
      cur[j] = std::max(reach, d);
    }
    std::swap(prev, cur);
  }
  return std::sqrt(prev.back());
}

double longest_chord(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("longest_chord: no points");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, squared_distance(points[i], points[j]));
    }
  }
  return std::sqrt(best);
}

double signed_area2(std::span<const Point> polygon) {
  double acc = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point p = polygon[i];
    const Point q = polygon[(i + 1) % polygon.size()];
    acc += p.x * q.y - q.x * p.y;
  }
  return acc;
}

SegMask rasterize(const Contour& c, int width, int height) {
  return rasterize(c.vertices(), width, height);
}

SegMask rasterize(std::span<const Point> polygon, int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("rasterize: grid must be at least 1x1");
  }
  SegMask out(width, height);
  if (polygon.size() < 3) return out;

  std::vector<double> crossings;
  for (int row = 0; row < height; ++row) {
    const double py = row + 0.5;
    crossings.clear();
    // Half-open rule: an edge crosses the scanline when exactly one endpoint
    // lies strictly below it.
    for (std::size_t i = 0, j = polygon.size() - 1; i < polygon.size(); j = i++) {
      const Point pi = polygon[i];
      const Point pj = polygon[j];
      if ((pi.y > py) != (pj.y > py)) {
        crossings.push_back((pj.x - pi.x) * (py - pi.y) / (pj.y - pi.y) + pi.x);
      }
    }
    std::sort(crossings.begin(), crossings.end());
    // A center is inside iff an odd number of crossings lie strictly to its
    // right, i.e. it falls in [x_2k, x_2k+1).
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      const double lo = crossings[k];
      const double hi = crossings[k + 1];
      if (!(hi > 0.0) || lo >= width) continue;
      int col = std::max(0, static_cast<int>(std::floor(lo)) - 1);
      while (col < width && col + 0.5 < lo) ++col;
      for (; col < width && col + 0.5 < hi; ++col) out.set(col, row);
    }
  }
  return out;
}

Contour boundary(const SegMask& m) {
  const int w = m.width();
  const int h = m.height();

  // Label 8-connected components; keep the largest, earliest in raster order
  // on ties.
  std::vector<int> label(m.size(), -1);
  int best_label = -1;
  std::size_t best_size = 0;
  Pixel best_start{0, 0};
  int next_label = 0;
  std::queue<Pixel> frontier;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!m.at(idx) || label[idx] >= 0) continue;
      const int l = next_label++;
      std::size_t count = 0;
      label[idx] = l;
      frontier.push({x, y});
      while (!frontier.empty()) {
        const Pixel p = frontier.front();
        frontier.pop();
        ++count;
        for (int k = 0; k < 8; ++k) {
          const int nx = p.x + kDx[k];
          const int ny = p.y + kDy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
          if (m.at(nidx) && label[nidx] < 0) {
            label[nidx] = l;
            frontier.push({nx, ny});
          }
        }
      }
      if (count > best_size) {
        best_size = count;
        best_label = l;
        best_start = {x, y};
      }
    }
  }
  if (best_label < 0) throw InvalidArgument("boundary: empty mask");

  auto inside = [&](Pixel p) {
    return p.x >= 0 && p.y >= 0 && p.x < w && p.y < h &&
           label[static_cast<std::size_t>(p.y) * w + p.x] == best_label;
  };

  // Moore-neighbor tracing from the component's first pixel in raster order,
  // entered from the west (outside). The walk is a function of the state
  // (pixel, backtrack direction), so it ends exactly when a state repeats.
  // Usually that is the start state (Jacob's criterion); on some shapes the
  // start state is never re-entered and the cycle begins one step later.
  const Pixel start = best_start;
  std::vector<Pixel> trace;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  Pixel cur = start;
  Pixel back{start.x - 1, start.y};
  std::size_t cycle_begin = 0;
  for (;;) {
    const int k0 = direction_index(cur, back);
    const std::uint64_t state =
        (static_cast<std::uint64_t>(cur.y) * w + cur.x) * 8 + static_cast<std::uint64_t>(k0);
    const auto [it, fresh] = seen.emplace(state, trace.size());
    if (!fresh) {
      cycle_begin = it->second;
      break;
    }
    trace.push_back(cur);
    Pixel prev = back;
    bool moved = false;
    for (int t = 1; t <= 8; ++t) {
      const int k = (k0 + t) % 8;
      const Pixel n{cur.x + kDx[k], cur.y + kDy[k]};
      if (inside(n)) {
        back = prev;
        cur = n;
        moved = true;
        break;
      }
      prev = n;
    }
    if (!moved) break;  // isolated pixel
  }
  trace.erase(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(cycle_begin));
  const auto first = std::find(trace.begin(), trace.end(), start);
  if (first != trace.end()) std::rotate(trace.begin(), first, trace.end());

  if (trace.size() < 3) {
    int x0 = trace.front().x, x1 = x0, y0 = trace.front().y, y1 = y0;
    for (const Pixel& p : trace) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    return Contour({{double(x0), double(y0)},
                    {double(x1 + 1), double(y0)},
                    {double(x1 + 1), double(y1 + 1)},
                    {double(x0), double(y1 + 1)}});
  }

  std::vector<Point> pts;
  pts.reserve(trace.size());
  for (const Pixel& p : trace) pts.push_back({p.x + 0.5, p.y + 0.5});
  return Contour(std::move(pts));
}

Contour canonicalize(const Contour& c) {
  const std::span<const Point> v = c.vertices();
  std::vector<Point> reversed(v.rbegin(), v.rend());
  const double a2 = signed_area2(v);
  if (a2 > 0.0) return Contour(smallest_rotation(v));
  if (a2 < 0.0) return Contour(smallest_rotation(reversed));
  auto fwd = smallest_rotation(v);
  auto rev = smallest_rotation(reversed);
  return Contour(sequence_less(rev, fwd) ? std::move(rev) : std::move(fwd));
}

}  // namespace ccontour
