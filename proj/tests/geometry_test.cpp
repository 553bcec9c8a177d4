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

#include <gtest/gtest.h>

#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "ccontour/error.hpp"
#include "ccontour/geometry.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace ccontour {
namespace {

std::vector<Point> pts(std::initializer_list<std::pair<double, double>> v) {
  std::vector<Point> out;
  for (auto [x, y] : v) out.push_back({x, y});
  return out;
}

TEST(Polyline, RejectsEmptyAndRepeats) {
  EXPECT_THROW(Polyline({}), InvalidArgument);
  EXPECT_THROW(Polyline(pts({{0, 0}, {0, 0}})), InvalidArgument);
  EXPECT_NO_THROW(Polyline(pts({{0, 0}})));
  EXPECT_THROW(Polyline(pts({{0, NAN}})), InvalidArgument);
}

TEST(Contour, RejectsShortAndWrapRepeat) {
  EXPECT_THROW(Contour(pts({{0, 0}, {1, 0}})), InvalidArgument);
  EXPECT_THROW(Contour(pts({{0, 0}, {1, 0}, {0, 0}})), InvalidArgument);
  EXPECT_NO_THROW(Contour(pts({{0, 0}, {1, 0}, {1, 1}})));
}

TEST(Frechet, IdenticalCurvesAreZero) {
  const Polyline a(pts({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_EQ(discrete_frechet(a, a), 0.0);
}

TEST(Frechet, SinglePointsGiveEuclideanDistance) {
  EXPECT_EQ(discrete_frechet(Polyline(pts({{0, 0}})), Polyline(pts({{3, 4}}))), 5.0);
}

TEST(Frechet, ParallelLinesMatchExhaustiveCoupling) {
  const auto a = pts({{0, 0}, {1, 0}, {2, 0}});
  const auto b = pts({{0, 1}, {1, 1}, {2, 1}});
  EXPECT_EQ(discrete_frechet(a, b), oracle::frechet_exhaustive(a, b));
  EXPECT_EQ(discrete_frechet(a, b), 1.0);
}

TEST(Frechet, EmptyInputThrows) {
  std::vector<Point> none;
  const auto one = pts({{0, 0}});
  EXPECT_THROW(discrete_frechet(none, one), InvalidArgument);
  EXPECT_THROW(discrete_frechet(one, none), InvalidArgument);
}

TEST(Frechet, EqualsExhaustiveSymmetricAndBoundedByEndpoints) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 6);
  for (int k = 0; k < 300; ++k) {
    const bool grid = k % 2 == 0;
    const auto a = testutil::random_polygon(rng, len(rng), 0, grid ? 3 : 10, grid);
    const auto b = testutil::random_polygon(rng, len(rng), 0, grid ? 3 : 10, grid);
    const double d = discrete_frechet(a, b);
    ASSERT_EQ(d, oracle::frechet_exhaustive(a, b));
    ASSERT_EQ(d, discrete_frechet(b, a));
    ASSERT_EQ(discrete_frechet(a, a), 0.0);
    ASSERT_GE(d, std::max(distance(a.front(), b.front()), distance(a.back(), b.back())));
  }
}

TEST(LongestChord, Basics) {
  EXPECT_EQ(longest_chord(pts({{5, 5}})), 0.0);
  EXPECT_DOUBLE_EQ(longest_chord(pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), std::sqrt(2.0));
  EXPECT_THROW(longest_chord(std::vector<Point>{}), InvalidArgument);
}

TEST(LongestChord, MatchesPairwiseEnumeration) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const auto p = testutil::random_polygon(rng, 12, 0, 64);
    double best = 0;
    for (const auto& a : p) {
      for (const auto& b : p) best = std::max(best, oracle::euclid(a, b));
    }
    ASSERT_EQ(longest_chord(p), best);
  }
}

TEST(Rasterize, AxisSquare) {
  const SegMask m = rasterize(Contour(pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}})), 8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) EXPECT_EQ(m.get(x, y), x < 4 && y < 4) << x << "," << y;
  }
}

TEST(Rasterize, CollinearIsEmpty) {
  EXPECT_TRUE(rasterize(Contour(pts({{0, 0}, {2, 0}, {4, 0}})), 8, 8).empty());
}

TEST(Rasterize, InvalidGridThrows) {
  const Contour c(pts({{0, 0}, {4, 0}, {4, 4}}));
  EXPECT_THROW(rasterize(c, 0, 4), InvalidArgument);
  EXPECT_THROW(rasterize(c, 4, -1), InvalidArgument);
}

TEST(Rasterize, ClipsToGrid) {
  const SegMask m = rasterize(Contour(pts({{-10, -10}, {50, -10}, {50, 50}, {-10, 50}})), 5, 3);
  EXPECT_EQ(m, SegMask::Full(5, 3));
}

TEST(Rasterize, SelfIntersectingBowtieUsesEvenOdd) {
  // Pentagram: the central pentagon is covered twice, so it is outside.
  std::vector<Point> star;
  for (int k = 0; k < 5; ++k) {
    const double a = -M_PI / 2 + k * 4 * M_PI / 5;
    star.push_back({16 + 14 * std::cos(a), 16 + 14 * std::sin(a)});
  }
  const SegMask m = rasterize(star, 32, 32);
  EXPECT_FALSE(m.get(16, 16));
  EXPECT_EQ(m, oracle::raster_centers(star, 32, 32));
}

TEST(Rasterize, MatchesPixelCenterOracle) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> len(3, 12);
  for (int k = 0; k < 300; ++k) {
    auto poly = testutil::random_polygon(rng, len(rng), -5, 37, k % 4 == 0);
    if (k % 7 == 0) {  // vertices exactly on pixel-center rows and columns
      for (auto& p : poly) p = {std::round(p.x) + 0.5, std::round(p.y) + 0.5};
      bool ok = true;
      for (std::size_t i = 0; i < poly.size(); ++i) ok &= !(poly[i] == poly[(i + 1) % poly.size()]);
      if (!ok) continue;
    }
    ASSERT_EQ(rasterize(poly, 32, 32), oracle::raster_centers(poly, 32, 32)) << "case " << k;
  }
}

TEST(Rasterize, RandomSimpleDecagon) {
  // Star-shaped around the center, so simple.
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> r(4, 15);
  std::vector<Point> dec;
  for (int k = 0; k < 10; ++k) {
    const double a = k * 2 * M_PI / 10;
    const double rad = r(rng);
    dec.push_back({16 + rad * std::cos(a), 16 + rad * std::sin(a)});
  }
  EXPECT_EQ(rasterize(dec, 32, 32), oracle::raster_centers(dec, 32, 32));
}

SegMask from_pixels(int w, int h, std::initializer_list<std::pair<int, int>> on) {
  SegMask m(w, h);
  for (auto [x, y] : on) m.set(x, y);
  return m;
}

TEST(Boundary, SinglePixelBecomesUnitSquare) {
  const Contour c = boundary(from_pixels(8, 8, {{3, 3}}));
  EXPECT_EQ(std::vector<Point>(c.vertices().begin(), c.vertices().end()),
            pts({{3, 3}, {4, 3}, {4, 4}, {3, 4}}));
}

TEST(Boundary, FilledBlockTracesPerimeterCenters) {
  SegMask m(5, 5);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) m.set(x, y);
  }
  const Contour c = boundary(m);
  EXPECT_EQ(std::vector<Point>(c.vertices().begin(), c.vertices().end()),
            pts({{0.5, 0.5}, {1.5, 0.5}, {2.5, 0.5}, {2.5, 1.5}, {2.5, 2.5}, {1.5, 2.5}, {0.5, 2.5},
                 {0.5, 1.5}}));
}

TEST(Boundary, EmptyMaskThrows) { EXPECT_THROW(boundary(SegMask(4, 4)), InvalidArgument); }

TEST(Boundary, TwoPixelRunTerminates) {
  // The tracer never re-enters the start pixel from the west here.
  const Contour h = boundary(from_pixels(4, 4, {{0, 0}, {1, 0}}));
  EXPECT_EQ(std::vector<Point>(h.vertices().begin(), h.vertices().end()),
            pts({{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
  const Contour v = boundary(from_pixels(4, 4, {{2, 1}, {2, 2}}));
  EXPECT_EQ(std::vector<Point>(v.vertices().begin(), v.vertices().end()),
            pts({{2, 1}, {3, 1}, {3, 3}, {2, 3}}));
}

TEST(Boundary, PicksLargestComponent) {
  const Contour c = boundary(from_pixels(10, 10, {{0, 0}, {5, 5}, {6, 5}, {5, 6}, {6, 6}}));
  for (const Point& p : c.vertices()) EXPECT_GE(p.x, 5.0);
}

TEST(Boundary, ThinDiagonalAndSpur) {
  const auto diag = from_pixels(5, 5, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  const Contour d = boundary(diag);
  EXPECT_EQ(std::vector<Point>(d.vertices().begin(), d.vertices().end()),
            pts({{0.5, 0.5}, {1.5, 1.5}, {2.5, 2.5}, {3.5, 3.5}, {2.5, 2.5}, {1.5, 1.5}}));
}

// Pixels of the largest component that touch the 4-connected exterior.
std::set<std::pair<int, int>> outer_boundary_oracle(const SegMask& m,
                                                    const std::set<std::pair<int, int>>& comp) {
  const int w = m.width(), h = m.height();
  std::vector<std::vector<bool>> ext(h + 2, std::vector<bool>(w + 2, false));
  std::queue<std::pair<int, int>> q;
  q.push({-1, -1});
  ext[0][0] = true;
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop();
    const int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto& s : d) {
      const int nx = x + s[0], ny = y + s[1];
      if (nx < -1 || ny < -1 || nx > w || ny > h || ext[ny + 1][nx + 1]) continue;
      if (comp.count({nx, ny})) continue;
      ext[ny + 1][nx + 1] = true;
      q.push({nx, ny});
    }
  }
  std::set<std::pair<int, int>> out;
  for (auto [x, y] : comp) {
    if (ext[y + 1][x] || ext[y + 1][x + 2] || ext[y][x + 1] || ext[y + 2][x + 1]) out.insert({x, y});
  }
  return out;
}

std::set<std::pair<int, int>> largest_component(const SegMask& m) {
  std::set<std::pair<int, int>> best, seen;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.get(x, y) || seen.count({x, y})) continue;
      std::set<std::pair<int, int>> comp;
      std::vector<std::pair<int, int>> stack{{x, y}};
      seen.insert({x, y});
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        comp.insert({cx, cy});
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= m.width() || ny >= m.height()) continue;
            if (m.get(nx, ny) && seen.insert({nx, ny}).second) stack.push_back({nx, ny});
          }
        }
      }
      if (comp.size() > best.size()) best = comp;
    }
  }
  return best;
}

TEST(Boundary, RandomMasksTraceTheOuterBoundary) {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 400; ++k) {
    const SegMask m = testutil::random_mask(rng, 7, 6, 0.55);
    if (m.empty()) continue;
    const auto comp = largest_component(m);
    if (comp.size() < 3) continue;
    const Contour c = boundary(m);
    const auto v = c.vertices();
    std::set<std::pair<int, int>> visited;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int x = static_cast<int>(v[i].x - 0.5), y = static_cast<int>(v[i].y - 0.5);
      ASSERT_TRUE(comp.count({x, y})) << "case " << k;
      visited.insert({x, y});
      const Point n = v[(i + 1) % v.size()];
      ASSERT_LE(std::max(std::fabs(n.x - v[i].x), std::fabs(n.y - v[i].y)), 1.0) << "case " << k;
    }
    ASSERT_EQ(visited, outer_boundary_oracle(m, comp)) << "case " << k;
    ASSERT_LE(v.size(), 4 * comp.size());
  }
}

// Random convex polygon with vertices on a jittered circle fully inside the
// grid; non-integer coordinates keep pixel centers off its edges.
std::vector<Point> convex_polygon(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> count(5, 10);
  std::uniform_real_distribution<double> u(0, 1);
  const int n = count(rng);
  const double r = 3 + u(rng) * (std::min(w, h) / 2.0 - 5);
  const double cx = w / 2.0 + (u(rng) - 0.5) * 2, cy = h / 2.0 + (u(rng) - 0.5) * 2;
  const double phase = u(rng) * 2 * M_PI;
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) {
    const double a = phase + (k + 0.4 * (u(rng) - 0.5)) * 2 * M_PI / n;
    out.push_back({cx + r * std::cos(a) + 0.0137, cy + r * std::sin(a) + 0.0291});
  }
  return out;
}

TEST(Boundary, RoundTripEnclosesTheSamePixels) {
  std::mt19937_64 rng(16);
  for (int k = 0; k < 200; ++k) {
    const auto poly = convex_polygon(rng, 32, 32);
    const SegMask m = rasterize(poly, 32, 32);
    ASSERT_FALSE(m.empty());
    const Contour b = boundary(m);
    const std::vector<Point> bv(b.vertices().begin(), b.vertices().end());
    // Boundary vertices are pixel centers, so the traced polygon passes
    // through the pixels it encloses: use closed inclusion.
    SegMask again(32, 32);
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) again.set(x, y, oracle::closed_inside(bv, {x + 0.5, y + 0.5}));
    }
    ASSERT_EQ(again, m) << "case " << k;
  }
}

TEST(Canonicalize, CanonicalSquareUnchanged) {
  const Contour sq(pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  const Contour c = canonicalize(sq);
  EXPECT_EQ(std::vector<Point>(c.vertices().begin(), c.vertices().end()),
            std::vector<Point>(sq.vertices().begin(), sq.vertices().end()));
  EXPECT_GT(signed_area2(c.vertices()), 0.0);
}

TEST(Canonicalize, ReversedSquareIsReoriented) {
  const Contour c = canonicalize(Contour(pts({{0, 0}, {0, 4}, {4, 4}, {4, 0}})));
  EXPECT_EQ(std::vector<Point>(c.vertices().begin(), c.vertices().end()),
            pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
}

TEST(Canonicalize, RotatedStartIsRestored) {
  const Contour c = canonicalize(Contour(pts({{4, 4}, {0, 4}, {0, 0}, {4, 0}})));
  EXPECT_EQ(std::vector<Point>(c.vertices().begin(), c.vertices().end()),
            pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
}

std::multiset<std::pair<double, double>> multiset_of(std::span<const Point> v) {
  std::multiset<std::pair<double, double>> s;
  for (const Point& p : v) s.insert({p.x, p.y});
  return s;
}

// True when b is a rotation of a or of reversed a.
bool same_cycle(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (int dir : {1, -1}) {
    for (std::size_t s = 0; s < n; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const std::size_t j = dir == 1 ? (s + i) % n : (s + n - i) % n;
        ok = a[j] == b[i];
      }
      if (ok) return true;
    }
  }
  return false;
}

TEST(Canonicalize, IdempotentAndPreservesCycle) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> len(3, 9);
  for (int k = 0; k < 500; ++k) {
    const Contour c(testutil::random_polygon(rng, len(rng), 0, 6, k % 2 == 0));
    const Contour once = canonicalize(c);
    const Contour twice = canonicalize(once);
    ASSERT_TRUE(std::equal(once.vertices().begin(), once.vertices().end(),
                           twice.vertices().begin(), twice.vertices().end()));
    ASSERT_EQ(multiset_of(once.vertices()), multiset_of(c.vertices()));
    ASSERT_TRUE(same_cycle(c.vertices(), once.vertices()));
    ASSERT_GE(signed_area2(once.vertices()), 0.0);
    // Start is a (y, x)-minimal vertex.
    for (const Point& p : once.vertices()) {
      const Point s = once.vertices().front();
      ASSERT_TRUE(s.y < p.y || (s.y == p.y && s.x <= p.x));
    }
  }
}

}  // namespace
}  // namespace ccontour
