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

#include <random>

#include "ccontour/error.hpp"
#include "ccontour/geometry.hpp"
#include "ccontour/mask.hpp"
#include "test_util.hpp"

namespace ccontour {
namespace {

SegMask rect(int w, int h, int x0, int y0, int x1, int y1) {
  SegMask m(w, h);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) m.set(x, y);
  }
  return m;
}

Contour square(double x0, double y0, double x1, double y1) {
  return Contour({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

TEST(SegMask, ConstructionNormalizesAndChecksSize) {
  SegMask m(2, 2, {0, 7, 1, 0});
  EXPECT_EQ(std::vector<std::uint8_t>(m.bits().begin(), m.bits().end()),
            (std::vector<std::uint8_t>{0, 1, 1, 0}));
  EXPECT_THROW(SegMask(2, 2, {1, 0, 1}), InvalidArgument);
  EXPECT_THROW(SegMask(-1, 2), InvalidArgument);
  EXPECT_TRUE(SegMask(3, 3).empty());
  EXPECT_FALSE(SegMask::Full(3, 3).empty());
}

TEST(Area, Basics) {
  EXPECT_EQ(area(SegMask(8, 8)), 0u);
  EXPECT_EQ(area(SegMask::Full(8, 8)), 64u);
  EXPECT_EQ(area(rasterize(square(0, 0, 4, 4), 8, 8)), 16u);
}

TEST(Iou, Examples) {
  const SegMask a = rect(8, 2, 0, 0, 4, 2);
  const SegMask b = rect(8, 2, 2, 0, 6, 2);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(rect(8, 2, 0, 0, 2, 2), rect(8, 2, 4, 0, 6, 2)), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, b), 1.0 / 3.0);
  EXPECT_THROW(iou(SegMask(4, 4), SegMask(4, 4)), InvalidArgument);
  EXPECT_THROW(iou(SegMask(4, 4), SegMask(4, 5)), InvalidArgument);
}

TEST(Dice, Examples) {
  const SegMask a = rect(8, 2, 0, 0, 4, 2);
  const SegMask b = rect(8, 2, 2, 0, 6, 2);
  EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
  EXPECT_DOUBLE_EQ(dice(rect(8, 2, 0, 0, 2, 2), rect(8, 2, 4, 0, 6, 2)), 0.0);
  EXPECT_DOUBLE_EQ(dice(a, b), 0.5);
  EXPECT_THROW(dice(SegMask(4, 4), SegMask(4, 4)), InvalidArgument);
  EXPECT_THROW(dice(SegMask(4, 4), SegMask(5, 4)), InvalidArgument);
}

TEST(Dice, AtLeastIouWithEqualityOnlyAtExtremes) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 1000; ++k) {
    const SegMask a = testutil::random_mask(rng, 5, 5, 0.3);
    const SegMask b = k % 10 == 0 ? a : testutil::random_mask(rng, 5, 5, 0.3);
    if (a.empty() && b.empty()) continue;
    const double i = iou(a, b), d = dice(a, b);
    ASSERT_GE(d, i);
    ASSERT_EQ(d == i, i == 0.0 || i == 1.0);
  }
}

TEST(SetOps, MatchPerPixelAlgebra) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 200; ++k) {
    const SegMask a = testutil::random_mask(rng, 6, 5, 0.5);
    const SegMask b = testutil::random_mask(rng, 6, 5, 0.5);
    const SegMask u = mask_union(a, b), n = mask_intersection(a, b), d = mask_difference(a, b);
    const SegMask c = mask_complement(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(u.at(i), a.at(i) || b.at(i));
      ASSERT_EQ(n.at(i), a.at(i) && b.at(i));
      ASSERT_EQ(d.at(i), a.at(i) && !b.at(i));
      ASSERT_EQ(c.at(i), !a.at(i));
    }
    ASSERT_TRUE(is_subset(n, a));
    ASSERT_TRUE(is_subset(a, u));
  }
  EXPECT_THROW(mask_union(SegMask(2, 2), SegMask(2, 3)), InvalidArgument);
  EXPECT_THROW(is_subset(SegMask(2, 2), SegMask(3, 2)), InvalidArgument);
}

TEST(Composite, AddToEmptyIsRasterize) {
  const Contour c = square(1.2, 1.7, 5.5, 4.1);
  EXPECT_EQ(composite(SegMask(8, 8), c, CompositeMode::kAdd), rasterize(c, 8, 8));
}

TEST(Composite, SubtractWholeGridEmpties) {
  const SegMask m = composite(SegMask::Full(8, 8), square(-1, -1, 9, 9), CompositeMode::kSubtract);
  EXPECT_TRUE(m.empty());
}

TEST(Composite, OverlappingSquaresMinusIntersection) {
  const Contour a = square(0, 0, 5, 5), b = square(3, 3, 8, 8), ab = square(3, 3, 5, 5);
  SegMask m(8, 8);
  m = composite(m, a, CompositeMode::kAdd);
  m = composite(m, b, CompositeMode::kAdd);
  m = composite(m, ab, CompositeMode::kSubtract);
  SegMask expected(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const bool in_a = x < 5 && y < 5, in_b = x >= 3 && y >= 3, in_ab = in_a && in_b;
      expected.set(x, y, (in_a || in_b) && !in_ab);
    }
  }
  EXPECT_EQ(m, expected);
}

TEST(Composite, InputUnmodifiedAndDegenerateIsNoop) {
  const SegMask m = rect(8, 8, 2, 2, 6, 6);
  const SegMask copy = m;
  composite(m, square(0, 0, 8, 8), CompositeMode::kSubtract);
  EXPECT_EQ(m, copy);
  EXPECT_EQ(composite(m, Contour({{0, 0}, {2, 0}, {4, 0}}), CompositeMode::kAdd), m);
}

TEST(Composite, SubtractAfterAddRemovesExactlyTheContour) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> len(3, 8);
  for (int k = 0; k < 500; ++k) {
    const SegMask m = testutil::random_mask(rng, 12, 10, 0.4);
    const Contour c(testutil::random_polygon(rng, len(rng), -2, 14));
    const SegMask out =
        composite(composite(m, c, CompositeMode::kAdd), c, CompositeMode::kSubtract);
    ASSERT_TRUE(is_subset(out, m));
    ASSERT_EQ(out, mask_difference(m, rasterize(c, 12, 10)));
  }
}

TEST(CCAnnotation, RejectsViolations) {
  EXPECT_THROW(CCAnnotation(rect(4, 4, 0, 0, 3, 3), rect(4, 4, 0, 0, 2, 2)), InvalidArgument);
  EXPECT_THROW(CCAnnotation(SegMask(4, 4), SegMask(4, 5)), InvalidArgument);
  EXPECT_NO_THROW(CCAnnotation(rect(4, 4, 1, 1, 2, 2), rect(4, 4, 0, 0, 3, 3)));
}

TEST(Partition, CcExamples) {
  const SegMask m = rect(6, 6, 1, 1, 4, 4);
  const Partition same = partition_cc(CCAnnotation(m, m));
  EXPECT_TRUE(same.unc.empty());

  const Partition wide = partition_cc(CCAnnotation(SegMask(5, 5), SegMask::Full(5, 5)));
  EXPECT_TRUE(wide.pos.empty());
  EXPECT_TRUE(wide.neg.empty());
  EXPECT_EQ(wide.unc, SegMask::Full(5, 5));

  const Partition nested =
      partition_cc(CCAnnotation(rect(8, 8, 3, 3, 5, 5), rect(8, 8, 2, 2, 6, 6)));
  EXPECT_EQ(area(nested.pos), 4u);
  EXPECT_EQ(area(nested.unc), 12u);
  EXPECT_EQ(area(nested.neg), 48u);
}

TEST(Partition, SingularExamples) {
  const Partition e = partition_singular({SegMask(4, 4)});
  EXPECT_EQ(e.neg, SegMask::Full(4, 4));
  const Partition f = partition_singular({SegMask::Full(4, 4)});
  EXPECT_EQ(f.pos, SegMask::Full(4, 4));
}

TEST(Partition, DisjointExhaustiveAndSingularIsDegenerateCc) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 1000; ++k) {
    const SegMask a = testutil::random_mask(rng, 6, 6, 0.3);
    const SegMask b = mask_union(a, testutil::random_mask(rng, 6, 6, 0.3));
    for (const Partition& p : {partition_cc(CCAnnotation(a, b)), partition_singular({a})}) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(int(p.pos.at(i)) + int(p.unc.at(i)) + int(p.neg.at(i)), 1);
      }
    }
    const Partition s = partition_singular({a});
    const Partition c = partition_cc(CCAnnotation(a, a));
    ASSERT_EQ(s.pos, c.pos);
    ASSERT_EQ(s.unc, c.unc);
    ASSERT_EQ(s.neg, c.neg);
  }
}

TEST(Morphology, SquareElement) {
  SegMask dot(7, 7);
  dot.set(3, 3);
  EXPECT_EQ(dilate(dot, 1), rect(7, 7, 2, 2, 5, 5));
  EXPECT_EQ(dilate(dot, 0), dot);
  EXPECT_EQ(erode(rect(7, 7, 1, 1, 6, 6), 1), rect(7, 7, 2, 2, 5, 5));
  EXPECT_TRUE(erode(dot, 1).empty());
  // Outside the grid counts as background.
  EXPECT_EQ(erode(SegMask::Full(4, 4), 1), rect(4, 4, 1, 1, 3, 3));
}

}  // namespace
}  // namespace ccontour
