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

#include "ccontour/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "ccontour/error.hpp"

namespace ccontour::stats {

double mean(std::span<const double> v) {
  if (v.empty()) throw InvalidArgument("mean: empty sequence");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double t_two_sided_p(double t, double dof) {
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(dof);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return std::clamp(p, 0.0, 1.0);
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("paired_t_test: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InvalidArgument("paired_t_test: need at least 2 pairs");

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  const double m = mean(d);
  double ss = 0.0;
  for (double v : d) ss += (v - m) * (v - m);
  const bool all_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
  if (all_zero) return {0.0, 1.0, n};
  const bool constant = std::all_of(d.begin(), d.end(), [&](double v) { return v == d[0]; });
  if (constant || ss == 0.0) {
    throw DegenerateResult("paired_t_test: differences have zero variance");
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double t = m / (sd / std::sqrt(static_cast<double>(n)));
  return {t, t_two_sided_p(t, static_cast<double>(n - 1)), n};
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    // Positions i..j-1 hold a tie group; 1-based ranks i+1..j.
    const double r = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

TestResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw InvalidArgument("spearman: need at least 3 pairs");

  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw InvalidArgument("spearman: zero rank variance");
  }
  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = static_cast<double>(n - 2);
  if (std::fabs(rho) == 1.0) return {rho, 0.0, n};
  const double t = rho * std::sqrt(dof / (1.0 - rho * rho));
  return {rho, t_two_sided_p(t, dof), n};
}

}  // namespace ccontour::stats
