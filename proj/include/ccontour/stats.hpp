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
#include <vector>

namespace ccontour::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Two-sided paired (dependent-samples) t-test on x - y with n - 1 degrees of
// freedom. All-zero differences give t = 0, p = 1; constant nonzero
// differences throw DegenerateResult.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties. The p-value uses the
// t approximation with n - 2 degrees of freedom.
TestResult spearman(std::span<const double> x, std::span<const double> y);

// Fractional ranks (1-based), ties share their average rank.
std::vector<double> average_ranks(std::span<const double> v);

// Two-sided tail probability P(|T| >= |t|) for Student's t.
double t_two_sided_p(double t, double dof);

double mean(std::span<const double> v);

}  // namespace ccontour::stats
