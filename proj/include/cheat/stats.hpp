// Copyright 2026 The Cheat SDMCTS Authors
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

namespace cheat {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Interval&) const = default;
};

double mean(std::span<const double> xs);
// Unbiased sample variance, 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

Interval wilson_interval(double successes, double trials, double z = kZ95);
Interval mean_interval(std::span<const double> xs, double z = kZ95);

double normal_cdf(double x);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double x, double a, double b);
double f_cdf(double f, double d1, double d2);

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  int df_between = 0;
  int df_within = 0;
  double ss_between = 0.0;
  double ss_within = 0.0;
};

// One-way ANOVA over k >= 2 groups. Throws Error("anova") if degenerate.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

struct ZTestResult {
  double z = 0.0;
  double p_two_sided = 1.0;
};

// Pooled two-proportion z-test of x1/n1 against x2/n2.
ZTestResult two_proportion_z_test(double x1, double n1, double x2, double n2);

}  // namespace cheat
