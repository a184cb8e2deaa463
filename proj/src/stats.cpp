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

#include "cheat/stats.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "cheat/error.hpp"

namespace cheat {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

Interval wilson_interval(double k, double n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = k / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Interval mean_interval(std::span<const double> xs, double z) {
  const double m = mean(xs);
  if (xs.size() < 2) return {m, m};
  const double half = z * std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
  return {m - half, m + half};
}

double normal_cdf(double x) { return boost::math::cdf(boost::math::normal_distribution<double>(), x); }

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0 && b > 0)) throw Error("domain", "incomplete beta needs a, b > 0");
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double f_cdf(double f, double d1, double d2) {
  if (f <= 0) return 0.0;
  return boost::math::cdf(boost::math::fisher_f_distribution<double>(d1, d2), f);
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error("anova", "ANOVA needs at least two groups");
  size_t n = 0;
  double total = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) throw Error("anova", "ANOVA group is empty");
    n += g.size();
    total += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const double grand = total / static_cast<double>(n);
  AnovaResult r;
  for (const auto& g : groups) {
    const double m = mean(g);
    r.ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double x : g) r.ss_within += (x - m) * (x - m);
  }
  r.df_between = static_cast<int>(groups.size()) - 1;
  r.df_within = static_cast<int>(n - groups.size());
  if (r.df_within <= 0) throw Error("anova", "ANOVA needs more observations than groups");
  const double ms_between = r.ss_between / r.df_between;
  const double ms_within = r.ss_within / r.df_within;
  if (ms_within <= 0) {
    r.f = ms_between > 0 ? INFINITY : 0.0;
    r.p = ms_between > 0 ? 0.0 : 1.0;
    return r;
  }
  r.f = ms_between / ms_within;
  r.p = boost::math::cdf(boost::math::complement(
      boost::math::fisher_f_distribution<double>(r.df_between, r.df_within), r.f));
  return r;
}

ZTestResult two_proportion_z_test(double x1, double n1, double x2, double n2) {
  if (n1 <= 0 || n2 <= 0) throw Error("domain", "z-test needs positive sample sizes");
  const double p1 = x1 / n1;
  const double p2 = x2 / n2;
  const double pooled = (x1 + x2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1 - pooled) * (1 / n1 + 1 / n2));
  ZTestResult r;
  if (se <= 0) {
    r.z = 0.0;
    r.p_two_sided = p1 == p2 ? 1.0 : 0.0;
    return r;
  }
  r.z = (p1 - p2) / se;
  r.p_two_sided =
      2.0 * boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(), std::abs(r.z)));
  return r;
}

}  // namespace cheat
