// Copyright 2026 The alab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALAB_STATS_HPP
#define ALAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "alab/errors.hpp"

namespace alab {

struct LineFit {
  double slope;
  double intercept;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  detail::require(xs.size() == ys.size() && xs.size() >= 2, "fit_line: need >= 2 paired points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  detail::require(sxx > 0.0, "fit_line: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

/// Slope of log y against log x.
inline LineFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    detail::require(xs[i] > 0.0 && ys[i] > 0.0, "fit_power_law: values must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return fit_line(lx, ly);
}

struct MedianInterval {
  double median;
  double lo;
  double hi;
  /// 1-based order-statistic ranks of lo and hi.
  std::size_t lo_rank;
  std::size_t hi_rank;
  double coverage;
};

/// Sample median with a distribution-free confidence interval
/// [x_(j), x_(m+1-j)], j the largest rank whose two-sided Binomial(m, 1/2)
/// tail 2 P(B <= j-1) stays within 1 - level.
inline MedianInterval median_ci(std::vector<double> samples, double level = 0.95) {
  detail::require(level > 0.0 && level < 1.0, "median_ci: level must lie in (0, 1)");
  const std::size_t m = samples.size();
  detail::require(m >= 1, "median_ci: no samples");
  std::sort(samples.begin(), samples.end());

  // cdf[i] = P(B <= i), accumulated from pmf ratios to stay in range for large m.
  std::vector<double> pmf(m + 1);
  pmf[0] = std::exp(-static_cast<double>(m) * std::log(2.0));
  for (std::size_t i = 1; i <= m; ++i)
    pmf[i] = pmf[i - 1] * static_cast<double>(m - i + 1) / static_cast<double>(i);
  const double alpha = 1.0 - level;
  std::size_t rank = 0;
  double cdf = 0.0;
  double tail = 0.0;
  for (std::size_t j = 1; 2 * j <= m + 1; ++j) {
    cdf += pmf[j - 1];
    if (2.0 * cdf <= alpha + 1e-15) {
      rank = j;
      tail = 2.0 * cdf;
    } else {
      break;
    }
  }
  if (rank == 0)
    throw precondition_error("median_ci: " + std::to_string(m) +
                             " samples cannot reach the requested coverage");
  const double median = m % 2 == 1 ? samples[m / 2] : 0.5 * (samples[m / 2 - 1] + samples[m / 2]);
  return {median, samples[rank - 1], samples[m - rank], rank, m + 1 - rank, 1.0 - tail};
}

}  // namespace alab

#endif  // ALAB_STATS_HPP
