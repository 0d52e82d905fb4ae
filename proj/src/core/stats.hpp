/**
 * Copyright 2026 The gbsbench authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBSBENCH_CORE_STATS_HPP
#define GBSBENCH_CORE_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "core/rng.hpp"

namespace gbs {

/// First three raw moments of a sample, single pass.
struct RawMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
};

RawMoments raw_moments(std::span<const double> values);

/// Raw moments of a bootstrap resample (with replacement) of `values`.
RawMoments bootstrap_resample_moments(std::span<const double> values, RngStream& rng);

double sample_mean(std::span<const double> values);
double sample_variance(std::span<const double> values);  // population (1/n)

/// Standard deviation across a list of statistic replicas, skipping
/// non-finite entries; returns the number of finite entries used.
double replica_stddev(std::span<const double> replicas, int* finite_count = nullptr);

/// Two-sample Kolmogorov-Smirnov test.
struct KsResult {
  double statistic;  ///< sup |F1 - F2|
  double p_value;    ///< asymptotic significance level
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Histogram with Freedman-Diaconis bin width.
struct Histogram {
  double bin_width = 0.0;
  double lo = 0.0;
  std::vector<std::int64_t> counts;  // counts[i] covers [lo + i*w, lo + (i+1)*w)
};

Histogram freedman_diaconis_histogram(std::vector<double> values);

}  // namespace gbs

#endif
