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

#include "core/stats.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace gbs {

RawMoments raw_moments(std::span<const double> values) {
  if (values.empty()) throw ParameterError("moments of an empty sample are undefined");
  RawMoments m;
  for (const double v : values) {
    m.m1 += v;
    m.m2 += v * v;
    m.m3 += v * v * v;
  }
  const double n = static_cast<double>(values.size());
  m.m1 /= n;
  m.m2 /= n;
  m.m3 /= n;
  return m;
}

RawMoments bootstrap_resample_moments(std::span<const double> values, RngStream& rng) {
  if (values.empty()) throw ParameterError("cannot resample an empty sample");
  const std::uint64_t n = values.size();
  RawMoments m;
  for (std::uint64_t i = 0; i < n; ++i) {
    // Unbiased enough for n << 2^64; avoids platform-dependent modulo tricks.
    const double v = values[static_cast<std::size_t>(rng.uniform() * static_cast<double>(n))];
    m.m1 += v;
    m.m2 += v * v;
    m.m3 += v * v * v;
  }
  const double dn = static_cast<double>(n);
  m.m1 /= dn;
  m.m2 /= dn;
  m.m3 /= dn;
  return m;
}

double sample_mean(std::span<const double> values) {
  if (values.empty()) throw ParameterError("mean of an empty sample is undefined");
  double s = 0.0;
  for (const double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  const double mu = sample_mean(values);
  double s = 0.0;
  for (const double v : values) s += (v - mu) * (v - mu);
  return s / static_cast<double>(values.size());
}

double replica_stddev(std::span<const double> replicas, int* finite_count) {
  double sum = 0.0, sum2 = 0.0;
  int n = 0;
  for (const double v : replicas) {
    if (!std::isfinite(v)) continue;
    sum += v;
    sum2 += v * v;
    ++n;
  }
  if (finite_count != nullptr) *finite_count = n;
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return std::sqrt(var);
}

namespace {

// Asymptotic Kolmogorov significance Q(lambda) = 2 sum_k (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda) {
  if (lambda < 1e-10) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ParameterError("KS test requires non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  return KsResult{d, kolmogorov_q(lambda)};
}

Histogram freedman_diaconis_histogram(std::vector<double> values) {
  if (values.empty()) throw ParameterError("histogram of an empty sample is undefined");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const double span = values.back() - values.front();
  Histogram h;
  h.lo = values.front();
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  if (width <= 0.0) width = span > 0.0 ? span : 1.0;
  h.bin_width = width;
  const std::size_t bins =
      span > 0.0 ? static_cast<std::size_t>(std::floor(span / width)) + 1 : 1;
  h.counts.assign(bins, 0);
  for (const double v : values) {
    auto idx = static_cast<std::size_t>((v - h.lo) / width);
    if (idx >= bins) idx = bins - 1;
    ++h.counts[idx];
  }
  return h;
}

}  // namespace gbs
