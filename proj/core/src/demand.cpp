/*
 * Copyright 2026 The codedcache Authors
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

#include "codedcache/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "codedcache/errors.hpp"
#include "codedcache/numeric.hpp"

namespace codedcache {

DemandDistribution::DemandDistribution(std::vector<double> pmf) {
  if (pmf.empty()) throw InvalidArgument("demand distribution needs at least one file");
  CompensatedSum total;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (!(pmf[i] >= 0.0) || !std::isfinite(pmf[i])) {
      throw InvalidArgument("demand probability for file " + std::to_string(i + 1) +
                            " is negative or not finite");
    }
    total.add(pmf[i]);
  }
  const double mass = total.value();
  if (std::fabs(mass - 1.0) > 1e-9) {
    throw InvalidArgument("demand probabilities sum to " + std::to_string(mass) + ", expected 1");
  }

  order_.resize(pmf.size());
  std::iota(order_.begin(), order_.end(), std::size_t{1});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return pmf[a - 1] > pmf[b - 1]; });

  q_.reserve(pmf.size());
  for (std::size_t idx : order_) q_.push_back(pmf[idx - 1] / mass);

  cdf_.assign(q_.size() + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t f = 0; f < q_.size(); ++f) {
    acc.add(q_[f]);
    cdf_[f + 1] = acc.value();
  }
  cdf_.back() = 1.0;
}

double harmonic_sum(double alpha, std::uint64_t x, std::uint64_t y) {
  if (x < 1) throw InvalidArgument("harmonic_sum: x must be >= 1");
  if (x > y) throw InvalidArgument("harmonic_sum: x must not exceed y");
  CompensatedSum s;
  // Smallest terms first.
  for (std::uint64_t i = y; i >= x; --i) {
    s.add(std::pow(static_cast<double>(i), -alpha));
    if (i == x) break;
  }
  return s.value();
}

DemandDistribution zipf_distribution(std::size_t m, double alpha) {
  if (m == 0) throw InvalidArgument("zipf_distribution: m must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("zipf_distribution: alpha must be a finite non-negative number");
  }
  const double norm = harmonic_sum(alpha, 1, m);
  std::vector<double> q(m);
  for (std::size_t f = 1; f <= m; ++f) q[f - 1] = std::pow(static_cast<double>(f), -alpha) / norm;
  return DemandDistribution(std::move(q));
}

DemandVector sample_demand_vector(const DemandDistribution& dist, std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("sample_demand_vector: n must be >= 1");
  const auto cdf = dist.cdf();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DemandVector out;
  out.entries.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double x = unit(rng);
    // First k with cdf[k] > x; zero-mass files are never selected.
    auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), x);
    if (it == cdf.end()) --it;
    out.entries.push_back(static_cast<std::uint32_t>(it - cdf.begin()));
  }
  return out;
}

double prefix_mass(const DemandDistribution& dist, std::size_t mtilde) {
  if (mtilde > dist.size()) {
    throw InvalidArgument("prefix_mass: mtilde " + std::to_string(mtilde) + " exceeds m = " +
                          std::to_string(dist.size()));
  }
  return dist.cdf()[mtilde];
}

}  // namespace codedcache
