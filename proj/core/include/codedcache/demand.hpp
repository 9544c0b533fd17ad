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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "codedcache/random.hpp"

namespace codedcache {

// File popularity over a library of m files. Files are addressed 1..m in
// non-increasing popularity order; the constructor sorts arbitrary input and
// keeps the permutation so the caller's original labels can be reported.
class DemandDistribution {
 public:
  // Accepts any non-negative pmf whose mass is within 1e-9 of one; the
  // stored values are renormalized to 1 within 1e-12.
  explicit DemandDistribution(std::vector<double> pmf);

  [[nodiscard]] std::size_t size() const noexcept { return q_.size(); }

  // q_f for 1-based f.
  [[nodiscard]] double q(std::size_t f) const { return q_.at(f - 1); }
  [[nodiscard]] std::span<const double> probabilities() const noexcept { return q_; }

  // Prefix sums; cdf()[k] = q_1 + ... + q_k, cdf()[0] = 0.
  [[nodiscard]] std::span<const double> cdf() const noexcept { return cdf_; }

  // Caller's 1-based label for the f-th most popular file.
  [[nodiscard]] std::size_t original_index(std::size_t f) const { return order_.at(f - 1); }

 private:
  std::vector<double> q_;
  std::vector<double> cdf_;
  std::vector<std::size_t> order_;
};

// One requested file per user, 1-based.
struct DemandVector {
  std::vector<std::uint32_t> entries;

  [[nodiscard]] std::size_t users() const noexcept { return entries.size(); }
  // File requested by 1-based user u.
  [[nodiscard]] std::uint32_t file_of(std::size_t u) const { return entries.at(u - 1); }
};

DemandDistribution zipf_distribution(std::size_t m, double alpha);

// sum_{i=x..y} i^{-alpha}
double harmonic_sum(double alpha, std::uint64_t x, std::uint64_t y);

DemandVector sample_demand_vector(const DemandDistribution& dist, std::size_t n, Rng& rng);

// G_{mtilde}: total mass of the mtilde most popular files.
double prefix_mass(const DemandDistribution& dist, std::size_t mtilde);

}  // namespace codedcache
