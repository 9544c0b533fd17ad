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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "codedcache/random.hpp"

namespace codedcache {

struct SystemParams {
  std::size_t n = 1;                  // users
  std::size_t m = 1;                  // library size
  double M = 0.0;                     // cache capacity in files
  std::size_t B = 1;                  // packets per file
  std::size_t packet_bits = 64 * 8;   // packet size F/B in bits; delivery only

  // Throws InvalidArgument unless n,m,B >= 1 and 0 <= M <= m.
  void validate() const;
};

// Fraction of each user's memory given to each file (1-based access).
class CachingDistribution {
 public:
  CachingDistribution() = default;
  explicit CachingDistribution(std::vector<double> p) : p_(std::move(p)) {}

  [[nodiscard]] std::size_t size() const noexcept { return p_.size(); }
  [[nodiscard]] double p(std::size_t f) const { return p_.at(f - 1); }
  [[nodiscard]] std::span<const double> values() const noexcept { return p_; }

  friend bool operator==(const CachingDistribution&, const CachingDistribution&) = default;

 private:
  std::vector<double> p_;
};

// Truncated uniform over the mtilde most popular files. mtilde = m is uniform
// placement, mtilde = ceil(M) is the LFU-like placement.
CachingDistribution rlfu_distribution(std::size_t m, double M, std::size_t mtilde);
CachingDistribution uniform_distribution(std::size_t m, double M);
CachingDistribution lfu_distribution(std::size_t m, double M);

// Throws ConstraintViolation unless sum(p) = 1 (1e-9) and p_f <= 1/M (1e-12).
void validate_caching_distribution(const CachingDistribution& p, double M);

// Packets of file f each user stores: round(p_f M B), clamped to [0, B].
std::size_t cached_packet_count(double p_f, double M, std::size_t B);

// Realization of the random cache contents: for every (user, file) a sorted
// set of 1-based packet indices.
class CacheConfiguration {
 public:
  CacheConfiguration(std::size_t n, std::size_t m, std::size_t B);

  [[nodiscard]] std::size_t users() const noexcept { return n_; }
  [[nodiscard]] std::size_t files() const noexcept { return m_; }
  [[nodiscard]] std::size_t packets_per_file() const noexcept { return B_; }

  [[nodiscard]] std::span<const std::uint32_t> cached(std::size_t u, std::size_t f) const {
    return sets_.at(slot(u, f));
  }
  [[nodiscard]] bool contains(std::size_t u, std::size_t f, std::uint32_t b) const;

  // Replaces the set for (u, f); indices are sorted and must be distinct and in [1, B].
  void assign(std::size_t u, std::size_t f, std::vector<std::uint32_t> packets);

  [[nodiscard]] std::size_t total_cached(std::size_t u) const;

  friend bool operator==(const CacheConfiguration&, const CacheConfiguration&) = default;

 private:
  [[nodiscard]] std::size_t slot(std::size_t u, std::size_t f) const;

  std::size_t n_;
  std::size_t m_;
  std::size_t B_;
  std::vector<std::vector<std::uint32_t>> sets_;
};

// Each (u, f) draws round(p_f M B) distinct packets uniformly at random,
// independently across users and files.
CacheConfiguration sample_cache_configuration(const CachingDistribution& p, const SystemParams& params,
                                              Rng& rng);

// Line format:
//   # cache n=<n> m=<m> B=<B>
//   <u> <f> <i1>,<i2>,...     ("-" for an empty set)
void write_cache_configuration(std::ostream& os, const CacheConfiguration& c);
CacheConfiguration read_cache_configuration(std::istream& is);

// Reads a caching distribution from whitespace- or comma-separated text.
CachingDistribution read_caching_distribution(std::istream& is);

}  // namespace codedcache
