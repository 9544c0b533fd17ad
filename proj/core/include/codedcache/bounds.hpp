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
#include <optional>
#include <vector>

#include "codedcache/demand.hpp"
#include "codedcache/placement.hpp"

namespace codedcache {

// Analytic rates for one parameter point, in equivalent file transmissions.
struct BoundsReport {
  double psi = 0.0;
  double mbar = 0.0;
  std::optional<double> psi_tilde;
  std::optional<double> r_ub;   // min(psi_tilde, mbar) when psi_tilde is present
  double lfu_nm = 0.0;
  bool lfu_nm_interpolated = false;
  double r_lb = 0.0;
};

// Discretization of the converse's continuous maximization.
struct LowerBoundGrid {
  std::size_t r_points = 64;        // log-spaced samples of r per ell
  std::size_t z_tilde_points = 64;  // linear samples of z~ per r
  std::size_t ell_stride = 0;       // 0 selects 1 for m <= 512, else ceil(m/512)

  [[nodiscard]] std::size_t stride_for(std::size_t m) const noexcept;
};

// Expected number of distinct requested files: sum_f 1 - (1 - q_f)^n.
double mbar(const DemandDistribution& q, std::size_t n);

// g_l(f) = (p_f M)^(l-1) (1 - p_f M)^(n-l+1), with 0^0 = 1.
double g_value(double p_f, double M, std::size_t l, std::size_t n);

// How a tie class of files with equal g_l shares its probability mass.
enum class TieRule { kLowestIndex, kHighestIndex };

// rho_{f,l} for f = 1..m (returned 0-based). The whole mass of a tie class
// goes to one member, so the entries sum to one.
std::vector<double> rho(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n,
                        std::size_t l, TieRule ties = TieRule::kLowestIndex);

// Asymptotic GCC1 rate for caching distribution p. Files sharing a p value
// are evaluated together, so RLFU inputs cost O(n).
double psi(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n);

// Same quantity summed file by file from rho(); O(n m log m).
double psi_per_file(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n,
                    TieRule ties = TieRule::kLowestIndex);

// Closed-form RLFU upper bound for cutoff mtilde (M <= mtilde <= m).
double psi_tilde(const DemandDistribution& q, std::size_t mtilde, double M, std::size_t n);

// min(psi_tilde, mbar); zero once M >= m.
double rate_upper_bound(const DemandDistribution& q, std::size_t mtilde, double M, std::size_t n);

struct LfuNmRate {
  double rate = 0.0;
  bool interpolated = false;  // M was fractional; the boundary file is scaled by ceil(M) - M
};

// LFU placement with naive multicasting of the uncached requests.
LfuNmRate lfu_nm(const DemandDistribution& q, double M, std::size_t n);
inline double lfu_nm_rate(const DemandDistribution& q, double M, std::size_t n) { return lfu_nm(q, M, n).rate; }

// Concentration factors of the converse. p1 needs 0 < r <= n l q_l;
// p2 needs 0 < z_tilde <= l (1 - (1 - 1/l)^r).
double p1(std::size_t l, double r, std::size_t n, double q_l);
double p2(std::size_t l, double r, double z_tilde);

// Mean number of distinct values among r uniform draws from l: l (1 - (1 - 1/l)^r).
double expected_distinct(std::size_t l, double r);

// Grid maximization of the information-theoretic lower bound.
double rate_lower_bound(const DemandDistribution& q, double M, std::size_t n, const LowerBoundGrid& grid = {});

BoundsReport bounds_report(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n,
                           std::optional<std::size_t> mtilde, const LowerBoundGrid& grid = {});

}  // namespace codedcache
