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
#include <string>

#include "codedcache/demand.hpp"
#include "codedcache/placement.hpp"
#include "codedcache/random.hpp"

namespace codedcache {

// Smallest admissible RLFU cutoff: ceil(max(M, 1)), capped at m.
std::size_t min_mtilde(std::size_t m, double M);

struct MtildeChoice {
  std::size_t mtilde = 1;
  double objective = 0.0;  // rate_upper_bound at mtilde
};

// argmin of rate_upper_bound over every admissible mtilde; ties go to the
// smallest cutoff.
MtildeChoice optimize_mtilde(const DemandDistribution& q, double M, std::size_t n);

// Continuous minimizer of the alpha < 1 Zipf bound, rounded and clamped.
std::size_t mtilde_closed_form_alpha_lt1(std::size_t n, std::size_t m, double M, double alpha);

struct RegimeReport {
  std::string regime;     // e.g. "alpha>1, n=o(m^alpha), 1<=M<m^alpha/n"
  std::size_t mtilde = 1;
  std::string rationale;  // which result prescribes this cutoff, and the surrogate test used
  std::optional<std::size_t> refined_mtilde;  // alpha < 1: closed-form constant-gain refinement
};

// Order-optimal cutoff from the scaling-regime case analysis. Asymptotic
// conditions are decided with finite threshold comparisons; see rationale.
// `rho` overrides n / m^alpha. alpha == 1 is unsupported.
RegimeReport regime_mtilde(std::size_t n, std::size_t m, double M, double alpha,
                           std::optional<double> rho = std::nullopt);

struct PlacementSearchResult {
  CachingDistribution p;
  double objective = 0.0;  // min(psi, mbar)
  bool converged = false;
  std::size_t evaluations = 0;
};

// min(psi(q, p), mbar) for a candidate placement.
double placement_objective(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n);

// Simplex grid (step 1/24) seeded with every RLFU cutoff, then pairwise mass
// transfer with the step halving from 1/24 down to 1e-4. Stops early and
// reports converged = false once `budget` objective evaluations are spent.
PlacementSearchResult optimize_caching_distribution(const DemandDistribution& q, double M, std::size_t n,
                                                    std::size_t budget, Rng& rng);

}  // namespace codedcache
