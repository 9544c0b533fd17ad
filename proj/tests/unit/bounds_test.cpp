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

#include "codedcache/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "codedcache/errors.hpp"
#include "codedcache/optimizer.hpp"
#include "codedcache/random.hpp"
#include "oracles.hpp"

namespace cc = codedcache;
namespace ct = codedcache::testing;

namespace {

const cc::DemandDistribution kQ({0.7, 0.21, 0.09});

}  // namespace

TEST(Mbar, Examples) {
  EXPECT_NEAR(cc::mbar(kQ, 3), 1.726390, 1e-6);
  EXPECT_NEAR(cc::mbar(cc::zipf_distribution(40, 0.7), 1), 1.0, 1e-12);
  EXPECT_NEAR(cc::mbar(cc::DemandDistribution({1.0}), 1000000), 1.0, 1e-12);
  EXPECT_NEAR(cc::mbar(kQ, 5), 2.065832215, 1e-9);
}

TEST(Mbar, MatchesMonteCarloDistinctCount) {
  const auto q = cc::zipf_distribution(30, 1.1);
  const std::size_t n = 12;
  const std::size_t draws = 200000;
  cc::Rng rng(cc::mix_seed(8, 0, cc::Stream::kDemand));
  double sum = 0.0, sq = 0.0;
  for (std::size_t s = 0; s < draws; ++s) {
    const auto d = cc::sample_demand_vector(q, n, rng);
    const double k = static_cast<double>(std::set<std::uint32_t>(d.entries.begin(), d.entries.end()).size());
    sum += k;
    sq += k * k;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sq / draws - mean * mean) / draws);
  EXPECT_NEAR(cc::mbar(q, n), mean, 3.0 * se);
}

TEST(GValue, Examples) {
  EXPECT_DOUBLE_EQ(cc::g_value(0.0, 1.0, 1, 5), 1.0);
  EXPECT_NEAR(cc::g_value(0.6, 1.0, 1, 2), 0.16, 1e-15);
  for (std::size_t l = 1; l <= 4; ++l) EXPECT_DOUBLE_EQ(cc::g_value(0.5, 2.0, l, 4), 0.0);
  EXPECT_DOUBLE_EQ(cc::g_value(0.5, 2.0, 1, 1), 0.0);
  EXPECT_THROW((void)cc::g_value(0.5, 2.0, 5, 4), cc::InvalidArgument);
  EXPECT_GT(cc::g_value(0.01, 1.0, 40, 5000), 0.0);
}

TEST(Rho, Examples) {
  const cc::DemandDistribution one({1.0});
  for (std::size_t l = 1; l <= 3; ++l) EXPECT_EQ(cc::rho(one, cc::CachingDistribution({1.0}), 1.0, 3, l), std::vector<double>{1.0});

  const cc::DemandDistribution q2({0.7, 0.3});
  const auto r = cc::rho(q2, cc::CachingDistribution({0.6, 0.4}), 1.0, 2, 1);
  EXPECT_NEAR(r[0], 0.7, 1e-15);
  EXPECT_NEAR(r[1], 0.3, 1e-15);

  for (std::size_t l = 1; l <= 5; ++l) {
    const auto u = cc::rho(kQ, cc::uniform_distribution(3, 1.0), 1.0, 5, l);
    EXPECT_NEAR(u[0], 1.0, 1e-15);
    EXPECT_EQ(u[1], 0.0);
    EXPECT_EQ(u[2], 0.0);
    const auto h = cc::rho(kQ, cc::uniform_distribution(3, 1.0), 1.0, 5, l, cc::TieRule::kHighestIndex);
    EXPECT_NEAR(h[2], 1.0, 1e-15);
  }
}

TEST(Rho, SumsToOneUnderBothTieRules) {
  cc::Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto q = cc::zipf_distribution(8, 2.0 * u(rng));
    const double M = 1.0 + u(rng);
    const auto p = cc::rlfu_distribution(8, M, 2 + static_cast<std::size_t>(6 * u(rng)));
    for (std::size_t l = 1; l <= 6; ++l) {
      for (auto rule : {cc::TieRule::kLowestIndex, cc::TieRule::kHighestIndex}) {
        const auto r = cc::rho(q, p, M, 6, l, rule);
        double s = 0.0;
        for (double x : r) s += x;
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
  }
}

TEST(Psi, Examples) {
  EXPECT_NEAR(cc::psi(kQ, cc::CachingDistribution({0.5, 0.5, 0.0}), 1.0, 2), 0.882975, 1e-6);
  EXPECT_NEAR(cc::psi(kQ, cc::uniform_distribution(3, 1.0), 1.0, 5), 2.0 * (1.0 - std::pow(2.0 / 3.0, 5)), 1e-12);
  EXPECT_NEAR(cc::psi(kQ, cc::uniform_distribution(3, 1.0), 1.0, 5), 1.736626, 1e-6);
  EXPECT_DOUBLE_EQ(cc::psi(cc::DemandDistribution({1.0}), cc::CachingDistribution({1.0}), 1.0, 4), 0.0);
}

TEST(Psi, RejectsInfeasiblePlacement) {
  EXPECT_THROW(cc::psi(kQ, cc::CachingDistribution({0.8, 0.2, 0.0}), 2.0, 3), cc::ConstraintViolation);
  EXPECT_THROW(cc::psi(kQ, cc::CachingDistribution({1.0}), 1.0, 3), cc::InvalidArgument);
  EXPECT_THROW(cc::psi(kQ, cc::uniform_distribution(3, 1.0), 1.0, 0), cc::InvalidArgument);
}

TEST(Psi, TieRuleInvarianceAndGroupedPath) {
  cc::Rng rng(cc::mix_seed(1, 1, cc::Stream::kSearch));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(8 * u(rng));
    const std::size_t n = 1 + static_cast<std::size_t>(30 * u(rng));
    const double M = 0.3 + (static_cast<double>(m) - 0.3) * u(rng) * 0.9;
    const auto q = cc::zipf_distribution(m, 2.0 * u(rng));
    // Random feasible p: RLFU plus a random blend with uniform.
    const auto base = cc::rlfu_distribution(m, M, std::max<std::size_t>(cc::min_mtilde(m, M), m - t % m));
    std::vector<double> pv(base.values().begin(), base.values().end());
    const double w = u(rng);
    for (auto& x : pv) x = w * x + (1 - w) / static_cast<double>(m);
    const cc::CachingDistribution p(pv);
    const double fast = cc::psi(q, p, M, n);
    const double low = cc::psi_per_file(q, p, M, n, cc::TieRule::kLowestIndex);
    const double high = cc::psi_per_file(q, p, M, n, cc::TieRule::kHighestIndex);
    EXPECT_NEAR(fast, low, 1e-9 * std::max(1.0, fast));
    EXPECT_NEAR(low, high, 1e-9 * std::max(1.0, low));
  }
}

TEST(Psi, UniformClosedForm) {
  for (std::size_t m : {2u, 5u, 40u}) {
    for (double M : {0.5, 1.0, 1.7}) {
      for (std::size_t n : {1u, 7u, 300u, 5000u}) {
        const double want = (m / M - 1.0) * (1.0 - std::pow(1.0 - M / m, static_cast<double>(n)));
        const double got = cc::psi(cc::zipf_distribution(m, 0.6), cc::uniform_distribution(m, M), M, n);
        EXPECT_NEAR(got, want, 1e-9 * want) << m << ' ' << M << ' ' << n;
      }
    }
  }
}

TEST(Psi, JensenBoundAgainstPsiTilde) {
  cc::Rng rng(cc::mix_seed(50, 0, cc::Stream::kSearch));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(60 * u(rng));
    const std::size_t n = 1 + static_cast<std::size_t>(200 * u(rng));
    const double M = 0.2 + (static_cast<double>(m) - 0.2) * u(rng) * 0.95;
    const std::size_t lo = cc::min_mtilde(m, M);
    const std::size_t k = lo + static_cast<std::size_t>((m - lo) * u(rng));
    const auto q = cc::zipf_distribution(m, 2.5 * u(rng));
    const double a = cc::psi(q, cc::rlfu_distribution(m, M, k), M, n);
    const double b = cc::psi_tilde(q, k, M, n);
    EXPECT_LE(a, b + 1e-9 * std::max(1.0, b)) << m << ' ' << n << ' ' << M << ' ' << k;
  }
}

TEST(PsiTilde, Examples) {
  const cc::DemandDistribution u2({0.5, 0.5});
  EXPECT_NEAR(cc::psi_tilde(u2, 2, 1.0, 2), 0.75, 1e-15);
  EXPECT_NEAR(cc::psi_tilde(kQ, 3, 1.0, 5), 1.736626, 1e-6);
  const auto q = cc::zipf_distribution(10, 1.2);
  EXPECT_NEAR(cc::psi_tilde(q, 3, 3.0, 7), 7.0 * (1.0 - cc::prefix_mass(q, 3)), 1e-12);
  EXPECT_THROW(cc::psi_tilde(q, 2, 3.0, 7), cc::InvalidArgument);
}

TEST(RateUpperBound, Examples) {
  EXPECT_NEAR(cc::rate_upper_bound(kQ, 3, 1.0, 5), 1.736626, 1e-6);
  EXPECT_DOUBLE_EQ(cc::rate_upper_bound(kQ, 3, 3.0, 5), 0.0);
  const auto q = cc::zipf_distribution(20, 0.5);
  EXPECT_NEAR(cc::rate_upper_bound(q, 20, 1e-6, 2000), cc::mbar(q, 2000), 1e-9);
}

TEST(LfuNm, Examples) {
  EXPECT_NEAR(cc::lfu_nm_rate(kQ, 1.0, 5), (1 - std::pow(0.79, 5)) + (1 - std::pow(0.91, 5)), 1e-12);
  EXPECT_DOUBLE_EQ(cc::lfu_nm_rate(kQ, 3.0, 5), 0.0);
  EXPECT_NEAR(cc::lfu_nm_rate(kQ, 0.0, 5), cc::mbar(kQ, 5), 1e-12);
  EXPECT_FALSE(cc::lfu_nm(kQ, 1.0, 20).interpolated);
  const auto half = cc::lfu_nm(kQ, 1.5, 20);
  EXPECT_TRUE(half.interpolated);
  EXPECT_NEAR(half.rate, 0.5 * (cc::lfu_nm_rate(kQ, 1.0, 20) + cc::lfu_nm_rate(kQ, 2.0, 20)), 1e-12);
}

TEST(ConcentrationFactors, Examples) {
  EXPECT_DOUBLE_EQ(cc::p1(2, 10.0, 5, 1.0), 0.0);
  EXPECT_NEAR(cc::p1(1, 50.0, 100, 1.0), 1.0 - std::exp(-12.5), 1e-12);
  EXPECT_NEAR(cc::p1(1, 50.0, 100, 1.0), 0.9999963, 1e-7);
  EXPECT_NEAR(cc::p1(2, 2.0, 4, 0.5), 1.0 - std::exp(-0.5), 1e-12);
  EXPECT_NEAR(cc::p1(2, 2.0, 4, 0.5), 0.3935, 1e-4);

  EXPECT_DOUBLE_EQ(cc::p2(3, 2.0, cc::expected_distinct(3, 2.0)), 0.0);
  const double e = cc::expected_distinct(2, 50.0);
  EXPECT_NEAR(cc::p2(2, 50.0, 1.0), 1.0 - std::exp(-(e - 1) * (e - 1) / (2 * e)), 1e-12);
  EXPECT_NEAR(cc::p2(2, 50.0, 1.0), 0.2212, 1e-4);
  EXPECT_NEAR(cc::p2(2, 1.0, 0.5), 1.0 - std::exp(-0.125), 1e-12);
  EXPECT_NEAR(cc::p2(2, 1.0, 0.5), 0.1175, 1e-4);

  EXPECT_THROW(cc::p1(1, 0.0, 10, 0.5), cc::InvalidArgument);
  EXPECT_THROW(cc::p1(1, 6.0, 10, 0.5), cc::InvalidArgument);
  EXPECT_THROW(cc::p2(2, 1.0, 1.5), cc::InvalidArgument);
}

TEST(RateLowerBound, TrivialWhenLibraryFits) {
  EXPECT_DOUBLE_EQ(cc::rate_lower_bound(kQ, 3.0, 10), 0.0);
  EXPECT_DOUBLE_EQ(cc::rate_lower_bound(kQ, 4.0, 10), 0.0);
}

// Frozen from the dense 1024 x 1024 oracle; the supremum sits at l = 2 with
// z~ -> 0, where the bound tends to (1 - e^{-1/2}) (1 - M/2).
TEST(RateLowerBound, TwoFileExampleAgainstDenseOracle) {
  const cc::DemandDistribution q({0.5, 0.5});
  const double dense = ct::dense_lower_bound(q, 0.5, 100);
  EXPECT_NEAR(dense, 0.29505862, 1e-7);
  EXPECT_LT(dense, (1.0 - std::exp(-0.5)) * 0.75);
  const double fast = cc::rate_lower_bound(q, 0.5, 100);
  EXPECT_NEAR(fast, dense, 0.03 * dense);
  EXPECT_LE(fast, (1.0 - std::exp(-0.5)) * 0.75 + 1e-12);
}

TEST(RateLowerBound, DefaultGridTracksDenseOracle) {
  struct Case {
    std::size_t m;
    double alpha;
    double M;
    std::size_t n;
  };
  for (const auto& c : {Case{3, 0.0, 1.0, 5}, Case{6, 0.8, 2.0, 20}, Case{5, 1.6, 0.5, 40}, Case{8, 2.2, 3.0, 8}}) {
    const auto q = cc::zipf_distribution(c.m, c.alpha);
    const double dense = ct::dense_lower_bound(q, c.M, c.n, 256);
    const double fast = cc::rate_lower_bound(q, c.M, c.n);
    EXPECT_NEAR(fast, dense, 0.03 * dense + 1e-9) << c.m << ' ' << c.alpha;
  }
}

TEST(RateLowerBound, NonIncreasingInCacheSize) {
  const auto q = cc::zipf_distribution(30, 0.9);
  double prev = cc::rate_lower_bound(q, 0.0, 50);
  for (double M = 0.5; M <= 30.0; M += 0.5) {
    const double cur = cc::rate_lower_bound(q, M, 50);
    EXPECT_LE(cur, prev + 1e-12) << M;
    prev = cur;
  }
}

TEST(RateLowerBound, RefiningTheGridNeverLowersTheBound) {
  const auto q = cc::zipf_distribution(25, 1.3);
  cc::LowerBoundGrid g;
  g.r_points = 16;
  g.z_tilde_points = 16;
  double prev = cc::rate_lower_bound(q, 2.0, 60, g);
  for (int k = 0; k < 3; ++k) {
    g.r_points *= 2;
    g.z_tilde_points *= 2;
    const double cur = cc::rate_lower_bound(q, 2.0, 60, g);
    EXPECT_GE(cur, prev - 1e-15);
    prev = cur;
  }
}

TEST(RateLowerBound, LargeLibraryUsesStride) {
  cc::LowerBoundGrid g;
  EXPECT_EQ(g.stride_for(512), 1u);
  EXPECT_EQ(g.stride_for(5000), 10u);
  const double v = cc::rate_lower_bound(cc::zipf_distribution(5000, 0.9), 50.0, 5000);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
}

TEST(BoundsReport, AssemblesFields) {
  const auto r = cc::bounds_report(kQ, cc::uniform_distribution(3, 1.0), 1.0, 5, 3);
  EXPECT_NEAR(r.psi, 1.736626, 1e-6);
  EXPECT_NEAR(r.mbar, 2.0658322, 1e-6);
  ASSERT_TRUE(r.r_ub.has_value());
  EXPECT_NEAR(*r.r_ub, 1.736626, 1e-6);
  EXPECT_LE(r.r_lb, *r.r_ub);

  const auto full = cc::bounds_report(kQ, cc::uniform_distribution(3, 3.0), 3.0, 5, 3);
  EXPECT_EQ(full.psi, 0.0);
  EXPECT_EQ(*full.r_ub, 0.0);
  EXPECT_EQ(full.r_lb, 0.0);
  EXPECT_EQ(full.lfu_nm, 0.0);
}

TEST(Bounds, LargeScaleStaysFinite) {
  const auto q = cc::zipf_distribution(50000, 0.9);
  const double v = cc::psi(q, cc::rlfu_distribution(50000, 800.0, 3022), 800.0, 5000);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
  EXPECT_LE(v, cc::psi_tilde(q, 3022, 800.0, 5000) + 1e-9);
}
