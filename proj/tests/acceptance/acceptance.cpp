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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "codedcache/bounds.hpp"
#include "codedcache/coloring.hpp"
#include "codedcache/conflict_graph.hpp"
#include "codedcache/delivery.hpp"
#include "codedcache/example1.hpp"
#include "codedcache/experiment.hpp"
#include "codedcache/optimizer.hpp"
#include "codedcache/random.hpp"

namespace cc = codedcache;

namespace {

// Tolerances and budgets.
constexpr double kExample1BudgetMs = 10.0;
constexpr double kPsiConcentrationTol = 0.10;
constexpr double kGccSlack = 0.05;
constexpr double kGccShare = 0.95;
constexpr double kConcentrationBudgetS = 30.0;
constexpr double kHandValueTol = 1e-6;
constexpr double kScenarioCeiling = 0.65;
constexpr double kScenarioBudgetS = 60.0;
constexpr double kLowerBoundSlack = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

cc::ExperimentConfig base_config() {
  cc::ExperimentConfig cfg;
  cfg.q = {0.7, 0.21, 0.09};
  cfg.params.m = 3;
  cfg.lower_bound = false;
  cfg.base_seed = 2026;
  return cfg;
}

Outcome example1() {
  const auto t0 = Clock::now();
  const auto params = cc::example1_params();
  const auto cache = cc::example1_cache();
  const auto Q = cc::packet_demand(cache, cc::example1_demand(), params);
  const auto g = cc::build_conflict_graph(cache, Q);
  const auto c1 = cc::gcc1(g);
  const auto c2 = cc::gcc2(g);
  const auto c = cc::gcc(g);
  const auto x = cc::exact_chromatic(g);
  const auto rec = cc::run_example1(cc::DeliveryKind::kGcc);
  const double ms = seconds_since(t0) * 1e3;
  const bool ok = g.size() == 6 && c1.colors() == 5 && c2.colors() == 6 && c.colors() == 5 && x.colors() == 5 &&
                  rec.decode_ok.value_or(false) && rec.rate == 5.0 / 3.0 && ms < kExample1BudgetMs;
  return {ok, fmt("V=%.0f gcc1=%.0f gcc2=%.0f exact=%.0f", static_cast<double>(g.size()), c1.colors(), c2.colors(),
                  x.colors()) +
                  fmt(" rate=%.6f decode=%.0f %.2fms", *rec.rate, *rec.decode_ok ? 1.0 : 0.0, ms)};
}

// A trial is one cache realization; its rate is the exact expectation over
// all 3^5 demand vectors given that cache.
Outcome psi_concentration() {
  const auto t0 = Clock::now();
  auto cfg = base_config();
  cfg.params.n = 5;
  cfg.params.M = 1.0;
  cfg.params.B = 900;
  cfg.trials = 30;
  cfg.demand_rounds = 0;
  cfg.delivery = cc::DeliveryKind::kGcc1;
  const auto r1 = cc::run_experiment(cfg);
  cfg.delivery = cc::DeliveryKind::kGcc;
  const auto r = cc::run_experiment(cfg);
  const double secs = seconds_since(t0);

  const double psi = *r.front().psi;
  const double cap = std::min(psi, *r.front().mbar) + kGccSlack;
  const double mean1 = *cc::aggregate(r1).summary.rate;
  const auto within = static_cast<double>(
      std::count_if(r.begin(), r.end(), [&](const cc::TrialRecord& t) { return t.rate && *t.rate <= cap; }));
  const double share = within / static_cast<double>(r.size());
  const bool ok = std::fabs(mean1 - psi) <= kPsiConcentrationTol && share >= kGccShare && secs < kConcentrationBudgetS;
  return {ok, fmt("psi=%.6f gcc1_mean=%.4f |diff|=%.4f", psi, mean1, std::fabs(mean1 - psi)) +
                  fmt(" gcc<=%.4f in %.0f%% of trials, %.1fs", cap, 100.0 * share, secs)};
}

Outcome hand_values() {
  const cc::DemandDistribution q({0.7, 0.21, 0.09});
  const double a = cc::psi(q, cc::CachingDistribution({0.5, 0.5, 0.0}), 1.0, 2);
  const double b = cc::mbar(q, 3);
  const bool ok = std::fabs(a - 0.882975) <= kHandValueTol && std::fabs(b - 1.726390) <= kHandValueTol;
  return {ok, fmt("psi=%.7f mbar=%.7f", a, b)};
}

Outcome quoted_scenario() {
  const auto t0 = Clock::now();
  auto cfg = base_config();
  cfg.params.n = 20;
  cfg.params.M = 1.5;
  cfg.params.B = 600;
  cfg.trials = 20;
  cfg.schemes = {cc::SchemeSpec::parse("rlfu:3")};
  cfg.delivery = cc::DeliveryKind::kGcc;
  const auto r = cc::run_experiment(cfg);
  const double secs = seconds_since(t0);
  const auto agg = cc::aggregate(r);
  const double mean = *agg.summary.rate;
  const bool ok = mean <= kScenarioCeiling && secs < kScenarioBudgetS;
  return {ok, fmt("mean gcc rate=%.4f (ceiling %.2f) psi=%.4f mbar=%.4f", mean, kScenarioCeiling, *r.front().psi,
                  *r.front().mbar) +
                  fmt(" stderr=%.4f %.1fs", agg.rate_stderr.value_or(0.0), secs)};
}

Outcome closed_form_cutoff() {
  const auto k = cc::mtilde_closed_form_alpha_lt1(50, 50000, 800.0, 0.9);
  bool ok = k >= 3000 && k <= 3050;
  std::string detail = "mtilde=" + std::to_string(k);
  const auto q = cc::zipf_distribution(50000, 0.9);
  for (double M : {200.0, 800.0, 2000.0}) {
    const auto kk = cc::mtilde_closed_form_alpha_lt1(50, 50000, M, 0.9);
    const double a = cc::rate_upper_bound(q, kk, M, 50);
    const double b = cc::rate_upper_bound(q, 50000, M, 50);
    ok = ok && a <= b;
    detail += fmt(" | M=%.0f: %.3f<=%.3f", M, a, b);
  }
  return {ok, detail};
}

Outcome converse_consistency() {
  cc::Rng rng(cc::mix_seed(2026, 0, cc::Stream::kSearch));
  std::uniform_int_distribution<std::size_t> pick(1, 200);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool ok = true;
  double worst = -INFINITY;
  int zero_ok = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = pick(rng);
    const std::size_t n = pick(rng);
    const double M = unit(rng) * static_cast<double>(m);
    double alpha = 2.5 * unit(rng);
    if (alpha == 1.0) alpha = 1.0 + 1e-6;
    const auto q = cc::zipf_distribution(m, alpha);
    const auto best = cc::optimize_mtilde(q, M, n);
    const double lb = cc::rate_lower_bound(q, M, n);
    worst = std::max(worst, lb - best.objective);
    ok = ok && lb <= best.objective + kLowerBoundSlack;
    if (cc::rate_lower_bound(q, static_cast<double>(m), n) == 0.0) ++zero_ok;
  }
  ok = ok && zero_ok == 50;
  return {ok, fmt("max(lb-ub)=%.3g over 50 configs; lb(M=m)=0 in %.0f/50", worst, zero_ok)};
}

// Runs the property families and reports how many checks held.
Outcome properties() {
  cc::Rng rng(cc::mix_seed(2026, 7, cc::Stream::kSearch));
  std::size_t checks = 0, failures = 0;
  auto check = [&](bool v) {
    ++checks;
    if (!v) ++failures;
  };
  auto instance = [&](std::size_t max_n, std::size_t max_m, std::size_t max_B) {
    std::uniform_int_distribution<std::size_t> pn(1, max_n), pm(1, max_m), pb(1, max_B);
    cc::SystemParams p;
    p.n = pn(rng);
    p.m = pm(rng);
    p.B = pb(rng);
    p.M = 0.0;
    cc::CacheConfiguration cache(p.n, p.m, p.B);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t u = 1; u <= p.n; ++u) {
      for (std::size_t f = 1; f <= p.m; ++f) {
        std::vector<std::uint32_t> s;
        for (std::uint32_t b = 1; b <= p.B; ++b) {
          if (coin(rng)) s.push_back(b);
        }
        cache.assign(u, f, s);
      }
    }
    std::uniform_int_distribution<std::uint32_t> pf(1, static_cast<std::uint32_t>(p.m));
    cc::DemandVector d;
    for (std::size_t u = 0; u < p.n; ++u) d.entries.push_back(pf(rng));
    return std::make_tuple(p, cache, d);
  };

  // (a) lossless, (b) independent classes, (c) gcc2 = distinct packets
  for (int t = 0; t < 200; ++t) {
    const auto [p, cache, d] = instance(5, 5, 20);
    const auto Q = cc::packet_demand(cache, d, p);
    const auto g = cc::build_conflict_graph(cache, Q);
    const auto c = cc::gcc(g);
    bool valid = true;
    try {
      cc::validate_coloring(g, c);
      cc::validate_coloring(g, cc::gcc1(g));
      cc::validate_coloring(g, cc::gcc2(g));
    } catch (const std::exception&) {
      valid = false;
    }
    check(valid);
    check(cc::gcc2(g).colors() == g.distinct_packets());
    const cc::Library lib(p.m, p.B, cc::kDefaultPacketBytes, static_cast<std::uint64_t>(t));
    const auto cw = cc::encode(c, g, lib);
    bool lossless = true;
    for (std::size_t u = 1; u <= p.n; ++u) {
      try {
        const auto got = cc::decode(u, cw, cc::UserCache(u, cache, lib), Q);
        lossless = lossless && got.size() == Q.user(u).packets.size();
        for (const auto& x : got) {
          const auto want = lib.packet(x.id);
          lossless = lossless && std::equal(want.begin(), want.end(), x.payload.begin(), x.payload.end());
        }
      } catch (const std::exception&) {
        lossless = false;
      }
    }
    check(lossless);
  }

  // (d) rho sums to one; psi tie-rule invariance
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(8 * unit(rng));
    const std::size_t n = 1 + static_cast<std::size_t>(20 * unit(rng));
    const double M = 0.5 + unit(rng) * (static_cast<double>(m) - 0.5) * 0.9;
    const auto q = cc::zipf_distribution(m, 2.0 * unit(rng));
    const auto p = cc::rlfu_distribution(m, M, std::max(cc::min_mtilde(m, M), m - static_cast<std::size_t>(t) % m));
    for (std::size_t l = 1; l <= n; ++l) {
      double s = 0.0;
      for (double x : cc::rho(q, p, M, n, l)) s += x;
      check(std::fabs(s - 1.0) <= 1e-12);
    }
    const double lo = cc::psi_per_file(q, p, M, n, cc::TieRule::kLowestIndex);
    const double hi = cc::psi_per_file(q, p, M, n, cc::TieRule::kHighestIndex);
    check(std::fabs(lo - hi) <= 1e-9 * std::max(1.0, lo));
  }

  // (e) Jensen: psi <= psi_tilde on RLFU placements
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(60 * unit(rng));
    const std::size_t n = 1 + static_cast<std::size_t>(200 * unit(rng));
    const double M = 0.2 + unit(rng) * (static_cast<double>(m) - 0.2) * 0.95;
    const std::size_t lo = cc::min_mtilde(m, M);
    const std::size_t k = lo + static_cast<std::size_t>(static_cast<double>(m - lo) * unit(rng));
    const auto q = cc::zipf_distribution(m, 2.5 * unit(rng));
    const double a = cc::psi(q, cc::rlfu_distribution(m, M, k), M, n);
    const double b = cc::psi_tilde(q, k, M, n);
    check(a <= b + 1e-9 * std::max(1.0, b));
  }

  // (f) harmonic sum bracket
  for (double a : {0.0, 0.3, 0.6, 0.9, 1.2, 1.6, 2.0, 2.5}) {
    for (std::uint64_t x : {1u, 3u, 10u, 100u}) {
      for (std::uint64_t y : {x, x + 5, x + 1000}) {
        const double h = cc::harmonic_sum(a, x, y);
        const double k = 1.0 / (1.0 - a);
        const double dx = static_cast<double>(x);
        const double lo = k * (std::pow(static_cast<double>(y) + 1.0, 1.0 - a) - std::pow(dx, 1.0 - a));
        const double hi = k * (std::pow(static_cast<double>(y), 1.0 - a) - std::pow(dx, 1.0 - a)) + std::pow(dx, -a);
        check(lo <= h * (1 + 1e-12) && h <= hi * (1 + 1e-12));
      }
    }
  }

  // (g) exact <= gcc on tiny instances
  int tiny = 0;
  while (tiny < 50) {
    const auto [p, cache, d] = instance(4, 3, 4);
    const auto g = cc::build_conflict_graph(cache, cc::packet_demand(cache, d, p));
    if (g.size() > 16) continue;
    ++tiny;
    const auto x = cc::exact_chromatic(g);
    bool valid = true;
    try {
      cc::validate_coloring(g, x);
    } catch (const std::exception&) {
      valid = false;
    }
    check(valid && x.colors() <= cc::gcc(g).colors());
  }

  return {failures == 0,
          fmt("%.0f/%.0f property checks held", static_cast<double>(checks - failures), static_cast<double>(checks))};
}

Outcome scheme_ordering() {
  const auto t0 = Clock::now();
  cc::ExperimentConfig cfg;
  cfg.alpha = 1.6;
  cfg.params.m = 500;
  cfg.params.n = 500;
  cfg.params.B = 200;
  cfg.trials = 10;
  cfg.base_seed = 2026;
  cfg.lower_bound = false;
  cfg.schemes = {cc::SchemeSpec::parse("rlfu:auto"), cc::SchemeSpec::parse("up")};
  cfg.M_sweep = {5.0, 20.0, 50.0};
  const auto pts = cc::run_sweep(cfg);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < cfg.M_sweep.size(); ++i) {
    const auto& rl = pts[i].summary;
    const auto& up = pts[cfg.M_sweep.size() + i].summary;
    const double lfu = *rl.lfu_nm;
    ok = ok && *rl.rate <= *up.rate && *rl.rate <= lfu;
    detail += fmt("M=%.0f: rlfu=%.2f up=%.2f lfu_nm=%.2f", rl.M, *rl.rate, *up.rate, lfu) +
              fmt(" (psi=%.2f) | ", *rl.psi);
  }
  detail += fmt("%.1fs", seconds_since(t0));
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 example1-golden", example1},
      {"2 psi-concentration", psi_concentration},
      {"3 hand-computed-psi-mbar", hand_values},
      {"4 quoted-scenario-rate", quoted_scenario},
      {"5 closed-form-cutoff", closed_form_cutoff},
      {"6 converse-consistency", converse_consistency},
      {"7 property-suites", properties},
      {"8 scheme-ordering", scheme_ordering},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
