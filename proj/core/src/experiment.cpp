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

#include "codedcache/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "codedcache/coloring.hpp"
#include "codedcache/conflict_graph.hpp"
#include "codedcache/delivery.hpp"
#include "codedcache/errors.hpp"
#include "codedcache/numeric.hpp"
#include "codedcache/optimizer.hpp"
#include "codedcache/random.hpp"

namespace codedcache {
namespace {

Coloring color_graph(const ConflictGraph& g, DeliveryKind d, std::size_t exact_limit) {
  switch (d) {
    case DeliveryKind::kGcc: return gcc(g);
    case DeliveryKind::kGcc1: return gcc1(g);
    case DeliveryKind::kGcc2: return gcc2(g);
    case DeliveryKind::kExact: return exact_chromatic(g, exact_limit);
  }
  throw InvalidArgument("unknown delivery kind");
}

// Number of demand vectors m^n, saturating at limit + 1.
std::size_t demand_space(std::size_t m, std::size_t n, std::size_t limit) {
  std::size_t total = 1;
  for (std::size_t u = 0; u < n; ++u) {
    if (total > (limit + 1) / m) return limit + 1;
    total *= m;
  }
  return total;
}

// Calls fn(demand, probability) for every demand vector of positive probability.
template <class Fn>
void enumerate_demands(const DemandDistribution& q, std::size_t n, Fn&& fn) {
  const std::size_t m = q.size();
  std::size_t support = m;
  while (support > 0 && q.q(support) == 0.0) --support;
  DemandVector d;
  d.entries.assign(n, 1);
  while (true) {
    double w = 1.0;
    for (auto f : d.entries) w *= q.q(f);
    fn(d, w);
    std::size_t u = 0;
    while (u < n && d.entries[u] == support) d.entries[u++] = 1;
    if (u == n) break;
    ++d.entries[u];
  }
}

struct SchemeRun {
  ResolvedScheme scheme;
  TrialRecord base;
};

TrialRecord run_trial(const ExperimentConfig& cfg, const DemandDistribution& q, const SchemeRun& run,
                      const Library* library, std::size_t t) {
  TrialRecord rec = run.base;
  rec.trial = t;
  const std::uint64_t seed = trial_seed(cfg.base_seed, t);
  rec.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::uint64_t placement_seed =
        stream_seed(cfg.fix_cache ? trial_seed(cfg.base_seed, 0) : seed, Stream::kPlacement);
    Rng placement_rng(placement_seed);
    const CacheConfiguration cache = sample_cache_configuration(run.scheme.p, cfg.params, placement_rng);
    const CacheIndex index(cache);

    std::vector<UserCache> user_caches;
    if (cfg.verify) {
      user_caches.reserve(cfg.params.n);
      for (std::size_t u = 1; u <= cfg.params.n; ++u) user_caches.emplace_back(u, cache, *library);
    }

    CompensatedSum colors;
    bool decode_ok = true;
    auto process = [&](const DemandVector& d, double weight) {
      const PacketDemand demand = packet_demand(cache, d, cfg.params);
      const ConflictGraph g = build_conflict_graph(index, demand);
      const Coloring c = color_graph(g, run.scheme.delivery, cfg.exact_vertex_limit);
      colors.add(weight * static_cast<double>(c.colors()));
      if (!cfg.verify) return;
      validate_coloring(g, c);
      const Codeword cw = encode(c, g, *library);
      for (std::size_t u = 1; u <= cfg.params.n; ++u) {
        try {
          for (const auto& got : decode(u, cw, user_caches[u - 1], demand)) {
            const auto want = library->packet(got.id);
            if (!std::equal(want.begin(), want.end(), got.payload.begin(), got.payload.end())) decode_ok = false;
          }
        } catch (const DecodeFailure&) {
          decode_ok = false;
        }
      }
    };

    if (cfg.demand_rounds == 0) {
      enumerate_demands(q, cfg.params.n, process);
    } else {
      Rng demand_rng(stream_seed(seed, Stream::kDemand));
      const double weight = 1.0 / static_cast<double>(cfg.demand_rounds);
      for (std::size_t r = 0; r < cfg.demand_rounds; ++r) {
        process(sample_demand_vector(q, cfg.params.n, demand_rng), weight);
      }
    }
    rec.colors = colors.value();
    rec.rate = *rec.colors / static_cast<double>(cfg.params.B);
    if (cfg.verify) rec.decode_ok = decode_ok;
  } catch (const std::exception& e) {
    rec.colors.reset();
    rec.rate.reset();
    rec.error = e.what();
  }
  if (cfg.timing) {
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

TrialRecord analytic_record(const ExperimentConfig& cfg, const DemandDistribution& q, const ResolvedScheme& s,
                            const std::string& label) {
  TrialRecord r;
  r.scheme = label;
  r.delivery = s.delivery_label;
  r.n = cfg.params.n;
  r.m = cfg.params.m;
  if (cfg.q.empty()) r.alpha = cfg.alpha.value_or(0.0);
  r.M = cfg.params.M;
  r.B = cfg.params.B;
  r.mtilde = s.mtilde;
  r.seed = cfg.base_seed;

  const double M = cfg.params.M;
  const std::size_t n = cfg.params.n;
  const bool trivial = M >= static_cast<double>(cfg.params.m);
  r.mbar = mbar(q, n);
  r.psi = trivial ? 0.0 : psi(q, s.p, M, n);
  if (s.mtilde) {
    r.psi_tilde = trivial ? 0.0 : psi_tilde(q, *s.mtilde, M, n);
    r.r_ub = trivial ? 0.0 : std::min(*r.psi_tilde, *r.mbar);
  }
  r.lfu_nm = lfu_nm_rate(q, M, n);
  if (cfg.lower_bound) r.r_lb = rate_lower_bound(q, M, n);
  return r;
}

}  // namespace

ResolvedScheme resolve_scheme(const SchemeSpec& scheme, const DemandDistribution& q, const ExperimentConfig& cfg) {
  const std::size_t m = cfg.params.m;
  const double M = cfg.params.M;
  ResolvedScheme out;
  out.delivery = cfg.delivery;
  out.delivery_label = std::string(to_string(cfg.delivery));
  auto rlfu = [&](std::size_t k) {
    if (static_cast<double>(k) < M) {
      throw ConfigError("rlfu cutoff " + std::to_string(k) + " is below the cache size M");
    }
    out.mtilde = k;
    out.p = rlfu_distribution(m, M, k);
  };
  switch (scheme.kind) {
    case SchemeSpec::Kind::kUniform: rlfu(m); break;
    case SchemeSpec::Kind::kLfu: rlfu(min_mtilde(m, M)); break;
    case SchemeSpec::Kind::kLfuNm:
      rlfu(min_mtilde(m, M));
      out.delivery = DeliveryKind::kGcc2;
      out.delivery_label = "nm";
      break;
    case SchemeSpec::Kind::kRlfu: rlfu(scheme.mtilde); break;
    case SchemeSpec::Kind::kRlfuAuto: rlfu(optimize_mtilde(q, M, cfg.params.n).mtilde); break;
    case SchemeSpec::Kind::kRap: {
      std::ifstream in(scheme.path);
      if (!in) throw ConfigError("cannot open caching distribution '" + scheme.path + "'");
      out.p = read_caching_distribution(in);
      if (out.p.size() != m) throw ConfigError("caching distribution in '" + scheme.path + "' does not have m entries");
      try {
        validate_caching_distribution(out.p, M);
      } catch (const ConstraintViolation& e) {
        throw ConfigError(std::string("caching distribution '") + scheme.path + "': " + e.what());
      }
      break;
    }
  }
  return out;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.demand_rounds == 0 &&
      demand_space(cfg.params.m, cfg.params.n, cfg.enumeration_limit) > cfg.enumeration_limit) {
    throw ConfigError("exact demand enumeration needs m^n <= " + std::to_string(cfg.enumeration_limit));
  }
  const DemandDistribution q = cfg.demand();

  std::vector<SchemeRun> runs;
  for (const auto& s : cfg.schemes) {
    SchemeRun run{resolve_scheme(s, q, cfg), {}};
    run.base = analytic_record(cfg, q, run.scheme, s.label());
    runs.push_back(std::move(run));
  }

  std::optional<Library> library;
  if (cfg.verify) {
    library.emplace(cfg.params.m, cfg.params.B, cfg.params.packet_bits / 8,
                    mix_seed(cfg.base_seed, 0, Stream::kLibrary));
  }

  const std::size_t per_scheme = cfg.trials;
  const std::size_t total = per_scheme * runs.size();
  std::vector<TrialRecord> records(total);
  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, total);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t s = job / per_scheme;
      records[job] = run_trial(cfg, q, runs[s], library ? &*library : nullptr, job % per_scheme);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  return records;
}

SweepPoint aggregate(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw InvalidArgument("aggregate: no records");
  SweepPoint pt;
  pt.summary = records.front();
  pt.summary.trial.reset();
  pt.summary.error.clear();
  pt.trials = records.size();
  CompensatedSum colors;
  CompensatedSum rate;
  std::size_t ok = 0;
  std::optional<bool> decode_ok;
  std::optional<double> elapsed;
  for (const auto& r : records) {
    if (r.elapsed_ms) elapsed = elapsed.value_or(0.0) + *r.elapsed_ms;
    if (r.decode_ok) decode_ok = decode_ok.value_or(true) && *r.decode_ok;
    if (!r.rate) {
      ++pt.failures;
      continue;
    }
    colors.add(*r.colors);
    rate.add(*r.rate);
    ++ok;
  }
  pt.summary.decode_ok = decode_ok;
  pt.summary.elapsed_ms = elapsed;
  if (ok == 0) {
    pt.summary.colors.reset();
    pt.summary.rate.reset();
    return pt;
  }
  const double mean = rate.value() / static_cast<double>(ok);
  pt.summary.colors = colors.value() / static_cast<double>(ok);
  pt.summary.rate = mean;
  if (ok >= 2) {
    CompensatedSum ss;
    for (const auto& r : records) {
      if (r.rate) ss.add((*r.rate - mean) * (*r.rate - mean));
    }
    const double var = ss.value() / static_cast<double>(ok - 1);
    pt.rate_stderr = std::sqrt(var / static_cast<double>(ok));
  }
  return pt;
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg) {
  if (cfg.M_sweep.empty()) throw ConfigError("sweep needs a non-empty M_sweep list");
  const std::size_t schemes = cfg.schemes.size();
  std::vector<std::vector<SweepPoint>> by_scheme(schemes);
  for (double M : cfg.M_sweep) {
    ExperimentConfig point = cfg;
    point.params.M = M;
    const auto records = run_experiment(point);
    for (std::size_t s = 0; s < schemes; ++s) {
      const auto first = records.begin() + static_cast<std::ptrdiff_t>(s * cfg.trials);
      by_scheme[s].push_back(aggregate({first, first + static_cast<std::ptrdiff_t>(cfg.trials)}));
    }
  }
  std::vector<SweepPoint> out;
  for (auto& v : by_scheme) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<TrialRecord> bounds_rows(const ExperimentConfig& cfg) {
  cfg.validate();
  const DemandDistribution q = cfg.demand();
  std::vector<TrialRecord> rows;
  for (const auto& s : cfg.schemes) rows.push_back(analytic_record(cfg, q, resolve_scheme(s, q, cfg), s.label()));
  return rows;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw InvalidArgument("format_number: conversion failed");
  return std::string(buf, ptr);
}

namespace {

template <class T>
void cell(std::ostream& os, const std::optional<T>& v) {
  os << ',';
  if (!v) return;
  if constexpr (std::is_same_v<T, double>) {
    os << format_number(*v);
  } else if constexpr (std::is_same_v<T, bool>) {
    os << (*v ? '1' : '0');
  } else {
    os << *v;
  }
}

void cell(std::ostream& os, double v) { os << ',' << format_number(v); }


}  // namespace

void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& os, const TrialRecord& r) {
  os << r.scheme << ',' << r.delivery << ',' << r.n << ',' << r.m;
  cell(os, r.alpha);
  cell(os, r.M);
  os << ',' << r.B;
  cell(os, r.mtilde);
  cell(os, r.trial);
  os << ',' << r.seed;
  cell(os, r.colors);
  cell(os, r.rate);
  cell(os, r.psi);
  cell(os, r.mbar);
  cell(os, r.psi_tilde);
  cell(os, r.r_ub);
  cell(os, r.r_lb);
  cell(os, r.lfu_nm);
  cell(os, r.decode_ok);
  cell(os, r.elapsed_ms);
}

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  write_csv_header(os);
  for (const auto& r : records) {
    write_csv_row(os, r);
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << kCsvHeader << ",trials,rate_stderr\n";
  for (const auto& p : points) {
    write_csv_row(os, p.summary);
    os << ',' << p.trials;
    cell(os, p.rate_stderr);
    os << '\n';
  }
}

bool any_failed(const std::vector<TrialRecord>& records) noexcept {
  return std::any_of(records.begin(), records.end(), [](const TrialRecord& r) {
    return !r.error.empty() || (r.decode_ok && !*r.decode_ok);
  });
}

}  // namespace codedcache
