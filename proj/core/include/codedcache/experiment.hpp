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
#include <optional>
#include <string>
#include <vector>

#include "codedcache/bounds.hpp"
#include "codedcache/config.hpp"
#include "codedcache/placement.hpp"

namespace codedcache {

// One CSV row. Optional fields print as empty cells.
struct TrialRecord {
  std::string scheme;
  std::string delivery;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> alpha;
  double M = 0.0;
  std::size_t B = 0;
  std::optional<std::size_t> mtilde;
  std::optional<std::size_t> trial;
  std::uint64_t seed = 0;
  std::optional<double> colors;
  std::optional<double> rate;  // colors / B
  std::optional<double> psi;
  std::optional<double> mbar;
  std::optional<double> psi_tilde;
  std::optional<double> r_ub;
  std::optional<double> r_lb;
  std::optional<double> lfu_nm;
  std::optional<bool> decode_ok;
  std::optional<double> elapsed_ms;
  std::string error;  // not part of the CSV; set when the trial failed
};

// Mean and standard error over the trials of one (scheme, M) point.
struct SweepPoint {
  TrialRecord summary;   // trial empty, colors/rate hold the means
  std::size_t trials = 0;
  std::optional<double> rate_stderr;
  std::size_t failures = 0;
};

// Placement resolved from a scheme tag for one (q, M, n).
struct ResolvedScheme {
  CachingDistribution p;
  std::optional<std::size_t> mtilde;
  DeliveryKind delivery = DeliveryKind::kGcc;
  std::string delivery_label;
};

ResolvedScheme resolve_scheme(const SchemeSpec& scheme, const DemandDistribution& q, const ExperimentConfig& cfg);

// Trials for every configured scheme at params.M, scheme-major then trial order.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

// run_experiment per (M, scheme) over M_sweep, aggregated per point.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg);

// Analytic rows only (colors, rate, trial empty), one per scheme.
std::vector<TrialRecord> bounds_rows(const ExperimentConfig& cfg);

SweepPoint aggregate(const std::vector<TrialRecord>& records);

inline constexpr const char* kCsvHeader =
    "scheme,delivery,n,m,alpha,M,B,mtilde,trial,seed,colors,rate,psi,mbar,psi_tilde,r_ub,r_lb,lfu_nm,"
    "decode_ok,elapsed_ms";

// Shortest round-trip decimal form.
std::string format_number(double v);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const TrialRecord& r);
void write_csv(std::ostream& os, const std::vector<TrialRecord>& records);
// Sweep rows append trials and rate_stderr after the common columns.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

bool any_failed(const std::vector<TrialRecord>& records) noexcept;

}  // namespace codedcache
