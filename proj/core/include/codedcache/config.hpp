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
#include <string_view>
#include <vector>

#include "codedcache/delivery.hpp"
#include "codedcache/demand.hpp"
#include "codedcache/placement.hpp"

namespace codedcache {

// Placement scheme tag: up | lfu | lfu-nm | rlfu:<mtilde> | rlfu:auto | rap:<file>.
// lfu-nm pairs LFU placement with naive multicast of the distinct missing packets.
struct SchemeSpec {
  enum class Kind { kUniform, kLfu, kLfuNm, kRlfu, kRlfuAuto, kRap };

  Kind kind = Kind::kUniform;
  std::size_t mtilde = 0;  // kRlfu only
  std::string path;        // kRap only

  static SchemeSpec parse(std::string_view text);
  [[nodiscard]] std::string label() const;
  [[nodiscard]] bool is_rlfu_family() const noexcept { return kind != Kind::kRap; }
};

enum class DeliveryKind { kGcc, kGcc1, kGcc2, kExact };

DeliveryKind parse_delivery(std::string_view text);
std::string_view to_string(DeliveryKind d) noexcept;

struct ExperimentConfig {
  SystemParams params;
  std::optional<double> alpha;            // Zipf exponent, or
  std::vector<double> q;                  // an explicit demand pmf
  std::vector<SchemeSpec> schemes{SchemeSpec{}};
  DeliveryKind delivery = DeliveryKind::kGcc;
  std::size_t trials = 1;
  std::uint64_t base_seed = 1;
  std::vector<double> M_sweep;
  // Demand vectors averaged per cache realization; 0 enumerates all m^n
  // vectors and weights them exactly (conditional rate given the cache).
  std::size_t demand_rounds = 1;
  std::size_t enumeration_limit = 1'000'000;
  bool verify = false;
  bool fix_cache = false;
  bool timing = false;
  bool lower_bound = true;
  std::size_t threads = 0;  // 0 = hardware concurrency
  std::size_t exact_vertex_limit = 64;

  [[nodiscard]] DemandDistribution demand() const;
  // Throws ConfigError on any inconsistency.
  void validate() const;
};

// Applies one key=value setting; unknown keys and bad values raise ConfigError.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Flat key=value text, '#' comments, blank lines ignored.
ExperimentConfig parse_config(std::istream& is, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

std::vector<double> parse_number_list(std::string_view text);

}  // namespace codedcache
