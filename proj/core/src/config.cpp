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

#include "codedcache/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "codedcache/errors.hpp"

namespace codedcache {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_integer(std::string_view key, std::string_view text) {
  T value{};
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("'" + std::string(key) + "' expects a boolean, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(trim(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace

SchemeSpec SchemeSpec::parse(std::string_view text) {
  text = trim(text);
  SchemeSpec s;
  if (text == "up") {
    s.kind = Kind::kUniform;
  } else if (text == "lfu") {
    s.kind = Kind::kLfu;
  } else if (text == "lfu-nm") {
    s.kind = Kind::kLfuNm;
  } else if (text == "rlfu:auto") {
    s.kind = Kind::kRlfuAuto;
  } else if (text.starts_with("rlfu:")) {
    s.kind = Kind::kRlfu;
    s.mtilde = parse_integer<std::size_t>("scheme", text.substr(5));
    if (s.mtilde == 0) throw ConfigError("rlfu cutoff must be >= 1");
  } else if (text.starts_with("rap:") && text.size() > 4) {
    s.kind = Kind::kRap;
    s.path = std::string(text.substr(4));
  } else {
    throw ConfigError("unknown scheme '" + std::string(text) + "' (up | lfu | lfu-nm | rlfu:<k> | rlfu:auto | rap:<file>)");
  }
  return s;
}

std::string SchemeSpec::label() const {
  switch (kind) {
    case Kind::kUniform: return "up";
    case Kind::kLfu: return "lfu";
    case Kind::kLfuNm: return "lfu-nm";
    case Kind::kRlfu: return "rlfu:" + std::to_string(mtilde);
    case Kind::kRlfuAuto: return "rlfu:auto";
    case Kind::kRap: return "rap";
  }
  return "unknown";
}

DeliveryKind parse_delivery(std::string_view text) {
  text = trim(text);
  if (text == "gcc") return DeliveryKind::kGcc;
  if (text == "gcc1") return DeliveryKind::kGcc1;
  if (text == "gcc2") return DeliveryKind::kGcc2;
  if (text == "exact") return DeliveryKind::kExact;
  throw ConfigError("unknown delivery '" + std::string(text) + "' (gcc | gcc1 | gcc2 | exact)");
}

std::string_view to_string(DeliveryKind d) noexcept {
  switch (d) {
    case DeliveryKind::kGcc: return "gcc";
    case DeliveryKind::kGcc1: return "gcc1";
    case DeliveryKind::kGcc2: return "gcc2";
    case DeliveryKind::kExact: return "exact";
  }
  return "unknown";
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) out.push_back(parse_real("list", item));
  return out;
}

DemandDistribution ExperimentConfig::demand() const {
  if (!q.empty()) return DemandDistribution(q);
  return zipf_distribution(params.m, alpha.value_or(0.0));
}

void ExperimentConfig::validate() const {
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (schemes.empty()) throw ConfigError("at least one scheme is required");
  if (!q.empty() && alpha) throw ConfigError("give either alpha or q, not both");
  if (!q.empty() && q.size() != params.m) throw ConfigError("q has " + std::to_string(q.size()) + " entries, m is " + std::to_string(params.m));
  if (alpha && !(*alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
  for (const auto& s : schemes) {
    if (s.kind == SchemeSpec::Kind::kRlfu && s.mtilde > params.m) throw ConfigError("rlfu cutoff exceeds m");
  }
  for (double M : M_sweep) {
    if (!(M >= 0.0) || M > static_cast<double>(params.m)) throw ConfigError("M_sweep values must lie in [0, m]");
  }
  if (params.packet_bits < 8 || params.packet_bits % 8 != 0) throw ConfigError("packet size must be a positive whole number of bytes");
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "n") {
    cfg.params.n = parse_integer<std::size_t>(key, value);
  } else if (key == "m") {
    cfg.params.m = parse_integer<std::size_t>(key, value);
  } else if (key == "M") {
    cfg.params.M = parse_real(key, value);
  } else if (key == "B") {
    cfg.params.B = parse_integer<std::size_t>(key, value);
  } else if (key == "packet_bytes") {
    cfg.params.packet_bits = 8 * parse_integer<std::size_t>(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_real(key, value);
    cfg.q.clear();
  } else if (key == "q") {
    cfg.q = parse_number_list(value);
    cfg.alpha.reset();
  } else if (key == "scheme" || key == "schemes") {
    cfg.schemes.clear();
    for (auto item : split(value, ',')) cfg.schemes.push_back(SchemeSpec::parse(item));
  } else if (key == "delivery") {
    cfg.delivery = parse_delivery(value);
  } else if (key == "trials") {
    cfg.trials = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    cfg.base_seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "M_sweep") {
    cfg.M_sweep = parse_number_list(value);
  } else if (key == "demand_rounds") {
    cfg.demand_rounds = parse_integer<std::size_t>(key, value);
  } else if (key == "enumeration_limit") {
    cfg.enumeration_limit = parse_integer<std::size_t>(key, value);
  } else if (key == "verify") {
    cfg.verify = parse_bool(key, value);
  } else if (key == "fix_cache") {
    cfg.fix_cache = parse_bool(key, value);
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, value);
  } else if (key == "lower_bound") {
    cfg.lower_bound = parse_bool(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_integer<std::size_t>(key, value);
  } else if (key == "exact_limit") {
    cfg.exact_vertex_limit = parse_integer<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::istream& is, ExperimentConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    try {
      apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

}  // namespace codedcache
