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

#include "codedcache/placement.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "codedcache/errors.hpp"
#include "codedcache/numeric.hpp"

namespace codedcache {

void SystemParams::validate() const {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (m < 1) throw InvalidArgument("m must be >= 1");
  if (B < 1) throw InvalidArgument("B must be >= 1");
  if (packet_bits < 8 || packet_bits % 8 != 0) {
    throw InvalidArgument("packet size must be a positive multiple of 8 bits");
  }
  if (!(M >= 0.0) || M > static_cast<double>(m)) throw InvalidArgument("M must lie in [0, m]");
}

CachingDistribution rlfu_distribution(std::size_t m, double M, std::size_t mtilde) {
  if (m == 0) throw InvalidArgument("rlfu_distribution: m must be >= 1");
  if (mtilde == 0 || mtilde > m) {
    throw InvalidArgument("rlfu_distribution: mtilde must lie in [1, m]");
  }
  if (static_cast<double>(mtilde) < M) {
    throw InvalidArgument("rlfu_distribution: mtilde " + std::to_string(mtilde) +
                          " is below the cache size M; p_f would exceed 1/M");
  }
  std::vector<double> p(m, 0.0);
  std::fill_n(p.begin(), mtilde, 1.0 / static_cast<double>(mtilde));
  return CachingDistribution(std::move(p));
}

CachingDistribution uniform_distribution(std::size_t m, double M) { return rlfu_distribution(m, M, m); }

CachingDistribution lfu_distribution(std::size_t m, double M) {
  const auto mtilde = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(M)));
  return rlfu_distribution(m, M, std::min(mtilde, m));
}

void validate_caching_distribution(const CachingDistribution& p, double M) {
  if (p.size() == 0) throw ConstraintViolation("caching distribution is empty", 0);
  CompensatedSum mass;
  const double cap = M > 0.0 ? 1.0 / M : std::numeric_limits<double>::infinity();
  for (std::size_t f = 1; f <= p.size(); ++f) {
    const double pf = p.p(f);
    if (!(pf >= 0.0)) {
      throw ConstraintViolation("p_" + std::to_string(f) + " is negative", f);
    }
    if (pf > cap + 1e-12) {
      std::ostringstream msg;
      msg << "p_" << f << " = " << pf << " exceeds 1/M = " << cap;
      throw ConstraintViolation(msg.str(), f);
    }
    mass.add(pf);
  }
  if (std::fabs(mass.value() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "caching distribution mass " << mass.value() << " != 1";
    throw ConstraintViolation(msg.str(), 0);
  }
}

std::size_t cached_packet_count(double p_f, double M, std::size_t B) {
  const double k = std::round(p_f * M * static_cast<double>(B));
  if (k <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(k), B);
}

CacheConfiguration::CacheConfiguration(std::size_t n, std::size_t m, std::size_t B)
    : n_(n), m_(m), B_(B), sets_(n * m) {
  if (n == 0 || m == 0 || B == 0) throw InvalidArgument("cache configuration dimensions must be >= 1");
}

std::size_t CacheConfiguration::slot(std::size_t u, std::size_t f) const {
  if (u < 1 || u > n_ || f < 1 || f > m_) {
    throw InvalidArgument("cache slot (" + std::to_string(u) + ", " + std::to_string(f) + ") out of range");
  }
  return (u - 1) * m_ + (f - 1);
}

bool CacheConfiguration::contains(std::size_t u, std::size_t f, std::uint32_t b) const {
  const auto& s = sets_[slot(u, f)];
  return std::binary_search(s.begin(), s.end(), b);
}

void CacheConfiguration::assign(std::size_t u, std::size_t f, std::vector<std::uint32_t> packets) {
  std::sort(packets.begin(), packets.end());
  if (std::adjacent_find(packets.begin(), packets.end()) != packets.end()) {
    throw InvalidArgument("cached packet indices must be distinct");
  }
  if (!packets.empty() && (packets.front() < 1 || packets.back() > B_)) {
    throw InvalidArgument("cached packet index outside [1, B]");
  }
  sets_[slot(u, f)] = std::move(packets);
}

std::size_t CacheConfiguration::total_cached(std::size_t u) const {
  std::size_t total = 0;
  for (std::size_t f = 1; f <= m_; ++f) total += sets_[slot(u, f)].size();
  return total;
}

CacheConfiguration sample_cache_configuration(const CachingDistribution& p, const SystemParams& params,
                                              Rng& rng) {
  params.validate();
  if (p.size() != params.m) throw InvalidArgument("caching distribution length differs from m");
  validate_caching_distribution(p, params.M);

  std::vector<std::size_t> k(params.m);
  for (std::size_t f = 1; f <= params.m; ++f) {
    const double exact = p.p(f) * params.M * static_cast<double>(params.B);
    if (exact > static_cast<double>(params.B) + 0.5) {
      throw InvalidArgument("file " + std::to_string(f) + " would cache more than B packets");
    }
    k[f - 1] = cached_packet_count(p.p(f), params.M, params.B);
  }

  CacheConfiguration config(params.n, params.m, params.B);
  // Partial Fisher-Yates over a persistent identity permutation; swaps are
  // undone after each draw so every (u, f) costs O(k_f).
  std::vector<std::uint32_t> perm(params.B);
  std::iota(perm.begin(), perm.end(), 1U);
  std::vector<std::size_t> swaps;
  for (std::size_t u = 1; u <= params.n; ++u) {
    for (std::size_t f = 1; f <= params.m; ++f) {
      const std::size_t kf = k[f - 1];
      if (kf == 0) continue;
      swaps.clear();
      for (std::size_t i = 0; i < kf; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, params.B - 1);
        const std::size_t j = pick(rng);
        std::swap(perm[i], perm[j]);
        swaps.push_back(j);
      }
      std::vector<std::uint32_t> chosen(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(kf));
      for (std::size_t i = kf; i-- > 0;) std::swap(perm[i], perm[swaps[i]]);
      config.assign(u, f, std::move(chosen));
    }
  }
  return config;
}

void write_cache_configuration(std::ostream& os, const CacheConfiguration& c) {
  os << "# cache n=" << c.users() << " m=" << c.files() << " B=" << c.packets_per_file() << '\n';
  for (std::size_t u = 1; u <= c.users(); ++u) {
    for (std::size_t f = 1; f <= c.files(); ++f) {
      os << u << ' ' << f << ' ';
      const auto set = c.cached(u, f);
      if (set.empty()) {
        os << '-';
      } else {
        for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
      }
      os << '\n';
    }
  }
}

CacheConfiguration read_cache_configuration(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("cache file: missing header");
  std::size_t n = 0, m = 0, B = 0;
  if (std::sscanf(line.c_str(), "# cache n=%zu m=%zu B=%zu", &n, &m, &B) != 3) {
    throw InvalidArgument("cache file: malformed header '" + line + "'");
  }
  CacheConfiguration c(n, m, B);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t u = 0, f = 0;
    std::string list;
    if (!(ls >> u >> f >> list)) {
      throw InvalidArgument("cache file line " + std::to_string(lineno) + ": expected 'u f list'");
    }
    std::vector<std::uint32_t> packets;
    if (list != "-") {
      std::istringstream items(list);
      std::string tok;
      while (std::getline(items, tok, ',')) packets.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
    c.assign(u, f, std::move(packets));
  }
  return c;
}

CachingDistribution read_caching_distribution(std::istream& is) {
  std::vector<double> p;
  std::string tok;
  while (is >> tok) {
    std::istringstream items(tok);
    std::string part;
    while (std::getline(items, part, ',')) {
      if (!part.empty()) p.push_back(std::stod(part));
    }
  }
  if (p.empty()) throw InvalidArgument("caching distribution file holds no values");
  return CachingDistribution(std::move(p));
}

}  // namespace codedcache
