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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "codedcache/errors.hpp"
#include "codedcache/numeric.hpp"

namespace codedcache {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of x^a (1-x)^b with 0^0 = 1.
double log_g(double x, std::size_t a, std::size_t b) {
  double lg = 0.0;
  if (a > 0) lg += x > 0.0 ? static_cast<double>(a) * std::log(x) : kNegInf;
  if (b > 0) lg += x < 1.0 ? static_cast<double>(b) * std::log1p(-x) : kNegInf;
  return lg;
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

void check_level(std::size_t l, std::size_t n) {
  if (l < 1 || l > n) throw InvalidArgument("level l must lie in [1, n]");
}

struct FileGroup {
  double x = 0.0;       // p_f M
  double mass = 0.0;    // total demand probability of the group
};

}  // namespace

std::size_t LowerBoundGrid::stride_for(std::size_t m) const noexcept {
  if (ell_stride > 0) return ell_stride;
  return m <= 512 ? 1 : (m + 511) / 512;
}

double mbar(const DemandDistribution& q, std::size_t n) {
  if (n == 0) throw InvalidArgument("mbar: n must be >= 1");
  CompensatedSum s;
  const double dn = static_cast<double>(n);
  for (double qf : q.probabilities()) {
    if (qf >= 1.0) {
      s.add(1.0);
    } else {
      s.add(-std::expm1(dn * std::log1p(-qf)));
    }
  }
  return s.value();
}

double g_value(double p_f, double M, std::size_t l, std::size_t n) {
  check_level(l, n);
  const double x = clamp_unit(p_f * M);
  const std::size_t a = l - 1;
  const std::size_t b = n - l + 1;
  if (n > 64) return std::exp(log_g(x, a, b));
  const double left = a == 0 ? 1.0 : std::pow(x, static_cast<double>(a));
  const double right = std::pow(1.0 - x, static_cast<double>(b));
  return left * right;
}

std::vector<double> rho(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n,
                        std::size_t l, TieRule ties) {
  check_level(l, n);
  const std::size_t m = q.size();
  if (p.size() != m) throw InvalidArgument("rho: caching and demand distributions differ in length");
  std::vector<double> lg(m);
  for (std::size_t f = 0; f < m; ++f) lg[f] = log_g(clamp_unit(p.p(f + 1) * M), l - 1, n - l + 1);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lg[a] < lg[b]; });

  std::vector<double> out(m, 0.0);
  const double dl = static_cast<double>(l);
  CompensatedSum below;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    CompensatedSum cls;
    while (j < m && lg[order[j]] == lg[order[i]]) cls.add(q.q(order[j++] + 1));
    const double lt = below.value();
    below.add(cls.value());
    const double le = std::min(below.value(), 1.0);
    // Tied members are order[i..j) in ascending index order (stable sort).
    const std::size_t winner = ties == TieRule::kLowestIndex ? order[i] : order[j - 1];
    out[winner] = std::pow(le, dl) - std::pow(lt, dl);
    i = j;
  }
  return out;
}

double psi(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n) {
  if (n == 0) throw InvalidArgument("psi: n must be >= 1");
  if (p.size() != q.size()) throw InvalidArgument("psi: caching and demand distributions differ in length");
  validate_caching_distribution(p, M);

  // Collapse files with identical p_f: they share g_l at every level.
  std::vector<FileGroup> groups;
  {
    std::vector<std::size_t> order(q.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.p(a + 1) < p.p(b + 1); });
    for (std::size_t idx : order) {
      const double x = clamp_unit(p.p(idx + 1) * M);
      if (groups.empty() || groups.back().x != x) groups.push_back(FileGroup{x, 0.0});
      groups.back().mass += q.q(idx + 1);
    }
  }

  CompensatedSum total;
  std::vector<std::pair<double, double>> level;  // (log g, mass)
  level.reserve(groups.size());
  for (std::size_t l = 1; l <= n; ++l) {
    level.clear();
    for (const auto& grp : groups) level.emplace_back(log_g(grp.x, l - 1, n - l + 1), grp.mass);
    std::sort(level.begin(), level.end());
    const double log_c = log_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(l));
    const double dl = static_cast<double>(l);
    CompensatedSum below;
    for (std::size_t i = 0; i < level.size();) {
      std::size_t j = i;
      CompensatedSum cls;
      while (j < level.size() && level[j].first == level[i].first) cls.add(level[j++].second);
      const double lt = below.value();
      below.add(cls.value());
      const double le = std::min(below.value(), 1.0);
      const double r = std::pow(le, dl) - std::pow(lt, dl);
      if (level[i].first != kNegInf && r > 0.0) total.add(r * std::exp(log_c + level[i].first));
      i = j;
    }
  }
  return total.value();
}

double psi_per_file(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n,
                    TieRule ties) {
  validate_caching_distribution(p, M);
  CompensatedSum total;
  for (std::size_t l = 1; l <= n; ++l) {
    const auto r = rho(q, p, M, n, l, ties);
    const double c = std::exp(log_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(l)));
    for (std::size_t f = 1; f <= q.size(); ++f) {
      if (r[f - 1] != 0.0) total.add(c * r[f - 1] * g_value(p.p(f), M, l, n));
    }
  }
  return total.value();
}

double psi_tilde(const DemandDistribution& q, std::size_t mtilde, double M, std::size_t n) {
  if (mtilde < 1 || mtilde > q.size()) throw InvalidArgument("psi_tilde: mtilde must lie in [1, m]");
  if (static_cast<double>(mtilde) < M) {
    throw InvalidArgument("psi_tilde: mtilde " + std::to_string(mtilde) + " is below M");
  }
  const double G = prefix_mass(q, mtilde);
  const double dn = static_cast<double>(n);
  const double tail = dn * (1.0 - G);
  if (M <= 0.0) return dn * G + tail;  // M -> 0 limit of the first term is nG
  const double mt = static_cast<double>(mtilde);
  const double exponent = dn * G;
  double coded = 0.0;
  if (exponent > 0.0) {
    const double ratio = M / mt;
    const double miss = ratio >= 1.0 ? 0.0 : std::exp(exponent * std::log1p(-ratio));
    coded = std::max(mt / M - 1.0, 0.0) * (1.0 - miss);
  }
  return coded + tail;
}

double rate_upper_bound(const DemandDistribution& q, std::size_t mtilde, double M, std::size_t n) {
  if (M >= static_cast<double>(q.size())) return 0.0;
  return std::min(psi_tilde(q, mtilde, M, n), mbar(q, n));
}

LfuNmRate lfu_nm(const DemandDistribution& q, double M, std::size_t n) {
  if (n == 0) throw InvalidArgument("lfu_nm: n must be >= 1");
  if (!(M >= 0.0)) throw InvalidArgument("lfu_nm: M must be non-negative");
  const std::size_t m = q.size();
  if (M >= static_cast<double>(m)) return {};
  const auto full = static_cast<std::size_t>(std::floor(M));
  const double frac = M - static_cast<double>(full);
  const double dn = static_cast<double>(n);
  CompensatedSum s;
  for (std::size_t f = full + 1; f <= m; ++f) {
    const double qf = q.q(f);
    double term = qf >= 1.0 ? 1.0 : -std::expm1(dn * std::log1p(-qf));
    if (f == full + 1 && frac > 0.0) term *= 1.0 - frac;
    s.add(term);
  }
  return {s.value(), frac > 0.0};
}

double expected_distinct(std::size_t l, double r) {
  if (l == 0) throw InvalidArgument("expected_distinct: l must be >= 1");
  if (l == 1) return r > 0.0 ? 1.0 : 0.0;
  const double dl = static_cast<double>(l);
  return -dl * std::expm1(r * std::log1p(-1.0 / dl));
}

namespace {

double p1_unchecked(double r, double mean) {
  const double d = mean - r;
  return -std::expm1(-(d * d) / (2.0 * mean));
}

double p2_unchecked(double mean, double z_tilde) {
  const double d = mean - z_tilde;
  return -std::expm1(-(d * d) / (2.0 * mean));
}

}  // namespace

double p1(std::size_t l, double r, std::size_t n, double q_l) {
  const double mean = static_cast<double>(n) * static_cast<double>(l) * q_l;
  if (!(r > 0.0) || r > mean) throw InvalidArgument("p1: r must lie in (0, n l q_l]");
  return p1_unchecked(r, mean);
}

double p2(std::size_t l, double r, double z_tilde) {
  if (!(r > 0.0)) throw InvalidArgument("p2: r must be positive");
  const double mean = expected_distinct(l, r);
  if (!(z_tilde > 0.0) || z_tilde > mean) throw InvalidArgument("p2: z_tilde must lie in (0, E[Z]]");
  return p2_unchecked(mean, z_tilde);
}

double rate_lower_bound(const DemandDistribution& q, double M, std::size_t n, const LowerBoundGrid& grid) {
  if (n == 0) throw InvalidArgument("rate_lower_bound: n must be >= 1");
  if (grid.r_points == 0 || grid.z_tilde_points == 0) throw InvalidArgument("lower-bound grid counts must be >= 1");
  const std::size_t m = q.size();
  if (M >= static_cast<double>(m)) return 0.0;

  const std::size_t stride = grid.stride_for(m);
  std::vector<std::size_t> levels;
  for (std::size_t l = 1; l <= m; l += stride) levels.push_back(l);
  if (levels.back() != m) levels.push_back(m);

  const double nr = static_cast<double>(grid.r_points);
  const double nz = static_cast<double>(grid.z_tilde_points);
  double best = 0.0;
  std::vector<double> inner;  // inner[c] = max_{z <= c} z (1 - M / floor(l / z))
  for (std::size_t l : levels) {
    const double mean_r = static_cast<double>(n) * static_cast<double>(l) * q.q(l);
    if (!(mean_r > 0.0)) continue;

    inner.assign(l + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t z = 1; z <= l; ++z) {
      const double blocks = static_cast<double>(l / z);
      inner[z] = std::max(inner[z - 1], static_cast<double>(z) * (1.0 - M / blocks));
    }
    const double single = 1.0 - M / static_cast<double>(l);

    // r_k = mean_r * exp(-span * k / r_points): nested under doubling.
    const double r_floor = std::min(1e-3, mean_r);
    const double span = std::log(mean_r / r_floor);
    for (std::size_t k = 0; k < grid.r_points; ++k) {
      const double r = mean_r * std::exp(-span * static_cast<double>(k) / nr);
      const double f1 = p1_unchecked(r, mean_r);
      if (f1 <= 0.0) continue;
      const double e_r = expected_distinct(l, r);
      const double z_max = std::min(r, e_r);
      for (std::size_t j = 1; j <= grid.z_tilde_points; ++j) {
        const double zt = z_max * static_cast<double>(j) / nz;
        if (zt >= 1.0 && r >= 1.0) {
          const auto c = std::min<std::size_t>(l, static_cast<std::size_t>(std::ceil(zt)));
          best = std::max(best, f1 * p2_unchecked(e_r, zt) * inner[c]);
        } else if (zt < 1.0) {
          // r = 1 draw: E[Z] = 1.
          best = std::max(best, f1 * p2_unchecked(1.0, zt) * single);
        }
      }
    }
  }
  return std::max(best, 0.0);
}

BoundsReport bounds_report(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n,
                           std::optional<std::size_t> mtilde, const LowerBoundGrid& grid) {
  BoundsReport r;
  const bool trivial = M >= static_cast<double>(q.size());
  r.mbar = mbar(q, n);
  r.psi = trivial ? 0.0 : psi(q, p, M, n);
  if (mtilde) {
    r.psi_tilde = trivial ? 0.0 : psi_tilde(q, *mtilde, M, n);
    r.r_ub = trivial ? 0.0 : std::min(*r.psi_tilde, r.mbar);
  }
  const LfuNmRate lfu = lfu_nm(q, M, n);
  r.lfu_nm = lfu.rate;
  r.lfu_nm_interpolated = lfu.interpolated;
  r.r_lb = rate_lower_bound(q, M, n, grid);
  return r;
}

}  // namespace codedcache
