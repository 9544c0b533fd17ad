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

#include "codedcache/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "codedcache/bounds.hpp"
#include "codedcache/errors.hpp"

namespace codedcache {

std::size_t min_mtilde(std::size_t m, double M) {
  const double lo = std::ceil(std::max(M, 1.0));
  return std::min(m, static_cast<std::size_t>(lo));
}

MtildeChoice optimize_mtilde(const DemandDistribution& q, double M, std::size_t n) {
  const std::size_t m = q.size();
  if (M > static_cast<double>(m)) throw InvalidArgument("optimize_mtilde: M exceeds m");
  if (M >= static_cast<double>(m)) return {m, 0.0};
  MtildeChoice best{0, 0.0};
  const double cap = mbar(q, n);
  for (std::size_t mt = min_mtilde(m, M); mt <= m; ++mt) {
    const double value = std::min(psi_tilde(q, mt, M, n), cap);
    if (best.mtilde == 0 || value < best.objective) best = {mt, value};
  }
  return best;
}

namespace {

std::size_t clamp_mtilde(double value, std::size_t m, double M) {
  const double lo = static_cast<double>(min_mtilde(m, M));
  const double v = std::clamp(std::ceil(value), lo, static_cast<double>(m));
  return static_cast<std::size_t>(v);
}

}  // namespace

std::size_t mtilde_closed_form_alpha_lt1(std::size_t n, std::size_t m, double M, double alpha) {
  if (!(alpha >= 0.0) || alpha >= 1.0) throw InvalidArgument("closed-form cutoff needs 0 <= alpha < 1");
  if (m == 0) throw InvalidArgument("m must be >= 1");
  if (alpha == 0.0) return m;
  const double dm = static_cast<double>(m);
  const double inner = static_cast<double>(n) * (1.0 - alpha) * M / dm;
  const double raw = std::pow(inner, 1.0 / alpha) * dm;
  const double v = std::min(std::max(raw, M), dm);
  const double lo = static_cast<double>(min_mtilde(m, M));
  return static_cast<std::size_t>(std::clamp(std::round(v), lo, dm));
}

RegimeReport regime_mtilde(std::size_t n, std::size_t m, double M, double alpha, std::optional<double> rho) {
  if (alpha == 1.0) throw InvalidArgument("regime_mtilde: alpha = 1 is not covered by the scaling analysis");
  if (!(alpha >= 0.0)) throw InvalidArgument("regime_mtilde: alpha must be non-negative");
  if (n == 0 || m == 0) throw InvalidArgument("regime_mtilde: n and m must be >= 1");

  RegimeReport rep;
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  auto finish = [&](std::string regime, double value, std::string rationale) {
    rep.regime = std::move(regime);
    rep.mtilde = clamp_mtilde(value, m, M);
    rep.rationale = std::move(rationale);
    return rep;
  };

  if (alpha < 1.0) {
    rep.refined_mtilde = mtilde_closed_form_alpha_lt1(n, m, M, alpha);
    return finish("alpha<1", dm, "alpha<1: RLFU with mtilde = m (uniform placement) is order-optimal");
  }

  const double m_alpha = std::pow(dm, alpha);
  const double density = rho.value_or(dn / m_alpha);  // n ~ density * m^alpha
  const double inv = 1.0 / alpha;

  if (density >= 1.0) {
    return finish("alpha>1, n=omega(m^alpha) or n=Theta(m^alpha) with rho>=1", dm,
                  "dense users: uniform placement; surrogate n >= m^alpha");
  }
  if (M >= m_alpha / dn) {
    return finish("alpha>1, M>=m^alpha/n", dm, "large cache: uniform placement once M >= m^alpha/n");
  }

  // For 0 < rho < 1 the Theta(m^alpha) prescriptions rho^{1/a} m and
  // (rho M)^{1/a} m coincide with n^{1/a} and (M n)^{1/a}.
  constexpr double kThetaFloor = 1e-2;
  const bool theta = density >= kThetaFloor;
  const std::string band = theta ? "n=Theta(m^alpha), 0<rho<1" : "n=o(m^alpha)";
  const std::string cite = theta ? "n=Theta(m^alpha)" : "n=o(m^alpha)";
  const std::string surrogate = theta ? "surrogate rho=n/m^alpha in [0.01,1)" : "surrogate n/m^alpha < 0.01";

  if (M < 1.0) {
    return finish("alpha>1, " + band + ", M<1", std::pow(dn, inv),
                  cite + ": mtilde = n^{1/alpha} (rate ~ 2 n^{1/alpha}); " + surrogate);
  }

  const double popular = std::pow(M * dn, inv);  // M^{1/a} n^{1/a}
  const bool few_users = !theta && dn < std::pow(dm, alpha - 1.0);
  if (!few_users) {
    return finish("alpha>1, " + band + ", 1<=M<m^alpha/n", popular,
                  cite + ": mtilde = M^{1/alpha} n^{1/alpha}; " + surrogate);
  }

  // n = o(m^{alpha-1}): compare M with n^{1/(alpha-1)}, where the two
  // prescriptions meet. A factor-2 band around it is left to the tables.
  const double knee = std::pow(dn, 1.0 / (alpha - 1.0));
  constexpr double kBand = 2.0;
  const std::string tail = "; surrogates n < m^{alpha-1}, knee n^{1/(alpha-1)} = " + std::to_string(knee);
  if (M < knee / kBand) {
    return finish("alpha>1, n=o(m^{alpha-1}), 1<=M=o(n^{1/(alpha-1)})", popular,
                  "few users: mtilde = M^{1/alpha} n^{1/alpha}" + tail);
  }
  if (M > knee * kBand) {
    return finish("alpha>1, n=o(m^{alpha-1}), M=omega(n^{1/(alpha-1)})", M,
                  "few users: LFU, mtilde = M" + tail);
  }
  return finish("alpha>1, n=o(m^{alpha-1}), M=Theta(n^{1/(alpha-1)})", std::max(M, popular),
                "few users, boundary band: either M^{1/alpha} n^{1/alpha} or M per the sub-case table; "
                "returning the larger" + tail);
}

double placement_objective(const DemandDistribution& q, const CachingDistribution& p, double M, std::size_t n) {
  return std::min(psi(q, p, M, n), mbar(q, n));
}

namespace {

constexpr int kGridSteps = 24;

// Every composition of kGridSteps into m parts, each part <= cap.
void enumerate_grid(std::size_t m, int cap, std::vector<int>& parts, std::size_t idx, int left,
                    const std::function<bool(const std::vector<int>&)>& visit, bool& stop) {
  if (stop) return;
  if (idx + 1 == m) {
    if (left <= cap) {
      parts[idx] = left;
      if (!visit(parts)) stop = true;
    }
    return;
  }
  const int remaining_slots = static_cast<int>(m - idx - 1);
  for (int v = std::min(cap, left); v >= 0 && !stop; --v) {
    if (left - v > remaining_slots * cap) break;
    parts[idx] = v;
    enumerate_grid(m, cap, parts, idx + 1, left - v, visit, stop);
  }
}

}  // namespace

PlacementSearchResult optimize_caching_distribution(const DemandDistribution& q, double M, std::size_t n,
                                                    std::size_t budget, Rng& rng) {
  const std::size_t m = q.size();
  if (budget == 0) throw InvalidArgument("optimize_caching_distribution: budget must be >= 1");
  if (M > static_cast<double>(m)) throw InvalidArgument("optimize_caching_distribution: M exceeds m");

  PlacementSearchResult best;
  best.converged = true;
  bool have = false;
  auto consider = [&](std::vector<double> p) -> bool {
    if (best.evaluations >= budget) {
      best.converged = false;
      return false;
    }
    ++best.evaluations;
    CachingDistribution cand(std::move(p));
    const double obj = placement_objective(q, cand, M, n);
    if (!have || obj < best.objective) {
      best.p = std::move(cand);
      best.objective = obj;
      have = true;
    }
    return true;
  };

  if (m == 1) {
    consider({1.0});
    return best;
  }

  for (std::size_t mt = min_mtilde(m, M); mt <= m; ++mt) {
    const auto seed = rlfu_distribution(m, M, mt);
    if (!consider(std::vector<double>(seed.values().begin(), seed.values().end()))) return best;
  }

  // Grid points k/24 with k_f <= 24/M. When the grid outgrows half of the
  // remaining budget, points are kept by a seeded Bernoulli draw.
  const int cap = M > 1.0 ? static_cast<int>(std::floor(kGridSteps / M + 1e-9)) : kGridSteps;
  if (static_cast<double>(cap) * static_cast<double>(m) >= kGridSteps) {
    std::vector<std::vector<double>> ways(m + 1, std::vector<double>(kGridSteps + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t i = 1; i <= m; ++i) {
      for (int t = 0; t <= kGridSteps; ++t) {
        for (int v = 0; v <= std::min(cap, t); ++v) ways[i][t] += ways[i - 1][t - v];
      }
    }
    const double points = ways[m][kGridSteps];
    const double share = static_cast<double>(budget - best.evaluations) / 2.0;
    const double keep = points <= share ? 1.0 : share / points;
    std::bernoulli_distribution take(std::min(keep, 1.0));
    std::vector<int> parts(m, 0);
    bool stop = false;
    enumerate_grid(m, cap, parts, 0, kGridSteps, [&](const std::vector<int>& k) {
      if (keep < 1.0 && !take(rng)) return true;
      std::vector<double> p(m);
      for (std::size_t f = 0; f < m; ++f) p[f] = static_cast<double>(k[f]) / kGridSteps;
      return consider(std::move(p));
    }, stop);
    if (stop) return best;
  }

  // Pairwise mass transfer.
  const double cap_p = M > 0.0 ? 1.0 / M : std::numeric_limits<double>::infinity();
  std::vector<double> current(best.p.values().begin(), best.p.values().end());
  for (double eps = 1.0 / kGridSteps; eps >= 1e-4; eps /= 2.0) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (i == j || current[i] + eps > cap_p + 1e-12 || current[j] - eps < -1e-15) continue;
          std::vector<double> cand = current;
          cand[i] += eps;
          cand[j] = std::max(0.0, cand[j] - eps);
          const double before = best.objective;
          if (!consider(cand)) return best;
          if (best.objective < before) {
            current = std::move(cand);
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace codedcache
