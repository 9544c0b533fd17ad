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

#include "codedcache/example1.hpp"

#include <algorithm>
#include <chrono>

#include "codedcache/coloring.hpp"
#include "codedcache/conflict_graph.hpp"
#include "codedcache/delivery.hpp"

namespace codedcache {

SystemParams example1_params() {
  SystemParams p;
  p.n = 3;
  p.m = 3;
  p.M = 1.0;
  p.B = 3;
  return p;
}

CachingDistribution example1_distribution() { return CachingDistribution({2.0 / 3.0, 1.0 / 3.0, 0.0}); }

CacheConfiguration example1_cache() {
  CacheConfiguration c(3, 3, 3);
  c.assign(1, 1, {1, 2});
  c.assign(1, 2, {1});
  c.assign(2, 1, {1, 3});
  c.assign(2, 2, {2});
  c.assign(3, 1, {1, 2});
  c.assign(3, 2, {3});
  return c;
}

DemandVector example1_demand() { return DemandVector{{1, 2, 3}}; }

TrialRecord run_example1(DeliveryKind delivery, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  const SystemParams params = example1_params();
  const CacheConfiguration cache = example1_cache();
  const PacketDemand demand = packet_demand(cache, example1_demand(), params);
  const ConflictGraph g = build_conflict_graph(cache, demand);

  Coloring c;
  switch (delivery) {
    case DeliveryKind::kGcc: c = gcc(g); break;
    case DeliveryKind::kGcc1: c = gcc1(g); break;
    case DeliveryKind::kGcc2: c = gcc2(g); break;
    case DeliveryKind::kExact: c = exact_chromatic(g); break;
  }
  validate_coloring(g, c);

  const Library library(params.m, params.B, params.packet_bits / 8, 1);
  const Codeword cw = encode(c, g, library);
  bool ok = true;
  for (std::size_t u = 1; u <= params.n; ++u) {
    const UserCache uc(u, cache, library);
    const auto decoded = decode(u, cw, uc, demand);
    ok = ok && decoded.size() == demand.user(u).packets.size();
    for (const auto& d : decoded) {
      const auto want = library.packet(d.id);
      ok = ok && std::equal(want.begin(), want.end(), d.payload.begin(), d.payload.end());
    }
  }

  TrialRecord r;
  r.scheme = "fixture";
  r.delivery = std::string(to_string(delivery));
  r.n = params.n;
  r.m = params.m;
  r.M = params.M;
  r.B = params.B;
  r.trial = 0;
  r.seed = 1;
  r.colors = static_cast<double>(c.colors());
  r.rate = *r.colors / static_cast<double>(params.B);
  r.decode_ok = ok;
  if (timing) {
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace codedcache
