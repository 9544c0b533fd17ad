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

#include "codedcache/conflict_graph.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "codedcache/errors.hpp"
#include "codedcache/random.hpp"

namespace codedcache {
namespace {

std::uint64_t user_key(std::uint32_t u) { return splitmix64(0xC0DEDCAC4EULL ^ u); }

bool holds(std::span<const std::uint32_t> sorted, std::uint32_t u) {
  return std::binary_search(sorted.begin(), sorted.end(), u);
}

}  // namespace

std::size_t PacketDemand::total_packets() const noexcept {
  std::size_t total = 0;
  for (const auto& d : per_user) total += d.packets.size();
  return total;
}

PacketDemand packet_demand(const CacheConfiguration& cache, const DemandVector& demand,
                           const SystemParams& params) {
  if (demand.users() != params.n || cache.users() != params.n || cache.files() != params.m ||
      cache.packets_per_file() != params.B) {
    throw InvalidArgument("packet_demand: cache, demand and parameters disagree in size");
  }
  PacketDemand q;
  q.per_user.resize(params.n);
  for (std::size_t u = 1; u <= params.n; ++u) {
    const std::uint32_t f = demand.file_of(u);
    if (f < 1 || f > params.m) throw InvalidArgument("demand vector entry out of range");
    auto& d = q.per_user[u - 1];
    d.file = f;
    const auto cached = cache.cached(u, f);
    d.packets.reserve(params.B - cached.size());
    std::size_t c = 0;
    for (std::uint32_t b = 1; b <= params.B; ++b) {
      if (c < cached.size() && cached[c] == b) {
        ++c;
      } else {
        d.packets.push_back(b);
      }
    }
  }
  return q;
}

CacheIndex::CacheIndex(const CacheConfiguration& cache)
    : n_(cache.users()), B_(cache.packets_per_file()), by_file_(cache.files()) {
  for (std::uint32_t f = 1; f <= cache.files(); ++f) index_file(cache, f);
}

CacheIndex::CacheIndex(const CacheConfiguration& cache, std::span<const std::uint32_t> files)
    : n_(cache.users()), B_(cache.packets_per_file()), by_file_(cache.files()) {
  for (std::uint32_t f : files) {
    if (f < 1 || f > cache.files()) throw InvalidArgument("CacheIndex: file out of range");
    if (by_file_[f - 1].empty()) index_file(cache, f);
  }
}

void CacheIndex::index_file(const CacheConfiguration& cache, std::uint32_t f) {
  auto& per_packet = by_file_[f - 1];
  per_packet.assign(B_, {});
  for (std::uint32_t u = 1; u <= n_; ++u) {
    for (std::uint32_t b : cache.cached(u, f)) per_packet[b - 1].push_back(u);
  }
}

std::span<const std::uint32_t> CacheIndex::cachers(PacketId p) const {
  const auto& per_packet = by_file_.at(p.file - 1);
  if (per_packet.empty()) return {};
  return per_packet.at(p.packet - 1);
}

bool ConflictGraph::adjacent(std::size_t a, std::size_t b) const {
  const Vertex& va = vertices_[a];
  const Vertex& vb = vertices_[b];
  if (va.slot == vb.slot) return false;
  return !holds(etas_[vb.slot], va.mu) || !holds(etas_[va.slot], vb.mu);
}

bool ConflictGraph::same_user_label(std::size_t a, std::size_t b) const {
  if (label_hash_[a] != label_hash_[b]) return false;
  const Vertex& va = vertices_[a];
  const Vertex& vb = vertices_[b];
  const auto& ea = etas_[va.slot];
  const auto& eb = etas_[vb.slot];
  if (ea.size() != eb.size()) return false;
  if (va.mu == vb.mu) return ea == eb;
  // {mu_a} u eta_a == {mu_b} u eta_b with mu never in its own eta.
  if (!holds(ea, vb.mu) || !holds(eb, va.mu)) return false;
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (i < ea.size() && ea[i] == vb.mu) { ++i; continue; }
    if (j < eb.size() && eb[j] == va.mu) { ++j; continue; }
    if (i == ea.size() || j == eb.size() || ea[i] != eb[j]) return false;
    ++i;
    ++j;
  }
  return true;
}

Adjacency ConflictGraph::adjacency() const {
  Adjacency adj(size());
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      if (adjacent(a, b)) {
        adj[a].push_back(static_cast<std::uint32_t>(b));
        adj[b].push_back(static_cast<std::uint32_t>(a));
      }
    }
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::size_t ConflictGraph::edge_count() const {
  std::size_t edges = 0;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) edges += adjacent(a, b) ? 1 : 0;
  }
  return edges;
}

ConflictGraph build_conflict_graph(const CacheConfiguration& cache, const PacketDemand& demand) {
  std::vector<std::uint32_t> files;
  for (const auto& d : demand.per_user) {
    if (!d.packets.empty()) files.push_back(d.file);
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return build_conflict_graph(CacheIndex(cache, files), demand);
}

ConflictGraph build_conflict_graph(const CacheIndex& index, const PacketDemand& demand) {
  ConflictGraph g;
  g.vertices_.reserve(demand.total_packets());
  for (std::size_t u = 1; u <= demand.per_user.size(); ++u) {
    const auto& d = demand.per_user[u - 1];
    for (std::uint32_t b : d.packets) {
      g.vertices_.push_back(Vertex{PacketId{d.file, b}, static_cast<std::uint32_t>(u), 0});
    }
  }
  std::sort(g.vertices_.begin(), g.vertices_.end(), [](const Vertex& x, const Vertex& y) {
    return std::tie(x.rho, x.mu) < std::tie(y.rho, y.mu);
  });

  g.label_hash_.resize(g.vertices_.size());
  std::uint64_t eta_hash = 0;
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
    Vertex& v = g.vertices_[i];
    if (g.packets_.empty() || g.packets_.back() != v.rho) {
      g.packets_.push_back(v.rho);
      const auto cachers = index.cachers(v.rho);
      g.etas_.emplace_back(cachers.begin(), cachers.end());
      eta_hash = 0;
      for (std::uint32_t w : cachers) eta_hash += user_key(w);
    }
    v.slot = static_cast<std::uint32_t>(g.packets_.size() - 1);
    if (holds(g.etas_.back(), v.mu)) {
      throw InvalidArgument("packet demand is inconsistent with the cache: user " + std::to_string(v.mu) +
                            " requests a packet it caches");
    }
    g.label_hash_[i] = eta_hash + user_key(v.mu);
  }
  return g;
}

void write_edge_list(std::ostream& os, const ConflictGraph& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vertex& v = g.vertex(i);
    os << "# v " << i << " f=" << v.rho.file << " b=" << v.rho.packet << " mu=" << v.mu << " eta=";
    const auto eta = g.eta(i);
    if (eta.empty()) os << '-';
    for (std::size_t k = 0; k < eta.size(); ++k) os << (k ? "," : "") << eta[k];
    os << '\n';
  }
  const Adjacency adj = g.adjacency();
  for (std::size_t a = 0; a < adj.size(); ++a) {
    for (std::uint32_t b : adj[a]) {
      if (b > a) os << a << ' ' << b << '\n';
    }
  }
}

}  // namespace codedcache
