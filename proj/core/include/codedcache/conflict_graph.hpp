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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "codedcache/demand.hpp"
#include "codedcache/placement.hpp"

namespace codedcache {

// (file, packet), both 1-based.
struct PacketId {
  std::uint32_t file = 0;
  std::uint32_t packet = 0;

  friend auto operator<=>(const PacketId&, const PacketId&) = default;
};

struct UserDemand {
  std::uint32_t file = 0;               // requested file
  std::vector<std::uint32_t> packets;   // sorted, uncached packets of that file
};

// Packet-level demand: one entry per user, 1-based via user(u).
struct PacketDemand {
  std::vector<UserDemand> per_user;

  [[nodiscard]] const UserDemand& user(std::size_t u) const { return per_user.at(u - 1); }
  [[nodiscard]] std::size_t total_packets() const noexcept;
};

PacketDemand packet_demand(const CacheConfiguration& cache, const DemandVector& demand,
                           const SystemParams& params);

// For each packet of a file, the sorted users that cache it.
class CacheIndex {
 public:
  // Indexes every file.
  explicit CacheIndex(const CacheConfiguration& cache);
  // Indexes only `files` (1-based); other files report no cachers.
  CacheIndex(const CacheConfiguration& cache, std::span<const std::uint32_t> files);

  [[nodiscard]] std::span<const std::uint32_t> cachers(PacketId p) const;
  [[nodiscard]] std::size_t users() const noexcept { return n_; }

 private:
  void index_file(const CacheConfiguration& cache, std::uint32_t f);

  std::size_t n_;
  std::size_t B_;
  std::vector<std::vector<std::vector<std::uint32_t>>> by_file_;  // [f-1][b-1] -> users
};

struct Vertex {
  PacketId rho;             // packet identity
  std::uint32_t mu = 0;     // requesting user
  std::uint32_t slot = 0;   // index of rho in the distinct-packet table
};

// Sorted neighbor lists of a materialized conflict graph.
using Adjacency = std::vector<std::vector<std::uint32_t>>;

// Index-coding conflict graph. Vertices are (packet, requester) pairs in
// canonical (file, packet, requester) order; the cacher set eta is stored once
// per distinct packet. Two vertices conflict iff they carry different packets
// and at least one requester does not cache the other's packet.
class ConflictGraph {
 public:
  ConflictGraph() = default;

  [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
  [[nodiscard]] bool empty() const noexcept { return vertices_.empty(); }
  [[nodiscard]] const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  [[nodiscard]] std::span<const Vertex> vertices() const noexcept { return vertices_; }

  [[nodiscard]] std::span<const std::uint32_t> eta(std::size_t i) const { return etas_[vertices_[i].slot]; }
  [[nodiscard]] std::size_t distinct_packets() const noexcept { return packets_.size(); }
  [[nodiscard]] PacketId packet(std::size_t slot) const { return packets_.at(slot); }

  [[nodiscard]] bool adjacent(std::size_t a, std::size_t b) const;

  // Hash of the unordered user set {mu} u eta; equal labels give equal hashes.
  [[nodiscard]] std::uint64_t label_hash(std::size_t i) const { return label_hash_[i]; }
  [[nodiscard]] bool same_user_label(std::size_t a, std::size_t b) const;

  // O(V^2) explicit edge materialization.
  [[nodiscard]] Adjacency adjacency() const;
  [[nodiscard]] std::size_t edge_count() const;

 private:
  friend ConflictGraph build_conflict_graph(const CacheIndex&, const PacketDemand&);

  std::vector<Vertex> vertices_;
  std::vector<PacketId> packets_;
  std::vector<std::vector<std::uint32_t>> etas_;
  std::vector<std::uint64_t> label_hash_;
};

ConflictGraph build_conflict_graph(const CacheConfiguration& cache, const PacketDemand& demand);
ConflictGraph build_conflict_graph(const CacheIndex& index, const PacketDemand& demand);

// Header lines "# v <id> f=<f> b=<b> mu=<u> eta=<u1,u2|->" followed by one
// "v1 v2" line per edge (v1 < v2, 0-based ids).
void write_edge_list(std::ostream& os, const ConflictGraph& g);

}  // namespace codedcache
