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
#include <map>
#include <span>
#include <vector>

#include "codedcache/coloring.hpp"
#include "codedcache/conflict_graph.hpp"
#include "codedcache/placement.hpp"

namespace codedcache {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kDefaultPacketBytes = 64;

// Packet payloads W_{f,b}, all of equal length.
class Library {
 public:
  Library(std::size_t m, std::size_t B, std::size_t packet_bytes, std::uint64_t seed);

  [[nodiscard]] std::size_t files() const noexcept { return m_; }
  [[nodiscard]] std::size_t packets_per_file() const noexcept { return B_; }
  [[nodiscard]] std::size_t packet_bytes() const noexcept { return bytes_; }
  [[nodiscard]] std::span<const std::uint8_t> packet(PacketId p) const;

 private:
  std::size_t m_;
  std::size_t B_;
  std::size_t bytes_;
  Bytes data_;
};

struct CodedPacket {
  std::vector<PacketId> constituents;  // sorted, distinct
  Bytes payload;

  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

struct Codeword {
  std::vector<CodedPacket> packets;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

// One coded packet per color class: XOR of the class's distinct packets.
Codeword encode(const Coloring& coloring, const ConflictGraph& g, const Library& library);

// Payloads of the packets one user holds in its cache.
class UserCache {
 public:
  UserCache(std::size_t user, const CacheConfiguration& cache, const Library& library);

  [[nodiscard]] std::size_t user() const noexcept { return user_; }
  [[nodiscard]] bool holds(PacketId p) const { return payloads_.contains(p); }
  [[nodiscard]] std::span<const std::uint8_t> payload(PacketId p) const { return payloads_.at(p); }

 private:
  std::size_t user_;
  std::map<PacketId, Bytes> payloads_;
};

struct DecodedPacket {
  PacketId id;
  Bytes payload;
};

// Recovers every packet `user` demands. Throws DecodeFailure naming the first
// packet that no coded packet can deliver.
std::vector<DecodedPacket> decode(std::size_t user, const Codeword& codeword, const UserCache& cache,
                                  const PacketDemand& demand);

// Colors per packet of a file: the normalized code length.
double measured_rate(const Coloring& coloring, std::size_t B);

// Little-endian framing: u32 count, then per coded packet u32 constituent
// count, (u32 f, u32 b) pairs, u32 payload length, payload bytes.
void write_codeword(std::ostream& os, const Codeword& cw);
Codeword read_codeword(std::istream& is);

}  // namespace codedcache
