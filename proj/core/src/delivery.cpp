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

#include "codedcache/delivery.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "codedcache/errors.hpp"
#include "codedcache/random.hpp"

namespace codedcache {

Library::Library(std::size_t m, std::size_t B, std::size_t packet_bytes, std::uint64_t seed)
    : m_(m), B_(B), bytes_(packet_bytes), data_(m * B * packet_bytes) {
  if (m == 0 || B == 0 || packet_bytes == 0) throw InvalidArgument("library dimensions must be >= 1");
  Rng rng(seed);
  for (std::size_t i = 0; i < data_.size(); i += 8) {
    std::uint64_t word = rng();
    for (std::size_t k = 0; k < 8 && i + k < data_.size(); ++k, word >>= 8) {
      data_[i + k] = static_cast<std::uint8_t>(word & 0xFF);
    }
  }
}

std::span<const std::uint8_t> Library::packet(PacketId p) const {
  if (p.file < 1 || p.file > m_ || p.packet < 1 || p.packet > B_) {
    throw InvalidArgument("library packet out of range");
  }
  const std::size_t offset = ((p.file - 1) * B_ + (p.packet - 1)) * bytes_;
  return {data_.data() + offset, bytes_};
}

Codeword encode(const Coloring& coloring, const ConflictGraph& g, const Library& library) {
  validate_coloring(g, coloring);
  Codeword cw;
  cw.packets.reserve(coloring.colors());
  for (const auto& cls : coloring.classes) {
    CodedPacket cp;
    for (std::uint32_t v : cls) cp.constituents.push_back(g.vertex(v).rho);
    std::sort(cp.constituents.begin(), cp.constituents.end());
    cp.constituents.erase(std::unique(cp.constituents.begin(), cp.constituents.end()), cp.constituents.end());
    cp.payload.assign(library.packet_bytes(), 0);
    for (const PacketId& id : cp.constituents) {
      const auto src = library.packet(id);
      for (std::size_t i = 0; i < src.size(); ++i) cp.payload[i] ^= src[i];
    }
    cw.packets.push_back(std::move(cp));
  }
  return cw;
}

UserCache::UserCache(std::size_t user, const CacheConfiguration& cache, const Library& library) : user_(user) {
  for (std::size_t f = 1; f <= cache.files(); ++f) {
    for (std::uint32_t b : cache.cached(user, f)) {
      const PacketId id{static_cast<std::uint32_t>(f), b};
      const auto src = library.packet(id);
      payloads_.emplace(id, Bytes(src.begin(), src.end()));
    }
  }
}

std::vector<DecodedPacket> decode(std::size_t user, const Codeword& codeword, const UserCache& cache,
                                  const PacketDemand& demand) {
  const UserDemand& want = demand.user(user);
  std::vector<DecodedPacket> out;
  if (want.packets.empty()) return out;

  // packet identity -> coded packets containing it
  std::map<PacketId, std::vector<std::size_t>> index;
  for (std::size_t k = 0; k < codeword.packets.size(); ++k) {
    for (const PacketId& id : codeword.packets[k].constituents) {
      if (id.file == want.file) index[id].push_back(k);
    }
  }

  out.reserve(want.packets.size());
  for (std::uint32_t b : want.packets) {
    const PacketId target{want.file, b};
    bool recovered = false;
    if (auto it = index.find(target); it != index.end()) {
      for (std::size_t k : it->second) {
        const CodedPacket& cp = codeword.packets[k];
        const bool usable = std::all_of(cp.constituents.begin(), cp.constituents.end(),
                                        [&](const PacketId& id) { return id == target || cache.holds(id); });
        if (!usable) continue;
        Bytes payload = cp.payload;
        for (const PacketId& id : cp.constituents) {
          if (id == target) continue;
          const auto side = cache.payload(id);
          for (std::size_t i = 0; i < payload.size(); ++i) payload[i] ^= side[i];
        }
        out.push_back(DecodedPacket{target, std::move(payload)});
        recovered = true;
        break;
      }
    }
    if (!recovered) {
      throw DecodeFailure("user " + std::to_string(user) + " cannot decode packet (" + std::to_string(target.file) +
                              ", " + std::to_string(b) + ")",
                          user, target.file, b);
    }
  }
  return out;
}

double measured_rate(const Coloring& coloring, std::size_t B) {
  if (B == 0) throw InvalidArgument("measured_rate: B must be >= 1");
  return static_cast<double>(coloring.colors()) / static_cast<double>(B);
}

namespace {

void put_u32(std::ostream& os, std::uint32_t x) {
  const char b[4] = {static_cast<char>(x & 0xFF), static_cast<char>((x >> 8) & 0xFF),
                     static_cast<char>((x >> 16) & 0xFF), static_cast<char>((x >> 24) & 0xFF)};
  os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw InvalidArgument("codeword stream truncated");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_codeword(std::ostream& os, const Codeword& cw) {
  put_u32(os, static_cast<std::uint32_t>(cw.packets.size()));
  for (const auto& cp : cw.packets) {
    put_u32(os, static_cast<std::uint32_t>(cp.constituents.size()));
    for (const PacketId& id : cp.constituents) {
      put_u32(os, id.file);
      put_u32(os, id.packet);
    }
    put_u32(os, static_cast<std::uint32_t>(cp.payload.size()));
    os.write(reinterpret_cast<const char*>(cp.payload.data()), static_cast<std::streamsize>(cp.payload.size()));
  }
}

Codeword read_codeword(std::istream& is) {
  Codeword cw;
  const std::uint32_t count = get_u32(is);
  cw.packets.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    CodedPacket cp;
    const std::uint32_t nc = get_u32(is);
    if (nc == 0) throw InvalidArgument("coded packet without constituents");
    for (std::uint32_t i = 0; i < nc; ++i) {
      const std::uint32_t f = get_u32(is);
      const std::uint32_t b = get_u32(is);
      cp.constituents.push_back(PacketId{f, b});
    }
    cp.payload.resize(get_u32(is));
    if (!is.read(reinterpret_cast<char*>(cp.payload.data()), static_cast<std::streamsize>(cp.payload.size()))) {
      throw InvalidArgument("codeword stream truncated");
    }
    cw.packets.push_back(std::move(cp));
  }
  return cw;
}

}  // namespace codedcache
