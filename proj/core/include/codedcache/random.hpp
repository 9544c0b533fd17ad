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

#include <cstdint>
#include <random>

namespace codedcache {

using Rng = std::mt19937_64;

// Independent sub-streams of a single trial.
enum class Stream : std::uint64_t {
  kPlacement = 1,
  kDemand = 2,
  kLibrary = 3,
  kShuffle = 4,
  kSearch = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-trial seed; recorded in experiment output so a trial can be replayed alone.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(base) ^ (trial * 0xD1B54A32D192ED03ULL));
}

constexpr std::uint64_t stream_seed(std::uint64_t trial_seed, Stream stream) noexcept {
  return splitmix64(trial_seed ^ (static_cast<std::uint64_t>(stream) * 0x8CB92BA72F3D8DD7ULL));
}

// Seed for (base, trial, stream); distinct triples give decorrelated streams.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t trial, Stream stream) noexcept {
  return stream_seed(trial_seed(base, trial), stream);
}

inline Rng make_rng(std::uint64_t base, std::uint64_t trial, Stream stream) {
  return Rng{mix_seed(base, trial, stream)};
}

}  // namespace codedcache
