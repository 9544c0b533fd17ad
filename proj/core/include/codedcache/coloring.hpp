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
#include <string_view>
#include <vector>

#include "codedcache/conflict_graph.hpp"
#include "codedcache/random.hpp"

namespace codedcache {

enum class ColoringAlgorithm { kGcc1, kGcc2, kExact };

std::string_view to_string(ColoringAlgorithm a) noexcept;

// Color classes over vertex indices of the graph they were computed from.
struct Coloring {
  std::vector<std::vector<std::uint32_t>> classes;
  ColoringAlgorithm algorithm = ColoringAlgorithm::kGcc1;

  [[nodiscard]] std::size_t colors() const noexcept { return classes.size(); }
};

// Greedy constrained coloring restricted to vertices sharing the root's
// requester-or-cacher user set. Roots are taken in canonical vertex order, or
// in a seeded random order when `shuffle` is given.
Coloring gcc1(const ConflictGraph& g, Rng* shuffle = nullptr);

// Naive multicasting: one class per distinct demanded packet.
Coloring gcc2(const ConflictGraph& g);

// The smaller of gcc1 and gcc2; ties go to gcc1.
Coloring gcc(const ConflictGraph& g);

inline constexpr std::size_t kDefaultExactVertexLimit = 64;

// Minimum coloring by DSATUR branch and bound. Throws SizeLimitError when the
// graph has more than `vertex_limit` vertices.
Coloring exact_chromatic(const ConflictGraph& g, std::size_t vertex_limit = kDefaultExactVertexLimit);

// Same search on an explicit adjacency structure. `incumbent`, when given,
// must be a proper coloring; it is returned if nothing smaller exists.
std::vector<std::vector<std::uint32_t>> exact_coloring(const Adjacency& adj,
                                                       std::vector<std::vector<std::uint32_t>> incumbent = {});

// Throws ColoringError if the classes do not partition the vertex set or a
// class holds two adjacent vertices.
void validate_coloring(const ConflictGraph& g, const Coloring& c);

}  // namespace codedcache
