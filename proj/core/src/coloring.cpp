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

#include "codedcache/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "codedcache/errors.hpp"

namespace codedcache {

std::string_view to_string(ColoringAlgorithm a) noexcept {
  switch (a) {
    case ColoringAlgorithm::kGcc1: return "gcc1";
    case ColoringAlgorithm::kGcc2: return "gcc2";
    case ColoringAlgorithm::kExact: return "exact";
  }
  return "unknown";
}

Coloring gcc1(const ConflictGraph& g, Rng* shuffle) {
  const std::size_t V = g.size();
  std::vector<std::uint32_t> order(V);
  std::iota(order.begin(), order.end(), 0U);
  if (shuffle != nullptr) std::shuffle(order.begin(), order.end(), *shuffle);

  // Only vertices with the root's user label can join its class, so scan
  // label groups instead of the whole vertex set. Groups keep `order`.
  std::vector<std::uint32_t> group_of(V);
  std::vector<std::vector<std::uint32_t>> groups;
  {
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash;
    by_hash.reserve(V);
    for (std::uint32_t v : order) {
      auto& candidates = by_hash[g.label_hash(v)];
      std::uint32_t gid = UINT32_MAX;
      for (std::uint32_t id : candidates) {
        if (g.same_user_label(groups[id].front(), v)) {
          gid = id;
          break;
        }
      }
      if (gid == UINT32_MAX) {
        gid = static_cast<std::uint32_t>(groups.size());
        groups.emplace_back();
        candidates.push_back(gid);
      }
      groups[gid].push_back(v);
      group_of[v] = gid;
    }
  }

  // Within one label group two vertices conflict iff they share a requester,
  // so the greedy class is the root plus the earliest pending vertex of every
  // other requester in the group. Per-requester queues make that linear.
  struct Queue {
    std::uint32_t mu;
    std::vector<std::uint32_t> items;
    std::size_t head = 0;
  };
  std::vector<std::vector<Queue>> queues(groups.size());
  for (std::size_t gid = 0; gid < groups.size(); ++gid) {
    auto& qs = queues[gid];
    for (std::uint32_t v : groups[gid]) {
      const std::uint32_t mu = g.vertex(v).mu;
      auto it = std::find_if(qs.begin(), qs.end(), [&](const Queue& q) { return q.mu == mu; });
      if (it == qs.end()) {
        qs.push_back(Queue{mu, {}, 0});
        it = std::prev(qs.end());
      }
      it->items.push_back(v);
    }
  }

  Coloring out;
  out.algorithm = ColoringAlgorithm::kGcc1;
  std::vector<char> done(V, 0);
  for (std::uint32_t root : order) {
    if (done[root]) continue;
    std::vector<std::uint32_t> cls{root};
    done[root] = 1;
    for (auto& q : queues[group_of[root]]) {
      while (q.head < q.items.size() && done[q.items[q.head]]) ++q.head;
      if (q.mu == g.vertex(root).mu || q.head == q.items.size()) continue;
      const std::uint32_t cand = q.items[q.head++];
      done[cand] = 1;
      cls.push_back(cand);
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

Coloring gcc2(const ConflictGraph& g) {
  Coloring out;
  out.algorithm = ColoringAlgorithm::kGcc2;
  out.classes.resize(g.distinct_packets());
  for (std::uint32_t v = 0; v < g.size(); ++v) out.classes[g.vertex(v).slot].push_back(v);
  return out;
}

Coloring gcc(const ConflictGraph& g) {
  Coloring a = gcc1(g);
  if (g.distinct_packets() < a.colors()) return gcc2(g);
  return a;
}

namespace {

// DSATUR-ordered branch and bound over an explicit adjacency matrix.
class ExactSearch {
 public:
  explicit ExactSearch(const Adjacency& adj) : adj_(adj), n_(adj.size()) {
    matrix_.assign(n_ * n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::uint32_t b : adj[a]) matrix_[a * n_ + b] = 1;
    }
    color_.assign(n_, -1);
    // Forbidden-color counters per vertex: forbid_[v * n_ + c].
    forbid_.assign(n_ * (n_ + 1), 0);
    saturation_.assign(n_, 0);
  }

  std::vector<int> run(std::size_t upper) {
    best_count_ = upper;
    lower_ = greedy_clique_size();
    if (n_ == 0) return {};
    search(0, 0);
    return best_;
  }

  [[nodiscard]] std::size_t best_count() const noexcept { return best_count_; }

 private:
  std::size_t greedy_clique_size() const {
    std::vector<std::uint32_t> order(n_);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return adj_[a].size() > adj_[b].size(); });
    std::size_t best = n_ ? 1 : 0;
    for (std::uint32_t seed : order) {
      std::vector<std::uint32_t> clique{seed};
      for (std::uint32_t v : order) {
        if (v == seed) continue;
        if (std::all_of(clique.begin(), clique.end(), [&](std::uint32_t w) { return matrix_[v * n_ + w]; })) {
          clique.push_back(v);
        }
      }
      best = std::max(best, clique.size());
    }
    return best;
  }

  std::size_t pick_vertex() const {
    std::size_t pick = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      if (pick == n_ || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && adj_[v].size() > adj_[pick].size())) {
        pick = v;
      }
    }
    return pick;
  }

  void set_color(std::size_t v, int c, int delta) {
    for (std::uint32_t w : adj_[v]) {
      auto& cnt = forbid_[w * (n_ + 1) + static_cast<std::size_t>(c)];
      if (delta > 0) {
        if (cnt++ == 0) ++saturation_[w];
      } else {
        if (--cnt == 0) --saturation_[w];
      }
    }
  }

  void search(std::size_t colored, std::size_t used) {
    if (best_count_ <= lower_) return;
    if (colored == n_) {
      if (used < best_count_) {
        best_count_ = used;
        best_ = color_;
      }
      return;
    }
    const std::size_t v = pick_vertex();
    // Existing colors, then one new color if it can still beat the incumbent.
    const std::size_t limit = std::min(used + 1, best_count_ - 1);
    for (std::size_t c = 0; c < limit; ++c) {
      if (forbid_[v * (n_ + 1) + c] != 0) continue;
      color_[v] = static_cast<int>(c);
      set_color(v, static_cast<int>(c), +1);
      search(colored + 1, std::max(used, c + 1));
      set_color(v, static_cast<int>(c), -1);
      color_[v] = -1;
      if (best_count_ <= lower_) return;
    }
  }

  const Adjacency& adj_;
  std::size_t n_;
  std::vector<char> matrix_;
  std::vector<int> color_;
  std::vector<int> forbid_;
  std::vector<std::size_t> saturation_;
  std::vector<int> best_;
  std::size_t best_count_ = 0;
  std::size_t lower_ = 0;
};

std::vector<std::vector<std::uint32_t>> greedy_classes(const Adjacency& adj) {
  std::vector<int> color(adj.size(), -1);
  std::size_t used = 0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    std::vector<char> taken(used + 1, 0);
    for (std::uint32_t w : adj[v]) {
      if (color[w] >= 0) taken[static_cast<std::size_t>(color[w])] = 1;
    }
    std::size_t c = 0;
    while (taken[c]) ++c;
    color[v] = static_cast<int>(c);
    used = std::max(used, c + 1);
  }
  std::vector<std::vector<std::uint32_t>> classes(used);
  for (std::size_t v = 0; v < adj.size(); ++v) classes[static_cast<std::size_t>(color[v])].push_back(static_cast<std::uint32_t>(v));
  return classes;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> exact_coloring(const Adjacency& adj,
                                                       std::vector<std::vector<std::uint32_t>> incumbent) {
  auto greedy = greedy_classes(adj);
  if (incumbent.empty() || greedy.size() < incumbent.size()) incumbent = std::move(greedy);
  ExactSearch search(adj);
  // Only colorings strictly better than the incumbent are recorded.
  const std::vector<int> colors = search.run(incumbent.size());
  if (colors.empty()) return incumbent;
  std::vector<std::vector<std::uint32_t>> classes(search.best_count());
  for (std::size_t v = 0; v < colors.size(); ++v) {
    classes[static_cast<std::size_t>(colors[v])].push_back(static_cast<std::uint32_t>(v));
  }
  return classes;
}

Coloring exact_chromatic(const ConflictGraph& g, std::size_t vertex_limit) {
  if (g.size() > vertex_limit) {
    throw SizeLimitError("exact_chromatic: graph has " + std::to_string(g.size()) +
                         " vertices, limit is " + std::to_string(vertex_limit));
  }
  Coloring out;
  out.algorithm = ColoringAlgorithm::kExact;
  out.classes = exact_coloring(g.adjacency(), gcc(g).classes);
  return out;
}

void validate_coloring(const ConflictGraph& g, const Coloring& c) {
  std::vector<char> seen(g.size(), 0);
  std::size_t covered = 0;
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    const auto& cls = c.classes[k];
    if (cls.empty()) throw ColoringError("color class " + std::to_string(k) + " is empty");
    for (std::uint32_t v : cls) {
      if (v >= g.size()) throw ColoringError("color class " + std::to_string(k) + " names a missing vertex");
      if (seen[v]) throw ColoringError("vertex " + std::to_string(v) + " appears in more than one class");
      seen[v] = 1;
      ++covered;
    }
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        if (g.adjacent(cls[i], cls[j])) {
          throw ColoringError("color class " + std::to_string(k) + " holds adjacent vertices " +
                              std::to_string(cls[i]) + " and " + std::to_string(cls[j]));
        }
      }
    }
  }
  if (covered != g.size()) {
    throw ColoringError("coloring covers " + std::to_string(covered) + " of " + std::to_string(g.size()) +
                        " vertices");
  }
}

}  // namespace codedcache
