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

#include <gtest/gtest.h>

#include <sstream>

#include "codedcache/errors.hpp"
#include "codedcache/example1.hpp"
#include "oracles.hpp"

namespace cc = codedcache;
namespace ct = codedcache::testing;

namespace {

std::size_t find_vertex(const cc::ConflictGraph& g, std::uint32_t f, std::uint32_t b, std::uint32_t mu) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& x = g.vertex(v);
    if (x.rho.file == f && x.rho.packet == b && x.mu == mu) return v;
  }
  ADD_FAILURE() << "no vertex " << f << '/' << b << '@' << mu;
  return 0;
}

}  // namespace

TEST(PacketDemand, ExampleOne) {
  const auto Q = cc::packet_demand(cc::example1_cache(), cc::example1_demand(), cc::example1_params());
  EXPECT_EQ(Q.user(1).file, 1u);
  EXPECT_EQ(Q.user(1).packets, (std::vector<std::uint32_t>{3}));
  EXPECT_EQ(Q.user(2).packets, (std::vector<std::uint32_t>{1, 3}));
  EXPECT_EQ(Q.user(3).packets, (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(Q.total_packets(), 6u);
}

TEST(PacketDemand, FullyCachedFileGivesEmptyDemand) {
  cc::CacheConfiguration c(1, 2, 3);
  c.assign(1, 1, {1, 2, 3});
  cc::SystemParams p;
  p.n = 1;
  p.m = 2;
  p.M = 1;
  p.B = 3;
  EXPECT_TRUE(cc::packet_demand(c, cc::DemandVector{{1}}, p).user(1).packets.empty());
}

TEST(PacketDemand, EmptyCacheDemandsWholeFile) {
  cc::CacheConfiguration c(1, 1, 2);
  cc::SystemParams p;
  p.n = 1;
  p.m = 1;
  p.M = 0;
  p.B = 2;
  EXPECT_EQ(cc::packet_demand(c, cc::DemandVector{{1}}, p).user(1).packets, (std::vector<std::uint32_t>{1, 2}));
}

TEST(PacketDemand, RejectsBadDemandVector) {
  cc::CacheConfiguration c(2, 2, 2);
  cc::SystemParams p;
  p.n = 2;
  p.m = 2;
  p.M = 0;
  p.B = 2;
  EXPECT_THROW(cc::packet_demand(c, cc::DemandVector{{1}}, p), cc::InvalidArgument);
  EXPECT_THROW(cc::packet_demand(c, cc::DemandVector{{1, 3}}, p), cc::InvalidArgument);
}

TEST(ConflictGraph, ExampleOneStructure) {
  const auto cache = cc::example1_cache();
  const auto g = cc::build_conflict_graph(
      cache, cc::packet_demand(cache, cc::example1_demand(), cc::example1_params()));
  ASSERT_EQ(g.size(), 6u);
  const auto a3 = find_vertex(g, 1, 3, 1);
  const auto b1 = find_vertex(g, 2, 1, 2);
  const auto b3 = find_vertex(g, 2, 3, 2);
  EXPECT_FALSE(g.adjacent(a3, b1));
  for (std::uint32_t b = 1; b <= 3; ++b) {
    const auto c = find_vertex(g, 3, b, 3);
    EXPECT_TRUE(g.adjacent(b3, c));
    EXPECT_TRUE(g.eta(c).empty());
  }
  EXPECT_EQ(g.distinct_packets(), 6u);
}

TEST(ConflictGraph, SharedPacketIsNotAConflict) {
  cc::CacheConfiguration c(2, 1, 1);
  cc::SystemParams p;
  p.n = 2;
  p.m = 1;
  p.M = 0;
  p.B = 1;
  const auto g = cc::build_conflict_graph(c, cc::packet_demand(c, cc::DemandVector{{1, 1}}, p));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_FALSE(g.adjacent(0, 1));
  EXPECT_EQ(g.distinct_packets(), 1u);
}

TEST(ConflictGraph, SingleUserIsClique) {
  cc::CacheConfiguration c(1, 2, 5);
  c.assign(1, 1, {2});
  cc::SystemParams p;
  p.n = 1;
  p.m = 2;
  p.M = 0.4;
  p.B = 5;
  const auto g = cc::build_conflict_graph(c, cc::packet_demand(c, cc::DemandVector{{1}}, p));
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.edge_count(), 6u);
}

TEST(ConflictGraph, VertexOrderIsCanonical) {
  cc::Rng rng(4);
  const auto in = ct::random_instance(rng, 5, 4, 6);
  const auto g = cc::build_conflict_graph(in.cache, cc::packet_demand(in.cache, in.demand, in.params));
  for (std::size_t v = 1; v < g.size(); ++v) {
    const auto& a = g.vertex(v - 1);
    const auto& b = g.vertex(v);
    EXPECT_TRUE(a.rho < b.rho || (a.rho == b.rho && a.mu < b.mu));
  }
}

// H is the complement of the side-information graph S, and the vertex set
// holds one vertex per (packet, distinct requester).
TEST(ConflictGraph, ComplementOfSideInformationGraph) {
  cc::Rng rng(cc::mix_seed(99, 0, cc::Stream::kSearch));
  for (int t = 0; t < 20; ++t) {
    const auto in = ct::random_instance(rng, 4, 4, 4);
    const auto Q = cc::packet_demand(in.cache, in.demand, in.params);
    const auto g = cc::build_conflict_graph(in.cache, Q);
    EXPECT_EQ(g.size(), Q.total_packets());
    const auto adj = g.adjacency();
    for (std::size_t a = 0; a < g.size(); ++a) {
      EXPECT_FALSE(g.adjacent(a, a));
      for (std::size_t b = 0; b < g.size(); ++b) {
        if (a == b) continue;
        const bool h = g.adjacent(a, b);
        EXPECT_EQ(h, g.adjacent(b, a));
        EXPECT_EQ(h, !ct::side_information_edge(in.cache, g.vertex(a), g.vertex(b)));
        EXPECT_EQ(h, std::binary_search(adj[a].begin(), adj[a].end(), static_cast<std::uint32_t>(b)));
      }
    }
  }
}

TEST(ConflictGraph, UserLabelsMatchSets) {
  cc::Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto in = ct::random_instance(rng, 5, 3, 5);
    const auto g = cc::build_conflict_graph(in.cache, cc::packet_demand(in.cache, in.demand, in.params));
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = 0; b < g.size(); ++b) {
        const bool same = ct::user_label(g, a) == ct::user_label(g, b);
        EXPECT_EQ(g.same_user_label(a, b), same);
        if (same) EXPECT_EQ(g.label_hash(a), g.label_hash(b));
      }
    }
  }
}

TEST(ConflictGraph, DeterministicEdgeList) {
  cc::Rng r1(8), r2(8);
  const auto a = ct::random_instance(r1, 4, 3, 4);
  const auto b = ct::random_instance(r2, 4, 3, 4);
  std::ostringstream sa, sb;
  cc::write_edge_list(sa, cc::build_conflict_graph(a.cache, cc::packet_demand(a.cache, a.demand, a.params)));
  cc::write_edge_list(sb, cc::build_conflict_graph(b.cache, cc::packet_demand(b.cache, b.demand, b.params)));
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_FALSE(sa.str().empty());
}

TEST(ConflictGraph, EdgeListFormat) {
  const auto cache = cc::example1_cache();
  const auto g = cc::build_conflict_graph(
      cache, cc::packet_demand(cache, cc::example1_demand(), cc::example1_params()));
  std::ostringstream os;
  cc::write_edge_list(os, g);
  const std::string s = os.str();
  EXPECT_NE(s.find("# v 0 f=1 b=3 mu=1 eta=2\n"), std::string::npos) << s;
  EXPECT_NE(s.find("eta=-"), std::string::npos);
}
