// Copyright 2026 The congest-spanners Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "spanners/generators.hpp"
#include "spanners/graph.hpp"

namespace spanners {
namespace {

Graph Parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

TEST(ParseGraphTest, PathFile) {
  const Graph g = Parse("3\n0 1\n1 2\n");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(ParseGraphTest, DuplicatesCollapse) {
  const Graph g = Parse("2\n0 1\n1 0\n# comment\n\n0 1\n");
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(ParseGraphTest, NamedHeader) {
  EXPECT_EQ(Parse("n 4\n0 3\n").node_count(), 4u);
}

TEST(ParseGraphTest, Errors) {
  EXPECT_THROW(Parse("2\n0 0\n"), GraphError);
  EXPECT_THROW(Parse("2\n0 2\n"), GraphError);
  EXPECT_THROW(Parse(""), GraphError);
  try {
    Parse("3\n0 1\n1 x\n");
    FAIL() << "expected a parse error";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    Parse("3\n0 1 2\n");
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseGraphTest, RoundTrip) {
  const Graph g = gen_gnp(30, 0.2, 5);
  std::ostringstream out;
  write_graph(out, g);
  EXPECT_EQ(Parse(out.str()).edges(), g.edges());
}

TEST(ParseInputsTest, PairsAndSources) {
  std::istringstream pairs("0 1\n2 1\n1 0\n");
  const PairSet p = parse_pairs(pairs, 3);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.tau(), 3u);
  std::istringstream sources("2\n0\n2\n");
  EXPECT_EQ(parse_sources(sources, 3), (std::vector<NodeId>{0, 2}));
  std::istringstream bad("0 0\n");
  EXPECT_THROW(parse_pairs(bad, 3), GraphError);
  std::istringstream far("5\n");
  EXPECT_THROW(parse_sources(far, 3), GraphError);
}

TEST(PairSetTest, Tau) {
  PairSet p{{0, 1}, {1, 2}, {1, 0}};
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.tau(), 3u);
  EXPECT_LE(p.tau(), 2 * p.size());
  EXPECT_THROW(p.insert(4, 4), GraphError);
}

TEST(BfsTest, PathAndStar) {
  EXPECT_EQ(bfs(path_graph(3), 0).dist, (std::vector<std::uint32_t>{0, 1, 2}));
  const auto star = bfs(star_graph(5), 0);
  for (NodeId v = 1; v <= 5; ++v) EXPECT_EQ(star.dist[v], 1u);
}

TEST(BfsTest, SmallestParentAndPath) {
  // 4-cycle 0-1-2-3-0: node 2 has parents 1 and 3 at distance 1.
  const auto t = bfs(cycle_graph(4), 0);
  EXPECT_EQ(t.parent[2], 1u);
  EXPECT_EQ(t.parent[0], 0u);
  EXPECT_EQ(t.path_to_root(2), (std::vector<NodeId>{2, 1, 0}));
}

TEST(BfsTest, MissingCounts) {
  const Graph g = path_graph(5);
  const EdgeSet none;
  const auto t = bfs(g, 0, &none);
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ((*t.missing_count)[v], t.dist[v]);
  const EdgeSet some{{1, 2}, {3, 4}};
  EXPECT_EQ(*bfs(g, 0, &some).missing_count,
            (std::vector<std::uint32_t>{0, 1, 1, 2, 2}));
}

TEST(BfsTest, MatchesFloydOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Graph g = gen_gnp(60 + 10 * seed, 0.08, seed);
    const auto d = oracle::floyd(g);
    for (NodeId r = 0; r < g.node_count(); r += 7) {
      const auto t = bfs(g, r);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        ASSERT_EQ(t.dist[v], d[r][v]);
        if (v != r) {
          ASSERT_TRUE(g.has_edge(v, t.parent[v]));
          ASSERT_EQ(t.dist[t.parent[v]] + 1, t.dist[v]);
        }
      }
    }
  }
}

TEST(BfsTest, UnreachedAndRange) {
  const Graph g = Graph::from_edges(3, EdgeSet{{0, 1}});
  EXPECT_FALSE(bfs(g, 0).reached(2));
  EXPECT_THROW(bfs(g, 3), GraphError);
}

TEST(GirthTest, Cycles) {
  EXPECT_EQ(girth(complete_graph(3)), 3u);
  for (std::size_t k = 3; k <= 9; ++k) EXPECT_EQ(girth(cycle_graph(k)), k);
  EXPECT_EQ(girth(complete_graph(5)), 3u);
  EXPECT_FALSE(girth(path_graph(6)).has_value());
  EXPECT_FALSE(girth(star_graph(4)).has_value());
}

TEST(GirthTest, Petersen) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  EXPECT_EQ(girth(Graph::from_edges(10, std::span<const Edge>(edges))), 5u);
}

TEST(GirthTest, CycleWithChord) {
  // 8-cycle plus chord 0-4 splits into two 5-cycles.
  std::vector<Edge> edges = cycle_graph(8).edges();
  edges.emplace_back(0, 4);
  EXPECT_EQ(girth(Graph::from_edges(8, std::span<const Edge>(edges))), 5u);
}

TEST(DiameterTest, Basics) {
  EXPECT_EQ(diameter(path_graph(4)), 3u);
  EXPECT_EQ(diameter(complete_graph(5)), 1u);
  EXPECT_EQ(diameter(Graph(1)), 0u);
  EXPECT_THROW(diameter(Graph(2)), GraphError);
}

TEST(GnpTest, Extremes) {
  EXPECT_EQ(gen_gnp(5, 1.0, 3).edge_count(), 10u);
  EXPECT_THROW(gen_gnp(5, 0.0, 3), GraphError);
  EXPECT_THROW(gen_gnp(5, 1.5, 3), GraphError);
}

TEST(GnpTest, Deterministic) {
  EXPECT_EQ(gen_gnp(100, 0.1, 7).edges(), gen_gnp(100, 0.1, 7).edges());
  EXPECT_NE(gen_gnp(100, 0.1, 7).edges(), gen_gnp(100, 0.1, 8).edges());
  EXPECT_TRUE(is_connected(gen_gnp(100, 0.1, 7)));
}

class ProjectiveTest : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(ProjectiveTest, MatchesEnumeration) {
  const std::uint32_t q = GetParam();
  const Graph g = build_projective_incidence(q);
  const auto plane = oracle::enumerate_plane(q);
  const std::size_t side = q * q + q + 1;
  EXPECT_EQ(plane.points, side);
  EXPECT_EQ(g.node_count(), 2 * plane.points);
  EXPECT_EQ(g.edge_count(), plane.incidences);
  EXPECT_EQ(g.edge_count(), (q + 1) * side);
  EXPECT_EQ(plane.point_degrees, (std::set<std::size_t>{q + 1}));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    ASSERT_EQ(g.degree(v), q + 1);
    for (NodeId w : g.neighbors(v)) ASSERT_NE(v < side, w < side);
  }
  EXPECT_EQ(girth(g), 6u);
  EXPECT_EQ(diameter(g), 3u);
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, ProjectiveTest,
                         ::testing::Values(2u, 3u, 5u, 7u));

TEST(FanoPlaneTest, CountsAndDiameter) {
  const Graph g = build_projective_incidence(2);
  EXPECT_EQ(g.node_count(), 14u);
  EXPECT_EQ(g.edge_count(), 21u);
  for (NodeId r = 0; r < 14; ++r) {
    const auto d = bfs(g, r).dist;
    EXPECT_EQ(*std::max_element(d.begin(), d.end()), 3u);
  }
  EXPECT_EQ(build_projective_incidence(3).edge_count(), 52u);
  EXPECT_THROW(build_projective_incidence(4), GraphError);
  EXPECT_THROW(build_projective_incidence(1), GraphError);
}

TEST(LowerBoundGraphTest, Counts) {
  const auto lb = build_lowerbound_graph(2);
  EXPECT_EQ(lb.graph.node_count(), 28u);
  EXPECT_EQ(lb.graph.edge_count(), 35u);
  EXPECT_EQ(lb.m(), 21u);
  EXPECT_EQ(diameter(lb.graph), 5u);
  for (NodeId v : lb.pendant_of) {
    EXPECT_EQ(lb.graph.degree(v), 1u);
    EXPECT_TRUE(lb.is_pendant(v));
  }
  EXPECT_FALSE(lb.is_pendant(3));
  EXPECT_EQ(lb.base_of_pendant(lb.pendant_of[5]), 5u);
  EXPECT_TRUE(std::is_sorted(lb.base_edges.begin(), lb.base_edges.end()));
}

TEST(LowerBoundGraphTest, PendantDistances) {
  for (std::uint32_t q : {2u, 3u}) {
    const auto lb = build_lowerbound_graph(q);
    for (const Edge& e : lb.base_edges) {
      const NodeId a = lb.pendant_of[e.u];
      const NodeId b = lb.pendant_of[e.v];
      ASSERT_EQ(bfs_distances(lb.graph, a)[b], 3u);
      EdgeSet rest = lb.graph.edge_set();
      rest.erase(e);
      const Graph cut = Graph::from_edges(lb.graph.node_count(), rest);
      ASSERT_EQ(bfs_distances(cut, a)[b], 7u);
    }
  }
}

TEST(GeneralLowerBoundTest, Counts) {
  const Graph base = build_projective_incidence(2);
  const auto lb = build_general_lowerbound_graph(1, 2, base);
  EXPECT_EQ(lb.graph.node_count(), 57u);
  EXPECT_EQ(lb.path_length, 2u);
  ASSERT_TRUE(lb.apex.has_value());
  EXPECT_EQ(lb.graph.degree(*lb.apex), 14u);
  const auto dist = bfs_distances(lb.graph, *lb.apex);
  for (NodeId v = 0; v < 14; ++v) EXPECT_EQ(dist[v], 3u);
  EXPECT_LE(diameter(lb.graph), 2 * (lb.path_length + 1));
  EXPECT_GE(*girth(lb.graph), 5u);
  EXPECT_EQ(lb.graph.edge_count(), 21u + 14u * 3u + 14u);
}

TEST(GeneralLowerBoundTest, GirthKeptWhenPathsAreLong) {
  // g = 6 gives paths of 3 inner nodes; a cycle through the apex has
  // length at least 2 * 4 + 1, so the base girth survives.
  const Graph base = build_projective_incidence(3);
  const auto lb = build_general_lowerbound_graph(2, 0, base);
  EXPECT_EQ(lb.path_length, 3u);
  EXPECT_EQ(girth(lb.graph), girth(base));
}

TEST(GeneralLowerBoundTest, RejectsLowGirthBase) {
  EXPECT_THROW(build_general_lowerbound_graph(2, 1, build_projective_incidence(2)),
               GraphError);
  EXPECT_THROW(build_general_lowerbound_graph(0, 3, build_projective_incidence(2)),
               GraphError);
}

}  // namespace
}  // namespace spanners
