#include <gtest/gtest.h>

#include <sstream>

#include "test_graphs.hpp"
#include "vne/graph.hpp"

using namespace vne;
using namespace vne::test;

TEST(Graph, FromEdgesCanonicalizes) {
  std::vector<Edge> e{{1, 0}, {0, 1}, {2, 1}, {1, 2}};
  const Graph g = Graph::from_edges(4, e);
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_EQ(g.degree(3), 0u);
}

TEST(Graph, RejectsSelfLoopAndOutOfRange) {
  std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(Graph::from_edges(3, loop), GraphError);
  std::vector<Edge> far{{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, far), GraphError);
}

TEST(Graph, NeighborListsSortedAndSymmetric) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const Graph g = random_graph(rng, 2, 30);
    std::size_t deg_sum = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto nb = g.neighbors(v);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
      for (NodeId u : nb) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.has_edge(u, v));
      }
      deg_sum += nb.size();
    }
    EXPECT_EQ(deg_sum, 2 * g.num_edges());
  }
}

TEST(EgoNetwork, CenterOnlyOnIsolatedNode) {
  std::vector<Edge> e{{0, 1}};
  const Graph g = Graph::from_edges(3, e);
  const auto ego = ego_network(g, 2, 3);
  EXPECT_EQ(ego.subgraph.num_nodes(), 1u);
  EXPECT_EQ(ego.subgraph.num_edges(), 0u);
  EXPECT_EQ(ego.node_map, std::vector<NodeId>{2});
}

TEST(EgoNetwork, PathRadiusTruncation) {
  const Graph g = path(7);
  const auto ego = ego_network(g, 3, 2);
  EXPECT_EQ(ego.node_map, (std::vector<NodeId>{1, 2, 3, 4, 5}));
  EXPECT_EQ(ego.center_local_id, 2u);
  EXPECT_EQ(ego.subgraph, path(5));
}

TEST(EgoNetwork, InducedIncludesEdgesBetweenFrontierNodes) {
  // Triangle 1-2-3 hanging off 0 through 1; radius 1 of 0 sees only 0-1.
  std::vector<Edge> e{{0, 1}, {1, 2}, {1, 3}, {2, 3}};
  const Graph g = Graph::from_edges(4, e);
  EXPECT_EQ(ego_network(g, 0, 1).subgraph.num_edges(), 1u);
  // Radius 2 reaches 2 and 3 and must include the 2-3 edge.
  EXPECT_EQ(ego_network(g, 0, 2).subgraph.num_edges(), 4u);
}

TEST(EgoNetwork, MatchesBfsDistances) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Graph g = random_graph(rng, 2, 25);
    const NodeId v = static_cast<NodeId>(rng() % g.num_nodes());
    const auto dist = bfs_distances(g, v);
    for (unsigned r = 1; r <= 3; ++r) {
      const auto ego = ego_network(g, v, r);
      std::vector<NodeId> expect;
      for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (dist[u] <= r) expect.push_back(u);
      EXPECT_EQ(ego.node_map, expect);
      std::size_t m = 0;
      for (const auto& [a, b] : g.edges())
        if (dist[a] <= r && dist[b] <= r) ++m;
      EXPECT_EQ(ego.subgraph.num_edges(), m);
    }
  }
}

TEST(EgoNetwork, RejectsOutOfRangeCenter) {
  EXPECT_THROW(ego_network(path(3), 3, 1), GraphError);
}

TEST(Permute, RoundTripsThroughInverse) {
  Rng rng(3);
  const Graph g = random_graph(rng, 5, 20);
  const auto p = random_permutation(rng, g.num_nodes());
  std::vector<NodeId> inv(p.size());
  for (NodeId v = 0; v < p.size(); ++v) inv[p[v]] = v;
  const Graph h = permute(g, p);
  EXPECT_EQ(h.num_edges(), g.num_edges());
  for (const auto& [a, b] : g.edges()) EXPECT_TRUE(h.has_edge(p[a], p[b]));
  EXPECT_EQ(permute(h, inv), g);
}

TEST(EdgeList, RoundTrip) {
  std::vector<Edge> e{{0, 2}, {2, 3}};
  const Graph g = Graph::from_edges(5, e);
  std::stringstream ss;
  write_edge_list(g, ss);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(EdgeList, ParsesCommentsAndInfersSize) {
  std::istringstream in("# header\n0 1\n\n1 4\n");
  const Graph g = read_edge_list(in);
  EXPECT_EQ(g.num_nodes(), 5u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(EdgeList, ReportsLineOfBadInput) {
  std::istringstream loop("0 1\n# c\n2 2\n");
  try {
    read_edge_list(loop);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream junk("0 1\n1 x\n");
  try {
    read_edge_list(junk);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream extra("0 1 2\n");
  EXPECT_THROW(read_edge_list(extra), ParseError);
  std::istringstream negative("0 -1\n");
  EXPECT_THROW(read_edge_list(negative), ParseError);
}

TEST(EdgeList, RemapsSparseIds) {
  std::istringstream in("100 7\n7 3000000000\n");
  const auto r = read_edge_list_remapped(in);
  EXPECT_EQ(r.original_ids, (std::vector<std::int64_t>{7, 100, 3000000000}));
  EXPECT_EQ(r.graph.num_edges(), 2u);
  EXPECT_TRUE(r.graph.has_edge(0, 1));
  EXPECT_TRUE(r.graph.has_edge(0, 2));
}

TEST(NodeLabels, RoundTripAndValidation) {
  std::vector<std::string> labels{"a", "b", "a"};
  std::stringstream ss;
  write_node_labels(labels, ss);
  EXPECT_EQ(read_node_labels(ss, 3), labels);
  std::istringstream missing("0 a\n2 b\n");
  EXPECT_THROW(read_node_labels(missing, 3), ParseError);
}
