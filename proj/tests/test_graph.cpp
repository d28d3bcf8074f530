#include <gtest/gtest.h>

#include <sstream>

#include "fdcolor/errors.hpp"
#include "fdcolor/graph.hpp"

using namespace fdcolor;

namespace {

Graph from(std::size_t n, std::vector<Edge> edges) { return build_graph(edges, n); }

}  // namespace

TEST(BuildGraph, PathOfThree) {
  const auto g = from(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.max_degree_bound(), 2u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(BuildGraph, IsolatedVertices) {
  const auto g = from(4, {});
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.max_degree_bound(), 0u);
}

TEST(BuildGraph, Triangle) {
  const auto g = from(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(g.max_degree_bound(), 2u);
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2u);
}

TEST(BuildGraph, RejectsBadEdges) {
  EXPECT_THROW(from(3, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(from(3, {{0, 1}, {0, 1}}), InputError);
  EXPECT_THROW(from(3, {{1, 1}}), InputError);
  EXPECT_THROW(from(3, {{0, 3}}), InputError);
}

TEST(BuildGraph, ExplicitBoundBelowDegreeRejected) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  EXPECT_THROW(Graph::from_edges(3, edges, 1), InputError);
  EXPECT_EQ(Graph::from_edges(3, edges, 5).max_degree_bound(), 5u);
}

TEST(BuildGraph, NeighborsSortedAndSymmetric) {
  const auto g = from(5, {{4, 0}, {2, 0}, {0, 3}, {1, 2}});
  const auto nb = g.neighbors(0);
  EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
  for (const auto& [u, v] : g.edges()) {
    EXPECT_LT(u, v);
    EXPECT_TRUE(g.has_edge(v, u));
  }
}

TEST(SetDistance, Examples) {
  const auto p5 = make_path(5);
  EXPECT_EQ(set_distance(p5, VertexSet{0}, VertexSet{3}), 3u);
  EXPECT_EQ(set_distance(p5, VertexSet{0}, VertexSet{0}), 0u);
  EXPECT_EQ(set_distance(p5, VertexSet{0, 4}, VertexSet{2}), 2u);
  const auto two = from(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(set_distance(two, VertexSet{0}, VertexSet{3}), kInfiniteDistance);
  EXPECT_THROW(set_distance(p5, VertexSet{}, VertexSet{1}), InputError);
}

TEST(SetDistance, SymmetricWithTriangleInequality) {
  const auto g = make_random_regular(30, 3, 11);
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<std::vector<std::size_t>> d;
  for (VertexId v = 0; v < n; ++v) d.push_back(bfs_distances(g, v));
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = 0; b < n; ++b) {
      EXPECT_EQ(set_distance(g, VertexSet{a}, VertexSet{b}), set_distance(g, VertexSet{b}, VertexSet{a}));
      for (VertexId c = 0; c < n; ++c) {
        if (d[a][b] == kInfiniteDistance || d[b][c] == kInfiniteDistance) continue;
        EXPECT_LE(d[a][c], d[a][b] + d[b][c]);
      }
    }
  }
}

TEST(Ball, Radius) {
  const auto g = make_path(7);
  EXPECT_EQ(ball(g, 3, 0), (std::vector<VertexId>{3}));
  EXPECT_EQ(ball(g, 3, 2), (std::vector<VertexId>{1, 2, 3, 4, 5}));
}

TEST(Generators, Path) {
  const auto g = generate("path:5", 0);
  EXPECT_EQ(g.edge_count(), 4u);
  const std::vector<std::size_t> expected{1, 2, 2, 2, 1};
  for (VertexId v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), expected[v]);
}

TEST(Generators, Torus) {
  const auto g = generate("torus:4x4", 0);
  EXPECT_EQ(g.vertex_count(), 16u);
  EXPECT_EQ(g.edge_count(), 32u);
  for (VertexId v = 0; v < 16; ++v) EXPECT_EQ(g.degree(v), 4u);
  EXPECT_THROW(generate("torus:2x5", 0), InputError);
}

TEST(Generators, Tree) {
  const auto g = generate("tree:3:2", 0);
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(g.edge_count(), 9u);
  EXPECT_EQ(g.degree(0), 3u);
  EXPECT_EQ(generate("tree:3:4", 0).vertex_count(), 46u);
}

TEST(Generators, Cycle) {
  const auto g = generate("cycle:9", 0);
  EXPECT_EQ(g.edge_count(), 9u);
  EXPECT_THROW(generate("cycle:2", 0), InputError);
}

TEST(Generators, RandomRegular) {
  const auto g = generate("regular:50:3", 5);
  EXPECT_EQ(g.vertex_count(), 50u);
  EXPECT_EQ(g.edge_count(), 75u);
  for (VertexId v = 0; v < 50; ++v) EXPECT_EQ(g.degree(v), 3u);
  EXPECT_EQ(g, generate("regular:50:3", 5));
  EXPECT_NE(g, generate("regular:50:3", 6));
  EXPECT_THROW(generate("regular:7:3", 0), InputError);
}

TEST(Generators, BadDescriptors) {
  EXPECT_THROW(generate("", 0), InputError);
  EXPECT_THROW(generate("wheel:5", 0), InputError);
  EXPECT_THROW(generate("path:x", 0), InputError);
  EXPECT_THROW(generate("path:3:4", 0), InputError);
}

TEST(Generators, DegreeBoundHolds) {
  for (const char* d : {"path:10", "cycle:9", "torus:5x5", "regular:20:4", "tree:4:3"}) {
    const auto g = generate(d, 3);
    EXPECT_LE(g.observed_max_degree(), g.max_degree_bound()) << d;
    for (const auto& [u, v] : g.edges()) EXPECT_TRUE(g.has_edge(v, u)) << d;
  }
}

TEST(WithoutEdges, RemovesAndChecksBound) {
  const auto g = make_cycle(4);
  const std::vector<Edge> removed{{0, 1}, {2, 3}};
  const auto r = g.without_edges(removed, 1);
  EXPECT_EQ(r.edge_count(), 2u);
  EXPECT_FALSE(r.has_edge(0, 1));
  EXPECT_THROW(g.without_edges(std::vector<Edge>{{0, 1}}, 1), InvariantBreach);
}

TEST(EdgeList, ParsesLabelsCommentsAndHeader) {
  std::istringstream in(
      "# a triangle with a tail\n"
      "n 5\n"
      "a b\n"
      "  b   c  # trailing comment\n"
      "\n"
      "c a\n"
      "c d\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 3));
  EXPECT_EQ(g.degree(4), 0u);
}

TEST(EdgeList, Errors) {
  std::istringstream three("0 1 2\n");
  EXPECT_THROW(read_edge_list(three), InputError);
  std::istringstream loop("x x\n");
  EXPECT_THROW(read_edge_list(loop), InputError);
  std::istringstream dup("0 1\n1 0\n");
  EXPECT_THROW(read_edge_list(dup), InputError);
  std::istringstream late("0 1\nn 4\n");
  EXPECT_THROW(read_edge_list(late), InputError);
  std::istringstream small("n 2\n0 1\n1 2\n");
  EXPECT_THROW(read_edge_list(small), InputError);
  EXPECT_THROW(read_edge_list_file("/nonexistent/graph.txt"), InputError);
}
