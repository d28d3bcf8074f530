#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fdcolor {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr std::size_t kInfiniteDistance = std::numeric_limits<std::size_t>::max();

// Finite simple undirected graph on dense ids 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Rejects self-loops, duplicate edges (in either orientation) and ids out of
  // range with an InputError. The degree bound defaults to the observed
  // maximum degree; an explicit bound must not be smaller than it.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                          std::size_t max_degree_bound);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t max_degree_bound() const { return max_degree_bound_; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
  std::size_t observed_max_degree() const;

  // Sorted ascending.
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  // Each undirected edge once, as (min, max), sorted.
  std::vector<Edge> edges() const;

  // Subgraph on the same vertex ids without the given undirected edges.
  Graph without_edges(std::span<const Edge> removed, std::size_t max_degree_bound) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::size_t max_degree_bound_ = 0;
};

// Sorted set of vertex ids of some graph.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  explicit VertexSet(std::vector<VertexId> ids);

  std::span<const VertexId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> members_;
};

Graph build_graph(std::span<const Edge> edges, std::size_t vertex_count);

// Shortest-path distance between the closest pair; kInfiniteDistance when the
// sets lie in different components. Both sets must be non-empty.
std::size_t set_distance(const Graph& g, const VertexSet& a, const VertexSet& b);

// All distances from a single source (kInfiniteDistance when unreachable).
std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source);

// Vertices within distance `radius` of v, sorted.
std::vector<VertexId> ball(const Graph& g, VertexId v, std::size_t radius);

// ---- generators -----------------------------------------------------------

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_torus(std::size_t width, std::size_t height);
// Uniformly random simple d-regular graph via the pairing model with restarts.
Graph make_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);
// The d-regular tree truncated at the given depth (root at depth 0).
Graph make_truncated_tree(std::size_t d, std::size_t depth);

// Parses generator descriptors of the form
//   path:N  cycle:N  torus:WxH  regular:N:D  tree:D:DEPTH
Graph generate(const std::string& descriptor, std::uint64_t seed);

// ---- edge-list files --------------------------------------------------------

// One `u v` pair per line, `#` starts a comment, an optional `n <count>` line
// declares the vertex count. Labels are arbitrary tokens mapped to ids in
// first-seen order; declared-but-unseen vertices follow as isolated ids.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

}  // namespace fdcolor
