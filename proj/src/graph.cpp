#include "fdcolor/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "fdcolor/errors.hpp"
#include "fdcolor/randomness.hpp"

namespace fdcolor {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  Graph g = from_edges(vertex_count, edges, 0);
  return g;
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                        std::size_t max_degree_bound) {
  Graph g;
  g.adjacency_.resize(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(vertex_count) + "-1");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (VertexId v = 0; v < vertex_count; ++v) {
    auto& adj = g.adjacency_[v];
    std::sort(adj.begin(), adj.end());
    auto dup = std::adjacent_find(adj.begin(), adj.end());
    if (dup != adj.end()) {
      throw InputError("duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) + "}");
    }
  }
  g.edge_count_ = edges.size();
  const std::size_t observed = g.observed_max_degree();
  if (max_degree_bound != 0 && max_degree_bound < observed) {
    throw InputError("degree bound " + std::to_string(max_degree_bound) +
                     " is below the observed maximum degree " + std::to_string(observed));
  }
  g.max_degree_bound_ = max_degree_bound == 0 ? observed : max_degree_bound;
  return g;
}

std::size_t Graph::observed_max_degree() const {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= adjacency_.size()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < adjacency_.size(); ++u) {
    for (VertexId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::without_edges(std::span<const Edge> removed, std::size_t max_degree_bound) const {
  std::vector<Edge> drop;
  drop.reserve(removed.size());
  for (auto [u, v] : removed) drop.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> keep;
  for (const auto& e : edges()) {
    if (!std::binary_search(drop.begin(), drop.end(), e)) keep.push_back(e);
  }
  Graph g = from_edges(vertex_count(), keep);
  if (g.max_degree_bound_ > max_degree_bound) {
    throw InvariantBreach("residual graph has degree " + std::to_string(g.max_degree_bound_) +
                          " above its bound " + std::to_string(max_degree_bound));
  }
  g.max_degree_bound_ = max_degree_bound;
  return g;
}

VertexSet::VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

VertexSet::VertexSet(std::vector<VertexId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

Graph build_graph(std::span<const Edge> edges, std::size_t vertex_count) {
  return Graph::from_edges(vertex_count, edges);
}

namespace {

std::vector<std::size_t> multi_source_bfs(const Graph& g, std::span<const VertexId> sources) {
  std::vector<std::size_t> dist(g.vertex_count(), kInfiniteDistance);
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    if (s >= g.vertex_count()) throw InputError("vertex " + std::to_string(s) + " out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] == kInfiniteDistance) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

std::size_t set_distance(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw InputError("set_distance: empty vertex set");
  const auto dist = multi_source_bfs(g, a.members());
  std::size_t best = kInfiniteDistance;
  for (VertexId v : b.members()) {
    if (v >= g.vertex_count()) throw InputError("vertex " + std::to_string(v) + " out of range");
    best = std::min(best, dist[v]);
  }
  return best;
}

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source) {
  const VertexId s[] = {source};
  return multi_source_bfs(g, s);
}

std::vector<VertexId> ball(const Graph& g, VertexId v, std::size_t radius) {
  const auto dist = bfs_distances(g, v);
  std::vector<VertexId> out;
  for (VertexId u = 0; u < dist.size(); ++u) {
    if (dist[u] <= radius) out.push_back(u);
  }
  return out;
}

// ---- generators -------------------------------------------------------------

Graph make_path(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i) edges.emplace_back(i, static_cast<VertexId>((i + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph make_torus(std::size_t width, std::size_t height) {
  if (width < 3 || height < 3) throw InputError("torus dimensions must be at least 3");
  auto id = [width](std::size_t x, std::size_t y) { return static_cast<VertexId>(y * width + x); };
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      edges.emplace_back(id(x, y), id((x + 1) % width, y));
      edges.emplace_back(id(x, y), id(x, (y + 1) % height));
    }
  }
  return Graph::from_edges(width * height, edges);
}

Graph make_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw InputError("no d-regular graph exists when n*d is odd");
  if (d >= n && !(n == 0 && d == 0)) throw InputError("regular degree must be below n");
  const VertexRandomness rnd(seed);
  std::vector<VertexId> stubs;
  for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  constexpr std::uint64_t kMaxAttempts = 100000;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Pairing model: shuffle stubs, pair consecutive ones, accept if simple.
    auto pool = stubs;
    for (std::size_t i = pool.size(); i > 1; --i) {
      const auto j = rnd.uniform_choice(0, "regular", attempt, i, i);
      std::swap(pool[i - 1], pool[j]);
    }
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < pool.size() && simple; i += 2) {
      const auto u = std::min(pool[i], pool[i + 1]);
      const auto v = std::max(pool[i], pool[i + 1]);
      if (u == v) simple = false;
      edges.emplace_back(u, v);
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph::from_edges(n, edges);
  }
  throw InputError("random regular generation did not produce a simple graph");
}

Graph make_truncated_tree(std::size_t d, std::size_t depth) {
  if (d < 1) throw InputError("tree degree must be at least 1");
  std::vector<Edge> edges;
  std::vector<VertexId> frontier = {0};
  VertexId next = 1;
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<VertexId> grown;
    for (VertexId parent : frontier) {
      const std::size_t children = parent == 0 ? d : d - 1;
      for (std::size_t c = 0; c < children; ++c) {
        edges.emplace_back(parent, next);
        grown.push_back(next++);
      }
    }
    frontier = std::move(grown);
  }
  return Graph::from_edges(next, edges);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::size_t parse_size(const std::string& token, const std::string& context) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != token.size() || token.front() == '-') {
    throw InputError("invalid number '" + token + "' in " + context);
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

Graph generate(const std::string& descriptor, std::uint64_t seed) {
  const auto parts = split(descriptor, ':');
  if (parts.empty()) throw InputError("empty generator descriptor");
  const auto& kind = parts[0];
  auto need = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw InputError("generator '" + kind + "' expects " + std::to_string(count) +
                       " parameter(s): " + descriptor);
    }
  };
  if (kind == "path") {
    need(1);
    return make_path(parse_size(parts[1], descriptor));
  }
  if (kind == "cycle") {
    need(1);
    return make_cycle(parse_size(parts[1], descriptor));
  }
  if (kind == "torus") {
    need(1);
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw InputError("torus expects WxH: " + descriptor);
    return make_torus(parse_size(dims[0], descriptor), parse_size(dims[1], descriptor));
  }
  if (kind == "regular") {
    need(2);
    return make_random_regular(parse_size(parts[1], descriptor), parse_size(parts[2], descriptor),
                               seed);
  }
  if (kind == "tree") {
    need(2);
    return make_truncated_tree(parse_size(parts[1], descriptor), parse_size(parts[2], descriptor));
  }
  throw InputError("unknown generator '" + kind + "'");
}

Graph read_edge_list(std::istream& in) {
  std::unordered_map<std::string, VertexId> ids;
  std::vector<Edge> edges;
  std::size_t declared = 0;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<VertexId>(ids.size()));
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (tokens.size() != 2) throw InputError(where + ": expected two fields, got " +
                                             std::to_string(tokens.size()));
    if (tokens[0] == "n") {
      if (have_header || !edges.empty()) throw InputError(where + ": header must come first");
      declared = parse_size(tokens[1], where);
      have_header = true;
      continue;
    }
    const VertexId u = intern(tokens[0]);
    const VertexId v = intern(tokens[1]);
    if (u == v) throw InputError(where + ": self-loop at '" + tokens[0] + "'");
    edges.emplace_back(u, v);
  }
  if (have_header && ids.size() > declared) {
    throw InputError("edge list names " + std::to_string(ids.size()) +
                     " vertices but the header declares " + std::to_string(declared));
  }
  return Graph::from_edges(std::max(declared, ids.size()), edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

}  // namespace fdcolor
