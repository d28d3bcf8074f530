#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "fdcolor/graph.hpp"
#include "fdcolor/insertion.hpp"
#include "fdcolor/randomness.hpp"

namespace fdcolor {

using Label = std::uint32_t;  // 1..d

struct OutEdge {
  VertexId head;
  Label label;
  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

// Functional digraph on the vertices of a graph: every vertex has at most one
// labeled out-edge, each an edge of the graph, and the in-edges of a vertex
// carry distinct labels. Holds a pointer to the graph, which must outlive it.
class LabeledDigraph {
 public:
  // Validates the invariants above; throws InvariantBreach otherwise.
  LabeledDigraph(const Graph& g, std::size_t label_count, std::vector<std::optional<OutEdge>> out);

  const Graph& graph() const { return *graph_; }
  std::size_t label_count() const { return label_count_; }
  std::size_t vertex_count() const { return out_.size(); }
  const std::optional<OutEdge>& out_edge(VertexId v) const { return out_[v]; }
  std::vector<std::size_t> in_degrees() const;

  // Undirected version of the arcs, each once as (min, max).
  std::vector<Edge> undirected_edges() const;

  friend bool operator==(const LabeledDigraph& a, const LabeledDigraph& b) {
    return a.label_count_ == b.label_count_ && a.out_ == b.out_;
  }

 private:
  const Graph* graph_;
  std::size_t label_count_;
  std::vector<std::optional<OutEdge>> out_;
};

// D from explicit choices: heads[x] is h(x) and inject[y][j] = o_y(neighbors(y)[j]).
// Vertices with no head (std::nullopt) are left out of D.
LabeledDigraph assemble_digraph(const Graph& g, std::size_t d,
                                std::span<const std::optional<VertexId>> heads,
                                std::span<const std::vector<Label>> inject);

// Every vertex picks a uniform neighbor h(x) (tag "orient") and a uniform
// injection o_x of its neighbors into {1..d} (tag "inject"); the arc x -> h(x)
// gets label o_{h(x)}(x). Both draws use `level` as stream index. Isolated
// vertices are an InputError unless `skip_isolated` is set, in which case they
// stay outside D.
LabeledDigraph build_labeled_digraph(const Graph& g, std::size_t d, const VertexRandomness& rnd,
                                     std::uint64_t level, bool skip_isolated = false);

// A maximal directed path (tail first) or directed cycle (starting at its
// smallest vertex) of one label class.
struct Component {
  Topology topology;
  std::vector<VertexId> vertices;
  friend bool operator==(const Component&, const Component&) = default;
  friend auto operator<=>(const Component&, const Component&) = default;
};

// Components of the label-i arcs, ordered by smallest vertex.
std::vector<Component> extract_components(const LabeledDigraph& D, Label label);

// Marks arc (x, h(x)) when x has an in-arc and h(x) beats both x and h(h(x))
// in the order given by `xi` (ties broken by vertex id). Vertices without an
// out-arc must not receive arcs; that is an InputError (outdegree 0 in D).
std::vector<bool> mark_local_maxima(std::span<const std::optional<VertexId>> heads,
                                    std::span<const double> xi);

// D minus the marked arcs, with xi drawn per vertex (tag "xi", index `level`).
LabeledDigraph break_cycles(const LabeledDigraph& D, const VertexRandomness& rnd,
                            std::uint64_t level);
LabeledDigraph break_cycles(const LabeledDigraph& D, std::span<const double> xi);

std::vector<std::optional<VertexId>> heads_of(const LabeledDigraph& D);

struct StripResult {
  std::vector<VertexId> stripped;
  // Uniform symbols for each stripped vertex: `coordinates` of them, from the
  // palette {0..palette-1}; row j belongs to stripped[j].
  std::vector<std::vector<Symbol>> colors;
};

// Isolated vertices receive independent uniform symbols; coordinate c of
// vertex v is drawn under tag "coord" at stream index first_slot + c. The residual graph is `g` itself,
// since isolated vertices carry no edges.
StripResult strip_isolated(const Graph& g, std::size_t palette, std::size_t coordinates,
                           std::size_t first_slot, const VertexRandomness& rnd);

// Lines `x -> h(x) [label i]`, with a trailing ` [marked]` for marked arcs.
void write_digraph(std::ostream& out, const LabeledDigraph& D,
                   const std::vector<bool>& marked = {});

}  // namespace fdcolor
