#include "fdcolor/decomposition.hpp"

#include <algorithm>
#include <string>

#include "fdcolor/errors.hpp"

namespace fdcolor {

LabeledDigraph::LabeledDigraph(const Graph& g, std::size_t label_count,
                               std::vector<std::optional<OutEdge>> out)
    : graph_(&g), label_count_(label_count), out_(std::move(out)) {
  if (out_.size() != g.vertex_count()) {
    throw InvariantBreach("digraph covers " + std::to_string(out_.size()) + " of " +
                          std::to_string(g.vertex_count()) + " vertices");
  }
  // in_labels[v] collects labels of arcs into v.
  std::vector<std::vector<Label>> in_labels(out_.size());
  for (VertexId x = 0; x < out_.size(); ++x) {
    if (!out_[x]) continue;
    const auto [head, label] = *out_[x];
    if (!g.has_edge(x, head)) {
      throw InvariantBreach("arc " + std::to_string(x) + "->" + std::to_string(head) +
                            " is not an edge of the graph");
    }
    if (label < 1 || label > label_count_) {
      throw InvariantBreach("label " + std::to_string(label) + " outside 1.." +
                            std::to_string(label_count_));
    }
    auto& seen = in_labels[head];
    if (std::find(seen.begin(), seen.end(), label) != seen.end()) {
      throw InvariantBreach("two arcs into " + std::to_string(head) + " share label " +
                            std::to_string(label));
    }
    seen.push_back(label);
  }
}

std::vector<std::size_t> LabeledDigraph::in_degrees() const {
  std::vector<std::size_t> deg(out_.size(), 0);
  for (const auto& e : out_) {
    if (e) ++deg[e->head];
  }
  return deg;
}

std::vector<Edge> LabeledDigraph::undirected_edges() const {
  std::vector<Edge> out;
  for (VertexId x = 0; x < out_.size(); ++x) {
    if (out_[x]) out.emplace_back(std::min(x, out_[x]->head), std::max(x, out_[x]->head));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LabeledDigraph assemble_digraph(const Graph& g, std::size_t d,
                                std::span<const std::optional<VertexId>> heads,
                                std::span<const std::vector<Label>> inject) {
  std::vector<std::optional<OutEdge>> out(g.vertex_count());
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (!heads[x]) continue;
    const VertexId y = *heads[x];
    const auto nbrs = g.neighbors(y);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), x);
    if (it == nbrs.end() || *it != x) {
      throw InvariantBreach("h(" + std::to_string(x) + ") is not a neighbor");
    }
    out[x] = OutEdge{y, inject[y][static_cast<std::size_t>(it - nbrs.begin())]};
  }
  return LabeledDigraph(g, d, std::move(out));
}

LabeledDigraph build_labeled_digraph(const Graph& g, std::size_t d, const VertexRandomness& rnd,
                                     std::uint64_t level, bool skip_isolated) {
  if (g.observed_max_degree() > d) {
    throw InputError("graph degree " + std::to_string(g.observed_max_degree()) +
                     " exceeds the label count " + std::to_string(d));
  }
  const auto n = g.vertex_count();
  std::vector<std::optional<VertexId>> heads(n);
  std::vector<std::vector<Label>> inject(n);
  for (VertexId x = 0; x < n; ++x) {
    const auto nbrs = g.neighbors(x);
    if (nbrs.empty()) {
      if (!skip_isolated) throw InputError("vertex " + std::to_string(x) + " is isolated");
      continue;
    }
    heads[x] = nbrs[rnd.uniform_choice(x, "orient", level, nbrs.size())];
    inject[x] = rnd.random_injection(x, nbrs, d, "inject", level);
  }
  return assemble_digraph(g, d, heads, inject);
}

std::vector<Component> extract_components(const LabeledDigraph& D, Label label) {
  const auto n = D.vertex_count();
  // next[x] / prev[x]: label-i successor / predecessor, or n when absent.
  std::vector<VertexId> next(n, static_cast<VertexId>(n)), prev(n, static_cast<VertexId>(n));
  for (VertexId x = 0; x < n; ++x) {
    const auto& e = D.out_edge(x);
    if (e && e->label == label) {
      next[x] = e->head;
      prev[e->head] = x;
    }
  }
  std::vector<Component> comps;
  std::vector<bool> seen(n, false);
  for (VertexId x = 0; x < n; ++x) {
    if (next[x] == n || prev[x] != n) continue;
    Component c{Topology::kPath, {}};
    for (VertexId v = x; v != n; v = next[v]) {
      c.vertices.push_back(v);
      seen[v] = true;
    }
    comps.push_back(std::move(c));
  }
  // Whatever remains with a label-i arc lies on a cycle; x is its smallest vertex.
  for (VertexId x = 0; x < n; ++x) {
    if (seen[x] || next[x] == n) continue;
    Component c{Topology::kCycle, {}};
    VertexId v = x;
    do {
      c.vertices.push_back(v);
      seen[v] = true;
      v = next[v];
    } while (v != x);
    comps.push_back(std::move(c));
  }
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return *std::min_element(a.vertices.begin(), a.vertices.end()) <
           *std::min_element(b.vertices.begin(), b.vertices.end());
  });
  return comps;
}

std::vector<bool> mark_local_maxima(std::span<const std::optional<VertexId>> heads,
                                    std::span<const double> xi) {
  const auto n = heads.size();
  auto above = [&](VertexId a, VertexId b) {
    return xi[a] > xi[b] || (xi[a] == xi[b] && a > b);
  };
  std::vector<bool> has_in(n, false);
  for (VertexId x = 0; x < n; ++x) {
    if (!heads[x]) continue;
    const VertexId y = *heads[x];
    if (!heads[y]) {
      throw InputError("vertex " + std::to_string(y) + " receives an arc but has outdegree 0");
    }
    has_in[y] = true;
  }
  std::vector<bool> marked(n, false);
  for (VertexId x = 0; x < n; ++x) {
    if (!heads[x] || !has_in[x]) continue;
    const VertexId y = *heads[x];
    const VertexId z = *heads[y];
    marked[x] = above(y, x) && above(y, z);
  }
  return marked;
}

std::vector<std::optional<VertexId>> heads_of(const LabeledDigraph& D) {
  std::vector<std::optional<VertexId>> heads(D.vertex_count());
  for (VertexId x = 0; x < D.vertex_count(); ++x) {
    if (D.out_edge(x)) heads[x] = D.out_edge(x)->head;
  }
  return heads;
}

LabeledDigraph break_cycles(const LabeledDigraph& D, std::span<const double> xi) {
  const auto marked = mark_local_maxima(heads_of(D), xi);
  std::vector<std::optional<OutEdge>> kept(D.vertex_count());
  for (VertexId x = 0; x < D.vertex_count(); ++x) {
    if (!marked[x]) kept[x] = D.out_edge(x);
  }
  return LabeledDigraph(D.graph(), D.label_count(), std::move(kept));
}

LabeledDigraph break_cycles(const LabeledDigraph& D, const VertexRandomness& rnd,
                            std::uint64_t level) {
  std::vector<double> xi(D.vertex_count());
  for (VertexId v = 0; v < xi.size(); ++v) xi[v] = rnd.uniform(v, "xi", level);
  return break_cycles(D, xi);
}

StripResult strip_isolated(const Graph& g, std::size_t palette, std::size_t coordinates,
                           std::size_t first_slot, const VertexRandomness& rnd) {
  StripResult out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 0) continue;
    out.stripped.push_back(v);
    auto& row = out.colors.emplace_back(coordinates);
    for (std::size_t c = 0; c < coordinates; ++c) {
      row[c] = static_cast<Symbol>(rnd.uniform_choice(v, "coord", first_slot + c, palette));
    }
  }
  return out;
}

void write_digraph(std::ostream& out, const LabeledDigraph& D, const std::vector<bool>& marked) {
  for (VertexId x = 0; x < D.vertex_count(); ++x) {
    const auto& e = D.out_edge(x);
    if (!e) continue;
    out << x << " -> " << e->head << " [label " << e->label << "]";
    if (x < marked.size() && marked[x]) out << " [marked]";
    out << '\n';
  }
}

}  // namespace fdcolor
