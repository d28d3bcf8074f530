#include "fdcolor/pipeline.hpp"

#include <algorithm>
#include <limits>

#include "fdcolor/errors.hpp"

namespace fdcolor {

const char* to_string(Variant v) { return v == Variant::kInvariant ? "invariant" : "fiid"; }

Variant parse_variant(const std::string& name) {
  if (name == "invariant") return Variant::kInvariant;
  if (name == "fiid") return Variant::kFiid;
  throw InputError("unknown variant '" + name + "' (expected invariant or fiid)");
}

std::size_t palette_size(Variant v) { return v == Variant::kInvariant ? 3 : 4; }

std::size_t total_arity(std::size_t degree_bound) {
  return degree_bound * (degree_bound + 1) / 2;
}

std::size_t slot_of(std::size_t degree_bound, std::size_t level, Label label) {
  // Levels before `level` have bounds d, d-1, ..., d-level+1.
  const std::size_t before = level * degree_bound - level * (level - 1) / 2;
  return before + label - 1;
}

ColoringPlan sample_plan(const Graph& g, Variant variant, const VertexRandomness& rnd) {
  const std::size_t d = g.max_degree_bound();
  ColoringPlan plan{variant, g.vertex_count(), d, {}};
  Graph current = g;
  for (std::size_t level = 0; level < d; ++level) {
    const std::size_t bound = d - level;
    if (current.observed_max_degree() > bound) {
      throw InvariantBreach("level " + std::to_string(level) + " graph exceeds degree bound " +
                            std::to_string(bound));
    }
    LevelPlan lp;
    lp.degree_bound = bound;
    for (VertexId v = 0; v < current.vertex_count(); ++v) {
      if (current.degree(v) == 0) lp.stripped.push_back(v);
    }
    LabeledDigraph D = build_labeled_digraph(current, bound, rnd, level, true);
    if (variant == Variant::kFiid) D = break_cycles(D, rnd, level);

    lp.slots.resize(bound);
    for (Label label = 1; label <= bound; ++label) {
      const auto slot = slot_of(d, level, label);
      for (auto& comp : extract_components(D, label)) {
        if (comp.topology == Topology::kCycle && variant == Variant::kFiid) {
          throw InvariantBreach("directed cycle survived cycle breaking");
        }
        if (comp.topology == Topology::kCycle && comp.vertices.size() == 2) {
          // Cut the 2-cycle at a random arc; the survivor orients the 2-path.
          const auto keep = rnd.uniform_choice(comp.vertices[0], "twocycle", slot, 2);
          comp = Component{Topology::kPath, {comp.vertices[keep], comp.vertices[1 - keep]}};
        }
        lp.slots[label - 1].push_back(std::move(comp));
      }
    }
    for (VertexId x = 0; x < D.vertex_count(); ++x) {
      if (const auto& e = D.out_edge(x)) lp.arcs.push_back({x, e->head, e->label});
    }
    current = current.without_edges(D.undirected_edges(), bound - 1);
    plan.levels.push_back(std::move(lp));
  }
  if (current.edge_count() != 0) throw InvariantBreach("edges left after the last level");
  return plan;
}

ColorAssignment::ColorAssignment(std::size_t vertex_count, std::size_t q, std::size_t degree_bound)
    : n_(vertex_count),
      q_(q),
      degree_bound_(degree_bound),
      arity_(total_arity(degree_bound)),
      coords_(vertex_count * arity_, 0) {}

std::vector<std::size_t> ColorAssignment::level_sizes() const {
  std::vector<std::size_t> sizes;
  for (std::size_t b = degree_bound_; b >= 1; --b) sizes.push_back(b);
  return sizes;
}

std::vector<std::vector<Symbol>> ColorAssignment::tuples() const {
  std::vector<std::vector<Symbol>> out(n_);
  for (VertexId v = 0; v < n_; ++v) {
    const auto t = tuple(v);
    out[v].assign(t.begin(), t.end());
  }
  return out;
}

std::vector<std::uint64_t> ColorAssignment::flattened() const { return flatten(tuples(), q_); }

ColorAssignment color_plan(const ColoringPlan& plan, const VertexRandomness& rnd) {
  const std::size_t q = palette_size(plan.variant);
  ColorAssignment colors(plan.vertex_count, q, plan.degree_bound);
  const std::size_t arity = colors.arity();
  std::vector<bool> filled(plan.vertex_count * arity, false);
  for (std::size_t level = 0; level < plan.levels.size(); ++level) {
    const auto& lp = plan.levels[level];
    for (Label label = 1; label <= lp.degree_bound; ++label) {
      const auto slot = slot_of(plan.degree_bound, level, label);
      for (const auto& comp : lp.slots[label - 1]) {
        ChoiceStream stream(rnd, comp.vertices, "insert", slot);
        const auto line = sample_line(comp.topology, comp.vertices.size(), q, stream);
        for (std::size_t p = 0; p < comp.vertices.size(); ++p) {
          colors.at(comp.vertices[p], slot) = line.colors[p];
          filled[comp.vertices[p] * arity + slot] = true;
        }
      }
    }
  }
  for (VertexId v = 0; v < plan.vertex_count; ++v) {
    for (std::size_t slot = 0; slot < arity; ++slot) {
      if (filled[v * arity + slot]) continue;
      colors.at(v, slot) = static_cast<Symbol>(rnd.uniform_choice(v, "coord", slot, q));
    }
  }
  return colors;
}

ColorAssignment color_graph(const Graph& g, Variant variant, const VertexRandomness& rnd) {
  return color_plan(sample_plan(g, variant, rnd), rnd);
}

ColorAssignment color_invariant(const Graph& g, const VertexRandomness& rnd) {
  return color_graph(g, Variant::kInvariant, rnd);
}

ColorAssignment color_fiid(const Graph& g, const VertexRandomness& rnd) {
  return color_graph(g, Variant::kFiid, rnd);
}

std::vector<std::uint64_t> flatten(std::span<const std::vector<Symbol>> tuples, std::size_t q) {
  if (q < 2) throw InputError("flatten: palette must have at least 2 symbols");
  if (tuples.empty()) return {};
  const std::size_t arity = tuples.front().size();
  unsigned __int128 span = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    span *= q;
    if (span > std::numeric_limits<std::uint64_t>::max()) {
      throw InputError("flatten: " + std::to_string(q) + "^" + std::to_string(arity) +
                       " colors do not fit in 64 bits");
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (t.size() != arity) throw InputError("flatten: ragged color tuples");
    std::uint64_t code = 0;
    for (Symbol s : t) {
      if (s >= q) throw InputError("flatten: symbol outside the palette");
      code = code * q + s;
    }
    out.push_back(code);
  }
  return out;
}

std::size_t stable_radius(const Graph& g, Variant variant, const VertexRandomness& rnd,
                          VertexId v, std::uint64_t salt) {
  const auto base = color_graph(g, variant, rnd);
  const auto reference = base.tuple(v);
  const auto dist = bfs_distances(g, v);
  std::size_t eccentricity = 0;
  for (auto d : dist) {
    if (d != kInfiniteDistance) eccentricity = std::max(eccentricity, d);
  }
  std::size_t radius = eccentricity + 1;
  for (std::size_t r = eccentricity + 1; r-- > 0;) {
    std::vector<VertexId> outside;
    for (VertexId u = 0; u < dist.size(); ++u) {
      if (dist[u] > r) outside.push_back(u);
    }
    const auto perturbed = color_graph(g, variant, rnd.resampled(outside, mix64(salt + r)));
    const auto t = perturbed.tuple(v);
    if (!std::equal(t.begin(), t.end(), reference.begin(), reference.end())) break;
    radius = r;
  }
  return radius;
}

}  // namespace fdcolor
