#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdcolor/decomposition.hpp"
#include "fdcolor/graph.hpp"
#include "fdcolor/insertion.hpp"
#include "fdcolor/randomness.hpp"

namespace fdcolor {

enum class Variant {
  kInvariant,  // 3 symbols per coordinate, cycles colored directly, 2-dependent
  kFiid,       // 4 symbols per coordinate, cycles broken first, 4-dependent
};

const char* to_string(Variant v);
Variant parse_variant(const std::string& name);
std::size_t palette_size(Variant v);

// Coordinates are laid out level by level in processing order: the level with
// degree bound d occupies slots [0, d), the next one d-1 slots, and so on.
std::size_t total_arity(std::size_t degree_bound);
std::size_t slot_of(std::size_t degree_bound, std::size_t level, Label label);

struct LabeledArc {
  VertexId tail;
  VertexId head;
  Label label;
  friend bool operator==(const LabeledArc&, const LabeledArc&) = default;
};

// The random structure of one recursion level, before any color is drawn.
struct LevelPlan {
  std::size_t degree_bound = 0;
  // Degree-0 vertices of this level's graph.
  std::vector<VertexId> stripped;
  // slots[i-1] lists the line components of label i. Invariant-variant 2-cycles
  // appear here already cut to a 2-path along the surviving arc.
  std::vector<std::vector<Component>> slots;
  // Arcs of D (invariant) or D' (fiid); endpoints differ in slot `label`.
  std::vector<LabeledArc> arcs;
};

struct ColoringPlan {
  Variant variant = Variant::kFiid;
  std::size_t vertex_count = 0;
  std::size_t degree_bound = 0;
  std::vector<LevelPlan> levels;
};

// Runs the degree recursion: strip isolated vertices, build D, (fiid) break
// cycles, split into label classes, drop the undirected arcs, repeat with
// bound one lower.
ColoringPlan sample_plan(const Graph& g, Variant variant, const VertexRandomness& rnd);

class ColorAssignment {
 public:
  ColorAssignment(std::size_t vertex_count, std::size_t q, std::size_t degree_bound);

  std::size_t vertex_count() const { return n_; }
  std::size_t q() const { return q_; }
  std::size_t degree_bound() const { return degree_bound_; }
  std::size_t arity() const { return arity_; }
  // Level sizes in slot order: d, d-1, ..., 1.
  std::vector<std::size_t> level_sizes() const;

  std::span<const Symbol> tuple(VertexId v) const {
    return {coords_.data() + static_cast<std::size_t>(v) * arity_, arity_};
  }
  Symbol& at(VertexId v, std::size_t slot) { return coords_[v * arity_ + slot]; }
  Symbol at(VertexId v, std::size_t slot) const { return coords_[v * arity_ + slot]; }

  std::vector<std::vector<Symbol>> tuples() const;
  std::vector<std::uint64_t> flattened() const;

 private:
  std::size_t n_;
  std::size_t q_;
  std::size_t degree_bound_;
  std::size_t arity_;
  std::vector<Symbol> coords_;
};

// Draws colors for a plan: each component from the insertion measure fed by
// its own vertices (tag "insert"), 2-cycles never occur, and every other
// (vertex, slot) pair uniformly (tag "coord").
ColorAssignment color_plan(const ColoringPlan& plan, const VertexRandomness& rnd);

ColorAssignment color_invariant(const Graph& g, const VertexRandomness& rnd);
ColorAssignment color_fiid(const Graph& g, const VertexRandomness& rnd);
ColorAssignment color_graph(const Graph& g, Variant variant, const VertexRandomness& rnd);

// Injective mixed-radix encoding of equal-length tuples over {0..q-1}, most
// significant symbol first. Throws InputError on ragged tuples and when q^arity
// does not fit in 64 bits.
std::vector<std::uint64_t> flatten(std::span<const std::vector<Symbol>> tuples, std::size_t q);

// Smallest R such that resampling every label at distance > R' from v leaves
// v's color unchanged for all R' >= R (probed with one resampling per R').
std::size_t stable_radius(const Graph& g, Variant variant, const VertexRandomness& rnd,
                          VertexId v, std::uint64_t salt);

}  // namespace fdcolor
