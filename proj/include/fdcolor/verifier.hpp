#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdcolor/decomposition.hpp"
#include "fdcolor/graph.hpp"
#include "fdcolor/pipeline.hpp"
#include "fdcolor/randomness.hpp"

namespace fdcolor {

// ---- properness -----------------------------------------------------------

// Throws InputError when the coloring does not cover every vertex.
bool check_properness(const Graph& g, std::span<const std::uint64_t> colors);
bool check_properness(const Graph& g, const ColorAssignment& colors);

// ---- exact joint law --------------------------------------------------------

// The construction's randomness as a DAG. A node is one recursion level on one
// residual graph; each of its outcomes fixes the level's line components (one
// list per slot of the level) with an exact probability and names the node of
// the next level (-1 after the last one). Slots of a node start at first_slot.
struct JointOutcome {
  mpq_class weight;
  std::vector<std::vector<Component>> slots;
  std::int32_t child = -1;
};

struct JointNode {
  std::size_t first_slot = 0;
  std::vector<JointOutcome> outcomes;
};

// Exact law of the full color tuples of an ordered vertex list S in the same
// DAG shape: every outcome carries one table per slot of its node. Each table
// has q^|S| cells indexed by the base-q code of S's symbols in that slot (first
// vertex most significant).
struct FactoredLaw {
  struct Outcome {
    mpq_class weight;
    std::vector<std::uint32_t> tables;
    std::int32_t child = -1;
  };
  struct Node {
    std::size_t first_slot = 0;
    std::vector<Outcome> outcomes;
  };

  std::size_t q = 0;
  std::size_t width = 0;
  std::size_t slots = 0;
  std::vector<std::vector<mpq_class>> tables;
  std::vector<Node> nodes;  // root first

  std::size_t cells() const;  // (q^width)^slots, saturating
  // Dense law indexed slot-major: slot 0 is the most significant digit group.
  // Throws CapExceeded when cells() > max_cells.
  std::vector<mpq_class> dense(std::size_t max_cells) const;
  // Expectation of prod_t test[t](code of S in slot t).
  mpq_class contract(std::span<const std::vector<mpq_class>> test) const;
};

class ExactJoint {
 public:
  ExactJoint(Graph g, Variant variant, std::size_t q, std::size_t arity,
             std::vector<JointNode> nodes);

  const Graph& graph() const { return graph_; }
  Variant variant() const { return variant_; }
  std::size_t q() const { return q_; }
  std::size_t arity() const { return arity_; }
  const std::vector<JointNode>& nodes() const { return nodes_; }
  std::size_t outcome_count() const;

  mpq_class total_mass() const;
  FactoredLaw law_of(std::span<const VertexId> vertices) const;
  // Exact law of one slot across `vertices` (q^|vertices| cells).
  std::vector<mpq_class> slot_law(std::size_t slot, std::span<const VertexId> vertices) const;
  mpq_class probability_equal(VertexId u, VertexId v) const;
  // Every edge is bichromatic with probability exactly 1.
  bool support_is_proper() const;

  // Full map from flattened colorings to probabilities; small instances only.
  std::map<std::vector<std::uint64_t>, mpq_class> materialize(std::size_t max_cells = 1 << 16) const;

 private:
  struct Spot {
    std::int32_t component;  // -1: uniform in this slot
    std::uint32_t position;
  };

  Graph graph_;
  Variant variant_;
  std::size_t q_;
  std::size_t arity_;
  std::vector<JointNode> nodes_;
  // spots_[node][outcome][local_slot * n + v]
  std::vector<std::vector<std::vector<Spot>>> spots_;
};

struct ExactCaps {
  std::size_t max_vertices = 6;
  std::size_t max_edges = 8;
};

// Sums over every discrete choice of the construction: the heads h(x), the
// labels of the arcs (uniform injections restricted to in-arcs), the relative
// order of xi on the vertices that enter a marking test (fiid), and the cut of
// each same-label 2-cycle (invariant). Identical level outcomes are merged and
// levels on equal residual graphs share a node.
ExactJoint exact_pipeline_distribution(const Graph& g, Variant variant, ExactCaps caps = {});

// Rough count of first-level configurations, used in cap diagnostics.
double exact_cost_estimate(const Graph& g, Variant variant);

// ---- dependence reports -------------------------------------------------------

struct PairRecord {
  VertexSet a;
  VertexSet b;
  std::size_t distance = 0;
  // Exact checks: discrepancy is a rational under `metric` ("max_abs" or
  // "projection"). Monte Carlo: metric is "tv", slot names the projection.
  std::string metric;
  mpq_class exact_discrepancy = 0;
  std::optional<std::size_t> slot;
  double tv = 0.0;
  double radius = 0.0;
  bool independent = true;
};

struct DependenceReport {
  std::string mode;  // "exact" or "monte_carlo"
  Variant variant = Variant::kFiid;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string graph;
  std::vector<PairRecord> records;
  bool pass = true;
  mpq_class worst_exact = 0;
  // Monte Carlo only.
  std::size_t trials = 0;
  std::size_t bootstrap = 0;
  std::vector<PairRecord> controls;
  bool control_detected = false;
  std::vector<std::string> warnings;
};

// Discrepancy of A and B under the joint: max |P(A,B) - P(A)P(B)| over all
// full-color outcomes when the dense table has at most `dense_cells` cells.
// Larger tables are contracted exactly against a few seeded random product
// test functions; a nonzero value proves dependence, and a zero value misses a
// dependence with probability below 1e-9. Empty sets are independent.
PairRecord exact_pair_discrepancy(const ExactJoint& joint, const VertexSet& a, const VertexSet& b,
                                  std::size_t dense_cells = 4096);

// Every pair of disjoint vertex sets of size <= max_window at distance > k.
DependenceReport check_k_dependence_exact(const ExactJoint& joint, std::size_t k,
                                          std::size_t max_window = 2);

// Smallest k at which check_k_dependence_exact passes.
std::size_t smallest_passing_k(const ExactJoint& joint, std::size_t max_window = 2);

struct McOptions {
  std::size_t window_pairs = 4;
  std::size_t control_pairs = 2;
  std::size_t bootstrap = 200;
  double alpha = 0.01;
  std::size_t jobs = 1;
};

// Samples `trials` colorings, picks window pairs (one or two vertices each) at
// distance > k, and for every slot compares the empirical joint of the two
// windows' symbols with the product of its marginals in total variation. The
// noise radius of each statistic comes from a permutation bootstrap (B side
// shuffled across trials): null mean plus a Bonferroni normal quantile times
// the null spread, at family level alpha. Adjacent windows are run the same
// way as a power control.
DependenceReport check_k_dependence_mc(const Graph& g, Variant variant, std::size_t k,
                                       std::size_t trials, const VertexRandomness& rnd,
                                       const McOptions& options = {});

// Flat storage of sampled colorings: trial-major, then vertex, then slot.
struct SampleBank {
  std::size_t trials = 0;
  std::size_t vertices = 0;
  std::size_t arity = 0;
  std::size_t q = 0;
  std::vector<Symbol> symbols;
  Symbol at(std::size_t trial, VertexId v, std::size_t slot) const {
    return symbols[(trial * vertices + v) * arity + slot];
  }
};

// The Monte Carlo test on an existing bank (any source of colorings, such as
// an iid control). Window and shuffle draws come from `rnd`.
DependenceReport check_k_dependence_bank(const Graph& g, const SampleBank& bank, std::size_t k,
                                         const VertexRandomness& rnd, const McOptions& options = {});

// Trial t uses rnd.for_trial(t); results do not depend on `jobs`.
SampleBank sample_bank(const Graph& g, Variant variant, std::size_t trials,
                       const VertexRandomness& rnd, std::size_t jobs = 1);

// Upper quantile of the standard normal.
double normal_upper_quantile(double tail);

}  // namespace fdcolor
