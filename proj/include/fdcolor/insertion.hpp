#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "fdcolor/randomness.hpp"

namespace fdcolor {

// Color symbols are stored 0-based (0..q-1) and printed 1-based.
using Symbol = std::uint8_t;

enum class Topology { kPath, kCycle };

const char* to_string(Topology t);

struct LineColoring {
  Topology topology = Topology::kPath;
  std::size_t q = 4;
  std::vector<Symbol> colors;
};

// Adjacent positions differ; for cycles the wrap-around pair counts as well
// once there are at least two positions (a 2-cycle has one adjacency).
bool is_proper(Topology topology, std::span<const Symbol> colors);

enum class InsertionStrategy {
  // Each step picks uniformly among the insertions that keep the sequence
  // proper. The number of such moves depends only on the current length, so
  // every proper build history is equally likely, exactly as under kRestart.
  kSequential,
  // Literal rejection: uniform position and color, restart the whole run on a
  // conflict. Acceptance decays like (n+1)/2^n, so only usable for short lines.
  kRestart,
};

inline constexpr std::uint64_t kMaxRestarts = 10'000'000;

// Samples the insertion coloring of a path (n >= 1) or cycle (n >= 3) with
// q in {3, 4}. Cycles are built as necklaces and then placed under a uniform
// rotation, so position labels carry no trace of the build order.
LineColoring sample_line(Topology topology, std::size_t n, std::size_t q, ChoiceStream& stream,
                         InsertionStrategy strategy = InsertionStrategy::kSequential);

// Exact law of sample_line. Probabilities are W(x)/Z where W(x) counts the
// valid build orders of x (deletion recursion) and Z sums W over the support.
class ExactDistribution {
 public:
  struct Entry {
    std::vector<Symbol> colors;
    std::uint64_t weight;
  };

  ExactDistribution(Topology topology, std::size_t n, std::size_t q, std::vector<Entry> support);

  Topology topology() const { return topology_; }
  std::size_t length() const { return n_; }
  std::size_t q() const { return q_; }
  // Sorted lexicographically by color sequence.
  const std::vector<Entry>& support() const { return support_; }
  std::uint64_t total_weight() const { return total_; }

  mpq_class probability(std::span<const Symbol> colors) const;

  // Joint weights of the listed positions (in the given order), indexed by
  // the base-q number whose most significant digit is the first position.
  // Weights share the denominator total_weight().
  std::vector<std::uint64_t> marginal_weights(std::span<const std::size_t> positions) const;
  std::vector<mpq_class> marginal(std::span<const std::size_t> positions) const;

  // Dump format: one `sequence numerator/denominator` line per support entry.
  void write(std::ostream& out) const;

 private:
  Topology topology_;
  std::size_t n_;
  std::size_t q_;
  std::vector<Entry> support_;
  std::uint64_t total_ = 0;
};

inline constexpr std::size_t kDefaultLineOracleCap = 9;

// Throws CapExceeded when n exceeds `cap` or the cycle is shorter than 3.
ExactDistribution exact_line_distribution(Topology topology, std::size_t n, std::size_t q,
                                          std::size_t cap = kDefaultLineOracleCap);

struct LineDependenceResult {
  bool independent = true;
  mpq_class worst_discrepancy = 0;
  // Position masks of the pair attaining the worst discrepancy (0 if none).
  std::uint32_t worst_a = 0;
  std::uint32_t worst_b = 0;
  std::size_t pairs_checked = 0;
};

// Exhaustive check over all pairs of disjoint non-empty position sets whose
// separation (cyclic for cycles) exceeds k.
LineDependenceResult check_k_dependence_line(const ExactDistribution& dist, std::size_t k);

}  // namespace fdcolor
