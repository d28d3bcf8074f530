#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdcolor/graph.hpp"

namespace fdcolor {

// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// FNV-1a, then mixed.
constexpr std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return mix64(h);
}

// Per-vertex iid uniforms derived from one master seed.
//
// Every value is a pure function of (seed, vertex, tag, index, lane): the key
// is hashed into a SplitMix64 counter, so any two distinct keys behave as
// independent streams and replays are exact. A per-vertex salt can be set to
// resample the labels of selected vertices, which is how locality is probed.
class VertexRandomness {
 public:
  explicit VertexRandomness(std::uint64_t master_seed);

  std::uint64_t master_seed() const { return seed_; }

  std::uint64_t word(VertexId v, std::string_view tag, std::uint64_t index,
                     std::uint64_t lane = 0) const;

  // Uniform on [0,1) with 53 bits of resolution.
  double uniform(VertexId v, std::string_view tag, std::uint64_t index,
                 std::uint64_t lane = 0) const;

  // Uniform on {0..m-1}, exact: rejection on the 64-bit word removes modulo
  // bias. Throws InputError for m == 0.
  std::uint64_t uniform_choice(VertexId v, std::string_view tag, std::uint64_t index,
                               std::uint64_t m, std::uint64_t lane = 0) const;

  // Uniform injection of `neighbors` into {1..d}; result[j] is the label of
  // neighbors[j]. Throws InputError if there are more neighbors than labels.
  std::vector<std::uint32_t> random_injection(VertexId v, std::span<const VertexId> neighbors,
                                              std::size_t d, std::string_view tag,
                                              std::uint64_t index) const;

  // Same seed, but the given vertices draw from fresh streams keyed by `salt`.
  VertexRandomness resampled(std::span<const VertexId> vertices, std::uint64_t salt) const;

  // Independent randomness for repetition `trial` of an experiment.
  VertexRandomness for_trial(std::uint64_t trial) const;

 private:
  std::uint64_t key(VertexId v, std::string_view tag, std::uint64_t index,
                    std::uint64_t lane) const;

  std::uint64_t seed_;
  // Empty means no vertex is salted.
  std::shared_ptr<const std::vector<std::uint64_t>> salts_;
};

// Sequential draws spread over an ordered vertex list: draw j comes from
// vertices[j % size] at counter j / size. Used to feed a line component's
// insertion sampler from the component's own labels.
class ChoiceStream {
 public:
  ChoiceStream(const VertexRandomness& rnd, std::vector<VertexId> vertices,
               std::string_view tag, std::uint64_t index);

  std::uint64_t choose(std::uint64_t m);
  std::uint64_t draws() const { return cursor_; }

 private:
  const VertexRandomness* rnd_;
  std::vector<VertexId> vertices_;
  std::string tag_;
  std::uint64_t index_;
  std::uint64_t cursor_ = 0;
};

}  // namespace fdcolor
