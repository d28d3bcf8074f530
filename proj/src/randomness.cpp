#include "fdcolor/randomness.hpp"

#include <numeric>
#include <string>

#include "fdcolor/errors.hpp"

namespace fdcolor {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

VertexRandomness::VertexRandomness(std::uint64_t master_seed) : seed_(master_seed) {}

std::uint64_t VertexRandomness::key(VertexId v, std::string_view tag, std::uint64_t index,
                                    std::uint64_t lane) const {
  std::uint64_t h = mix64(seed_ + kGolden);
  if (salts_ && v < salts_->size() && (*salts_)[v] != 0) h = mix64(h ^ (*salts_)[v]);
  h = mix64(h ^ (static_cast<std::uint64_t>(v) * 0xD1B54A32D192ED03ULL + 1));
  h = mix64(h ^ hash_tag(tag));
  h = mix64(h ^ (index * 0xA24BAED4963EE407ULL + 2));
  h = mix64(h ^ (lane * 0x9FB21C651E98DF25ULL + 3));
  return h;
}

std::uint64_t VertexRandomness::word(VertexId v, std::string_view tag, std::uint64_t index,
                                     std::uint64_t lane) const {
  return mix64(key(v, tag, index, lane) + kGolden);
}

double VertexRandomness::uniform(VertexId v, std::string_view tag, std::uint64_t index,
                                 std::uint64_t lane) const {
  return static_cast<double>(word(v, tag, index, lane) >> 11) * 0x1.0p-53;
}

std::uint64_t VertexRandomness::uniform_choice(VertexId v, std::string_view tag,
                                               std::uint64_t index, std::uint64_t m,
                                               std::uint64_t lane) const {
  if (m == 0) throw InputError("uniform_choice: empty range");
  if (m == 1) return 0;
  // 2^64 mod m; words below it would bias the residues.
  const std::uint64_t threshold = (0 - m) % m;
  const std::uint64_t base = key(v, tag, index, lane);
  for (std::uint64_t attempt = 1;; ++attempt) {
    const std::uint64_t w = mix64(base + attempt * kGolden);
    if (w >= threshold) return w % m;
  }
}

std::vector<std::uint32_t> VertexRandomness::random_injection(VertexId v,
                                                              std::span<const VertexId> neighbors,
                                                              std::size_t d, std::string_view tag,
                                                              std::uint64_t index) const {
  if (neighbors.size() > d) {
    throw InputError("random_injection: " + std::to_string(neighbors.size()) +
                     " neighbors do not fit into " + std::to_string(d) + " labels");
  }
  std::vector<std::uint32_t> pool(d);
  std::iota(pool.begin(), pool.end(), 1U);
  std::vector<std::uint32_t> labels(neighbors.size());
  // Partial Fisher-Yates: the first k slots of a uniform shuffle.
  for (std::size_t j = 0; j < neighbors.size(); ++j) {
    const auto r = j + uniform_choice(v, tag, index, d - j, j);
    std::swap(pool[j], pool[r]);
    labels[j] = pool[j];
  }
  return labels;
}

VertexRandomness VertexRandomness::resampled(std::span<const VertexId> vertices,
                                             std::uint64_t salt) const {
  VertexRandomness out = *this;
  std::vector<std::uint64_t> salts = salts_ ? *salts_ : std::vector<std::uint64_t>{};
  for (VertexId v : vertices) {
    if (salts.size() <= v) salts.resize(v + 1, 0);
    salts[v] = mix64(salt + kGolden) | 1;
  }
  out.salts_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(salts));
  return out;
}

VertexRandomness VertexRandomness::for_trial(std::uint64_t trial) const {
  VertexRandomness out(mix64(mix64(seed_ ^ 0x5851F42D4C957F2DULL) + trial * kGolden));
  out.salts_ = salts_;
  return out;
}

ChoiceStream::ChoiceStream(const VertexRandomness& rnd, std::vector<VertexId> vertices,
                           std::string_view tag, std::uint64_t index)
    : rnd_(&rnd), vertices_(std::move(vertices)), tag_(tag), index_(index) {
  if (vertices_.empty()) throw InputError("ChoiceStream: no vertices to draw from");
}

std::uint64_t ChoiceStream::choose(std::uint64_t m) {
  const auto n = vertices_.size();
  const auto j = cursor_++;
  return rnd_->uniform_choice(vertices_[j % n], tag_, index_, m, j / n);
}

}  // namespace fdcolor
