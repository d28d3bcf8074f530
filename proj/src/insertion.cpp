#include "fdcolor/insertion.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "fdcolor/errors.hpp"

namespace fdcolor {

const char* to_string(Topology t) { return t == Topology::kPath ? "path" : "cycle"; }

bool is_proper(Topology topology, std::span<const Symbol> colors) {
  const auto n = colors.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (colors[i] == colors[i + 1]) return false;
  }
  if (topology == Topology::kCycle && n >= 3 && colors.front() == colors.back()) return false;
  return true;
}

namespace {

void check_q(std::size_t q) {
  if (q != 3 && q != 4) throw InputError("insertion colorings need q = 3 or q = 4");
}

// Neighbors seen by a new symbol placed into gap g of the current state.
// Path gaps are 0..k (before each element, then the end); cycle gap g sits
// after element g. kNone marks a missing side.
constexpr int kNone = -1;

struct Gap {
  int left;
  int right;
};

std::size_t gap_count(Topology topology, std::size_t k) {
  if (topology == Topology::kPath) return k + 1;
  return k == 0 ? 1 : k;
}

Gap gap_neighbors(Topology topology, const std::vector<Symbol>& s, std::size_t g) {
  const auto k = s.size();
  if (topology == Topology::kPath) {
    return {g > 0 ? s[g - 1] : kNone, g < k ? s[g] : kNone};
  }
  if (k == 0) return {kNone, kNone};
  return {s[g], s[(g + 1) % k]};
}

void insert_into(Topology topology, std::vector<Symbol>& s, std::size_t g, Symbol c) {
  const auto pos = topology == Topology::kPath ? g : (s.empty() ? 0 : g + 1);
  s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), c);
}

bool fits(const Gap& gap, Symbol c) { return gap.left != c && gap.right != c; }

void rotate_uniformly(std::vector<Symbol>& s, ChoiceStream& stream) {
  const auto r = stream.choose(s.size());
  std::rotate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
}

std::vector<Symbol> build_sequential(Topology topology, std::size_t n, std::size_t q,
                                     ChoiceStream& stream) {
  std::vector<Symbol> s;
  s.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto gaps = gap_count(topology, k);
    std::uint64_t moves = 0;
    for (std::size_t g = 0; g < gaps; ++g) {
      const auto gap = gap_neighbors(topology, s, g);
      for (Symbol c = 0; c < q; ++c) moves += fits(gap, c);
    }
    auto pick = stream.choose(moves);
    bool placed = false;
    for (std::size_t g = 0; g < gaps && !placed; ++g) {
      const auto gap = gap_neighbors(topology, s, g);
      for (Symbol c = 0; c < q; ++c) {
        if (!fits(gap, c)) continue;
        if (pick-- == 0) {
          insert_into(topology, s, g, c);
          placed = true;
          break;
        }
      }
    }
  }
  return s;
}

std::vector<Symbol> build_restart(Topology topology, std::size_t n, std::size_t q,
                                  ChoiceStream& stream) {
  std::vector<Symbol> s;
  s.reserve(n);
  for (std::uint64_t restarts = 0; restarts < kMaxRestarts; ++restarts) {
    s.clear();
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const auto gaps = gap_count(topology, k);
      const auto g = gaps == 1 ? 0 : stream.choose(gaps);
      const auto c = static_cast<Symbol>(stream.choose(q));
      ok = fits(gap_neighbors(topology, s, g), c);
      if (ok) insert_into(topology, s, g, c);
    }
    if (ok) return s;
  }
  throw CapExceeded("insertion sampler hit the cap of " + std::to_string(kMaxRestarts) +
                    " restarts for a " + to_string(topology) + " of length " + std::to_string(n));
}

}  // namespace

LineColoring sample_line(Topology topology, std::size_t n, std::size_t q, ChoiceStream& stream,
                         InsertionStrategy strategy) {
  check_q(q);
  if (n == 0) throw InputError("sample_line: empty line");
  if (topology == Topology::kCycle && n < 3) {
    throw InputError("sample_line: cycles need length at least 3");
  }
  LineColoring out{topology, q, {}};
  out.colors = strategy == InsertionStrategy::kSequential ? build_sequential(topology, n, q, stream)
                                                          : build_restart(topology, n, q, stream);
  if (topology == Topology::kCycle) rotate_uniformly(out.colors, stream);
  return out;
}

// ---- exact distribution -----------------------------------------------------

ExactDistribution::ExactDistribution(Topology topology, std::size_t n, std::size_t q,
                                     std::vector<Entry> support)
    : topology_(topology), n_(n), q_(q), support_(std::move(support)) {
  std::sort(support_.begin(), support_.end(),
            [](const Entry& a, const Entry& b) { return a.colors < b.colors; });
  for (const auto& e : support_) total_ += e.weight;
  if (total_ == 0) throw InvariantBreach("exact line distribution has no mass");
}

mpq_class ExactDistribution::probability(std::span<const Symbol> colors) const {
  const std::vector<Symbol> key(colors.begin(), colors.end());
  auto it = std::lower_bound(support_.begin(), support_.end(), key,
                             [](const Entry& e, const std::vector<Symbol>& k) { return e.colors < k; });
  if (it == support_.end() || it->colors != key) return 0;
  mpq_class p(mpz_class(static_cast<unsigned long>(it->weight)),
              mpz_class(static_cast<unsigned long>(total_)));
  p.canonicalize();
  return p;
}

std::vector<std::uint64_t> ExactDistribution::marginal_weights(
    std::span<const std::size_t> positions) const {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < positions.size(); ++i) cells *= q_;
  std::vector<std::uint64_t> out(cells, 0);
  for (const auto& e : support_) {
    std::size_t code = 0;
    for (auto p : positions) code = code * q_ + e.colors[p];
    out[code] += e.weight;
  }
  return out;
}

std::vector<mpq_class> ExactDistribution::marginal(std::span<const std::size_t> positions) const {
  const auto w = marginal_weights(positions);
  std::vector<mpq_class> out(w.size());
  const mpz_class z(static_cast<unsigned long>(total_));
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = mpq_class(mpz_class(static_cast<unsigned long>(w[i])), z);
    out[i].canonicalize();
  }
  return out;
}

void ExactDistribution::write(std::ostream& out) const {
  for (const auto& e : support_) {
    for (auto c : e.colors) out << static_cast<int>(c) + 1;
    out << ' ' << probability(e.colors).get_str() << '\n';
  }
}

namespace {

// Counts valid build orders via deletion: removing position i must leave a
// proper sequence, and W(single symbol) = 1.
class BuildOrderCounter {
 public:
  explicit BuildOrderCounter(Topology topology) : topology_(topology) {}

  std::uint64_t count(const std::vector<Symbol>& s) {
    if (!is_proper(topology_, s)) return 0;
    if (s.size() <= 1) return s.size();
    const auto key = encode(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    std::vector<Symbol> shorter(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i), shorter.begin());
      std::copy(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(),
                shorter.begin() + static_cast<std::ptrdiff_t>(i));
      total += count(shorter);
    }
    memo_.emplace(key, total);
    return total;
  }

 private:
  static std::uint64_t encode(const std::vector<Symbol>& s) {
    std::uint64_t key = s.size();
    for (auto c : s) key = (key << 2) | c;
    return key;
  }

  Topology topology_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace

ExactDistribution exact_line_distribution(Topology topology, std::size_t n, std::size_t q,
                                          std::size_t cap) {
  check_q(q);
  constexpr std::size_t kHardCap = 14;  // keeps the 2-bit memo keys in 64 bits
  if (n == 0) throw InputError("exact_line_distribution: empty line");
  if (n > cap || n > kHardCap) {
    throw CapExceeded("line length " + std::to_string(n) + " exceeds the oracle cap of " +
                      std::to_string(std::min(cap, kHardCap)));
  }
  if (topology == Topology::kCycle && n < 3) {
    throw CapExceeded("cycles of length " + std::to_string(n) +
                      " are outside the oracle; 2-cycles are colored as paths");
  }
  BuildOrderCounter counter(topology);
  std::vector<ExactDistribution::Entry> support;
  std::vector<Symbol> s(n, 0);
  // Enumerate path-proper sequences depth first; the counter rejects the rest.
  auto visit = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      if (auto w = counter.count(s); w > 0) support.push_back({s, w});
      return;
    }
    for (Symbol c = 0; c < q; ++c) {
      if (pos > 0 && s[pos - 1] == c) continue;
      s[pos] = c;
      self(self, pos + 1);
    }
  };
  visit(visit, 0);
  return ExactDistribution(topology, n, q, std::move(support));
}

// ---- exact dependence -------------------------------------------------------

namespace {

std::size_t separation(Topology topology, std::size_t n, std::uint32_t a, std::uint32_t b) {
  std::size_t best = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a >> i & 1U)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(b >> j & 1U)) continue;
      std::size_t d = i > j ? i - j : j - i;
      if (topology == Topology::kCycle) d = std::min(d, n - d);
      best = std::min(best, d);
    }
  }
  return best;
}

std::vector<std::size_t> positions_of(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

LineDependenceResult check_k_dependence_line(const ExactDistribution& dist, std::size_t k) {
  const auto n = dist.length();
  const auto q = dist.q();
  const auto z = static_cast<unsigned __int128>(dist.total_weight());
  LineDependenceResult result;
  unsigned __int128 worst = 0;
  const std::uint32_t full = (1U << n) - 1;
  for (std::uint32_t a = 1; a <= full; ++a) {
    // b ranges over non-empty subsets of the complement of a.
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t b = rest; b != 0; b = (b - 1) & rest) {
      // Each unordered pair once: the lowest position belongs to a.
      if (std::countr_zero(b) < std::countr_zero(a)) continue;
      if (separation(dist.topology(), n, a, b) <= k) continue;
      ++result.pairs_checked;
      auto positions = positions_of(a, n);
      const auto a_size = positions.size();
      const auto b_positions = positions_of(b, n);
      positions.insert(positions.end(), b_positions.begin(), b_positions.end());
      const auto joint = dist.marginal_weights(positions);
      std::size_t b_cells = 1;
      for (std::size_t i = 0; i < b_positions.size(); ++i) b_cells *= q;
      std::size_t a_cells = joint.size() / b_cells;
      std::vector<std::uint64_t> wa(a_cells, 0), wb(b_cells, 0);
      for (std::size_t x = 0; x < a_cells; ++x) {
        for (std::size_t y = 0; y < b_cells; ++y) {
          wa[x] += joint[x * b_cells + y];
          wb[y] += joint[x * b_cells + y];
        }
      }
      (void)a_size;
      for (std::size_t x = 0; x < a_cells; ++x) {
        for (std::size_t y = 0; y < b_cells; ++y) {
          const auto lhs = z * joint[x * b_cells + y];
          const auto rhs = static_cast<unsigned __int128>(wa[x]) * wb[y];
          const auto diff = lhs > rhs ? lhs - rhs : rhs - lhs;
          if (diff > worst) {
            worst = diff;
            result.worst_a = a;
            result.worst_b = b;
          }
        }
      }
    }
  }
  result.independent = worst == 0;
  auto to_mpz = [](unsigned __int128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFULL));
    return mpz_class((hi << 64) + lo);
  };
  result.worst_discrepancy = mpq_class(to_mpz(worst), to_mpz(z * z));
  result.worst_discrepancy.canonicalize();
  return result;
}

}  // namespace fdcolor
