#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>

#include "fdcolor/errors.hpp"
#include "fdcolor/verifier.hpp"

namespace fdcolor {

bool check_properness(const Graph& g, std::span<const std::uint64_t> colors) {
  if (colors.size() != g.vertex_count()) {
    throw InputError("coloring covers " + std::to_string(colors.size()) + " of " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  for (const auto& [u, v] : g.edges()) {
    if (colors[u] == colors[v]) return false;
  }
  return true;
}

bool check_properness(const Graph& g, const ColorAssignment& colors) {
  if (colors.vertex_count() != g.vertex_count()) {
    throw InputError("coloring covers " + std::to_string(colors.vertex_count()) + " of " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  for (const auto& [u, v] : g.edges()) {
    const auto a = colors.tuple(u);
    const auto b = colors.tuple(v);
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Line laws and their marginals are shared by every caller; guarded so that
// oracles may run concurrently.
class LineLawCache {
 public:
  const std::vector<mpq_class>& marginal(Topology t, std::size_t n, std::size_t q,
                                         const std::vector<std::size_t>& positions) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(t, n, q, positions);
    if (auto it = marginals_.find(key); it != marginals_.end()) return it->second;
    auto dkey = std::make_tuple(t, n, q);
    auto dit = laws_.find(dkey);
    if (dit == laws_.end()) {
      dit = laws_.emplace(dkey, exact_line_distribution(t, n, q, 14)).first;
    }
    return marginals_.emplace(key, dit->second.marginal(positions)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Topology, std::size_t, std::size_t>, ExactDistribution> laws_;
  std::map<std::tuple<Topology, std::size_t, std::size_t, std::vector<std::size_t>>,
           std::vector<mpq_class>>
      marginals_;
};

LineLawCache& line_cache() {
  static LineLawCache cache;
  return cache;
}

}  // namespace

// ---- FactoredLaw ------------------------------------------------------------

std::size_t FactoredLaw::cells() const {
  const std::size_t per_slot = ipow(q, width);
  std::size_t total = 1;
  for (std::size_t t = 0; t < slots; ++t) {
    if (total > std::numeric_limits<std::size_t>::max() / per_slot) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= per_slot;
  }
  return total;
}

std::vector<mpq_class> FactoredLaw::dense(std::size_t max_cells) const {
  const auto total = cells();
  if (total > max_cells) {
    throw CapExceeded("dense law needs " + std::to_string(total) + " cells (cap " +
                      std::to_string(max_cells) + ")");
  }
  std::vector<std::optional<std::vector<mpq_class>>> memo(nodes.size());
  const std::vector<mpq_class> unit{mpq_class(1)};
  auto node_dense = [&](auto&& self, std::int32_t id) -> const std::vector<mpq_class>& {
    if (id < 0) return unit;
    if (memo[id]) return *memo[id];
    std::vector<mpq_class> out;
    std::vector<mpq_class> acc, next;
    for (const auto& o : nodes[id].outcomes) {
      acc.assign(1, o.weight);
      for (auto table_id : o.tables) {
        const auto& table = tables[table_id];
        next.assign(acc.size() * table.size(), mpq_class(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
          if (acc[i] == 0) continue;
          for (std::size_t j = 0; j < table.size(); ++j) {
            if (table[j] != 0) next[i * table.size() + j] = acc[i] * table[j];
          }
        }
        acc.swap(next);
      }
      const auto& tail = self(self, o.child);
      if (out.empty()) out.assign(acc.size() * tail.size(), mpq_class(0));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] == 0) continue;
        for (std::size_t j = 0; j < tail.size(); ++j) {
          if (tail[j] != 0) out[i * tail.size() + j] += acc[i] * tail[j];
        }
      }
    }
    memo[id] = std::move(out);
    return *memo[id];
  };
  if (nodes.empty()) return std::vector<mpq_class>(total, mpq_class(1));
  return node_dense(node_dense, 0);
}

mpq_class FactoredLaw::contract(std::span<const std::vector<mpq_class>> test) const {
  if (test.size() != slots) throw InputError("contract: one test vector per slot is required");
  std::vector<std::optional<mpq_class>> memo(nodes.size());
  std::map<std::pair<std::size_t, std::uint32_t>, mpq_class> table_values;
  auto value = [&](std::size_t slot, std::uint32_t id) -> const mpq_class& {
    auto [it, inserted] = table_values.try_emplace({slot, id});
    if (inserted) {
      const auto& table = tables[id];
      mpq_class v = 0;
      for (std::size_t x = 0; x < table.size(); ++x) {
        if (table[x] != 0 && test[slot][x] != 0) v += table[x] * test[slot][x];
      }
      it->second = v;
    }
    return it->second;
  };
  auto node_value = [&](auto&& self, std::int32_t id) -> mpq_class {
    if (id < 0) return 1;
    if (memo[id]) return *memo[id];
    mpq_class total = 0;
    for (const auto& o : nodes[id].outcomes) {
      mpq_class prod = o.weight;
      for (std::size_t i = 0; i < o.tables.size() && prod != 0; ++i) {
        prod *= value(nodes[id].first_slot + i, o.tables[i]);
      }
      if (prod != 0) prod *= self(self, o.child);
      total += prod;
    }
    memo[id] = total;
    return total;
  };
  if (nodes.empty()) return 1;
  return node_value(node_value, 0);
}

// ---- ExactJoint ---------------------------------------------------------------

ExactJoint::ExactJoint(Graph g, Variant variant, std::size_t q, std::size_t arity,
                       std::vector<JointNode> nodes)
    : graph_(std::move(g)), variant_(variant), q_(q), arity_(arity), nodes_(std::move(nodes)) {
  const auto n = graph_.vertex_count();
  spots_.resize(nodes_.size());
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& node = nodes_[id];
    for (const auto& o : node.outcomes) {
      if (node.first_slot + o.slots.size() > arity_) throw InvariantBreach("outcome slots past arity");
      if (o.child >= static_cast<std::int32_t>(nodes_.size())) throw InvariantBreach("dangling child");
      if (o.child >= 0 && o.child <= static_cast<std::int32_t>(id)) {
        throw InvariantBreach("children must follow their parents");
      }
      if (o.child >= 0 && nodes_[o.child].first_slot != node.first_slot + o.slots.size()) {
        throw InvariantBreach("child slots do not continue the parent's");
      }
      if (o.child < 0 && node.first_slot + o.slots.size() != arity_) {
        throw InvariantBreach("terminal outcome does not reach the last slot");
      }
      std::vector<Spot> spots(o.slots.size() * n, Spot{-1, 0});
      for (std::size_t t = 0; t < o.slots.size(); ++t) {
        for (std::size_t c = 0; c < o.slots[t].size(); ++c) {
          const auto& comp = o.slots[t][c];
          for (std::size_t pos = 0; pos < comp.vertices.size(); ++pos) {
            auto& s = spots[t * n + comp.vertices[pos]];
            if (s.component >= 0) throw InvariantBreach("vertex in two components of one slot");
            s = Spot{static_cast<std::int32_t>(c), static_cast<std::uint32_t>(pos)};
          }
        }
      }
      spots_[id].push_back(std::move(spots));
    }
  }
}

std::size_t ExactJoint::outcome_count() const {
  std::size_t total = 0;
  for (const auto& node : nodes_) total += node.outcomes.size();
  return total;
}

mpq_class ExactJoint::total_mass() const {
  const auto law = law_of({});
  const std::vector<std::vector<mpq_class>> ones(arity_, std::vector<mpq_class>{1});
  return law.contract(ones);
}

FactoredLaw ExactJoint::law_of(std::span<const VertexId> vertices) const {
  FactoredLaw law;
  law.q = q_;
  law.width = vertices.size();
  law.slots = arity_;
  const std::size_t n = graph_.vertex_count();
  const std::size_t cells = ipow(q_, vertices.size());
  const mpq_class uniform(1, static_cast<unsigned long>(q_));
  for (auto v : vertices) {
    if (v >= n) throw InputError("vertex " + std::to_string(v) + " out of range");
  }

  struct Group {
    Topology topology;
    std::size_t length;
    std::vector<std::size_t> positions;  // along the component
    std::vector<std::size_t> members;    // indices into `vertices`
  };
  std::map<std::vector<std::uint32_t>, std::uint32_t> table_ids;
  std::vector<std::uint32_t> key;
  std::vector<Group> groups;
  std::vector<std::int32_t> group_of_component;

  auto table_for = [&](const std::vector<Component>& comps, const std::vector<Spot>& spots,
                       std::size_t t) -> std::uint32_t {
    groups.clear();
    group_of_component.assign(comps.size(), -1);
    key.clear();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& s = spots[t * n + vertices[i]];
      if (s.component < 0) {
        key.push_back(0);
        continue;
      }
      auto& gid = group_of_component[s.component];
      const auto& c = comps[s.component];
      if (gid < 0) {
        gid = static_cast<std::int32_t>(groups.size());
        groups.push_back({c.topology, c.vertices.size(), {}, {}});
      }
      groups[gid].positions.push_back(s.position);
      groups[gid].members.push_back(i);
      key.insert(key.end(), {static_cast<std::uint32_t>(gid + 1), static_cast<std::uint32_t>(c.topology),
                             static_cast<std::uint32_t>(c.vertices.size()), s.position});
    }
    auto [it, inserted] = table_ids.try_emplace(key, static_cast<std::uint32_t>(law.tables.size()));
    if (!inserted) return it->second;
    std::vector<const std::vector<mpq_class>*> marginals;
    std::size_t uniform_count = vertices.size();
    for (const auto& g : groups) {
      marginals.push_back(&line_cache().marginal(g.topology, g.length, q_, g.positions));
      uniform_count -= g.members.size();
    }
    mpq_class base = 1;
    for (std::size_t u = 0; u < uniform_count; ++u) base *= uniform;
    std::vector<mpq_class> table(cells);
    std::vector<std::size_t> digits(vertices.size());
    for (std::size_t x = 0; x < cells; ++x) {
      std::size_t rest = x;
      for (std::size_t i = vertices.size(); i-- > 0;) {
        digits[i] = rest % q_;
        rest /= q_;
      }
      mpq_class value = base;
      for (std::size_t gi = 0; gi < groups.size() && value != 0; ++gi) {
        std::size_t sub = 0;
        for (auto m : groups[gi].members) sub = sub * q_ + digits[m];
        value *= (*marginals[gi])[sub];
      }
      table[x] = value;
    }
    law.tables.push_back(std::move(table));
    return it->second;
  };

  law.nodes.resize(nodes_.size());
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& node = nodes_[id];
    law.nodes[id].first_slot = node.first_slot;
    std::map<std::pair<std::vector<std::uint32_t>, std::int32_t>, std::size_t> merged;
    for (std::size_t oi = 0; oi < node.outcomes.size(); ++oi) {
      const auto& o = node.outcomes[oi];
      std::vector<std::uint32_t> ids(o.slots.size());
      for (std::size_t t = 0; t < o.slots.size(); ++t) ids[t] = table_for(o.slots[t], spots_[id][oi], t);
      auto [it, inserted] = merged.try_emplace({ids, o.child}, law.nodes[id].outcomes.size());
      if (inserted) {
        law.nodes[id].outcomes.push_back({o.weight, std::move(ids), o.child});
      } else {
        law.nodes[id].outcomes[it->second].weight += o.weight;
      }
    }
  }
  return law;
}

std::vector<mpq_class> ExactJoint::slot_law(std::size_t slot,
                                            std::span<const VertexId> vertices) const {
  if (slot >= arity_) throw InputError("slot " + std::to_string(slot) + " out of range");
  const auto law = law_of(vertices);
  const std::size_t cells = ipow(q_, vertices.size());
  std::vector<std::vector<mpq_class>> test(arity_, std::vector<mpq_class>(cells, mpq_class(1)));
  std::vector<mpq_class> out(cells);
  for (std::size_t x = 0; x < cells; ++x) {
    test[slot].assign(cells, mpq_class(0));
    test[slot][x] = 1;
    out[x] = law.contract(test);
  }
  return out;
}

mpq_class ExactJoint::probability_equal(VertexId u, VertexId v) const {
  const VertexId pair[] = {u, v};
  const auto law = law_of(pair);
  std::vector<mpq_class> diagonal(q_ * q_, mpq_class(0));
  for (std::size_t s = 0; s < q_; ++s) diagonal[s * q_ + s] = 1;
  const std::vector<std::vector<mpq_class>> test(arity_, diagonal);
  return law.contract(test);
}

bool ExactJoint::support_is_proper() const {
  for (const auto& [u, v] : graph_.edges()) {
    if (probability_equal(u, v) != 0) return false;
  }
  return true;
}

std::map<std::vector<std::uint64_t>, mpq_class> ExactJoint::materialize(
    std::size_t max_cells) const {
  const auto n = graph_.vertex_count();
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0U);
  const auto dense = law_of(all).dense(max_cells);
  const std::size_t per_slot = ipow(q_, n);
  std::map<std::vector<std::uint64_t>, mpq_class> out;
  std::vector<std::vector<Symbol>> tuples(n, std::vector<Symbol>(arity_));
  for (std::size_t cell = 0; cell < dense.size(); ++cell) {
    if (dense[cell] == 0) continue;
    std::size_t rest = cell;
    for (std::size_t t = arity_; t-- > 0;) {
      std::size_t code = rest % per_slot;
      rest /= per_slot;
      for (std::size_t i = n; i-- > 0;) {
        tuples[i][t] = static_cast<Symbol>(code % q_);
        code /= q_;
      }
    }
    out[flatten(tuples, q_)] += dense[cell];
  }
  return out;
}

// ---- enumeration ----------------------------------------------------------------

namespace {

mpq_class falling_factorial(std::size_t d, std::size_t k) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<unsigned long>(d - i);
  return mpq_class(r);
}

struct LevelOutcome {
  mpq_class weight;
  std::vector<std::vector<Component>> slots;
  std::vector<Edge> removed;
};

using OutcomeKey = std::vector<std::uint32_t>;

OutcomeKey outcome_key(const std::vector<std::vector<Component>>& slots,
                       const std::vector<Edge>& removed) {
  OutcomeKey key;
  for (const auto& slot : slots) {
    key.push_back(0xFFFFFFFFU);
    for (const auto& c : slot) {
      key.push_back(0xFFFFFFFEU - static_cast<std::uint32_t>(c.topology));
      key.insert(key.end(), c.vertices.begin(), c.vertices.end());
    }
  }
  key.push_back(0xFFFFFFF0U);
  for (const auto& [u, v] : removed) key.insert(key.end(), {u, v});
  return key;
}

class LevelEnumerator {
 public:
  LevelEnumerator(const Graph& g, std::size_t bound, Variant variant)
      : g_(g), bound_(bound), variant_(variant), n_(g.vertex_count()) {}

  std::vector<LevelOutcome> run() {
    std::vector<VertexId> active;
    mpq_class head_weight = 1;
    for (VertexId x = 0; x < n_; ++x) {
      if (g_.degree(x) == 0) continue;
      active.push_back(x);
      head_weight /= static_cast<unsigned long>(g_.degree(x));
    }
    if (active.empty()) {
      outcomes_[outcome_key(std::vector<std::vector<Component>>(bound_), {})] =
          LevelOutcome{1, std::vector<std::vector<Component>>(bound_), {}};
      return collect();
    }
    std::vector<std::size_t> choice(active.size(), 0);
    heads_.assign(n_, std::nullopt);
    while (true) {
      for (std::size_t i = 0; i < active.size(); ++i) {
        heads_[active[i]] = g_.neighbors(active[i])[choice[i]];
      }
      for (auto& [marks, w] : markings()) expand_labels(head_weight * w, marks);
      std::size_t i = 0;
      for (; i < active.size(); ++i) {
        if (++choice[i] < g_.degree(active[i])) break;
        choice[i] = 0;
      }
      if (i == active.size()) break;
    }
    return collect();
  }

 private:
  // Distinct marking patterns with their probabilities under a uniform order
  // of xi on the vertices that enter some marking test.
  std::vector<std::pair<std::vector<bool>, mpq_class>> markings() {
    if (variant_ == Variant::kInvariant) return {{std::vector<bool>(n_, false), mpq_class(1)}};
    std::vector<bool> has_in(n_, false);
    for (VertexId x = 0; x < n_; ++x) {
      if (heads_[x]) has_in[*heads_[x]] = true;
    }
    std::vector<VertexId> relevant;
    for (VertexId x = 0; x < n_; ++x) {
      if (!heads_[x] || !has_in[x]) continue;
      const VertexId y = *heads_[x];
      relevant.insert(relevant.end(), {x, y, *heads_[y]});
    }
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
    std::map<std::vector<bool>, std::uint64_t> counts;
    std::uint64_t orders = 0;
    std::vector<double> xi(n_, -1.0);
    std::vector<std::size_t> perm(relevant.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (std::size_t i = 0; i < relevant.size(); ++i) xi[relevant[i]] = static_cast<double>(perm[i]);
      ++counts[mark_local_maxima(heads_, xi)];
      ++orders;
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::pair<std::vector<bool>, mpq_class>> out;
    for (auto& [marks, c] : counts) {
      mpq_class w(static_cast<unsigned long>(c), static_cast<unsigned long>(orders));
      w.canonicalize();
      out.emplace_back(marks, w);
    }
    return out;
  }

  // The labels on kept arcs into y are a uniform injection into {1..bound}.
  void expand_labels(const mpq_class& weight, const std::vector<bool>& marks) {
    std::vector<std::vector<VertexId>> in_arcs(n_);
    for (VertexId x = 0; x < n_; ++x) {
      if (heads_[x] && !marks[x]) in_arcs[*heads_[x]].push_back(x);
    }
    mpq_class w = weight;
    std::vector<VertexId> tails;
    std::vector<std::size_t> group_start;
    for (VertexId y = 0; y < n_; ++y) {
      if (in_arcs[y].empty()) continue;
      w /= falling_factorial(bound_, in_arcs[y].size());
      group_start.push_back(tails.size());
      tails.insert(tails.end(), in_arcs[y].begin(), in_arcs[y].end());
    }
    group_start.push_back(tails.size());
    std::vector<Label> labels(tails.size(), 0);
    std::vector<bool> used;  // per group, reset as we descend
    auto assign = [&](auto&& self, std::size_t idx, std::size_t group, std::uint32_t used_mask) -> void {
      if (idx == tails.size()) {
        emit(w, marks, tails, labels);
        return;
      }
      if (idx == group_start[group + 1]) {
        self(self, idx, group + 1, 0);
        return;
      }
      for (Label l = 1; l <= bound_; ++l) {
        if (used_mask >> l & 1U) continue;
        labels[idx] = l;
        self(self, idx + 1, group, used_mask | (1U << l));
      }
    };
    if (tails.empty()) {
      emit(w, marks, tails, labels);
    } else {
      assign(assign, 0, 0, 0);
    }
  }

  void emit(const mpq_class& weight, const std::vector<bool>& marks,
            const std::vector<VertexId>& tails, const std::vector<Label>& labels) {
    std::vector<std::optional<OutEdge>> out(n_);
    for (std::size_t i = 0; i < tails.size(); ++i) {
      out[tails[i]] = OutEdge{*heads_[tails[i]], labels[i]};
    }
    (void)marks;
    const LabeledDigraph D(g_, bound_, std::move(out));
    const auto removed = D.undirected_edges();
    std::vector<std::vector<Component>> slots(bound_);
    std::vector<std::pair<std::size_t, std::size_t>> two_cycles;
    for (Label l = 1; l <= bound_; ++l) {
      slots[l - 1] = extract_components(D, l);
      for (std::size_t c = 0; c < slots[l - 1].size(); ++c) {
        const auto& comp = slots[l - 1][c];
        if (comp.topology != Topology::kCycle) continue;
        if (variant_ == Variant::kFiid) throw InvariantBreach("cycle survived in oracle D'");
        if (comp.vertices.size() == 2) two_cycles.emplace_back(l - 1, c);
      }
    }
    // Each same-label 2-cycle is cut at either arc with probability 1/2.
    const std::size_t cuts = std::size_t{1} << two_cycles.size();
    mpq_class w = weight / mpq_class(static_cast<unsigned long>(cuts));
    for (std::size_t mask = 0; mask < cuts; ++mask) {
      auto cut = slots;
      for (std::size_t i = 0; i < two_cycles.size(); ++i) {
        auto& comp = cut[two_cycles[i].first][two_cycles[i].second];
        const std::size_t keep = mask >> i & 1U;
        comp = Component{Topology::kPath, {comp.vertices[keep], comp.vertices[1 - keep]}};
      }
      auto key = outcome_key(cut, removed);
      auto it = outcomes_.find(key);
      if (it == outcomes_.end()) {
        outcomes_.emplace(std::move(key), LevelOutcome{w, std::move(cut), removed});
      } else {
        it->second.weight += w;
      }
    }
  }

  std::vector<LevelOutcome> collect() {
    std::vector<LevelOutcome> out;
    out.reserve(outcomes_.size());
    for (auto& [k, o] : outcomes_) out.push_back(std::move(o));
    return out;
  }

  const Graph& g_;
  std::size_t bound_;
  Variant variant_;
  std::size_t n_;
  std::vector<std::optional<VertexId>> heads_;
  std::map<OutcomeKey, LevelOutcome> outcomes_;
};

// Builds the DAG depth-first; a node's children get ids before it, and the
// ids are reversed at the end so that the root comes first.
class DagBuilder {
 public:
  DagBuilder(Variant variant, std::size_t degree_bound) : variant_(variant), d_(degree_bound) {}

  std::int32_t build(const Graph& g, std::size_t level) {
    if (level == d_) return -1;
    auto memo_key = std::make_pair(level, g.edges());
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    const std::size_t bound = d_ - level;
    JointNode node;
    node.first_slot = slot_of(d_, level, 1);
    for (auto& outcome : LevelEnumerator(g, bound, variant_).run()) {
      const Graph residual = g.without_edges(outcome.removed, bound - 1);
      const auto child = build(residual, level + 1);
      node.outcomes.push_back({std::move(outcome.weight), std::move(outcome.slots), child});
    }
    nodes_.push_back(std::move(node));
    const auto id = static_cast<std::int32_t>(nodes_.size() - 1);
    memo_.emplace(std::move(memo_key), id);
    return id;
  }

  std::vector<JointNode> finish() {
    const auto last = static_cast<std::int32_t>(nodes_.size()) - 1;
    std::reverse(nodes_.begin(), nodes_.end());
    for (auto& node : nodes_) {
      for (auto& o : node.outcomes) {
        if (o.child >= 0) o.child = last - o.child;
      }
    }
    return std::move(nodes_);
  }

 private:
  Variant variant_;
  std::size_t d_;
  std::vector<JointNode> nodes_;
  std::map<std::pair<std::size_t, std::vector<Edge>>, std::int32_t> memo_;
};

}  // namespace

double exact_cost_estimate(const Graph& g, Variant variant) {
  const auto d = g.max_degree_bound();
  double cost = 1.0;
  std::size_t active = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto deg = g.degree(v);
    if (deg == 0) continue;
    ++active;
    cost *= static_cast<double>(deg);
    // Labels on in-arcs: at most (d)_deg injections.
    for (std::size_t i = 0; i < deg; ++i) cost *= static_cast<double>(d - i);
  }
  if (variant == Variant::kFiid) cost *= std::tgamma(static_cast<double>(active) + 1.0);
  return cost;
}

ExactJoint exact_pipeline_distribution(const Graph& g, Variant variant, ExactCaps caps) {
  if (g.vertex_count() > caps.max_vertices || g.edge_count() > caps.max_edges) {
    throw CapExceeded("exact oracle capped at " + std::to_string(caps.max_vertices) +
                      " vertices / " + std::to_string(caps.max_edges) + " edges; instance has " +
                      std::to_string(g.vertex_count()) + " / " + std::to_string(g.edge_count()) +
                      " (first level alone is ~" +
                      std::to_string(static_cast<long long>(exact_cost_estimate(g, variant))) +
                      " configurations); use Monte Carlo instead");
  }
  const auto d = g.max_degree_bound();
  DagBuilder builder(variant, d);
  builder.build(g, 0);
  return ExactJoint(g, variant, palette_size(variant), total_arity(d), builder.finish());
}

}  // namespace fdcolor
