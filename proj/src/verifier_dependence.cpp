#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "fdcolor/errors.hpp"
#include "fdcolor/verifier.hpp"

namespace fdcolor {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

mpq_class abs_q(const mpq_class& x) { return x < 0 ? mpq_class(-x) : x; }

}  // namespace

PairRecord exact_pair_discrepancy(const ExactJoint& joint, const VertexSet& a, const VertexSet& b,
                                  std::size_t dense_cells) {
  PairRecord rec;
  rec.a = a;
  rec.b = b;
  rec.distance = (a.members().empty() || b.members().empty())
                     ? kInfiniteDistance
                     : set_distance(joint.graph(), a, b);
  rec.metric = "max_abs";
  if (a.members().empty() || b.members().empty()) return rec;

  std::vector<VertexId> s(a.members().begin(), a.members().end());
  s.insert(s.end(), b.members().begin(), b.members().end());
  const auto law_s = joint.law_of(s);
  const auto law_a = joint.law_of(a.members());
  const auto law_b = joint.law_of(b.members());
  const std::size_t q = joint.q();
  const std::size_t slots = joint.arity();

  if (law_s.cells() <= dense_cells) {
    const auto ds = law_s.dense(dense_cells);
    const auto da = law_a.dense(dense_cells);
    const auto db = law_b.dense(dense_cells);
    const std::size_t qs = ipow(q, s.size());
    const std::size_t qa = ipow(q, a.members().size());
    const std::size_t qb = ipow(q, b.members().size());
    mpq_class worst = 0;
    for (std::size_t cell = 0; cell < ds.size(); ++cell) {
      std::size_t rest = cell;
      std::size_t ia = 0, ib = 0, scale_a = 1, scale_b = 1;
      for (std::size_t t = 0; t < slots; ++t) {
        const std::size_t code = rest % qs;
        rest /= qs;
        ia += (code / qb) * scale_a;
        ib += (code % qb) * scale_b;
        scale_a *= qa;
        scale_b *= qb;
      }
      const mpq_class diff = abs_q(ds[cell] - da[ia] * db[ib]);
      if (diff > worst) worst = diff;
    }
    rec.exact_discrepancy = worst;
  } else {
    // Contract P_S - P_A x P_B against random product test functions
    // (x)_t g_t (x) h_t. The result is a nonzero polynomial in the test entries
    // unless the two laws agree, so a nonzero value certifies dependence and
    // kProbes zero values leave a false-independence chance below 1e-9.
    rec.metric = "projection";
    const std::size_t qa = ipow(q, a.members().size());
    const std::size_t qb = ipow(q, b.members().size());
    const VertexRandomness probe(0x70726f6265ULL);
    constexpr std::size_t kProbes = 3;
    mpq_class worst = 0;
    for (std::size_t r = 0; r < kProbes; ++r) {
      std::vector<std::vector<mpq_class>> g(slots), h(slots);
      for (std::size_t t = 0; t < slots; ++t) {
        for (std::size_t x = 0; x < qa; ++x) {
          g[t].emplace_back(static_cast<unsigned long>(1 + probe.uniform_choice(t, "probe_a", r, 1 << 20, x)),
                            1UL << 20);
        }
        for (std::size_t y = 0; y < qb; ++y) {
          h[t].emplace_back(static_cast<unsigned long>(1 + probe.uniform_choice(t, "probe_b", r, 1 << 20, y)),
                            1UL << 20);
        }
        for (auto& v : g[t]) v.canonicalize();
        for (auto& v : h[t]) v.canonicalize();
      }
      std::vector<std::vector<mpq_class>> gh(slots);
      for (std::size_t t = 0; t < slots; ++t) {
        for (std::size_t x = 0; x < qa * qb; ++x) gh[t].push_back(g[t][x / qb] * h[t][x % qb]);
      }
      const mpq_class vs = law_s.contract(gh);
      const mpq_class va = law_a.contract(g);
      const mpq_class vb = law_b.contract(h);
      const mpq_class diff = abs_q(vs - va * vb);
      if (diff > worst) worst = diff;
    }
    rec.exact_discrepancy = worst;
  }
  rec.independent = rec.exact_discrepancy == 0;
  return rec;
}

namespace {

std::vector<VertexSet> windows_up_to(std::size_t n, std::size_t max_window) {
  std::vector<VertexSet> out;
  for (VertexId u = 0; u < n; ++u) {
    out.emplace_back(std::vector<VertexId>{u});
    if (max_window < 2) continue;
    for (VertexId v = u + 1; v < n; ++v) out.emplace_back(std::vector<VertexId>{u, v});
  }
  if (max_window > 2) throw InputError("exact windows are limited to two vertices");
  return out;
}

// All disjoint window pairs (each unordered pair once) with their discrepancy.
std::vector<PairRecord> all_pair_records(const ExactJoint& joint, std::size_t min_distance,
                                         std::size_t max_window) {
  const auto windows = windows_up_to(joint.graph().vertex_count(), max_window);
  std::vector<PairRecord> out;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    for (std::size_t j = i + 1; j < windows.size(); ++j) {
      const auto& a = windows[i];
      const auto& b = windows[j];
      if (std::any_of(a.members().begin(), a.members().end(),
                      [&](VertexId v) { return b.contains(v); })) {
        continue;
      }
      if (set_distance(joint.graph(), a, b) < min_distance) continue;
      out.push_back(exact_pair_discrepancy(joint, a, b));
    }
  }
  return out;
}

}  // namespace

DependenceReport check_k_dependence_exact(const ExactJoint& joint, std::size_t k,
                                          std::size_t max_window) {
  DependenceReport report;
  report.mode = "exact";
  report.variant = joint.variant();
  report.k = k;
  report.records = all_pair_records(joint, k + 1, max_window);
  for (const auto& r : report.records) {
    if (!r.independent) report.pass = false;
    if (r.exact_discrepancy > report.worst_exact) report.worst_exact = r.exact_discrepancy;
  }
  if (report.records.empty()) {
    report.warnings.push_back("no window pairs at distance > " + std::to_string(k) +
                              "; the check is vacuous on this graph");
  }
  return report;
}

std::size_t smallest_passing_k(const ExactJoint& joint, std::size_t max_window) {
  // The answer is the largest distance of a dependent pair, so scan distances
  // from the top and stop at the first dependent pair.
  const auto windows = windows_up_to(joint.graph().vertex_count(), max_window);
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>, std::greater<>> by_distance;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    for (std::size_t j = i + 1; j < windows.size(); ++j) {
      const auto& a = windows[i];
      const auto& b = windows[j];
      if (std::any_of(a.members().begin(), a.members().end(),
                      [&](VertexId v) { return b.contains(v); })) {
        continue;
      }
      const auto d = set_distance(joint.graph(), a, b);
      if (d != kInfiniteDistance) by_distance[d].emplace_back(i, j);
    }
  }
  for (const auto& [d, pairs] : by_distance) {
    for (const auto& [i, j] : pairs) {
      if (!exact_pair_discrepancy(joint, windows[i], windows[j]).independent) return d;
    }
  }
  return 0;
}

// ---- Monte Carlo ------------------------------------------------------------------

double normal_upper_quantile(double tail) {
  if (!(tail > 0.0 && tail < 1.0)) throw InputError("normal quantile needs a tail in (0, 1)");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SampleBank sample_bank(const Graph& g, Variant variant, std::size_t trials,
                       const VertexRandomness& rnd, std::size_t jobs) {
  SampleBank bank;
  bank.trials = trials;
  bank.vertices = g.vertex_count();
  bank.arity = total_arity(g.max_degree_bound());
  bank.q = palette_size(variant);
  bank.symbols.assign(trials * bank.vertices * bank.arity, 0);
  const std::size_t stride = bank.vertices * bank.arity;
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto colors = color_graph(g, variant, rnd.for_trial(t));
      for (VertexId v = 0; v < bank.vertices; ++v) {
        const auto tuple = colors.tuple(v);
        std::copy(tuple.begin(), tuple.end(), bank.symbols.begin() + t * stride + v * bank.arity);
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(trials, 1));
  if (jobs == 1) {
    work(0, trials);
    return bank;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t j = 0; j < jobs; ++j) {
    threads.emplace_back([&, j] {
      try {
        work(trials * j / jobs, trials * (j + 1) / jobs);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return bank;
}

namespace {

struct WindowPair {
  VertexSet a;
  VertexSet b;
  std::size_t distance;
};

struct Test {
  std::size_t pair;
  std::size_t slot;
  std::vector<std::uint16_t> code_a;
  std::vector<std::uint16_t> code_b;
  std::size_t cells_a;
  std::size_t cells_b;
  double tv = 0.0;
  double null_sum = 0.0;
  double null_sq = 0.0;
};

double total_variation(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b,
                       std::span<const std::uint32_t> order, std::size_t cells_a,
                       std::size_t cells_b, std::vector<std::uint32_t>& joint) {
  const std::size_t n = a.size();
  joint.assign(cells_a * cells_b, 0);
  std::vector<std::uint32_t> ma(cells_a, 0), mb(cells_b, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = a[i];
    const auto y = order.empty() ? b[i] : b[order[i]];
    ++joint[x * cells_b + y];
    ++ma[x];
    ++mb[y];
  }
  const double inv = 1.0 / static_cast<double>(n);
  double tv = 0.0;
  for (std::size_t x = 0; x < cells_a; ++x) {
    for (std::size_t y = 0; y < cells_b; ++y) {
      tv += std::abs(joint[x * cells_b + y] * inv - (ma[x] * inv) * (mb[y] * inv));
    }
  }
  return 0.5 * tv;
}

// A window: the anchor, plus one neighbor whose distance to `avoid` stays above
// `min_distance` when a second vertex is wanted and available.
VertexSet grow_window(const Graph& g, VertexId anchor, std::size_t size,
                      const std::vector<std::size_t>* avoid_dist, std::size_t min_distance,
                      const VertexRandomness& rnd, std::uint64_t index) {
  std::vector<VertexId> members{anchor};
  if (size >= 2) {
    std::vector<VertexId> options;
    for (auto u : g.neighbors(anchor)) {
      if (!avoid_dist || (*avoid_dist)[u] >= min_distance) options.push_back(u);
    }
    if (!options.empty()) {
      members.push_back(options[rnd.uniform_choice(anchor, "window", index, options.size())]);
    }
  }
  return VertexSet(members);
}

std::vector<std::size_t> distances_from(const Graph& g, const VertexSet& s) {
  std::vector<std::size_t> best(g.vertex_count(), kInfiniteDistance);
  for (auto v : s.members()) {
    const auto d = bfs_distances(g, v);
    for (std::size_t u = 0; u < best.size(); ++u) best[u] = std::min(best[u], d[u]);
  }
  return best;
}

}  // namespace

DependenceReport check_k_dependence_bank(const Graph& g, const SampleBank& bank, std::size_t k,
                                         const VertexRandomness& rnd, const McOptions& options) {
  const std::size_t trials = bank.trials;
  if (trials < 1000) throw InputError("Monte Carlo needs at least 1000 trials");
  if (g.vertex_count() == 0) throw InputError("empty graph");
  if (bank.vertices != g.vertex_count()) throw InputError("sample bank does not match the graph");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  DependenceReport report;
  report.mode = "monte_carlo";
  report.k = k;
  report.trials = trials;
  report.bootstrap = options.bootstrap;

  const std::size_t q = bank.q;
  const std::size_t n = g.vertex_count();
  std::size_t window = 2;
  if (ipow(q, 4) > trials / 10) {
    window = 1;
    report.warnings.push_back("windows shrunk to single vertices: " + std::to_string(trials) +
                              " trials are too few for " + std::to_string(ipow(q, 4)) +
                              "-cell tables");
  }

  // Far pairs: even picks sit at the smallest qualifying distance, odd picks
  // anywhere beyond k.
  const VertexRandomness picker = rnd.for_trial(~std::uint64_t{0});
  std::vector<WindowPair> far;
  std::set<std::pair<std::vector<VertexId>, std::vector<VertexId>>> seen;
  for (std::uint64_t attempt = 0; far.size() < options.window_pairs && attempt < 1000; ++attempt) {
    const VertexId anchor = static_cast<VertexId>(picker.uniform_choice(0, "anchor", attempt, n));
    const VertexSet a = grow_window(g, anchor, window, nullptr, 0, picker, attempt);
    const auto dist = distances_from(g, a);
    std::vector<VertexId> candidates;
    std::size_t nearest = kInfiniteDistance;
    for (VertexId v = 0; v < n; ++v) {
      if (dist[v] > k && dist[v] != kInfiniteDistance) nearest = std::min(nearest, dist[v]);
    }
    for (VertexId v = 0; v < n; ++v) {
      if (dist[v] <= k || dist[v] == kInfiniteDistance) continue;
      if (far.size() % 2 == 0 && dist[v] != nearest) continue;
      candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    const VertexId b_anchor =
        candidates[picker.uniform_choice(1, "anchor", attempt, candidates.size())];
    const VertexSet b = grow_window(g, b_anchor, window, &dist, k + 1, picker, attempt);
    std::vector<VertexId> ka(a.members().begin(), a.members().end());
    std::vector<VertexId> kb(b.members().begin(), b.members().end());
    if (kb < ka) std::swap(ka, kb);
    if (!seen.insert({std::move(ka), std::move(kb)}).second) continue;
    far.push_back({a, b, set_distance(g, a, b)});
  }
  if (far.empty()) {
    report.warnings.push_back("no window pairs at distance > " + std::to_string(k) +
                              "; the check is vacuous on this graph");
  }

  std::vector<WindowPair> controls;
  for (std::uint64_t attempt = 0;
       controls.size() < options.control_pairs && attempt < 1000 && g.edge_count() > 0; ++attempt) {
    const auto& edges = g.edges();
    const auto& e = edges[picker.uniform_choice(2, "control", attempt, edges.size())];
    WindowPair p{VertexSet(std::vector<VertexId>{e.first}), VertexSet(std::vector<VertexId>{e.second}), 1};
    if (std::any_of(controls.begin(), controls.end(),
                    [&](const WindowPair& c) { return c.a == p.a && c.b == p.b; })) {
      continue;
    }
    controls.push_back(std::move(p));
  }

  std::vector<WindowPair> pairs = far;
  pairs.insert(pairs.end(), controls.begin(), controls.end());
  std::vector<Test> tests;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t slot = 0; slot < bank.arity; ++slot) {
      Test t{p, slot, std::vector<std::uint16_t>(trials), std::vector<std::uint16_t>(trials),
             ipow(q, pairs[p].a.members().size()), ipow(q, pairs[p].b.members().size())};
      for (std::size_t i = 0; i < trials; ++i) {
        std::uint16_t ca = 0, cb = 0;
        for (auto v : pairs[p].a.members()) ca = static_cast<std::uint16_t>(ca * q + bank.at(i, v, slot));
        for (auto v : pairs[p].b.members()) cb = static_cast<std::uint16_t>(cb * q + bank.at(i, v, slot));
        t.code_a[i] = ca;
        t.code_b[i] = cb;
      }
      tests.push_back(std::move(t));
    }
  }

  std::vector<std::uint32_t> scratch;
  for (auto& t : tests) t.tv = total_variation(t.code_a, t.code_b, {}, t.cells_a, t.cells_b, scratch);
  std::vector<std::uint32_t> order(trials);
  for (std::size_t r = 0; r < options.bootstrap; ++r) {
    std::iota(order.begin(), order.end(), 0U);
    for (std::size_t i = trials; i-- > 1;) {
      std::swap(order[i], order[picker.uniform_choice(3, "shuffle", r * trials + i, i + 1)]);
    }
    for (auto& t : tests) {
      const double v = total_variation(t.code_a, t.code_b, order, t.cells_a, t.cells_b, scratch);
      t.null_sum += v;
      t.null_sq += v * v;
    }
  }

  const std::size_t far_tests = far.size() * bank.arity;
  const std::size_t control_tests = controls.size() * bank.arity;
  const double z_far = far_tests ? normal_upper_quantile(options.alpha / far_tests) : 0.0;
  const double z_control = control_tests ? normal_upper_quantile(options.alpha / control_tests) : 0.0;
  const double reps = static_cast<double>(std::max<std::size_t>(options.bootstrap, 1));
  for (const auto& t : tests) {
    const bool is_control = t.pair >= far.size();
    const double mean = t.null_sum / reps;
    const double var = std::max(0.0, t.null_sq / reps - mean * mean) * reps / std::max(reps - 1.0, 1.0);
    PairRecord rec;
    rec.a = pairs[t.pair].a;
    rec.b = pairs[t.pair].b;
    rec.distance = pairs[t.pair].distance;
    rec.metric = "tv";
    rec.slot = t.slot;
    rec.tv = t.tv;
    rec.radius = mean + (is_control ? z_control : z_far) * std::sqrt(var);
    rec.independent = rec.tv <= rec.radius;
    if (is_control) {
      if (!rec.independent) report.control_detected = true;
      report.controls.push_back(std::move(rec));
    } else {
      if (!rec.independent) report.pass = false;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

DependenceReport check_k_dependence_mc(const Graph& g, Variant variant, std::size_t k,
                                       std::size_t trials, const VertexRandomness& rnd,
                                       const McOptions& options) {
  if (trials < 1000) throw InputError("Monte Carlo needs at least 1000 trials");
  auto report = check_k_dependence_bank(g, sample_bank(g, variant, trials, rnd, options.jobs), k,
                                        rnd, options);
  report.variant = variant;
  return report;
}

}  // namespace fdcolor
