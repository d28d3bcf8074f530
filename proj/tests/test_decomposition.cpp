#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fdcolor/decomposition.hpp"
#include "fdcolor/errors.hpp"

using namespace fdcolor;

namespace {

using Heads = std::vector<std::optional<VertexId>>;

bool acyclic(const Heads& heads) {
  const auto n = heads.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  for (VertexId s = 0; s < n; ++s) {
    std::vector<VertexId> walk;
    VertexId v = s;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      if (!heads[v]) break;
      v = *heads[v];
      if (state[v] == 1) return false;
    }
    for (auto w : walk) state[w] = 2;
  }
  return true;
}

bool no_isolated(const Heads& heads) {
  std::vector<bool> touched(heads.size(), false);
  for (VertexId x = 0; x < heads.size(); ++x) {
    if (!heads[x]) continue;
    touched[x] = true;
    touched[*heads[x]] = true;
  }
  return std::all_of(touched.begin(), touched.end(), [](bool b) { return b; });
}

Heads without_marked(const Heads& heads, const std::vector<bool>& marked) {
  Heads out = heads;
  for (VertexId x = 0; x < heads.size(); ++x) {
    if (marked[x]) out[x].reset();
  }
  return out;
}

}  // namespace

TEST(BuildDigraph, SingleEdgeIsTwoCycle) {
  const auto g = make_path(2);
  const auto D = build_labeled_digraph(g, 1, VertexRandomness(1), 0);
  EXPECT_EQ(D.out_edge(0)->head, 1u);
  EXPECT_EQ(D.out_edge(1)->head, 0u);
  const auto comps = extract_components(D, 1);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].topology, Topology::kCycle);
  EXPECT_EQ(comps[0].vertices.size(), 2u);
}

TEST(BuildDigraph, ShapeOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const std::size_t d = 2 + seed % 3;
    const std::size_t n = 2 * (3 + seed % 6);
    const auto g = make_random_regular(n, d, seed);
    const auto D = build_labeled_digraph(g, d, VertexRandomness(seed), 0);
    for (VertexId x = 0; x < n; ++x) {
      ASSERT_TRUE(D.out_edge(x).has_value());
      ASSERT_TRUE(g.has_edge(x, D.out_edge(x)->head));
    }
    for (Label i = 1; i <= d; ++i) {
      std::vector<int> in(n, 0), out(n, 0);
      for (VertexId x = 0; x < n; ++x) {
        if (D.out_edge(x)->label != i) continue;
        ++out[x];
        ++in[D.out_edge(x)->head];
      }
      for (VertexId v = 0; v < n; ++v) {
        ASSERT_LE(in[v], 1);
        ASSERT_LE(in[v] + out[v], 2);
      }
      std::set<VertexId> covered;
      for (const auto& c : extract_components(D, i)) {
        for (auto v : c.vertices) ASSERT_TRUE(covered.insert(v).second);
      }
    }
  }
}

TEST(BuildDigraph, OneCyclePerWeakComponent) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto g = make_random_regular(40, 3, seed);
    const auto D = build_labeled_digraph(g, 3, VertexRandomness(seed), 0);
    const auto heads = heads_of(D);
    // Weak components via union-find; cycles via walking until repeat.
    std::vector<VertexId> parent(40);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](VertexId v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (VertexId x = 0; x < 40; ++x) parent[find(x)] = find(*heads[x]);
    std::map<VertexId, std::set<VertexId>> cycles;
    for (VertexId x = 0; x < 40; ++x) {
      VertexId v = x;
      for (int i = 0; i < 40; ++i) v = *heads[v];
      VertexId smallest = v, w = *heads[v];
      while (w != v) {
        smallest = std::min(smallest, w);
        w = *heads[w];
      }
      cycles[find(x)].insert(smallest);
    }
    for (const auto& [root, c] : cycles) ASSERT_EQ(c.size(), 1u);
  }
}

TEST(BuildDigraph, InLabelsDistinctOnTriangle) {
  const auto g = make_cycle(3);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto D = build_labeled_digraph(g, 2, VertexRandomness(s), 0);
    for (VertexId y = 0; y < 3; ++y) {
      std::vector<Label> labels;
      for (VertexId x = 0; x < 3; ++x) {
        if (D.out_edge(x)->head == y) labels.push_back(D.out_edge(x)->label);
      }
      if (labels.size() == 2) { EXPECT_NE(labels[0], labels[1]); }
    }
  }
}

TEST(BuildDigraph, Preconditions) {
  const auto g = build_graph(std::vector<Edge>{{0, 1}}, 3);
  EXPECT_THROW(build_labeled_digraph(g, 1, VertexRandomness(0), 0), InputError);
  const auto D = build_labeled_digraph(g, 1, VertexRandomness(0), 0, true);
  EXPECT_FALSE(D.out_edge(2).has_value());
  EXPECT_THROW(build_labeled_digraph(make_cycle(3), 1, VertexRandomness(0), 0), InputError);
}

TEST(LabeledDigraph, RejectsBrokenInvariants) {
  const auto g = make_path(3);
  using Out = std::vector<std::optional<OutEdge>>;
  EXPECT_THROW(LabeledDigraph(g, 2, Out{OutEdge{2, 1}, std::nullopt, std::nullopt}), InvariantBreach);
  EXPECT_THROW(LabeledDigraph(g, 2, Out{OutEdge{1, 3}, std::nullopt, std::nullopt}), InvariantBreach);
  EXPECT_THROW(LabeledDigraph(g, 2, Out{OutEdge{1, 1}, std::nullopt, OutEdge{1, 1}}), InvariantBreach);
  EXPECT_NO_THROW(LabeledDigraph(g, 2, Out{OutEdge{1, 1}, std::nullopt, OutEdge{1, 2}}));
}

TEST(Assemble, LabelsComeFromTheHead) {
  const auto g = make_path(3);
  const Heads heads{1u, 2u, 1u};
  const std::vector<std::vector<Label>> inject{{2}, {1, 2}, {1}};
  const auto D = assemble_digraph(g, 2, heads, inject);
  EXPECT_EQ(D.out_edge(0)->label, 1u);  // o_1(0)
  EXPECT_EQ(D.out_edge(2)->label, 2u);  // o_1(2)
  EXPECT_EQ(D.out_edge(1)->label, 1u);  // o_2(1)
  EXPECT_EQ(D.undirected_edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(ExtractComponents, Examples) {
  const auto g = make_path(3);
  using Out = std::vector<std::optional<OutEdge>>;
  const LabeledDigraph chain(g, 2, Out{OutEdge{1, 1}, OutEdge{2, 1}, std::nullopt});
  const auto comps = extract_components(chain, 1);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0], (Component{Topology::kPath, {0, 1, 2}}));
  EXPECT_TRUE(extract_components(chain, 2).empty());

  const auto e = make_path(2);
  const LabeledDigraph two(e, 1, Out{OutEdge{1, 1}, OutEdge{0, 1}});
  EXPECT_EQ(extract_components(two, 1), (std::vector<Component>{{Topology::kCycle, {0, 1}}}));
}

TEST(MarkLocalMaxima, ThreeCycleByHand) {
  // x=0 -> y=1 -> z=2 -> x with xi = (.1, .5, .9): only (y, z) is marked.
  const Heads heads{1u, 2u, 0u};
  const std::vector<double> xi{0.1, 0.5, 0.9};
  const auto marked = mark_local_maxima(heads, xi);
  EXPECT_EQ(marked, (std::vector<bool>{false, true, false}));
  const auto kept = without_marked(heads, marked);
  EXPECT_TRUE(acyclic(kept));
  EXPECT_TRUE(no_isolated(kept));
}

TEST(MarkLocalMaxima, TwoCycleByHand) {
  const Heads heads{1u, 0u};
  const std::vector<double> xi{0.2, 0.7};
  EXPECT_EQ(mark_local_maxima(heads, xi), (std::vector<bool>{true, false}));
}

TEST(MarkLocalMaxima, IndegreeZeroNeverMarked) {
  // 0 -> 1 -> 2 -> 1: vertex 0 has no in-arc.
  const Heads heads{1u, 2u, 1u};
  const std::vector<double> xi{0.0, 0.9, 0.1};
  EXPECT_FALSE(mark_local_maxima(heads, xi)[0]);
}

TEST(MarkLocalMaxima, ArcIntoSinkRejected) {
  const Heads heads{1u, std::nullopt};
  const std::vector<double> xi{0.1, 0.2};
  EXPECT_THROW(mark_local_maxima(heads, xi), InputError);
}

TEST(BreakCycles, RandomFunctionalDigraphs) {
  const VertexRandomness rnd(77);
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + rnd.uniform_choice(0, "size", t, 200);
    Heads heads(n);
    std::vector<double> xi(n);
    for (VertexId x = 0; x < n; ++x) {
      const auto h = rnd.uniform_choice(x, "head", t, n - 1);
      heads[x] = static_cast<VertexId>(h >= x ? h + 1 : h);
      xi[x] = rnd.uniform(x, "xi", t);
    }
    const auto marked = mark_local_maxima(heads, xi);
    for (VertexId x = 0; x < n; ++x) {
      if (marked[x]) { ASSERT_FALSE(marked[*heads[x]]) << "consecutive marks"; }
    }
    const auto kept = without_marked(heads, marked);
    ASSERT_TRUE(acyclic(kept));
    ASSERT_TRUE(no_isolated(kept));
  }
}

TEST(BreakCycles, OnGraphDigraph) {
  const auto g = make_random_regular(30, 3, 4);
  const VertexRandomness rnd(4);
  const auto D = build_labeled_digraph(g, 3, rnd, 0);
  const auto Dp = break_cycles(D, rnd, 0);
  const auto heads = heads_of(Dp);
  EXPECT_TRUE(acyclic(heads));
  EXPECT_TRUE(no_isolated(heads));
  for (VertexId x = 0; x < 30; ++x) {
    if (Dp.out_edge(x)) { EXPECT_EQ(*Dp.out_edge(x), *D.out_edge(x)); }
  }
}

TEST(Locality, MarkingIsRadiusTwo) {
  const auto g = make_torus(7, 7);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const VertexRandomness rnd(s);
    const VertexId v = static_cast<VertexId>(s % 49);
    const auto D = build_labeled_digraph(g, 4, rnd, 0);
    const auto dist = bfs_distances(g, v);
    std::vector<VertexId> far;
    for (VertexId u = 0; u < 49; ++u) {
      if (dist[u] > 2) far.push_back(u);
    }
    // Same D, xi resampled far away.
    const auto base = break_cycles(D, rnd, 0);
    const auto moved = break_cycles(D, rnd.resampled(far, s + 1), 0);
    EXPECT_EQ(base.out_edge(v).has_value(), moved.out_edge(v).has_value());
    for (auto u : g.neighbors(v)) {
      if (D.out_edge(u)->head == v) { EXPECT_EQ(base.out_edge(u).has_value(), moved.out_edge(u).has_value()); }
    }
  }
}

TEST(Locality, LabeledArcIsRadiusOne) {
  const auto g = make_random_regular(60, 3, 9);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const VertexRandomness rnd(s);
    const VertexId x = static_cast<VertexId>(s % 60);
    const auto dist = bfs_distances(g, x);
    std::vector<VertexId> far;
    for (VertexId u = 0; u < 60; ++u) {
      if (dist[u] > 1) far.push_back(u);
    }
    const auto a = build_labeled_digraph(g, 3, rnd, 0);
    const auto b = build_labeled_digraph(g, 3, rnd.resampled(far, 5), 0);
    EXPECT_EQ(a.out_edge(x), b.out_edge(x));
  }
}

TEST(StripIsolated, Examples) {
  const VertexRandomness rnd(2);
  const auto one = build_graph(std::vector<Edge>{{0, 1}}, 3);
  const auto r = strip_isolated(one, 3, 2, 4, rnd);
  EXPECT_EQ(r.stripped, (std::vector<VertexId>{2}));
  ASSERT_EQ(r.colors.size(), 1u);
  EXPECT_EQ(r.colors[0][1], rnd.uniform_choice(2, "coord", 5, 3));
  EXPECT_TRUE(strip_isolated(make_cycle(4), 3, 1, 0, rnd).stripped.empty());
  EXPECT_EQ(strip_isolated(build_graph({}, 5), 4, 1, 0, rnd).stripped.size(), 5u);
}

TEST(StripIsolated, UniformOverPalette) {
  const auto g = build_graph({}, 1);
  std::vector<std::size_t> counts(3, 0);
  for (std::uint64_t s = 0; s < 9000; ++s) ++counts[strip_isolated(g, 3, 1, 0, VertexRandomness(s)).colors[0][0]];
  for (auto c : counts) EXPECT_LT(std::abs(static_cast<double>(c) - 3000), 3 * std::sqrt(9000 * 2.0 / 9));
}

TEST(WriteDigraph, Format) {
  const auto g = make_path(2);
  using Out = std::vector<std::optional<OutEdge>>;
  const LabeledDigraph D(g, 1, Out{OutEdge{1, 1}, OutEdge{0, 1}});
  std::ostringstream out;
  write_digraph(out, D, {true, false});
  EXPECT_EQ(out.str(), "0 -> 1 [label 1] [marked]\n1 -> 0 [label 1]\n");
}
