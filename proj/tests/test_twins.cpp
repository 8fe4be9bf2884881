#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "ambidet/fixtures.hpp"
#include "ambidet/generators.hpp"
#include "ambidet/graph.hpp"
#include "ambidet/oracles.hpp"
#include "ambidet/st_graph.hpp"
#include "ambidet/unary_twins.hpp"

using namespace ambidet;

namespace {

StGraph wgraph(int n, std::vector<std::tuple<int, int, std::int64_t>> rows, int s, int t) {
  StGraph g;
  g.num_vertices = n;
  g.s = s;
  g.t = t;
  g.weight.emplace();
  for (auto [u, v, w] : rows) {
    g.edges.emplace_back(u, v);
    g.weight->push_back(w);
  }
  g.canonicalize();
  return g;
}

WalkSpec cycle_spec(std::vector<int> verts, std::uint64_t repeats = 1) {
  WalkSpec w;
  w.segs = {WalkSeg{std::move(verts), repeats, true}};
  return w;
}

BigInt cyc_weight(const StGraph& g, const std::vector<int>& verts) {
  return walk_weight(g, cycle_spec(verts));
}

// Every simple cycle as a vertex list anchored at its minimum vertex.
std::vector<std::vector<int>> all_simple_cycles(const StGraph& g) {
  const int n = g.num_vertices;
  std::vector<std::vector<int>> adj(n), out;
  for (auto [u, v] : g.edges) adj[u].push_back(v);
  std::vector<int> path;
  std::vector<char> on(n, 0);
  auto dfs = [&](auto&& self, int anchor, int v) -> void {
    for (int x : adj[v]) {
      if (x == anchor)
        out.push_back(path);
      else if (x > anchor && !on[x]) {
        on[x] = 1;
        path.push_back(x);
        self(self, anchor, x);
        path.pop_back();
        on[x] = 0;
      }
    }
  };
  for (int a = 0; a < n; ++a) {
    path = {a};
    on[a] = 1;
    dfs(dfs, a, a);
    on[a] = 0;
  }
  return out;
}

// Full validity of a non-twin sibling witness against the original graph.
void check_siblings(const StGraph& g, const NonTwinSiblings& w) {
  REQUIRE(w.p != w.q);
  REQUIRE(0 <= w.p);
  REQUIRE(w.p < g.num_vertices);
  REQUIRE(0 <= w.q);
  REQUIRE(w.q < g.num_vertices);
  CHECK(walk_connects(g, w.reach_p, g.s, w.p));
  CHECK(walk_connects(g, w.reach_q, g.s, w.q));
  CHECK(w.reach_p.length() == w.reach_q.length());
  CHECK(walk_connects(g, w.cycle_p, w.p, w.p));
  CHECK(walk_connects(g, w.cycle_q, w.q, w.q));
  CHECK(w.cycle_p.length() >= 1);
  CHECK(w.cycle_p.length() == w.cycle_q.length());
  CHECK(walk_weight(g, w.cycle_p) != walk_weight(g, w.cycle_q));
}

// Induced weighted subgraph on the given vertices (reindexed in list order).
StGraph induced_subgraph(const StGraph& g, const std::vector<int>& verts) {
  std::vector<int> idx(g.num_vertices, -1);
  for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
  StGraph sub;
  sub.num_vertices = static_cast<int>(verts.size());
  sub.s = sub.t = 0;
  sub.weight.emplace();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [u, v] = g.edges[i];
    if (idx[u] >= 0 && idx[v] >= 0) {
      sub.edges.emplace_back(idx[u], idx[v]);
      sub.weight->push_back((*g.weight)[i]);
    }
  }
  sub.canonicalize();
  return sub;
}

// Chain of cycle blocks of alternating length 2 and 4 linked head-to-head;
// every cycle edge weighs `avg` except that `bump_last` is added to one edge
// of the final block.
StGraph cycle_chain(int blocks, std::int64_t avg, std::int64_t bump_last) {
  StGraph g;
  g.weight.emplace();
  std::vector<int> base(blocks);
  int n = 0;
  for (int b = 0; b < blocks; ++b) {
    base[b] = n;
    n += (b % 2 == 0) ? 2 : 4;
  }
  g.num_vertices = n;
  auto add = [&](int u, int v, std::int64_t w) {
    g.edges.emplace_back(u, v);
    g.weight->push_back(w);
  };
  for (int b = 0; b < blocks; ++b) {
    const int len = (b % 2 == 0) ? 2 : 4, at = base[b];
    for (int i = 0; i < len; ++i)
      add(at + i, at + (i + 1) % len,
          avg + ((b == blocks - 1 && i == 0) ? bump_last : 0));
    if (b + 1 < blocks) add(at, base[b + 1], 0);
  }
  g.s = 0;
  g.t = base[blocks - 1];
  g.canonicalize();
  return g;
}

StGraph sibling_graph(std::int64_t x1, std::int64_t x2, std::int64_t y1, std::int64_t y2) {
  return to_st_graph(normalize(fixtures::sibling_pair_wfa(x1, x2, y1, y2)));
}

}  // namespace

TEST_CASE("edge_index and walk_weight utilities") {
  StGraph g = wgraph(3, {{0, 1, 2}, {1, 2, -3}, {2, 0, 4}, {1, 1, 7}}, 0, 2);
  // canonical order: (0,1) (1,1) (1,2) (2,0)
  CHECK(edge_index(g, 0, 1) == 0);
  CHECK(edge_index(g, 1, 1) == 1);
  CHECK(edge_index(g, 1, 2) == 2);
  CHECK(edge_index(g, 2, 0) == 3);
  CHECK(edge_index(g, 0, 2) == -1);
  CHECK(edge_index(g, 2, 1) == -1);

  WalkSpec path;
  path.segs = {WalkSeg{{0, 1, 2}, 1, false}};
  CHECK(walk_weight(g, path) == -1);  // 2 + (-3)

  CHECK(cyc_weight(g, {0, 1, 2}) == 3);  // 2 - 3 + 4
  CHECK(walk_weight(g, cycle_spec({1}, 5)) == 35);
  WalkSpec mixed;
  mixed.segs = {WalkSeg{{0, 1}, 1, false}, WalkSeg{{1}, 2, true},
                WalkSeg{{1, 2}, 1, false}};
  CHECK(walk_weight(g, mixed) == 2 + 14 - 3);

  StGraph unweighted;
  unweighted.num_vertices = 2;
  unweighted.edges = {{0, 1}};
  CHECK_THROWS_AS(walk_weight(unweighted, path), std::invalid_argument);
  WalkSpec bogus;
  bogus.segs = {WalkSeg{{0, 2}, 1, false}};
  CHECK_THROWS_AS(walk_weight(g, bogus), std::invalid_argument);
  WalkSpec open_cycle;
  open_cycle.segs = {WalkSeg{{0, 1}, 1, true}};  // closing edge (1,0) absent
  CHECK_THROWS_AS(walk_weight(g, open_cycle), std::invalid_argument);
}

TEST_CASE("shift_weights zeroes the reference average and reports overflow") {
  StGraph two = wgraph(2, {{0, 1, 1}, {1, 0, 3}}, 0, 1);
  StGraph shifted = shift_weights(two, {0, 1});
  CHECK(*shifted.weight == std::vector<std::int64_t>{-2, 2});
  CHECK(cyc_weight(shifted, {0, 1}) == 0);
  // The rotation of the reference cycle scales identically.
  CHECK(*shift_weights(two, {1, 0}).weight == *shifted.weight);
  // A closed walk may repeat vertices; twice around doubles the scale.
  CHECK(*shift_weights(two, {0, 1, 0, 1}).weight == std::vector<std::int64_t>{-4, 4});

  StGraph loop = wgraph(2, {{0, 0, 5}, {0, 1, 7}}, 0, 1);
  CHECK(*shift_weights(loop, {0}).weight == std::vector<std::int64_t>{0, 2});

  // Extreme but representable: a length-1 reference subtracts its own weight.
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  StGraph extreme = wgraph(2, {{0, 0, big}, {0, 1, big}}, 0, 1);
  CHECK(*shift_weights(extreme, {0}).weight == std::vector<std::int64_t>{0, 0});

  CHECK_THROWS_AS(shift_weights(two, {}), std::invalid_argument);
  CHECK_THROWS_AS(shift_weights(two, {0, 0}), std::invalid_argument);  // no self-loop
  StGraph open = wgraph(2, {{0, 1, 1}}, 0, 1);
  CHECK_THROWS_AS(shift_weights(open, {0, 1}), std::invalid_argument);
  StGraph bare;
  bare.num_vertices = 2;
  bare.edges = {{0, 1}};
  CHECK_THROWS_AS(shift_weights(bare, {0, 1}), std::invalid_argument);

  const std::int64_t half = std::int64_t(1) << 62;
  StGraph hot = wgraph(2, {{0, 1, half}, {1, 0, -half}}, 0, 1);
  CHECK_THROWS_AS(shift_weights(hot, {0, 1}), std::overflow_error);
}

TEST_CASE("shift_weights preserves cycle-weight comparisons on random graphs") {
  gen::Engine rng(7201);
  int multi_cycle_graphs = 0;
  for (int it = 0; it < 250; ++it) {
    CAPTURE(it);
    StGraph g = gen::random_weighted_st_graph(rng, 10, 1.0, 5);
    auto cycles = all_simple_cycles(g);
    if (cycles.empty()) continue;
    if (cycles.size() >= 2) ++multi_cycle_graphs;
    const auto& ref = cycles[gen::uniform_int(rng, 0, static_cast<int>(cycles.size()) - 1)];
    StGraph shifted = shift_weights(g, ref);
    CHECK(cyc_weight(shifted, ref) == 0);
    const BigInt ref_w = cyc_weight(g, ref);
    const BigInt ref_l = ref.size();
    for (const auto& c : cycles) {
      // Scaled weight keeps the sign of (average of c) - (reference average).
      const BigInt scaled = cyc_weight(shifted, c);
      const BigInt cross = ref_l * cyc_weight(g, c) - BigInt(c.size()) * ref_w;
      CHECK(scaled == cross);
    }
  }
  CHECK(multi_cycle_graphs >= 40);
}

TEST_CASE("potential_check pins and input validation") {
  // Zero-weight 3-cycle admits the telescoping potential.
  StGraph tri = wgraph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, -2}}, 0, 0);
  PotentialCheckResult r = potential_check(tri);
  REQUIRE(r.consistent());
  CHECK(r.potential->phi == std::vector<BigInt>{0, 1, 2});

  // A nonzero 3-cycle is caught directly...
  StGraph bad_tri = wgraph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, 0, 0);
  r = potential_check(bad_tri);
  REQUIRE(!r.consistent());
  CHECK(r.nonzero_cycle == std::vector<int>{0, 1, 2});
  CHECK(cyc_weight(bad_tri, r.nonzero_cycle) == 3);
  // ...and admits a potential once shifted by its own average.
  r = potential_check(shift_weights(bad_tri, {0, 1, 2}));
  REQUIRE(r.consistent());
  CHECK(r.potential->phi == std::vector<BigInt>{0, 0, 0});

  // Two cycles through a shared vertex, one of nonzero weight.
  StGraph shared =
      wgraph(4, {{0, 1, 1}, {1, 2, 1}, {2, 0, -2}, {0, 3, 1}, {3, 0, 1}}, 0, 0);
  r = potential_check(shared);
  REQUIRE(!r.consistent());
  CHECK(r.nonzero_cycle == std::vector<int>{0, 3});
  CHECK(cyc_weight(shared, r.nonzero_cycle) == 2);

  // Violated edge whose head is not the root: the closed walk detours through
  // the violated edge and back.
  StGraph cross =
      wgraph(3, {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}, {2, 1, 5}}, 0, 0);
  r = potential_check(cross);
  REQUIRE(!r.consistent());
  CHECK(r.nonzero_cycle == std::vector<int>{0, 1, 2, 1, 2});
  CHECK(cyc_weight(cross, r.nonzero_cycle) == 5);

  // Return walk that itself carries the imbalance: the root-to-head walk
  // closed by the return is already nonzero.
  StGraph heavy_return =
      wgraph(4, {{0, 1, 0}, {1, 2, 0}, {2, 1, 5}, {2, 3, 0}, {3, 0, 8}}, 0, 0);
  r = potential_check(heavy_return);
  REQUIRE(!r.consistent());
  CHECK(r.nonzero_cycle == std::vector<int>{0, 1, 2, 3});
  CHECK(cyc_weight(heavy_return, r.nonzero_cycle) == 8);

  // Trivia: lone vertex, with and without a self-loop.
  StGraph lone = wgraph(1, {}, 0, 0);
  r = potential_check(lone);
  REQUIRE(r.consistent());
  CHECK(r.potential->phi == std::vector<BigInt>{0});
  r = potential_check(wgraph(1, {{0, 0, 0}}, 0, 0));
  CHECK(r.consistent());
  r = potential_check(wgraph(1, {{0, 0, 3}}, 0, 0));
  REQUIRE(!r.consistent());
  CHECK(r.nonzero_cycle == std::vector<int>{0});

  CHECK_THROWS_AS(potential_check(wgraph(2, {{0, 1, 1}}, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(
      potential_check(wgraph(4, {{0, 1, 0}, {1, 0, 0}, {2, 3, 0}, {3, 2, 0}}, 0, 3)),
      std::invalid_argument);
  StGraph bare;
  bare.num_vertices = 2;
  bare.edges = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(potential_check(bare), std::invalid_argument);
}

TEST_CASE("potential_check on random strongly connected parts") {
  gen::Engine rng(7202);
  int consistent_nontrivial = 0, violated = 0;
  for (int it = 0; it < 300; ++it) {
    CAPTURE(it);
    StGraph g = gen::random_weighted_st_graph(rng, 12, 1.2, 5);
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (auto [u, v] : g.edges) adj[u].push_back(v);
    auto [ncomp, comp_of] = strongly_connected_components(adj);
    // largest component
    std::vector<int> size(ncomp, 0);
    for (int c : comp_of) ++size[c];
    int big = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
    std::vector<int> verts;
    for (int v = 0; v < g.num_vertices; ++v)
      if (comp_of[v] == big) verts.push_back(v);
    StGraph sub = induced_subgraph(g, verts);

    const int mode = it % 3;
    if (mode == 1) {
      for (auto& w : *sub.weight) w = 0;
    } else if (mode == 2) {
      std::vector<std::int64_t> phi(sub.num_vertices);
      for (auto& p : phi) p = gen::uniform_int(rng, -6, 6);
      for (std::size_t i = 0; i < sub.edges.size(); ++i)
        (*sub.weight)[i] = phi[sub.edges[i].second] - phi[sub.edges[i].first];
    }

    PotentialCheckResult r = potential_check(sub);
    if (r.consistent()) {
      REQUIRE(r.potential->phi.size() == static_cast<std::size_t>(sub.num_vertices));
      for (std::size_t i = 0; i < sub.edges.size(); ++i) {
        auto [u, v] = sub.edges[i];
        CHECK(r.potential->phi[v] - r.potential->phi[u] == (*sub.weight)[i]);
      }
      for (const auto& c : all_simple_cycles(sub)) CHECK(cyc_weight(sub, c) == 0);
      if (!sub.edges.empty()) ++consistent_nontrivial;
    } else {
      ++violated;
      const auto& c = r.nonzero_cycle;
      REQUIRE(!c.empty());
      for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(sub.has_edge(c[i], c[(i + 1) % c.size()]));
      CHECK(cyc_weight(sub, c) != 0);
    }
  }
  CHECK(consistent_nontrivial >= 40);
  CHECK(violated >= 40);
}

TEST_CASE("peeling a nonzero closed walk yields a nonzero simple cycle") {
  // The walk 0,1,2,1,3 closes a zero-weight loop at vertex 1 first; peeling
  // discards it and the final closure carries the remaining weight.
  StGraph g = wgraph(4, {{0, 1, 5}, {1, 2, 3}, {2, 1, -3}, {1, 3, 0}, {3, 0, -1}}, 0, 0);
  std::vector<BigInt> w(g.edges.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*g.weight)[i];
  CHECK(detail::peel_nonzero_cycle(g, w, {0, 1, 2, 1, 3}) == std::vector<int>{0, 1, 3});
  CHECK(detail::peel_nonzero_cycle(g, w, {0, 1, 3}) == std::vector<int>{0, 1, 3});

  StGraph z = wgraph(2, {{0, 1, 1}, {1, 0, -1}}, 0, 0);
  std::vector<BigInt> zw{1, -1};
  CHECK_THROWS_AS(detail::peel_nonzero_cycle(z, zw, {0, 1}), std::logic_error);
}

TEST_CASE("unary_twins verdicts on sibling pairs") {
  for (std::int64_t x1 : {-2, 0, 2})
    for (std::int64_t x2 : {-2, 0, 2})
      for (std::int64_t y1 = -2; y1 <= 2; ++y1)
        for (std::int64_t y2 = -2; y2 <= 2; ++y2) {
          CAPTURE(x1);
          CAPTURE(x2);
          CAPTURE(y1);
          CAPTURE(y2);
          StGraph g = sibling_graph(x1, x2, y1, y2);
          UnaryTwinsResult r = unary_twins(g);
          CHECK(r.twins == (y1 == y2));
          CHECK(naive_twins(g) == (y1 == y2));
          CHECK(r.witness.has_value() == !r.twins);
          if (r.witness) check_siblings(g, *r.witness);
        }

  // Exact witness for one pair: the two loop states, reached by the two
  // equal-length initial walks, each carrying its one-step loop.
  UnaryTwinsResult r = unary_twins(sibling_graph(1, 1, 0, 1));
  REQUIRE(!r.twins);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->p == 3);
  CHECK(r.witness->q == 1);
  REQUIRE(r.witness->reach_p.segs.size() == 1);
  CHECK(r.witness->reach_p.segs[0].verts == std::vector<int>{4, 2, 3});
  CHECK(r.witness->reach_q.segs[0].verts == std::vector<int>{4, 0, 1});
  REQUIRE(r.witness->cycle_p.segs.size() == 1);
  CHECK(r.witness->cycle_p.segs[0].verts == std::vector<int>{3});
  CHECK(r.witness->cycle_p.segs[0].repeats == 1);
  CHECK(r.witness->cycle_q.segs[0].verts == std::vector<int>{1});
  CHECK(r.witness->cycle_q.segs[0].repeats == 1);
}

TEST_CASE("unary_twins pins: unequal cycle lengths, shared vertices, extremes") {
  // Cycles of length 2 (average 1) and 1 (average 2): the witness pumps the
  // loop twice against the 2-cycle once.
  StGraph mixed = wgraph(
      5, {{0, 1, 0}, {1, 2, 1}, {2, 1, 1}, {0, 3, 0}, {3, 3, 2}, {1, 4, 0}, {3, 4, 0}},
      0, 4);
  UnaryTwinsResult r = unary_twins(mixed);
  REQUIRE(!r.twins);
  REQUIRE(r.witness.has_value());
  check_siblings(mixed, *r.witness);
  CHECK(r.witness->p == 3);
  CHECK(r.witness->q == 1);
  CHECK(r.witness->reach_p.segs[0].verts == std::vector<int>{0, 3});
  CHECK(r.witness->reach_q.segs[0].verts == std::vector<int>{0, 1});
  CHECK(r.witness->cycle_p.segs[0].verts == std::vector<int>{3});
  CHECK(r.witness->cycle_p.segs[0].repeats == 2);
  CHECK(r.witness->cycle_q.segs[0].verts == std::vector<int>{1, 2});
  CHECK(r.witness->cycle_q.segs[0].repeats == 1);
  CHECK(walk_weight(mixed, r.witness->cycle_p) == 4);
  CHECK(walk_weight(mixed, r.witness->cycle_q) == 2);

  // Same shape with equal averages is determinisable.
  StGraph balanced = wgraph(
      5, {{0, 1, 0}, {1, 2, 1}, {2, 1, 1}, {0, 3, 0}, {3, 3, 1}, {1, 4, 0}, {3, 4, 0}},
      0, 4);
  CHECK(unary_twins(balanced).twins);
  CHECK(naive_twins(balanced));

  // Both cycles pass through vertex 1, so the equal-distance entry points
  // coincide and the witness walks must march into the cycles until the
  // vertex sequences part ways.
  StGraph shared = wgraph(
      6, {{0, 1, 0}, {1, 2, 3}, {2, 3, 0}, {3, 1, 0}, {1, 4, 0}, {4, 1, 0}, {1, 5, 0}},
      0, 5);
  r = unary_twins(shared);
  REQUIRE(!r.twins);
  REQUIRE(r.witness.has_value());
  check_siblings(shared, *r.witness);
  CHECK(r.witness->p == 4);
  CHECK(r.witness->q == 2);
  CHECK(r.witness->reach_p.segs[0].verts == std::vector<int>{0, 1, 4});
  CHECK(r.witness->reach_q.segs[0].verts == std::vector<int>{0, 1, 2});
  CHECK(r.witness->cycle_p.segs[0].verts == std::vector<int>{4, 1});
  CHECK(r.witness->cycle_p.segs[0].repeats == 3);
  CHECK(r.witness->cycle_q.segs[0].verts == std::vector<int>{2, 3, 1});
  CHECK(r.witness->cycle_q.segs[0].repeats == 2);
  CHECK(walk_weight(shared, r.witness->cycle_p) == 0);
  CHECK(walk_weight(shared, r.witness->cycle_q) == 6);

  // Weights near 2^62: the decision pipeline promotes to big integers, and
  // the witness weights come back exact.
  const std::int64_t half = std::int64_t(1) << 62;
  StGraph extreme = wgraph(
      3, {{0, 1, half}, {1, 0, half}, {1, 2, 0}, {2, 2, half - 1}}, 0, 2);
  r = unary_twins(extreme);
  REQUIRE(!r.twins);
  REQUIRE(r.witness.has_value());
  check_siblings(extreme, *r.witness);
  CHECK(r.witness->p == 0);
  CHECK(r.witness->q == 2);
  CHECK(r.witness->reach_p.segs[0].verts == std::vector<int>{0, 1, 0});
  CHECK(r.witness->reach_q.segs[0].verts == std::vector<int>{0, 1, 2});
  CHECK(walk_weight(extreme, r.witness->cycle_p) == BigInt(1) << 63);
  CHECK(walk_weight(extreme, r.witness->cycle_q) == (BigInt(1) << 63) - 2);
  StGraph extreme_eq = wgraph(
      3, {{0, 1, half}, {1, 0, half}, {1, 2, 0}, {2, 2, half}}, 0, 2);
  CHECK(unary_twins(extreme_eq).twins);
}

TEST_CASE("unary_twins trims before deciding") {
  // Cycles outside the useful part cannot block determinisation.
  StGraph useless = wgraph(
      4, {{0, 1, 0}, {2, 2, 5}, {0, 3, 0}, {3, 3, 7}}, 0, 1);
  CHECK(unary_twins(useless).twins);
  CHECK(naive_twins(useless));

  // Acyclic, single-vertex, and empty-after-trim inputs are all twins.
  CHECK(unary_twins(wgraph(3, {{0, 1, 4}, {1, 2, -4}}, 0, 2)).twins);
  CHECK(unary_twins(wgraph(1, {}, 0, 0)).twins);
  CHECK(unary_twins(wgraph(2, {}, 0, 1)).twins);

  // Chains of components must all share one average.
  StGraph chain_bad = wgraph(
      6,
      {{0, 1, 1}, {1, 0, 1}, {0, 2, 0}, {2, 3, 1}, {3, 2, 1}, {2, 4, 0},
       {4, 5, 2}, {5, 4, 2}},
      0, 4);
  UnaryTwinsResult r = unary_twins(chain_bad);
  REQUIRE(!r.twins);
  check_siblings(chain_bad, *r.witness);
  StGraph chain_good = wgraph(
      6,
      {{0, 1, 1}, {1, 0, 1}, {0, 2, 0}, {2, 3, 1}, {3, 2, 1}, {2, 4, 0},
       {4, 5, 1}, {5, 4, 1}},
      0, 4);
  CHECK(unary_twins(chain_good).twins);

  StGraph bare;
  bare.num_vertices = 2;
  bare.edges = {{0, 1}};
  CHECK_THROWS_AS(unary_twins(bare), std::invalid_argument);
}

TEST_CASE("unary_twins matches the simple-cycle oracle on random graphs") {
  gen::Engine rng(7203);
  int true_cases = 0, false_cases = 0;
  for (int it = 0; it < 900; ++it) {
    CAPTURE(it);
    StGraph g = gen::random_weighted_st_graph(rng, 12, 0.6 + 0.3 * (it % 4), 5);
    const int mode = it % 5;
    if (mode == 0) {
      for (auto& w : *g.weight) w = 0;
    } else if (mode == 1) {
      const std::int64_t c = gen::uniform_int(rng, -3, 3);
      for (auto& w : *g.weight) w = c;
    }
    UnaryTwinsResult r = unary_twins(g);
    CHECK(r.twins == naive_twins(g));
    CHECK(r.witness.has_value() == !r.twins);
    if (r.twins)
      ++true_cases;
    else {
      ++false_cases;
      check_siblings(g, *r.witness);
    }
  }
  CHECK(true_cases >= 250);
  CHECK(false_cases >= 200);
}

TEST_CASE("naive_twins caps and short-cycle cutoff") {
  // Averages 1 (triangle), 5 (loop), 0 (two-cycle): short caps see only the
  // short cycles.
  StGraph g = wgraph(
      4, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 3, 0}, {3, 3, 5}, {3, 0, 0}}, 0, 0);
  CHECK(!naive_twins(g));
  CHECK(naive_twins(g, 1));   // only the self-loop is visible
  CHECK(!naive_twins(g, 2));  // self-loop vs the 0<->3 two-cycle

  StGraph big;
  big.num_vertices = 16;
  big.s = big.t = 0;
  big.weight.emplace();
  CHECK_THROWS_AS(naive_twins(big), std::invalid_argument);
  StGraph bare;
  bare.num_vertices = 2;
  bare.edges = {{0, 1}};
  CHECK_THROWS_AS(naive_twins(bare), std::invalid_argument);
}

TEST_CASE("twins decision scales to long component chains") {
  const int blocks = 30'000;
  StGraph ok = cycle_chain(blocks, 3, 0);
  auto start = std::chrono::steady_clock::now();
  UnaryTwinsResult r = unary_twins(ok);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  CHECK(r.twins);
  CHECK(ms < 5000);

  StGraph bumped = cycle_chain(blocks, 3, 1);
  start = std::chrono::steady_clock::now();
  r = unary_twins(bumped);
  ms = std::chrono::duration_cast<std::chrono::milliseconds>(
           std::chrono::steady_clock::now() - start)
           .count();
  REQUIRE(!r.twins);
  check_siblings(bumped, *r.witness);
  CHECK(ms < 5000);
}
