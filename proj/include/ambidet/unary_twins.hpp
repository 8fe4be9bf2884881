#pragma once
// Determinisability of unary unambiguous weighted automata, decided in linear
// time via the twins property. On the trim st-graph the question becomes: do
// all cycles have the same average weight? Two equal-average cycles can be
// pumped to a common length with equal total weights, so merging runs never
// produces a weight conflict; two cycles of different average yield a pair of
// distinct vertices reached from s by equal-length walks and carrying
// equal-length cycles of different total weight — an obstruction no
// deterministic weight assignment can survive.
//
// Decision pipeline:
//   1. trim; an empty or acyclic remainder has no cycles to compare;
//   2. pick any cycle by DFS and rescale every weight so that cycle's average
//      becomes zero: with reference length l and total weight W, the scaled
//      weight is w''(e) = l*w(e) - W. The average W/l may be fractional, and
//      the uniform integer scaling preserves exactly the predicates used
//      here: zero-ness of cycle weights and equality of cycle averages;
//   3. per strongly connected component, grow a potential phi by DFS
//      (phi(root) = 0, phi(v) = phi(u) + w''(u,v) on tree edges) and check
//      phi(v) - phi(u) = w''(u,v) on every intra-component edge. A consistent
//      potential telescopes to weight zero around every cycle; a violated
//      edge closes into an explicit nonzero-weight closed walk through the
//      two tree paths plus a return walk to the root (strong connectivity);
//   4. peel a simple nonzero-weight cycle out of that closed walk and combine
//      it with the reference cycle into a non-twin sibling witness.
//
// Arithmetic: scaled weights reach l*|w| (up to n * 2^63) and potentials sum
// n of those, so the decision pipeline carries w'' and phi in arbitrary
// precision. This is the one spot where the otherwise unit-cost O(n+m) bound
// picks up a machine-word-count factor (a handful of 64-bit limbs for any
// realistic input). The standalone shift_weights entry point returns a graph
// whose weight storage is 64-bit, so it checks the scaled values and reports
// overflow instead of silently wrapping.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ambidet/core.hpp"
#include "ambidet/graph.hpp"
#include "ambidet/st_graph.hpp"

namespace ambidet {

// Witness that determinisation is impossible: p and q are distinct, reached
// from s by walks of equal length, and carry closed walks of equal length but
// different total weight (the two underlying cycles repeated enough times to
// meet at their common length multiple).
struct NonTwinSiblings {
  int p = -1, q = -1;
  WalkSpec reach_p, reach_q;  // equal-length walks s -> p and s -> q
  WalkSpec cycle_p, cycle_q;  // equal-length closed walks at p / q, weights differ
};

struct UnaryTwinsResult {
  bool twins = true;
  std::optional<NonTwinSiblings> witness;  // engaged iff !twins
};

// Vertex potential certifying that every cycle of a strongly connected
// weighted graph has total weight zero: phi(v) - phi(u) equals the weight of
// every edge (u, v), so cycle weights telescope away.
struct PotentialFunction {
  std::vector<BigInt> phi;  // indexed by vertex
};

struct PotentialCheckResult {
  std::optional<PotentialFunction> potential;  // engaged iff every edge is consistent
  // Otherwise: a closed walk v0..v_{k-1} (closing edge back to v0, vertices
  // may repeat) whose total weight is nonzero.
  std::vector<int> nonzero_cycle;

  bool consistent() const { return potential.has_value(); }
};

namespace detail {

// Some simple cycle (vertex list, closing edge back to the front), or nullopt
// when the graph is acyclic. DFS with an explicit path stack; the first back
// edge found closes the cycle.
inline std::optional<std::vector<int>> find_simple_cycle(int n, const Csr& fwd) {
  std::vector<char> color(n, 0);  // 0 fresh, 1 on current path, 2 finished
  std::vector<int> path;
  std::vector<std::pair<int, int>> stack;  // (vertex, out-edge cursor)
  for (int root = 0; root < n; ++root) {
    if (color[root]) continue;
    color[root] = 1;
    path.push_back(root);
    stack.push_back({root, fwd.off[root]});
    while (!stack.empty()) {
      int v = stack.back().first;
      if (stack.back().second < fwd.off[v + 1]) {
        int w = fwd.dst[stack.back().second++];
        if (color[w] == 0) {
          color[w] = 1;
          path.push_back(w);
          stack.push_back({w, fwd.off[w]});
        } else if (color[w] == 1) {
          auto it = std::find(path.begin(), path.end(), w);
          return std::vector<int>(it, path.end());
        }
      } else {
        color[v] = 2;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

// Total weight of a closed vertex walk (closing edge included), in the
// graph's own weights.
inline BigInt cycle_weight(const StGraph& g, const std::vector<int>& cycle) {
  BigInt total = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int e = edge_index(g, cycle[i], cycle[(i + 1) % cycle.size()]);
    if (e < 0) throw std::logic_error("cycle_weight: step is not an edge");
    total += (*g.weight)[e];
  }
  return total;
}

// DFS the strongly connected component containing `root`, assigning a
// potential over the edge weights `w` and checking every intra-component
// edge. Edges leaving the component lie on no cycle and are ignored. The
// scratch vectors span all vertices and are reused across components; the
// worker touches only the component's entries. On the first violated edge it
// returns a closed walk at `root` (vertex list, closing edge implicit) with
// nonzero total weight; nullopt means the component admits a potential.
inline std::optional<std::vector<int>> component_potential_violation(
    int root, const Csr& fwd, const Csr& rev, const std::vector<BigInt>& w,
    const std::vector<int>& comp_of, std::vector<BigInt>& phi,
    std::vector<int>& parent, std::vector<char>& visited) {
  const int cid = comp_of[root];
  phi[root] = 0;
  parent[root] = -1;
  visited[root] = 1;
  std::vector<std::pair<int, int>> stack{{root, fwd.off[root]}};
  while (!stack.empty()) {
    int u = stack.back().first;
    if (stack.back().second == fwd.off[u + 1]) {
      stack.pop_back();
      continue;
    }
    const int cursor = stack.back().second++;
    const int v = fwd.dst[cursor];
    const int eid = fwd.eid[cursor];
    if (comp_of[v] != cid) continue;
    if (!visited[v]) {
      visited[v] = 1;
      parent[v] = u;
      phi[v] = phi[u] + w[eid];
      stack.push_back({v, fwd.off[v]});
      continue;
    }
    if (phi[v] - phi[u] == w[eid]) continue;

    // Violated edge (u, v). Close two walks at the root — tree path to v plus
    // a return walk, and tree path to u plus (u, v) plus the same return
    // walk. Their weights differ by phi(v) - phi(u) - w(u,v) != 0, so at
    // least one is nonzero.
    auto tree_path = [&](int x) {
      std::vector<int> p;
      for (int a = x; a != -1; a = parent[a]) p.push_back(a);
      std::reverse(p.begin(), p.end());
      return p;
    };
    // Shortest return walk to the root: BFS over reversed intra-component
    // edges discovers, for every component vertex y, a forward edge
    // y -> hop[y] stepping toward the root.
    const int n = static_cast<int>(comp_of.size());
    std::vector<int> hop(n, -1), hop_eid(n, -1), queue{root};
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int y = queue[head];
      for (int c = rev.off[y]; c < rev.off[y + 1]; ++c) {
        int x = rev.dst[c];
        if (comp_of[x] != cid || seen[x]) continue;
        seen[x] = 1;
        hop[x] = y;
        hop_eid[x] = rev.eid[c];
        queue.push_back(x);
      }
    }
    BigInt ret_weight = 0;
    for (int a = v; a != root; a = hop[a]) ret_weight += w[hop_eid[a]];
    const BigInt w1 = phi[v] + ret_weight;
    std::vector<int> out;
    if (w1 != 0) {
      out = tree_path(v);
    } else {
      out = tree_path(u);
      if (v != root) out.push_back(v);
    }
    if (v != root)
      for (int a = hop[v]; a != root; a = hop[a]) out.push_back(a);
    return out;
  }
  return std::nullopt;
}

// Extracts a simple cycle of nonzero weight from a closed walk of nonzero
// total weight. Scan the walk keeping a stack of distinct vertices with
// retained prefix weights; every revisit closes a simple cycle, and
// zero-weight ones are snipped out without changing the remaining total, so
// the scan's final step back to the start closes a simple cycle carrying the
// whole (nonzero) remainder if none surfaced earlier.
inline std::vector<int> peel_nonzero_cycle(const StGraph& g, const std::vector<BigInt>& w,
                                           const std::vector<int>& walk) {
  std::vector<int> stack{walk.front()};
  std::vector<BigInt> prefix{0};
  std::vector<int> pos(g.num_vertices, -1);
  pos[walk.front()] = 0;
  BigInt cur = 0;
  for (std::size_t i = 1; i <= walk.size(); ++i) {
    const int x = walk[i % walk.size()];
    const int e = edge_index(g, stack.back(), x);
    if (e < 0) throw std::logic_error("peel_nonzero_cycle: step is not an edge");
    cur += w[e];
    if (pos[x] < 0) {
      pos[x] = static_cast<int>(stack.size());
      stack.push_back(x);
      prefix.push_back(cur);
      continue;
    }
    const int j = pos[x];
    if (cur - prefix[j] != 0)
      return std::vector<int>(stack.begin() + j, stack.end());
    for (std::size_t k = j + 1; k < stack.size(); ++k) pos[stack[k]] = -1;
    stack.resize(j + 1);
    prefix.resize(j + 1);
    cur = prefix[j];
  }
  throw std::logic_error("peel_nonzero_cycle: closed walk has weight zero");
}

}  // namespace detail

// Rescales all weights so the given reference cycle averages to zero: with
// cycle length l and total weight W, each weight w(e) becomes l*w(e) - W.
// The reference may be any closed walk (vertices may repeat); every cycle's
// scaled weight is l*(its weight) - (its length)*W, so zero-ness of cycle
// weights and equality of cycle averages survive the scaling. The output
// graph stores 64-bit weights; scaled values outside that range raise
// std::overflow_error rather than wrapping.
inline StGraph shift_weights(const StGraph& g, const std::vector<int>& ref_cycle) {
  g.validate();
  if (!g.weight) throw std::invalid_argument("shift_weights: graph carries no weights");
  if (ref_cycle.empty()) throw std::invalid_argument("shift_weights: empty reference cycle");
  BigInt total = 0;
  for (std::size_t i = 0; i < ref_cycle.size(); ++i) {
    int e = edge_index(g, ref_cycle[i], ref_cycle[(i + 1) % ref_cycle.size()]);
    if (e < 0)
      throw std::invalid_argument("shift_weights: reference cycle step is not an edge");
    total += (*g.weight)[e];
  }
  const BigInt len = ref_cycle.size();
  const BigInt lo = std::numeric_limits<std::int64_t>::min();
  const BigInt hi = std::numeric_limits<std::int64_t>::max();
  StGraph out = g;
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    BigInt scaled = len * (*g.weight)[i] - total;
    if (scaled < lo || scaled > hi)
      throw std::overflow_error("shift_weights: scaled weight exceeds 64-bit range");
    (*out.weight)[i] = scaled.convert_to<std::int64_t>();
  }
  return out;
}

// Potential check for a strongly connected weighted graph: either a potential
// phi with phi(v) - phi(u) = w(u,v) on every edge (hence every cycle weighs
// zero), or a closed walk of nonzero total weight. Rejects input that is not
// strongly connected.
inline PotentialCheckResult potential_check(const StGraph& scc) {
  scc.validate();
  if (!scc.weight) throw std::invalid_argument("potential_check: graph carries no weights");
  const int n = scc.num_vertices;
  Csr fwd = forward_csr(scc), rev = reverse_csr(scc);
  auto reaches_all = [n](const Csr& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [b, e] = adj.out(queue[head]);
      for (const int* it = b; it != e; ++it)
        if (!seen[*it]) {
          seen[*it] = 1;
          queue.push_back(*it);
        }
    }
    return std::count(seen.begin(), seen.end(), char(1)) == n;
  };
  if (!reaches_all(fwd) || !reaches_all(rev))
    throw std::invalid_argument("potential_check: input not strongly connected");
  std::vector<BigInt> w(scc.edges.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*scc.weight)[i];
  std::vector<BigInt> phi(n, 0);
  std::vector<int> parent(n, -1);
  std::vector<char> visited(n, 0);
  std::vector<int> comp_of(n, 0);
  auto bad = detail::component_potential_violation(0, fwd, rev, w, comp_of, phi,
                                                   parent, visited);
  PotentialCheckResult result;
  if (bad)
    result.nonzero_cycle = std::move(*bad);
  else
    result.potential = PotentialFunction{std::move(phi)};
  return result;
}

namespace detail {

// Turns a nonzero-scaled-weight cycle plus the zero-scaled reference cycle
// into a non-twin sibling witness on the trim graph h, then lifts vertex ids
// back through old_of_new.
inline NonTwinSiblings build_siblings(const StGraph& h, const Csr& fwd,
                                      const std::vector<int>& nonzero_cycle,
                                      const std::vector<int>& ref_cycle,
                                      const std::vector<int>& old_of_new) {
  const int n = h.num_vertices;
  // BFS from s: every trim vertex is reachable.
  std::vector<int> dist(n, -1), par(n, -1), queue{h.s};
  dist[h.s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    auto [b, e] = fwd.out(u);
    for (const int* it = b; it != e; ++it)
      if (dist[*it] < 0) {
        dist[*it] = dist[u] + 1;
        par[*it] = u;
        queue.push_back(*it);
      }
  }
  auto closest = [&](const std::vector<int>& cycle) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(cycle.size()); ++i)
      if (dist[cycle[i]] < dist[cycle[best]]) best = i;
    return best;
  };
  const std::vector<int>* a = &nonzero_cycle;
  const std::vector<int>* b = &ref_cycle;
  int ia = closest(*a), ib = closest(*b);
  if (dist[(*a)[ia]] > dist[(*b)[ib]]) {
    std::swap(a, b);
    std::swap(ia, ib);
  }
  const int la = static_cast<int>(a->size()), lb = static_cast<int>(b->size());
  const int extend = dist[(*b)[ib]] - dist[(*a)[ia]];

  // March both cycles forward from their entry points (cycle a pre-advanced
  // by `extend` so the two walks from s have equal length) until the vertex
  // sequences part ways. They must part within la + lb steps: a sequence with
  // periods la and lb agreeing that long has period gcd(la, lb) by the
  // Fine and Wilf periodicity theorem, which would make both cycles powers of
  // one common closed walk — impossible, since their average weights differ.
  int split = -1;
  for (int cand = 0; cand <= la + lb; ++cand) {
    if ((*a)[(ia + extend + cand) % la] != (*b)[(ib + cand) % lb]) {
      split = cand;
      break;
    }
  }
  if (split < 0)
    throw std::logic_error(
        "unary_twins: cycles of different average weight agree on every rotation");

  auto bfs_path = [&](int x) {
    std::vector<int> p;
    for (int v = x; v != -1; v = par[v]) p.push_back(v);
    std::reverse(p.begin(), p.end());
    return p;
  };
  std::vector<int> reach_a = bfs_path((*a)[ia]);
  for (int k = 1; k <= extend + split; ++k) reach_a.push_back((*a)[(ia + k) % la]);
  std::vector<int> reach_b = bfs_path((*b)[ib]);
  for (int k = 1; k <= split; ++k) reach_b.push_back((*b)[(ib + k) % lb]);

  auto rotate = [](const std::vector<int>& cycle, int at) {
    std::vector<int> r(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) r[i] = cycle[(at + i) % cycle.size()];
    return r;
  };
  std::vector<int> cyc_a = rotate(*a, (ia + extend + split) % la);
  std::vector<int> cyc_b = rotate(*b, (ib + split) % lb);

  auto lift = [&](std::vector<int>& verts) {
    for (int& v : verts) v = old_of_new[v];
  };
  lift(reach_a);
  lift(reach_b);
  lift(cyc_a);
  lift(cyc_b);

  NonTwinSiblings out;
  out.p = reach_a.back();
  out.q = reach_b.back();
  out.reach_p.segs = {WalkSeg{std::move(reach_a), 1, false}};
  out.reach_q.segs = {WalkSeg{std::move(reach_b), 1, false}};
  // Repeating each cycle by the other's length lands both closed walks on the
  // common length la*lb; their totals are (weight of a)*lb vs (weight of b)*la,
  // which differ exactly because the two averages do.
  out.cycle_p.segs = {WalkSeg{std::move(cyc_a), static_cast<std::uint64_t>(lb), true}};
  out.cycle_q.segs = {WalkSeg{std::move(cyc_b), static_cast<std::uint64_t>(la), true}};
  return out;
}

}  // namespace detail

// Twins property (equivalently: determinisability) of a unary weighted
// automaton in st-graph form. True iff every cycle of the trim part has the
// same average weight; a false verdict carries a NonTwinSiblings witness in
// the input graph's vertex ids. Weights are required; the graph is trimmed
// internally.
inline UnaryTwinsResult unary_twins(const StGraph& g) {
  g.validate();
  if (!g.weight) throw std::invalid_argument("unary_twins: graph carries no weights");
  UnaryTwinsResult result;
  StTrimResult tr = trim(g);
  if (tr.empty) return result;
  const StGraph& h = tr.g;
  const int n = h.num_vertices;
  Csr fwd = forward_csr(h);
  auto ref = detail::find_simple_cycle(n, fwd);
  if (!ref) return result;  // acyclic: no cycles to compare

  // Scale so the reference cycle averages zero; arbitrary precision keeps
  // l*w - W exact for any 64-bit input weights.
  const BigInt ref_weight = detail::cycle_weight(h, *ref);
  const BigInt ref_len = ref->size();
  std::vector<BigInt> scaled(h.edges.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    scaled[i] = ref_len * (*h.weight)[i] - ref_weight;

  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : h.edges) adj[u].push_back(v);
  auto [ncomp, comp_of] = strongly_connected_components(adj);
  (void)ncomp;

  Csr rev = reverse_csr(h);
  std::vector<BigInt> phi(n, 0);
  std::vector<int> parent(n, -1);
  std::vector<char> visited(n, 0);
  std::optional<std::vector<int>> bad;
  for (int v = 0; v < n && !bad; ++v)
    if (!visited[v])
      bad = detail::component_potential_violation(v, fwd, rev, scaled, comp_of, phi,
                                                  parent, visited);
  if (!bad) return result;

  std::vector<int> nonzero = detail::peel_nonzero_cycle(h, scaled, *bad);
  result.twins = false;
  result.witness = detail::build_siblings(h, fwd, nonzero, *ref, tr.old_of_new);
  return result;
}

}  // namespace ambidet
