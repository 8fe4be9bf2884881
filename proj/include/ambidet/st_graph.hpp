#pragma once
// Directed st-graphs: the unary-automaton view. A unary automaton in normal
// form projects onto a digraph with a distinguished source s and target t;
// accepting runs correspond to st-walks, so all unary decision problems
// become questions about walk lengths.
//
// Also defines the compressed walk representation used by ambiguity
// witnesses: an explicit expansion of a witness walk can be as long as
// lcm of two cycle lengths (~n^2 edges), which is too large to materialize
// on big instances, so walks are stored as path segments plus
// (simple cycle, repeat count) segments.

#include <cstdint>
#include <optional>
#include <utility>

#include "ambidet/core.hpp"

namespace ambidet {

struct StGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // sorted lexicographically, duplicate-free
  int s = 0;
  int t = 0;
  std::optional<std::vector<std::int64_t>> weight;  // parallel to edges

  void canonicalize() {
    if (!weight) {
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      return;
    }
    if (weight->size() != edges.size())
      throw std::invalid_argument("st-graph: weight vector size mismatch");
    std::vector<std::pair<std::pair<int, int>, std::int64_t>> rows(edges.size());
    for (size_t i = 0; i < rows.size(); ++i) rows[i] = {edges[i], (*weight)[i]};
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].first == rows[i - 1].first)
        throw std::invalid_argument("st-graph: conflicting weights on one edge");
    edges.resize(rows.size());
    weight->resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      edges[i] = rows[i].first;
      (*weight)[i] = rows[i].second;
    }
  }

  void validate() const {
    auto ok = [&](int v) { return 0 <= v && v < num_vertices; };
    if (!ok(s) || !ok(t))
      throw std::invalid_argument("st-graph: s or t out of range");
    for (auto [u, v] : edges)
      if (!ok(u) || !ok(v))
        throw std::invalid_argument("st-graph: edge endpoint out of range");
    if (weight && weight->size() != edges.size())
      throw std::invalid_argument("st-graph: weight vector size mismatch");
    if (!std::is_sorted(edges.begin(), edges.end()) ||
        std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("st-graph: edges not canonical");
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }
};

// --- Adjacency (compressed sparse rows) ------------------------------------

struct Csr {
  std::vector<int> off;  // num_vertices + 1
  std::vector<int> dst;  // m
  std::vector<int> eid;  // m, index of the edge in StGraph::edges

  std::pair<const int*, const int*> out(int v) const {
    return {dst.data() + off[v], dst.data() + off[v + 1]};
  }
  int degree(int v) const { return off[v + 1] - off[v]; }
};

inline Csr make_csr(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                    bool reverse = false) {
  Csr c;
  c.off.assign(num_vertices + 1, 0);
  for (auto [u, v] : edges) ++c.off[(reverse ? v : u) + 1];
  for (int v = 1; v <= num_vertices; ++v) c.off[v] += c.off[v - 1];
  c.dst.resize(edges.size());
  c.eid.resize(edges.size());
  std::vector<int> cursor(c.off.begin(), c.off.end() - 1);
  for (size_t i = 0; i < edges.size(); ++i) {
    int from = reverse ? edges[i].second : edges[i].first;
    int to = reverse ? edges[i].first : edges[i].second;
    c.dst[cursor[from]] = to;
    c.eid[cursor[from]] = static_cast<int>(i);
    ++cursor[from];
  }
  return c;
}

inline Csr forward_csr(const StGraph& g) { return make_csr(g.num_vertices, g.edges); }
inline Csr reverse_csr(const StGraph& g) {
  return make_csr(g.num_vertices, g.edges, true);
}

// --- Conversions -----------------------------------------------------------

// Projects a unary normal-form NFA onto its st-graph.
inline StGraph to_st_graph(const Nfa& a) {
  if (a.alphabet_size != 1)
    throw std::invalid_argument("to_st_graph: automaton is not unary");
  if (a.initial.size() != 1 || a.final.size() != 1)
    throw std::invalid_argument("to_st_graph: automaton is not in normal form");
  StGraph g;
  g.num_vertices = a.num_states;
  g.s = a.initial[0];
  g.t = a.final[0];
  g.edges.reserve(a.transitions.size());
  for (const Transition& tr : a.transitions) g.edges.emplace_back(tr.from, tr.to);
  g.canonicalize();  // sorted already (unary), but keep the invariant explicit
  return g;
}

// Weighted variant; the weight function carries over edge by edge.
inline StGraph to_st_graph(const WeightedAutomaton& w) {
  StGraph g = to_st_graph(w.nfa);
  if (w.weight.size() != w.nfa.transitions.size())
    throw std::invalid_argument("to_st_graph: weight vector size mismatch");
  std::vector<std::int64_t> ew(g.edges.size());
  // Unary transitions are in bijection with edges and both sides are sorted.
  for (size_t i = 0; i < w.nfa.transitions.size(); ++i) ew[i] = w.weight[i];
  g.weight = std::move(ew);
  return g;
}

// Inverse view: the unary NFA underlying an st-graph.
inline Nfa nfa_of_st_graph(const StGraph& g) {
  Nfa a;
  a.num_states = g.num_vertices;
  a.alphabet_size = 1;
  a.initial = {g.s};
  a.final = {g.t};
  a.transitions.reserve(g.edges.size());
  for (auto [u, v] : g.edges) a.transitions.push_back({u, 0, v});
  return a;
}

inline WeightedAutomaton wfa_of_st_graph(const StGraph& g) {
  if (!g.weight)
    throw std::invalid_argument("wfa_of_st_graph: graph carries no weights");
  WeightedAutomaton w;
  w.nfa = nfa_of_st_graph(g);
  w.weight = *g.weight;
  return w;
}

// --- Trim -------------------------------------------------------------------

struct StTrimResult {
  StGraph g;
  std::vector<int> old_of_new;
  std::vector<int> new_of_old;
  bool empty = false;  // no vertex lies on any s-to-t walk (graph left default)
};

// Keeps vertices reachable from s and co-reachable from t.
inline StTrimResult trim(const StGraph& g) {
  Csr fwd = forward_csr(g), rev = reverse_csr(g);
  auto bfs = [&](int seed, const Csr& adj) {
    std::vector<char> seen(g.num_vertices, 0);
    std::vector<int> queue{seed};
    seen[seed] = 1;
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      auto [b, e] = adj.out(u);
      for (const int* it = b; it != e; ++it)
        if (!seen[*it]) {
          seen[*it] = 1;
          queue.push_back(*it);
        }
    }
    return seen;
  };
  std::vector<char> reach = bfs(g.s, fwd), coreach = bfs(g.t, rev);
  StTrimResult r;
  r.new_of_old.assign(g.num_vertices, -1);
  for (int v = 0; v < g.num_vertices; ++v)
    if (reach[v] && coreach[v]) {
      r.new_of_old[v] = static_cast<int>(r.old_of_new.size());
      r.old_of_new.push_back(v);
    }
  if (r.new_of_old[g.s] < 0 || r.new_of_old[g.t] < 0) {
    r.empty = true;
    return r;
  }
  r.g.num_vertices = static_cast<int>(r.old_of_new.size());
  r.g.s = r.new_of_old[g.s];
  r.g.t = r.new_of_old[g.t];
  if (g.weight) r.g.weight.emplace();
  for (size_t i = 0; i < g.edges.size(); ++i) {
    auto [u, v] = g.edges[i];
    if (r.new_of_old[u] >= 0 && r.new_of_old[v] >= 0) {
      r.g.edges.emplace_back(r.new_of_old[u], r.new_of_old[v]);
      if (g.weight) r.g.weight->push_back((*g.weight)[i]);
    }
  }
  return r;
}

// --- Compressed walks -------------------------------------------------------

struct WalkSeg {
  // Path segment: vertices v0..vk, k >= 0 edges, traversed once.
  // Cycle segment: vertices v0..v_{l-1}; edges v0->v1->...->v_{l-1}->v0,
  // traversed `repeats` times (0 allowed), starting and ending at v0.
  std::vector<int> verts;
  std::uint64_t repeats = 1;
  bool cycle = false;
};

struct WalkSpec {
  std::vector<WalkSeg> segs;

  BigInt length() const {
    BigInt len = 0;
    for (const WalkSeg& s : segs) {
      if (s.cycle)
        len += BigInt(s.verts.size()) * s.repeats;
      else
        len += s.verts.size() - 1;
    }
    return len;
  }
  int start_vertex() const { return segs.front().verts.front(); }
  int end_vertex() const {
    const WalkSeg& s = segs.back();
    return s.cycle ? s.verts.front() : s.verts.back();
  }
};

// Structural validity of a compressed walk from `from` to `to`: non-empty
// segments, adjacent segments sharing their junction vertex, and every
// segment edge (including each cycle's closing edge) present in g.
inline bool walk_connects(const StGraph& g, const WalkSpec& w, int from, int to) {
  if (w.segs.empty()) return false;
  int at = from;
  for (const WalkSeg& seg : w.segs) {
    if (seg.verts.empty()) return false;
    if (seg.verts.front() != at) return false;
    for (size_t i = 0; i + 1 < seg.verts.size(); ++i)
      if (!g.has_edge(seg.verts[i], seg.verts[i + 1])) return false;
    if (seg.cycle) {
      if (!g.has_edge(seg.verts.back(), seg.verts.front())) return false;
      at = seg.verts.front();
    } else {
      at = seg.verts.back();
    }
  }
  return at == to;
}

// Expands to an explicit vertex sequence when at most `max_edges` long.
inline std::optional<std::vector<int>> expand_walk(const WalkSpec& w,
                                                   std::uint64_t max_edges) {
  if (w.segs.empty() || w.length() > max_edges) return std::nullopt;
  std::vector<int> out{w.segs.front().verts.front()};
  for (const WalkSeg& seg : w.segs) {
    if (seg.cycle) {
      for (std::uint64_t r = 0; r < seg.repeats; ++r) {
        for (size_t i = 1; i < seg.verts.size(); ++i) out.push_back(seg.verts[i]);
        out.push_back(seg.verts.front());
      }
    } else {
      for (size_t i = 1; i < seg.verts.size(); ++i) out.push_back(seg.verts[i]);
    }
  }
  return out;
}

// Position of (u, v) in the canonical edge array, or -1 when absent.
inline int edge_index(const StGraph& g, int u, int v) {
  auto it = std::lower_bound(g.edges.begin(), g.edges.end(), std::make_pair(u, v));
  if (it == g.edges.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - g.edges.begin());
}

// Total weight of a compressed walk. Every step (including each cycle's
// closing edge) must be an edge of g; cycle segments contribute their weight
// once per repeat.
inline BigInt walk_weight(const StGraph& g, const WalkSpec& w) {
  if (!g.weight) throw std::invalid_argument("walk_weight: graph carries no weights");
  auto step = [&](int u, int v) {
    int e = edge_index(g, u, v);
    if (e < 0) throw std::invalid_argument("walk_weight: walk step is not an edge");
    return BigInt((*g.weight)[e]);
  };
  BigInt total = 0;
  for (const WalkSeg& seg : w.segs) {
    if (seg.verts.empty()) throw std::invalid_argument("walk_weight: empty segment");
    BigInt once = 0;
    for (std::size_t i = 0; i + 1 < seg.verts.size(); ++i)
      once += step(seg.verts[i], seg.verts[i + 1]);
    if (seg.cycle) {
      once += step(seg.verts.back(), seg.verts.front());
      total += once * seg.repeats;
    } else {
      total += once;
    }
  }
  return total;
}

// A pair of distinct equal-length st-walks: the ambiguity witness for the
// unary pipeline.
struct EqualWalksWitness {
  WalkSpec walk1, walk2;
};

}  // namespace ambidet
