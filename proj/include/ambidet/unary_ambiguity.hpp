#pragma once
// Near-linear unambiguity decision for unary automata presented as st-graphs.
//
// A trim st-graph is unambiguous iff no two distinct s-to-t walks have the
// same length. The decision pipeline:
//
//   1. check_disjoint_cycles: every strongly connected component must be a
//      single vertex or a simple cycle, and no walk may connect two cycles;
//      otherwise two equal-length st-walks exist and are constructed.
//   2. cycle_gate_transform: each cycle is rewired through one "gate" vertex
//      so that every walk wraps around a cycle only through its gate. The
//      multiset of st-walk lengths is preserved and walks map back
//      one-to-one.
//   3. dag_walk_lengths: cutting the cycles open leaves DAGs whose walk
//      lengths are computed by a linear tree/jump decomposition that aborts
//      with a witness pair as soon as two equal-length walks appear.
//   4. unary_to_progressions: walk lengths through each cycle form arithmetic
//      progressions "base + x * cycle_length". Short collisions are found by
//      a linear marking array, same-cycle-length collisions by residue
//      comparison, and what remains is exactly a progression-family
//      disjointness instance for disjoint_progressions.
//
// Every negative answer carries a pair of distinct equal-length st-walks in
// compressed form (EqualWalksWitness).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ambidet/core.hpp"
#include "ambidet/graph.hpp"
#include "ambidet/progressions.hpp"
#include "ambidet/st_graph.hpp"

namespace ambidet {

struct UnaryUnambiguityResult {
  bool unambiguous = true;
  std::optional<EqualWalksWitness> witness;  // engaged iff !unambiguous
};

// ---------------------------------------------------------------------------
// Cycle structure of the graph
// ---------------------------------------------------------------------------

namespace detail {

struct UnarySccView {
  int ncomp = 0;
  std::vector<int> comp;        // per vertex
  std::vector<int> comp_size;   // per component
  std::vector<int> comp_inner;  // per component: edges with both ends inside
  std::vector<char> comp_cycle;  // simple cycle (a self-loop counts)
  std::vector<char> comp_dense;  // carries two distinct cycles
};

inline UnarySccView unary_scc_view(const StGraph& g) {
  UnarySccView view;
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (auto [u, v] : g.edges) adj[u].push_back(v);
  auto [ncomp, comp] = strongly_connected_components(adj);
  view.ncomp = ncomp;
  view.comp = std::move(comp);
  view.comp_size.assign(ncomp, 0);
  view.comp_inner.assign(ncomp, 0);
  for (int v = 0; v < g.num_vertices; ++v) ++view.comp_size[view.comp[v]];
  for (auto [u, v] : g.edges)
    if (view.comp[u] == view.comp[v]) ++view.comp_inner[view.comp[u]];
  view.comp_cycle.assign(ncomp, 0);
  view.comp_dense.assign(ncomp, 0);
  for (int k = 0; k < ncomp; ++k) {
    // A strongly connected set with as many inner edges as vertices is one
    // simple cycle; any extra edge yields two distinct cycles in it.
    if (view.comp_inner[k] > view.comp_size[k])
      view.comp_dense[k] = 1;
    else if (view.comp_inner[k] == view.comp_size[k])
      view.comp_cycle[k] = 1;
  }
  return view;
}

// Vertices of a simple-cycle component in walk order, starting at `gate`.
inline std::vector<int> cycle_order(const Csr& fwd, const std::vector<int>& comp,
                                    int gate) {
  std::vector<int> order{gate};
  int k = comp[gate];
  int cur = gate;
  while (true) {
    int next = -1;
    auto [b, e] = fwd.out(cur);
    for (const int* it = b; it != e; ++it)
      if (comp[*it] == k) {
        next = *it;
        break;  // each vertex of a simple cycle has one inner successor
      }
    if (next == gate) break;
    order.push_back(next);
    cur = next;
  }
  return order;
}

struct BfsPaths {
  std::vector<int> parent;  // -1 for seeds and unreached vertices
  std::vector<char> seen;

  std::vector<int> path_to(int v) const {  // seed .. v along BFS parents
    std::vector<int> p{v};
    while (parent[v] >= 0) {
      v = parent[v];
      p.push_back(v);
    }
    std::reverse(p.begin(), p.end());
    return p;
  }
};

inline BfsPaths bfs_paths(const Csr& adj, int n, const std::vector<int>& seeds,
                          const std::vector<char>* allow = nullptr) {
  BfsPaths b;
  b.parent.assign(n, -1);
  b.seen.assign(n, 0);
  std::vector<int> queue;
  for (int s : seeds)
    if (!b.seen[s]) {
      b.seen[s] = 1;
      queue.push_back(s);
    }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int u = queue[i];
    auto [lo, hi] = adj.out(u);
    for (const int* it = lo; it != hi; ++it) {
      int v = *it;
      if (b.seen[v] || (allow && !(*allow)[v])) continue;
      b.seen[v] = 1;
      b.parent[v] = u;
      queue.push_back(v);
    }
  }
  return b;
}

struct DisjointCyclesReport {
  bool cycles_simple = true;     // no component carries two distinct cycles
  int dense_comp = -1;           // a violating component if !cycles_simple
  bool cycles_separated = true;  // no walk connects two cycle components
  int comp_from = -1;            // a cycle component reaching another one
  UnarySccView view;
};

inline DisjointCyclesReport disjoint_cycles_report(const StGraph& g) {
  DisjointCyclesReport r;
  r.view = unary_scc_view(g);
  for (int k = 0; k < r.view.ncomp && r.dense_comp < 0; ++k)
    if (r.view.comp_dense[k]) {
      r.cycles_simple = false;
      r.dense_comp = k;
    }
  // Component ids are reverse-topological (every edge u -> v has
  // comp[u] >= comp[v]), so a sinks-first sweep propagates "reaches a cycle
  // component" along the condensation.
  std::vector<std::vector<int>> cond_out(r.view.ncomp);
  for (auto [u, v] : g.edges)
    if (r.view.comp[u] != r.view.comp[v])
      cond_out[r.view.comp[u]].push_back(r.view.comp[v]);
  std::vector<char> reaches_cycle(r.view.ncomp, 0);
  for (int k = 0; k < r.view.ncomp; ++k) {
    for (int j : cond_out[k])
      if (r.view.comp_cycle[j] || reaches_cycle[j]) reaches_cycle[k] = 1;
    if (r.view.comp_cycle[k] && reaches_cycle[k] && r.comp_from < 0) {
      r.cycles_separated = false;
      r.comp_from = k;
    }
  }
  return r;
}

inline WalkSpec path_walk(std::vector<int> verts) {
  WalkSpec w;
  w.segs.push_back(WalkSeg{std::move(verts), 1, false});
  return w;
}

inline void substitute_walk(WalkSpec& w, const std::vector<int>& table) {
  for (WalkSeg& seg : w.segs)
    for (int& v : seg.verts) v = table[v];
}

// Two equal-length st-walks from a component carrying two distinct cycles:
// both cycles pass through a shared vertex, and the two interleavings of the
// cycles around it have the same length but differ in their first edge.
inline EqualWalksWitness dense_component_witness(const StGraph& g,
                                                 const UnarySccView& view,
                                                 int k) {
  int n = g.num_vertices;
  Csr fwd = forward_csr(g), rev = reverse_csr(g);
  std::vector<char> inside(n, 0);
  for (int v = 0; v < n; ++v) inside[v] = view.comp[v] == k;
  // Some vertex of the component has two inner successors.
  int hub = -1, x1 = -1, x2 = -1;
  for (int v = 0; v < n && hub < 0; ++v) {
    if (!inside[v]) continue;
    auto [lo, hi] = fwd.out(v);
    int first = -1;
    for (const int* it = lo; it != hi; ++it) {
      if (!inside[*it]) continue;
      if (first < 0) {
        first = *it;
      } else {
        hub = v;
        x1 = first;
        x2 = *it;
        break;
      }
    }
  }
  if (hub < 0)
    throw std::logic_error("dense_component_witness: component has no branching vertex");
  auto cycle_through = [&](int succ) {
    std::vector<int> verts{hub};
    if (succ != hub) {
      BfsPaths back = bfs_paths(fwd, n, {succ}, &inside);
      std::vector<int> path = back.path_to(hub);  // succ .. hub
      verts.insert(verts.end(), path.begin(), path.end() - 1);
    }
    return verts;  // hub, succ, ..., pred(hub); closing edge implicit
  };
  std::vector<int> c1 = cycle_through(x1), c2 = cycle_through(x2);
  std::vector<int> p = bfs_paths(fwd, n, {g.s}).path_to(hub);
  std::vector<int> q = bfs_paths(rev, n, {g.t}).path_to(hub);  // t .. hub
  std::reverse(q.begin(), q.end());                            // hub .. t
  EqualWalksWitness w;
  w.walk1.segs = {WalkSeg{p, 1, false}, WalkSeg{c1, 1, true}, WalkSeg{c2, 1, true},
                  WalkSeg{q, 1, false}};
  w.walk2.segs = {WalkSeg{p, 1, false}, WalkSeg{c2, 1, true}, WalkSeg{c1, 1, true},
                  WalkSeg{q, 1, false}};
  return w;
}

// Two equal-length st-walks from two cycles connected by a walk: looping
// l2 times around the first cycle or l1 times around the second inserts the
// same length l1*l2, and the two walks differ in how often they visit the
// second cycle's anchor vertex.
inline EqualWalksWitness connected_cycles_witness(const StGraph& g,
                                                  const UnarySccView& view,
                                                  int comp_from) {
  int n = g.num_vertices;
  Csr fwd = forward_csr(g), rev = reverse_csr(g);
  // BFS from the first cycle until any other cycle component is discovered.
  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (view.comp[v] == comp_from) {
      seen[v] = 1;
      queue.push_back(v);
    }
  int target = -1;
  for (std::size_t i = 0; i < queue.size() && target < 0; ++i) {
    int u = queue[i];
    auto [lo, hi] = fwd.out(u);
    for (const int* it = lo; it != hi; ++it) {
      int v = *it;
      if (seen[v]) continue;
      seen[v] = 1;
      parent[v] = u;
      if (view.comp_cycle[view.comp[v]] && view.comp[v] != comp_from) {
        target = v;
        break;
      }
      queue.push_back(v);
    }
  }
  if (target < 0)
    throw std::logic_error("connected_cycles_witness: no reachable second cycle");
  std::vector<int> q{target};  // v1 .. v2 once reversed
  for (int v = target; parent[v] >= 0; v = parent[v]) q.push_back(parent[v]);
  std::reverse(q.begin(), q.end());
  int v1 = q.front(), v2 = q.back();
  std::vector<int> c1 = cycle_order(fwd, view.comp, v1);
  std::vector<int> c2 = cycle_order(fwd, view.comp, v2);
  std::uint64_t l1 = c1.size(), l2 = c2.size();
  std::vector<int> p = bfs_paths(fwd, n, {g.s}).path_to(v1);
  std::vector<int> r = bfs_paths(rev, n, {g.t}).path_to(v2);  // t .. v2
  std::reverse(r.begin(), r.end());                           // v2 .. t
  EqualWalksWitness w;
  w.walk1.segs = {WalkSeg{p, 1, false}, WalkSeg{c1, l2, true}, WalkSeg{q, 1, false},
                  WalkSeg{r, 1, false}};
  w.walk2.segs = {WalkSeg{p, 1, false}, WalkSeg{q, 1, false}, WalkSeg{c2, l1, true},
                  WalkSeg{r, 1, false}};
  return w;
}

}  // namespace detail

// True iff every strongly connected component of g is a single vertex or a
// simple cycle AND no walk connects two cycle components. On a trim graph
// this is necessary for unambiguity.
inline bool check_disjoint_cycles(const StGraph& g) {
  g.validate();
  detail::DisjointCyclesReport r = detail::disjoint_cycles_report(g);
  return r.cycles_simple && r.cycles_separated;
}

// ---------------------------------------------------------------------------
// Cycle gate transform
// ---------------------------------------------------------------------------

struct CycleInfo {
  int gate = -1;
  std::vector<int> verts;      // cycle in walk order; verts[0] == gate
  std::vector<int> entry_ids;  // entry-path vertex aligned with position j, or -1
  std::vector<int> exit_ids;   // exit-path vertex aligned with position j, or -1
};

struct OriginTag {
  enum class Kind : std::uint8_t { Original, EntryPath, ExitPath };
  Kind kind = Kind::Original;
  int vertex = -1;  // Original: the pre-transform vertex id
  int cycle = -1;   // EntryPath/ExitPath: index into CycleGateGraph::cycles
  int index = -1;   // aligned cycle position j
};

// Result of rerouting every cycle through its gate. Vertices 0..n-1 are the
// original ones; appended vertices carry EntryPath/ExitPath tags. Walks of
// the transformed graph map back to walks of the input by replacing each
// entry/exit-path vertex with the cycle vertex it is aligned with.
struct CycleGateGraph {
  StGraph graph;
  std::vector<int> gates;  // gates[c] == cycles[c].gate
  std::vector<CycleInfo> cycles;
  std::vector<OriginTag> vertex_remap;  // per vertex of `graph`
};

struct CycleGateOutcome {
  std::optional<CycleGateGraph> transformed;     // engaged iff no early verdict
  std::optional<UnaryUnambiguityResult> verdict;  // engaged otherwise
};

// Requires a trim input. Short-circuits to a verdict when the cycle
// structure alone decides the question: two overlapping or connected cycles
// are ambiguous, and a graph whose s and t share one simple cycle is that
// cycle, hence unambiguous.
inline CycleGateOutcome cycle_gate_transform(const StGraph& g) {
  g.validate();
  {
    StTrimResult check = trim(g);
    if (check.empty || check.g.num_vertices != g.num_vertices)
      throw std::invalid_argument("cycle_gate_transform: input graph is not trim");
  }
  CycleGateOutcome out;
  detail::DisjointCyclesReport report = detail::disjoint_cycles_report(g);
  if (!report.cycles_simple) {
    out.verdict = UnaryUnambiguityResult{
        false, detail::dense_component_witness(g, report.view, report.dense_comp)};
    return out;
  }
  if (!report.cycles_separated) {
    out.verdict = UnaryUnambiguityResult{
        false, detail::connected_cycles_witness(g, report.view, report.comp_from)};
    return out;
  }
  const detail::UnarySccView& view = report.view;
  if (view.comp_cycle[view.comp[g.s]] && view.comp[g.s] == view.comp[g.t]) {
    // Trim plus separated cycles force the whole graph to be this one simple
    // cycle; walk lengths around a cycle are pairwise distinct.
    out.verdict = UnaryUnambiguityResult{true, std::nullopt};
    return out;
  }

  int n = g.num_vertices;
  Csr fwd = forward_csr(g);
  CycleGateGraph gp;
  // Collect the cycles; a cycle containing s (or t) is gated there.
  {
    std::vector<int> gate_of_comp(view.ncomp, -1);
    for (int v = n - 1; v >= 0; --v)
      if (view.comp_cycle[view.comp[v]]) gate_of_comp[view.comp[v]] = v;
    if (view.comp_cycle[view.comp[g.t]]) gate_of_comp[view.comp[g.t]] = g.t;
    if (view.comp_cycle[view.comp[g.s]]) gate_of_comp[view.comp[g.s]] = g.s;
    std::vector<int> gates;
    for (int k = 0; k < view.ncomp; ++k)
      if (gate_of_comp[k] >= 0) gates.push_back(gate_of_comp[k]);
    std::sort(gates.begin(), gates.end());
    for (int gate : gates) {
      CycleInfo info;
      info.gate = gate;
      info.verts = detail::cycle_order(fwd, view.comp, gate);
      gp.cycles.push_back(std::move(info));
      gp.gates.push_back(gate);
    }
  }

  std::vector<int> cyc_of(n, -1), pos_of(n, -1);
  for (int c = 0; c < static_cast<int>(gp.cycles.size()); ++c)
    for (int j = 0; j < static_cast<int>(gp.cycles[c].verts.size()); ++j) {
      cyc_of[gp.cycles[c].verts[j]] = c;
      pos_of[gp.cycles[c].verts[j]] = j;
    }

  std::vector<int> deg_in(n, 0), deg_out(n, 0);
  for (auto [u, v] : g.edges) {
    ++deg_out[u];
    ++deg_in[v];
  }

  gp.vertex_remap.resize(n);
  for (int v = 0; v < n; ++v) gp.vertex_remap[v] = OriginTag{OriginTag::Kind::Original, v, -1, -1};
  int fresh = n;
  for (int c = 0; c < static_cast<int>(gp.cycles.size()); ++c) {
    CycleInfo& info = gp.cycles[c];
    int len = static_cast<int>(info.verts.size());
    info.entry_ids.assign(len, -1);
    info.exit_ids.assign(len, -1);
    int lo = 0;  // smallest non-gate position with an incoming edge from outside
    for (int j = 1; j < len && lo == 0; ++j)
      if (deg_in[info.verts[j]] > 1) lo = j;
    if (lo > 0)
      for (int j = lo; j < len; ++j) {
        info.entry_ids[j] = fresh++;
        gp.vertex_remap.push_back(OriginTag{OriginTag::Kind::EntryPath, -1, c, j});
      }
    int hi = 0;  // largest non-gate position with an outgoing edge to outside
    for (int j = len - 1; j >= 1 && hi == 0; --j)
      if (deg_out[info.verts[j]] > 1) hi = j;
    for (int j = 1; j <= hi; ++j) {
      info.exit_ids[j] = fresh++;
      gp.vertex_remap.push_back(OriginTag{OriginTag::Kind::ExitPath, -1, c, j});
    }
  }

  StGraph& h = gp.graph;
  h.num_vertices = fresh;
  h.s = g.s;
  h.t = g.t;
  h.edges.reserve(g.edges.size() * 2);
  for (auto [u, v] : g.edges) {
    if (cyc_of[u] >= 0 && cyc_of[u] == cyc_of[v]) {
      h.edges.emplace_back(u, v);  // the cycle's own edge
      continue;
    }
    if (cyc_of[u] >= 0 && cyc_of[v] >= 0 && pos_of[u] > 0 && pos_of[v] > 0)
      throw std::logic_error("cycle_gate_transform: edge between two cycles");
    int from = u, to = v;
    if (cyc_of[u] >= 0 && pos_of[u] > 0) {
      from = gp.cycles[cyc_of[u]].exit_ids[pos_of[u]];
      if (from < 0) throw std::logic_error("cycle_gate_transform: missing exit vertex");
    }
    if (cyc_of[v] >= 0 && pos_of[v] > 0) {
      int c = cyc_of[v], j = pos_of[v];
      to = gp.cycles[c].entry_ids[j];
      if (to < 0) throw std::logic_error("cycle_gate_transform: missing entry vertex");
      h.edges.emplace_back(from, to);
      // A walk that enters here and leaves before wrapping past the gate
      // never needs the cycle: route it along the exit path directly.
      if (gp.cycles[c].exit_ids[j] >= 0)
        h.edges.emplace_back(from, gp.cycles[c].exit_ids[j]);
      continue;
    }
    h.edges.emplace_back(from, to);
  }
  for (const CycleInfo& info : gp.cycles) {
    int len = static_cast<int>(info.verts.size());
    for (int j = 1; j < len; ++j)
      if (info.entry_ids[j] >= 0)
        h.edges.emplace_back(info.entry_ids[j],
                             j + 1 < len ? info.entry_ids[j + 1] : info.gate);
    for (int j = 1; j < len; ++j)
      if (info.exit_ids[j] >= 0)
        h.edges.emplace_back(j == 1 ? info.gate : info.exit_ids[j - 1],
                             info.exit_ids[j]);
  }
  h.canonicalize();
  h.validate();
  out.transformed = std::move(gp);
  return out;
}

// ---------------------------------------------------------------------------
// Walk lengths of a trim DAG
// ---------------------------------------------------------------------------

struct DagWalkLengths {
  std::vector<int> p_st;                 // sorted distinct s-to-t walk lengths
  std::map<int, std::vector<int>> p_vt;  // per vertex of in-degree >= 2:
                                         // sorted distinct v-to-t walk lengths
};

struct DagResult {
  bool ambiguous = false;
  std::optional<EqualWalksWitness> witness;  // engaged iff ambiguous
  std::optional<DagWalkLengths> lengths;     // engaged iff !ambiguous
};

namespace detail {

// Provenance kinds for a stored walk length: how the walk continues from the
// vertex owning the entry.
inline constexpr std::uint8_t kDagEmpty = 0;        // at t: the empty walk
inline constexpr std::uint8_t kDagStayViaStay = 1;  // tree path down to `via`, then its stay entry
inline constexpr std::uint8_t kDagStayViaJump = 2;  // tree path down to `via`, then its jump entry
inline constexpr std::uint8_t kDagJumpViaStay = 3;  // non-tree edge to `via`, then its stay entry
inline constexpr std::uint8_t kDagJumpViaJump = 4;  // non-tree edge to `via`, then its jump entry

struct DagEntry {
  int len = 0;
  std::uint8_t kind = kDagEmpty;
  int via = -1;
  int sub = -1;
};

// One walk-length computation over a trim DAG. Per vertex v, `jump[v]` holds
// the lengths of v-to-t walks starting with a non-tree edge; `stay[v]` (kept
// for v in S = {in-degree >= 2} plus the root s and the target t) holds the
// lengths of walks starting along the BFS tree. Any two equal-length walks
// from one vertex — and hence any ambiguity — trigger an abort that
// materializes two equal-length st-walks.
struct DagRun {
  int n = 0, s = 0, t = 0;
  std::vector<int> parent, depth;  // BFS tree from s
  std::vector<char> in_s;          // in-degree >= 2
  std::vector<int> nontree_in;     // one fixed non-tree in-neighbour, or -1
  std::vector<std::vector<DagEntry>> stay, jump;
  bool aborted = false;
  std::vector<int> walk1, walk2;  // equal-length st-walks; engaged iff aborted

  std::vector<int> tree_path_from_root(int v) const {
    std::vector<int> p{v};
    while (p.back() != s) p.push_back(parent[p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
  }

  // The v-to-t walk an entry stands for, as an explicit vertex list.
  std::vector<int> materialize(int v, DagEntry e) const {
    std::vector<int> out{v};
    while (true) {
      switch (e.kind) {
        case kDagEmpty:
          return out;
        case kDagStayViaStay:
        case kDagStayViaJump: {
          std::size_t mark = out.size();
          for (int u = e.via; u != v; u = parent[u]) out.push_back(u);
          std::reverse(out.begin() + static_cast<std::ptrdiff_t>(mark), out.end());
          int nv = e.via;
          e = (e.kind == kDagStayViaStay) ? stay[nv][e.sub] : jump[nv][e.sub];
          v = nv;
          break;
        }
        default: {  // kDagJumpViaStay / kDagJumpViaJump
          out.push_back(e.via);
          int nv = e.via;
          e = (e.kind == kDagJumpViaStay) ? stay[nv][e.sub] : jump[nv][e.sub];
          v = nv;
          break;
        }
      }
    }
  }
};

inline DagRun dag_run(const StGraph& g) {
  DagRun r;
  r.n = g.num_vertices;
  r.s = g.s;
  r.t = g.t;
  const int n = r.n;
  Csr fwd = forward_csr(g);
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : g.edges) ++indeg[v];

  // BFS tree from s; trim means it must reach everything.
  r.parent.assign(n, -1);
  r.depth.assign(n, 0);
  std::vector<int> order;
  order.reserve(n);
  {
    std::vector<char> seen(n, 0);
    seen[r.s] = 1;
    order.push_back(r.s);
    for (std::size_t i = 0; i < order.size(); ++i) {
      int u = order[i];
      auto [lo, hi] = fwd.out(u);
      for (const int* it = lo; it != hi; ++it)
        if (!seen[*it]) {
          seen[*it] = 1;
          r.parent[*it] = u;
          r.depth[*it] = r.depth[u] + 1;
          order.push_back(*it);
        }
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("dag_walk_lengths: input graph is not trim");
  for (int v = 0; v < n; ++v)
    if (v != r.t && fwd.degree(v) == 0)
      throw std::invalid_argument("dag_walk_lengths: input graph is not trim");

  // Kahn topological order; failure to drain means a cycle.
  std::vector<int> topo;
  topo.reserve(n);
  {
    std::vector<int> need(indeg);
    for (int v = 0; v < n; ++v)
      if (need[v] == 0) topo.push_back(v);
    for (std::size_t i = 0; i < topo.size(); ++i) {
      int u = topo[i];
      auto [lo, hi] = fwd.out(u);
      for (const int* it = lo; it != hi; ++it)
        if (--need[*it] == 0) topo.push_back(*it);
    }
    if (static_cast<int>(topo.size()) != n)
      throw std::invalid_argument("dag_walk_lengths: input graph has a cycle");
  }

  r.in_s.assign(n, 0);
  r.nontree_in.assign(n, -1);
  for (auto [u, v] : g.edges) {
    if (r.parent[v] == u) continue;  // the tree edge into v
    if (r.nontree_in[v] < 0) r.nontree_in[v] = u;
  }
  for (int v = 0; v < n; ++v) r.in_s[v] = indeg[v] >= 2;

  std::vector<std::vector<int>> kids(n);
  for (int v : order)
    if (v != r.s) kids[r.parent[v]].push_back(v);

  r.stay.assign(n, {});
  r.jump.assign(n, {});

  // Duplicate detection: one timestamped array over lengths, owned by the
  // vertex currently being filled (both its jump and stay insertions).
  std::vector<int> stamp_owner(n + 1, -1), stamp_set(n + 1, -1), stamp_idx(n + 1, -1);

  auto abort_with = [&](int v, const DagEntry& e1, const DagEntry& e2) {
    std::vector<int> prefix = r.tree_path_from_root(v);
    std::vector<int> suff1 = r.materialize(v, e1);
    std::vector<int> suff2 = r.materialize(v, e2);
    r.walk1 = prefix;
    r.walk1.insert(r.walk1.end(), suff1.begin() + 1, suff1.end());
    r.walk2 = prefix;
    r.walk2.insert(r.walk2.end(), suff2.begin() + 1, suff2.end());
    r.aborted = true;
  };

  // set_tag: 0 = stay, 1 = jump. Returns false when the run aborted.
  auto insert_entry = [&](int v, int set_tag, const DagEntry& e) -> bool {
    if (stamp_owner[e.len] == v) {
      const DagEntry& prev = stamp_set[e.len] == 0 ? r.stay[v][stamp_idx[e.len]]
                                                   : r.jump[v][stamp_idx[e.len]];
      abort_with(v, prev, e);
      return false;
    }
    std::vector<DagEntry>& dest = set_tag == 0 ? r.stay[v] : r.jump[v];
    stamp_owner[e.len] = v;
    stamp_set[e.len] = set_tag;
    stamp_idx[e.len] = static_cast<int>(dest.size());
    dest.push_back(e);
    return true;
  };

  // Pigeonhole budgets: in an unambiguous trim DAG each family of stored
  // entries injects into the st-walks, of which there are at most n (their
  // lengths are distinct and below n). Exceeding a budget proves ambiguity;
  // the scan below then finds two entries mapping to equal-length st-walks.
  const long long budget = static_cast<long long>(n) + 1;
  long long total_jump = 0, total_stay_root = 0, total_stay_inner = 0;

  auto pigeonhole_scan = [&](int family) {
    std::vector<int> slot_v(n + 1, -1), slot_set(n + 1, -1), slot_idx(n + 1, -1);
    auto build = [&](int v, int set_tag, int idx) {
      const DagEntry& e = set_tag == 0 ? r.stay[v][idx] : r.jump[v][idx];
      std::vector<int> w;
      if (family == 1) {  // jump: tree prefix to v, then the jump walk
        w = r.tree_path_from_root(v);
        std::vector<int> suff = r.materialize(v, e);
        w.insert(w.end(), suff.begin() + 1, suff.end());
      } else if (family == 2) {  // stay at the root s
        w = r.materialize(v, e);
      } else {  // stay at v in S: tree prefix to a non-tree in-neighbour, then v
        w = r.tree_path_from_root(r.nontree_in[v]);
        std::vector<int> suff = r.materialize(v, e);
        w.insert(w.end(), suff.begin(), suff.end());
      }
      return w;
    };
    auto visit = [&](int v, int set_tag, int idx, int key) -> bool {
      if (slot_v[key] >= 0) {
        r.walk1 = build(slot_v[key], slot_set[key], slot_idx[key]);
        r.walk2 = build(v, set_tag, idx);
        r.aborted = true;
        return true;
      }
      slot_v[key] = v;
      slot_set[key] = set_tag;
      slot_idx[key] = idx;
      return false;
    };
    if (family == 1) {
      for (int v = 0; v < n; ++v)
        for (std::size_t i = 0; i < r.jump[v].size(); ++i)
          if (visit(v, 1, static_cast<int>(i), r.depth[v] + r.jump[v][i].len)) return;
    } else if (family == 2) {
      for (std::size_t i = 0; i < r.stay[r.s].size(); ++i)
        if (visit(r.s, 0, static_cast<int>(i), r.stay[r.s][i].len)) return;
    } else {
      for (int v = 0; v < n; ++v) {
        if (!r.in_s[v] || v == r.s) continue;
        for (std::size_t i = 0; i < r.stay[v].size(); ++i)
          if (visit(v, 0, static_cast<int>(i),
                    r.depth[r.nontree_in[v]] + 1 + r.stay[v][i].len))
            return;
      }
    }
    throw std::logic_error("dag_run: pigeonhole overflow without a collision");
  };

  for (int oi = n - 1; oi >= 0 && !r.aborted; --oi) {
    int v = topo[oi];
    // Walks leaving v through a non-tree edge.
    auto [lo, hi] = fwd.out(v);
    for (const int* it = lo; it != hi && !r.aborted; ++it) {
      int u = *it;
      if (r.parent[u] == v) continue;
      for (std::size_t i = 0; i < r.stay[u].size() && !r.aborted; ++i)
        if (insert_entry(v, 1,
                         DagEntry{r.stay[u][i].len + 1, kDagJumpViaStay, u,
                                  static_cast<int>(i)}))
          ++total_jump;
      for (std::size_t i = 0; i < r.jump[u].size() && !r.aborted; ++i)
        if (insert_entry(v, 1,
                         DagEntry{r.jump[u][i].len + 1, kDagJumpViaJump, u,
                                  static_cast<int>(i)}))
          ++total_jump;
    }
    if (r.aborted) break;
    if (total_jump > budget) {
      pigeonhole_scan(1);
      break;
    }
    if (v == r.t) {
      insert_entry(v, 0, DagEntry{0, kDagEmpty, -1, -1});
      if (r.in_s[v]) ++total_stay_inner;
      continue;
    }
    if (v != r.s && !r.in_s[v]) continue;
    // Walks leaving v along the BFS tree: descend the region of the tree
    // below v whose internal vertices have in-degree 1, collecting jump
    // walks everywhere and stay walks at region leaves (vertices in S or t).
    long long inserted = 0;
    std::vector<std::pair<int, int>> stack;
    for (std::size_t i = kids[v].size(); i-- > 0;) stack.emplace_back(kids[v][i], 1);
    while (!stack.empty() && !r.aborted) {
      auto [u, d] = stack.back();
      stack.pop_back();
      bool leaf = r.in_s[u] || u == r.t;
      for (std::size_t i = 0; i < r.jump[u].size() && !r.aborted; ++i)
        if (insert_entry(v, 0,
                         DagEntry{d + r.jump[u][i].len, kDagStayViaJump, u,
                                  static_cast<int>(i)}))
          ++inserted;
      if (r.aborted) break;
      if (leaf) {
        for (std::size_t i = 0; i < r.stay[u].size() && !r.aborted; ++i)
          if (insert_entry(v, 0,
                           DagEntry{d + r.stay[u][i].len, kDagStayViaStay, u,
                                    static_cast<int>(i)}))
            ++inserted;
      } else {
        for (std::size_t i = kids[u].size(); i-- > 0;)
          stack.emplace_back(kids[u][i], d + 1);
      }
    }
    if (r.aborted) break;
    if (v == r.s) {
      total_stay_root += inserted;
      if (total_stay_root > budget) {
        pigeonhole_scan(2);
        break;
      }
    } else {
      total_stay_inner += inserted;
      if (total_stay_inner > budget) {
        pigeonhole_scan(3);
        break;
      }
    }
  }
  return r;
}

}  // namespace detail

// Walk lengths of a trim DAG, or a witness that two s-to-t walks share a
// length. Throws std::invalid_argument on cyclic or non-trim input. Runs in
// linear time: stored lengths are budgeted by a pigeonhole bound, so even an
// ambiguous dense input (a trim DAG with more than 3n-3 edges always is)
// aborts after O(n + m) work.
inline DagResult dag_walk_lengths(const StGraph& g) {
  g.validate();
  detail::DagRun run = detail::dag_run(g);
  DagResult res;
  if (run.aborted) {
    res.ambiguous = true;
    EqualWalksWitness w;
    w.walk1 = detail::path_walk(std::move(run.walk1));
    w.walk2 = detail::path_walk(std::move(run.walk2));
    res.witness = std::move(w);
    return res;
  }
  auto lens_of = [&](int v) {
    std::vector<int> ls;
    ls.reserve(run.stay[v].size() + run.jump[v].size());
    for (const detail::DagEntry& e : run.stay[v]) ls.push_back(e.len);
    for (const detail::DagEntry& e : run.jump[v]) ls.push_back(e.len);
    std::sort(ls.begin(), ls.end());
    return ls;
  };
  DagWalkLengths out;
  out.p_st = lens_of(g.s);
  for (int v = 0; v < g.num_vertices; ++v)
    if (run.in_s[v]) out.p_vt.emplace(v, lens_of(v));
  res.lengths = std::move(out);
  return res;
}

// ---------------------------------------------------------------------------
// The full pipeline
// ---------------------------------------------------------------------------

namespace detail {

struct GateHandle {
  int set = 0;  // 0 = stay, 1 = jump
  int idx = 0;
};

// One loop-free s..t walk length through a gate, split at the gate.
struct BaseRecord {
  int value = 0;
  int cycle = -1;
  int len_in = 0, len_out = 0;
  GateHandle in, out;
};

struct BuiltDag {
  StGraph g;
  std::vector<int> to_gp;    // run vertex -> transformed-graph vertex
  std::vector<int> from_gp;  // transformed-graph vertex -> run vertex or -1
  DagRun run;
};

// Assembles a compacted DAG over the kept transformed-graph vertices plus
// appended chain vertices (ext ids >= gp_n map onto their cycle's gate).
struct PendingDag {
  int gp_n = 0;
  int ext_n = 0;
  std::vector<char> keep;
  std::vector<int> ext_to_gp;
  std::vector<std::pair<int, int>> edges;

  explicit PendingDag(int gpn) : gp_n(gpn), ext_n(gpn), keep(gpn, 1), ext_to_gp(gpn) {
    for (int v = 0; v < gpn; ++v) ext_to_gp[v] = v;
  }
  int add_chain_vertex(int gate_gp) {
    keep.push_back(1);
    ext_to_gp.push_back(gate_gp);
    return ext_n++;
  }
};

inline BuiltDag finalize_dag(const PendingDag& p, int s_gp, int t_gp) {
  BuiltDag b;
  b.from_gp.assign(p.gp_n, -1);
  std::vector<int> id(p.ext_n, -1);
  for (int v = 0; v < p.ext_n; ++v)
    if (p.keep[v]) {
      id[v] = static_cast<int>(b.to_gp.size());
      b.to_gp.push_back(p.ext_to_gp[v]);
      if (v < p.gp_n) b.from_gp[v] = id[v];
    }
  b.g.num_vertices = static_cast<int>(b.to_gp.size());
  b.g.s = id[s_gp];
  b.g.t = id[t_gp];
  b.g.edges.reserve(p.edges.size());
  for (auto [u, v] : p.edges) {
    if (id[u] < 0 || id[v] < 0)
      throw std::logic_error("unary pipeline: edge touches a dropped vertex");
    b.g.edges.emplace_back(id[u], id[v]);
  }
  b.g.canonicalize();
  b.g.validate();
  return b;
}

struct PipelineResult {
  UnaryUnambiguityResult verdict;
  std::optional<ProgressionsInstance> instance;
  bool reached_instance = false;
};

inline PipelineResult unary_pipeline(const StGraph& input, bool want_witness) {
  input.validate();
  PipelineResult out;

  StTrimResult tr = trim(input);
  if (tr.empty) return out;  // no st-walk at all
  const StGraph& tg = tr.g;
  const int n = tg.num_vertices;
  const long long m = static_cast<long long>(tg.edges.size());

  // Sparsity guard: a trim unambiguous graph has at most 12n edges, so a
  // denser graph is ambiguous outright. With a witness required, the
  // pipeline below runs anyway (it stays linear and must find a collision).
  if (!want_witness && m > 12 * static_cast<long long>(n)) {
    out.verdict.unambiguous = false;
    return out;
  }

  CycleGateOutcome tx = cycle_gate_transform(tg);
  if (tx.verdict) {
    out.verdict = std::move(*tx.verdict);
    if (out.verdict.witness) {
      substitute_walk(out.verdict.witness->walk1, tr.old_of_new);
      substitute_walk(out.verdict.witness->walk2, tr.old_of_new);
    }
    return out;
  }
  const CycleGateGraph gp = std::move(*tx.transformed);
  const int gpn = gp.graph.num_vertices;
  const int s_gp = gp.graph.s, t_gp = gp.graph.t;
  const int ncycles = static_cast<int>(gp.cycles.size());

  // Transformed-graph vertex -> original input vertex, for witness lifting.
  std::vector<int> gp_to_input(gpn);
  for (int v = 0; v < gpn; ++v) {
    const OriginTag& tag = gp.vertex_remap[v];
    int trim_id = tag.kind == OriginTag::Kind::Original
                      ? tag.vertex
                      : gp.cycles[tag.cycle].verts[tag.index];
    gp_to_input[v] = tr.old_of_new[trim_id];
  }
  auto lift = [&](WalkSpec& w) { substitute_walk(w, gp_to_input); };
  auto ambiguous_with = [&](WalkSpec w1, WalkSpec w2) {
    lift(w1);
    lift(w2);
    out.verdict.unambiguous = false;
    out.verdict.witness = EqualWalksWitness{std::move(w1), std::move(w2)};
  };

  std::vector<int> cyc_of(gpn, -1), pos_of(gpn, -1);
  for (int c = 0; c < ncycles; ++c)
    for (int j = 0; j < static_cast<int>(gp.cycles[c].verts.size()); ++j) {
      cyc_of[gp.cycles[c].verts[j]] = c;
      pos_of[gp.cycles[c].verts[j]] = j;
    }

  // --- The cut graph: cycles reduced to their gates, cycle edges removed.
  PendingDag ph(gpn);
  for (int v = 0; v < gpn; ++v)
    if (pos_of[v] > 0) ph.keep[v] = 0;
  for (auto [u, v] : gp.graph.edges) {
    if (cyc_of[u] >= 0 && cyc_of[u] == cyc_of[v]) continue;
    ph.edges.emplace_back(u, v);
  }
  BuiltDag H = finalize_dag(ph, s_gp, t_gp);
  H.run = dag_run(H.g);
  if (H.run.aborted) {
    auto to_spec = [&](const std::vector<int>& walk) {
      std::vector<int> verts(walk.size());
      for (std::size_t i = 0; i < walk.size(); ++i) verts[i] = H.to_gp[walk[i]];
      return path_walk(std::move(verts));
    };
    ambiguous_with(to_spec(H.run.walk1), to_spec(H.run.walk2));
    return out;
  }

  if (ncycles == 0) {
    // Acyclic input: the cut-graph run saw every walk and found no
    // duplicate length.
    out.verdict.unambiguous = true;
    return out;
  }

  Csr gfwd = forward_csr(gp.graph), grev = reverse_csr(gp.graph);

  // One deterministic non-cycle neighbour of each gate anchors the chain
  // that simulates "enter the cycle and wrap around once".
  std::vector<int> chain_u(ncycles, -1), chain_w(ncycles, -1);
  for (int c = 0; c < ncycles; ++c) {
    const CycleInfo& info = gp.cycles[c];
    int len = static_cast<int>(info.verts.size());
    int gate = info.gate;
    int cyc_pred = len >= 2 ? info.verts[len - 1] : gate;
    int cyc_succ = len >= 2 ? info.verts[1] : gate;
    if (gate != s_gp) {
      auto [lo, hi] = grev.out(gate);
      for (const int* it = lo; it != hi; ++it)
        if (*it != cyc_pred && (chain_u[c] < 0 || *it < chain_u[c])) chain_u[c] = *it;
      if (chain_u[c] < 0)
        throw std::logic_error("unary pipeline: gate without outside predecessor");
    }
    if (gate != t_gp) {
      auto [lo, hi] = gfwd.out(gate);
      for (const int* it = lo; it != hi; ++it)
        if (*it != cyc_succ && (chain_w[c] < 0 || *it < chain_w[c])) chain_w[c] = *it;
      if (chain_w[c] < 0)
        throw std::logic_error("unary pipeline: gate without outside successor");
    }
  }

  // --- Entry-loop graph: cut each gate's outgoing cycle edge and re-head
  // the remaining chain through a fresh vertex behind a predecessor of the
  // gate, so its walks realize "enter and wrap once". A cycle gated at s has
  // no predecessor and no incoming walks to simulate: drop its remnant.
  PendingDag p1(gpn);
  for (auto [u, v] : gp.graph.edges) {
    if (cyc_of[u] >= 0 && cyc_of[u] == cyc_of[v]) {
      int c = cyc_of[u];
      if (gp.cycles[c].gate == s_gp) continue;
      if (pos_of[u] == 0) continue;  // the gate's outgoing cycle edge
    }
    p1.edges.emplace_back(u, v);
  }
  for (int c = 0; c < ncycles; ++c) {
    const CycleInfo& info = gp.cycles[c];
    if (info.gate == s_gp) {
      for (std::size_t j = 1; j < info.verts.size(); ++j) p1.keep[info.verts[j]] = 0;
      continue;
    }
    int z = p1.add_chain_vertex(info.gate);
    p1.edges.emplace_back(chain_u[c], z);
    p1.edges.emplace_back(z, info.verts.size() >= 2 ? info.verts[1] : info.gate);
  }
  BuiltDag H1 = finalize_dag(p1, s_gp, t_gp);
  H1.run = dag_run(H1.g);
  if (H1.run.aborted) {
    auto to_spec = [&](const std::vector<int>& walk) {
      std::vector<int> verts(walk.size());
      for (std::size_t i = 0; i < walk.size(); ++i) verts[i] = H1.to_gp[walk[i]];
      return path_walk(std::move(verts));
    };
    ambiguous_with(to_spec(H1.run.walk1), to_spec(H1.run.walk2));
    return out;
  }

  // --- Exit-loop graph, run reversed: cut each gate's incoming cycle edge
  // and re-tail the remnant to a successor of the gate ("wrap once, then
  // leave"). A cycle gated at t has no successor: drop its remnant.
  PendingDag p2(gpn);
  for (auto [u, v] : gp.graph.edges) {
    if (cyc_of[u] >= 0 && cyc_of[u] == cyc_of[v]) {
      int c = cyc_of[u];
      if (gp.cycles[c].gate == t_gp) continue;
      if (pos_of[v] == 0) continue;  // the gate's incoming cycle edge
    }
    p2.edges.emplace_back(u, v);
  }
  for (int c = 0; c < ncycles; ++c) {
    const CycleInfo& info = gp.cycles[c];
    if (info.gate == t_gp) {
      for (std::size_t j = 1; j < info.verts.size(); ++j) p2.keep[info.verts[j]] = 0;
      continue;
    }
    int z = p2.add_chain_vertex(info.gate);
    p2.edges.emplace_back(
        info.verts.size() >= 2 ? info.verts[info.verts.size() - 1] : info.gate, z);
    p2.edges.emplace_back(z, chain_w[c]);
  }
  BuiltDag R2 = finalize_dag(p2, s_gp, t_gp);
  {
    StGraph rev;
    rev.num_vertices = R2.g.num_vertices;
    rev.s = R2.g.t;
    rev.t = R2.g.s;
    rev.edges.reserve(R2.g.edges.size());
    for (auto [u, v] : R2.g.edges) rev.edges.emplace_back(v, u);
    rev.canonicalize();
    R2.g = std::move(rev);
  }
  R2.run = dag_run(R2.g);
  if (R2.run.aborted) {
    auto to_spec = [&](std::vector<int> walk) {
      std::reverse(walk.begin(), walk.end());
      std::vector<int> verts(walk.size());
      for (std::size_t i = 0; i < walk.size(); ++i) verts[i] = R2.to_gp[walk[i]];
      return path_walk(std::move(verts));
    };
    ambiguous_with(to_spec(R2.run.walk1), to_spec(R2.run.walk2));
    return out;
  }

  // --- Per-gate loop-free walk lengths, with provenance.
  auto read_entries = [&](const BuiltDag& bd, int gate_gp) {
    int v = bd.from_gp[gate_gp];
    if (v < 0) throw std::logic_error("unary pipeline: gate missing from a DAG");
    const DagRun& run = bd.run;
    if (!(v == run.s || v == run.t || run.in_s[v]))
      throw std::logic_error("unary pipeline: gate not reported by the DAG run");
    std::vector<std::pair<int, GateHandle>> entries;
    entries.reserve(run.stay[v].size() + run.jump[v].size());
    for (std::size_t i = 0; i < run.stay[v].size(); ++i)
      entries.emplace_back(run.stay[v][i].len, GateHandle{0, static_cast<int>(i)});
    for (std::size_t i = 0; i < run.jump[v].size(); ++i)
      entries.emplace_back(run.jump[v][i].len, GateHandle{1, static_cast<int>(i)});
    return entries;
  };

  const int cap = H.g.num_vertices;  // every loop-free walk is shorter
  std::vector<BaseRecord> records;
  for (int c = 0; c < ncycles; ++c) {
    int gate = gp.cycles[c].gate;
    auto ins = read_entries(R2, gate);
    auto outs = read_entries(H1, gate);
    if (static_cast<long long>(records.size()) +
            static_cast<long long>(ins.size()) * static_cast<long long>(outs.size()) >
        static_cast<long long>(cap) + 1)
      throw std::logic_error("unary pipeline: more gate walks than walk lengths");
    for (const auto& [li, hi] : ins)
      for (const auto& [lo, ho] : outs) {
        if (li + lo >= cap)
          throw std::logic_error("unary pipeline: gate walk longer than the cut graph allows");
        records.push_back(BaseRecord{li + lo, c, li, lo, hi, ho});
      }
  }

  // Materializers for the three kinds of stored walks.
  auto entry_of = [](const DagRun& run, int v, const GateHandle& h) {
    return h.set == 0 ? run.stay[v][h.idx] : run.jump[v][h.idx];
  };
  auto compose = [&](const BaseRecord& rec, std::uint64_t loops) {
    WalkSpec w;
    int gate = gp.cycles[rec.cycle].gate;
    int vrev = R2.from_gp[gate];
    std::vector<int> pre = R2.run.materialize(vrev, entry_of(R2.run, vrev, rec.in));
    std::reverse(pre.begin(), pre.end());  // now s .. gate in exit-loop ids
    for (int& x : pre) x = R2.to_gp[x];
    w.segs.push_back(WalkSeg{std::move(pre), 1, false});
    if (loops > 0) w.segs.push_back(WalkSeg{gp.cycles[rec.cycle].verts, loops, true});
    int v1 = H1.from_gp[gate];
    std::vector<int> post = H1.run.materialize(v1, entry_of(H1.run, v1, rec.out));
    for (int& x : post) x = H1.to_gp[x];
    w.segs.push_back(WalkSeg{std::move(post), 1, false});
    return w;
  };
  auto h_walk = [&](const GateHandle& h) {
    int v = H.from_gp[s_gp];
    std::vector<int> verts = H.run.materialize(v, entry_of(H.run, v, h));
    for (int& x : verts) x = H.to_gp[x];
    return path_walk(std::move(verts));
  };

  // All record values must be distinct: two equal loop-free lengths through
  // gates would already have aborted the cut-graph run. Checked defensively.
  std::vector<int> rec_at(cap + 1, -1);
  for (std::size_t i = 0; i < records.size(); ++i) {
    int v = records[i].value;
    if (rec_at[v] >= 0) {
      ambiguous_with(compose(records[rec_at[v]], 0), compose(records[i], 0));
      return out;
    }
    rec_at[v] = static_cast<int>(i);
  }

  // Gate-free walk lengths: those of the cut graph not routed via any gate.
  std::vector<std::pair<int, GateHandle>> p0;
  for (const auto& [len, h] : read_entries(H, s_gp))
    if (rec_at[len] < 0) p0.emplace_back(len, h);

  // Sizes in increasing order; per size the records sorted by value.
  std::vector<std::pair<std::int64_t, std::vector<int>>> sizes;
  {
    std::map<std::int64_t, std::vector<int>> by_size;
    for (std::size_t i = 0; i < records.size(); ++i)
      by_size[static_cast<std::int64_t>(gp.cycles[records[i].cycle].verts.size())]
          .push_back(static_cast<int>(i));
    for (auto& [b, recs] : by_size) {
      std::sort(recs.begin(), recs.end(), [&](int a, int bb) {
        return records[a].value < records[bb].value;
      });
      sizes.emplace_back(b, std::move(recs));
    }
  }

  // Collision array over lengths 0..cap: mark every gate-free length, then
  // every reachable "base + x * size" value; a re-mark is an ambiguity and
  // the marks name both walks.
  {
    std::vector<std::int8_t> mark_kind(cap + 1, 0);  // 0 none, 1 gate-free, 2 gate
    std::vector<int> mark_rec(cap + 1, -1);
    std::vector<int> mark_x(cap + 1, -1);
    for (std::size_t i = 0; i < p0.size(); ++i) {
      mark_kind[p0[i].first] = 1;
      mark_rec[p0[i].first] = static_cast<int>(i);
    }
    for (const auto& [b, recs] : sizes)
      for (int ri : recs) {
        for (std::int64_t v = records[ri].value, x = 0; v <= cap; v += b, ++x) {
          if (mark_kind[v] == 1) {
            ambiguous_with(h_walk(p0[mark_rec[v]].second),
                           compose(records[ri], static_cast<std::uint64_t>(x)));
            return out;
          }
          if (mark_kind[v] == 2) {
            ambiguous_with(
                compose(records[mark_rec[v]], static_cast<std::uint64_t>(mark_x[v])),
                compose(records[ri], static_cast<std::uint64_t>(x)));
            return out;
          }
          mark_kind[v] = 2;
          mark_rec[v] = ri;
          mark_x[v] = static_cast<int>(x);
        }
      }
  }

  // Same-size residue check: two bases congruent modulo their common cycle
  // size meet once the smaller one loops the difference out.
  {
    std::vector<int> res_epoch(n + 1, -1), res_rec(n + 1, -1);
    for (int si = 0; si < static_cast<int>(sizes.size()); ++si) {
      auto& [b, recs] = sizes[si];
      for (int ri : recs) {
        int rem = static_cast<int>(records[ri].value % b);
        if (res_epoch[rem] == si) {
          const BaseRecord& low = records[res_rec[rem]];
          const BaseRecord& high = records[ri];
          std::uint64_t x = static_cast<std::uint64_t>((high.value - low.value) / b);
          ambiguous_with(compose(high, 0), compose(low, x));
          return out;
        }
        res_epoch[rem] = si;
        res_rec[rem] = ri;
      }
    }
  }

  // What remains is exactly a progression-family disjointness question.
  ProgressionsInstance inst;
  std::vector<std::vector<int>> recs_by_entry;
  for (auto& [b, recs] : sizes) {
    std::vector<std::pair<std::int64_t, int>> by_res;
    by_res.reserve(recs.size());
    for (int ri : recs) by_res.emplace_back(records[ri].value % b, ri);
    std::sort(by_res.begin(), by_res.end());
    ProgressionEntry entry;
    entry.step = b;
    std::vector<int> aligned;
    for (auto& [rem, ri] : by_res) {
      entry.bases.push_back(rem);
      aligned.push_back(ri);
    }
    inst.entries.push_back(std::move(entry));
    recs_by_entry.push_back(std::move(aligned));
  }
  out.instance = std::move(inst);
  out.reached_instance = true;
  const ProgressionsInstance& emitted = *out.instance;

  DisjointnessResult solved = disjoint_progressions(emitted);
  if (solved.disjoint) {
    out.verdict.unambiguous = true;
    return out;
  }
  auto record_of = [&](const ProgressionRef& ref) -> const BaseRecord& {
    const ProgressionEntry& entry = emitted.entries[ref.entry];
    auto it = std::lower_bound(entry.bases.begin(), entry.bases.end(), ref.base);
    if (it == entry.bases.end() || *it != ref.base)
      throw std::logic_error("unary pipeline: collision names an unknown base");
    return records[recs_by_entry[ref.entry][it - entry.bases.begin()]];
  };
  const BaseRecord& r1 = record_of(solved.collision->first);
  const BaseRecord& r2 = record_of(solved.collision->second);
  std::int64_t b1 = emitted.entries[solved.collision->first.entry].step;
  std::int64_t b2 = emitted.entries[solved.collision->second.entry].step;
  // Lift the collision to a value both loop-free walks can reach by looping.
  BigInt meet = collision_value(r1.value, b1, r2.value, b2);
  std::uint64_t x1 = ((meet - r1.value) / b1).convert_to<std::uint64_t>();
  std::uint64_t x2 = ((meet - r2.value) / b2).convert_to<std::uint64_t>();
  ambiguous_with(compose(r1, x1), compose(r2, x2));
  return out;
}

}  // namespace detail

// Either the progression-family instance the graph reduces to, or the
// verdict reached before the reduction applies (early cycle-structure
// verdicts, DAG collisions, the marking array, or a same-size residue
// duplicate). The instance's total step size is at most the number of
// vertices.
struct UnaryProgressionsOutcome {
  std::optional<ProgressionsInstance> instance;
  std::optional<UnaryUnambiguityResult> verdict;
};

inline UnaryProgressionsOutcome unary_to_progressions(const StGraph& g) {
  detail::PipelineResult pr = detail::unary_pipeline(g, true);
  UnaryProgressionsOutcome out;
  if (pr.reached_instance)
    out.instance = std::move(pr.instance);
  else
    out.verdict = std::move(pr.verdict);
  return out;
}

// The st-graph realizing a progression family: one cycle per entry, entered
// from s at its first vertex and leaving to t from each base's vertex, so
// the walk lengths through entry (step b, base a) are exactly 2 + a + x*b.
inline StGraph progressions_to_graph(const ProgressionsInstance& inst) {
  inst.validate();
  std::int64_t total = inst.total_steps();
  if (total > 100'000'000)
    throw std::invalid_argument("progressions_to_graph: instance too large");
  StGraph g;
  g.s = 0;
  g.t = 1;
  int next = 2;
  for (const ProgressionEntry& e : inst.entries) {
    int b = static_cast<int>(e.step);
    int first = next;
    next += b;
    g.edges.emplace_back(0, first);
    for (int j = 0; j < b; ++j) g.edges.emplace_back(first + j, first + (j + 1) % b);
    for (std::int64_t a : e.bases) g.edges.emplace_back(first + static_cast<int>(a), 1);
  }
  g.num_vertices = next;
  g.canonicalize();
  return g;
}

// Decides whether all s-to-t walks of g have pairwise distinct lengths.
// Trims internally; a negative answer always carries two distinct
// equal-length st-walks (in the input's vertex ids) unless want_witness is
// false, which permits the dense shortcut (more than 12n edges after
// trimming already proves ambiguity).
inline UnaryUnambiguityResult unary_is_unambiguous(const StGraph& g,
                                                   bool want_witness = true) {
  return detail::unary_pipeline(g, want_witness).verdict;
}

// True iff some strongly connected component of the trim part carries two
// distinct cycles: the signature of exponential ambiguity growth in the
// unary setting.
inline bool unary_has_eda(const StGraph& g) {
  g.validate();
  StTrimResult tr = trim(g);
  if (tr.empty) return false;
  detail::UnarySccView view = detail::unary_scc_view(tr.g);
  for (int k = 0; k < view.ncomp; ++k)
    if (view.comp_dense[k]) return true;
  return false;
}

// True iff the trim part has a component with two cycles or a walk
// connecting two cycles: the signature of unbounded (at least linear)
// ambiguity growth in the unary setting.
inline bool unary_has_ida(const StGraph& g) {
  g.validate();
  StTrimResult tr = trim(g);
  if (tr.empty) return false;
  detail::DisjointCyclesReport r = detail::disjoint_cycles_report(tr.g);
  return !r.cycles_simple || !r.cycles_separated;
}

}  // namespace ambidet
