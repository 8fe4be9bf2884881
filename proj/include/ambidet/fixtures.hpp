#pragma once
// Small concrete automata and graphs exercising each ambiguity class and the
// unary pipeline. Used by unit tests, the acceptance suite and the CLI docs.

#include "ambidet/core.hpp"
#include "ambidet/reductions.hpp"
#include "ambidet/st_graph.hpp"

namespace ambidet::fixtures {

// Unambiguous NFA over {0,1} recognising (0+1)*1(0+1)^2 — "the third symbol
// from the end is 1". The guessed 1 is at a unique position of every
// accepted word, so each word has exactly one accepting run.
inline Nfa third_from_end_nfa() {
  Nfa a;
  a.num_states = 4;
  a.alphabet_size = 2;
  a.initial = {0};
  a.final = {3};
  a.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 2},
                   {1, 1, 2}, {2, 0, 3}, {2, 1, 3}};
  a.canonicalize();
  return a;
}

// Exponentially ambiguous NFA over {0,1,#} (# encoded as symbol 2): from the
// hub, every 0 nondeterministically picks one of two accepting loops and #
// returns to the hub, so the word (0#)^{n-1}0 has 2^n accepting runs.
inline Nfa doubling_loops_nfa() {
  Nfa a;
  a.num_states = 3;  // 0 = hub, 1 = 0-loop branch, 2 = 1-loop branch
  a.alphabet_size = 3;
  a.initial = {0};
  a.final = {1, 2};
  a.transitions = {{0, 0, 1}, {0, 0, 2}, {1, 0, 1}, {2, 1, 2}, {1, 2, 0}, {2, 2, 0}};
  a.canonicalize();
  return a;
}

// Finitely ambiguous NFA over {0,1} recognising 00* + 01*: two accepting
// runs on the word 0, at most one on every other word.
inline Nfa two_branch_nfa() {
  Nfa a;
  a.num_states = 3;
  a.alphabet_size = 2;
  a.initial = {0};
  a.final = {1, 2};
  a.transitions = {{0, 0, 1}, {0, 0, 2}, {1, 0, 1}, {2, 1, 2}};
  a.canonicalize();
  return a;
}

// Polynomially ambiguous unary NFA: a 2-cycle at the initial state feeding a
// 3-cycle at the final state. The word 1^n has #{(x,y) : 2x+1+3y = n} < n
// accepting runs, and more than n/6 of them when n = 1 (mod 6).
inline Nfa tandem_cycles_nfa() {
  Nfa a;
  a.num_states = 5;  // 0 = start, 1 = 2-cycle partner, 2 = final, 3,4 = 3-cycle
  a.alphabet_size = 1;
  a.initial = {0};
  a.final = {2};
  a.transitions = {{0, 0, 1}, {1, 0, 0}, {0, 0, 2}, {2, 0, 3}, {3, 0, 4}, {4, 0, 2}};
  a.canonicalize();
  return a;
}

// DAG with edges (v_i, v_{i+1}) and (v_i, v_{n-1}): every st-walk follows the
// chain and exits to t once, so the st-walk lengths are exactly {1..n-1} but
// a naive per-vertex walk-length table has quadratic total size.
inline StGraph chain_shortcut_dag(int n) {
  StGraph g;
  g.num_vertices = n;
  g.s = 0;
  g.t = n - 1;
  for (int i = 0; i + 1 < n; ++i) {
    g.edges.emplace_back(i, i + 1);
    g.edges.emplace_back(i, n - 1);
  }
  g.canonicalize();
  return g;
}

// Two vertex-disjoint cycles (a 2-cycle and a 3-cycle) hanging off separate
// st-walks, with no walk from one cycle to the other; optionally a direct
// s->t edge. Walk lengths through the 2-cycle are 4+2x, through the 3-cycle
// 2+3x and 3+3x, and the direct edge contributes length 1.
inline StGraph two_gated_cycles_graph(bool with_direct_edge) {
  // 0=s, 1..4 = chain vertices, 5=t, 6 = 2-cycle partner of 4,
  // 7,8 = 3-cycle partners of 2.
  StGraph g;
  g.num_vertices = 9;
  g.s = 0;
  g.t = 5;
  g.edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {3, 4}, {4, 5},
             {2, 5}, {4, 6}, {6, 4}, {2, 7}, {7, 8}, {8, 2}};
  if (with_direct_edge) g.edges.emplace_back(0, 5);
  g.canonicalize();
  return g;
}

// Two siblings: states p and q, reached from two initial states by the same
// one-letter word with weights x1/x2, each carrying a one-letter self-loop
// of weight y1/y2. The pair violates the twins property iff y1 != y2.
inline WeightedAutomaton sibling_pair_wfa(std::int64_t x1, std::int64_t x2,
                                          std::int64_t y1, std::int64_t y2) {
  WeightedAutomaton w;
  w.nfa.num_states = 4;  // 0 -> 1 (p), 2 -> 3 (q)
  w.nfa.alphabet_size = 1;
  w.nfa.initial = {0, 2};
  w.nfa.final = {1, 3};
  w.nfa.transitions = {{0, 0, 1}, {1, 0, 1}, {2, 0, 3}, {3, 0, 3}};
  w.weight = {x1, y1, x2, y2};
  w.canonicalize();
  return w;
}

// Three-layer graph on 2 vertices per layer with exactly one layer-ordered
// cycle: 1 ->(layer 0) 1 ->(layer 1) 0 ->(layer 2) back to 1. The other
// branches dead-end: vertex 0 self-loops in layer 0 but has no layer-1 edge,
// and staying at 1 through layer 1 forces a layer-2 exit to 0 != 1.
inline LayeredGraph three_layer_cycle_graph() {
  LayeredGraph g;
  g.k = 3;
  g.n = 2;
  g.edges = {{0, 0, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}, {2, 1, 0}, {2, 0, 1}};
  g.canonicalize();
  return g;
}

// Two sets of three 4-bit vectors with orthogonal pairs across the sets,
// among them A[1] = 0110 and B[0] = 0001 (no position carries a 1 in both).
// The all-ones vector A[2] is orthogonal to nothing.
inline OvInstance orthogonal_pair_ov_instance() {
  OvInstance ov;
  ov.k = 2;
  ov.n = 3;
  ov.d = 4;
  ov.sets = {{{0, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 1, 1}},
             {{0, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 1, 0}}};
  return ov;
}

// Three identical deterministic chains over a one-letter alphabet, each
// accepting exactly the word aa. Their intersection is nonempty, and the
// common word is unique.
inline std::vector<GadgetDfa> shared_word_dfa_triple() {
  std::vector<GadgetDfa> ds;
  for (int i = 0; i < 3; ++i) {
    GadgetDfa d;
    d.num_states = 3;
    d.alphabet_size = 1;
    d.initial = 0;
    d.final = {2};
    d.transitions = {{0, SymbolSet::single(0), 1}, {1, SymbolSet::single(0), 2}};
    d.canonicalize();
    ds.push_back(std::move(d));
  }
  return ds;
}

// Ambiguous NFA over {a, b}: the word aba has two accepting runs, one through
// the detour state y and one skipping it. The automaton is trim and already
// has single initial and final states.
inline Nfa forked_runs_nfa() {
  Nfa a;
  a.num_states = 4;  // 0 = start, 1 = fork, 2 = detour, 3 = final
  a.alphabet_size = 2;
  a.initial = {0};
  a.final = {3};
  a.transitions = {{0, 0, 1}, {1, 1, 2}, {1, 1, 3}, {2, 0, 3}, {3, 0, 3}};
  a.canonicalize();
  return a;
}

}  // namespace ambidet::fixtures
