#pragma once
// Automaton data model: NFA, weighted automaton, trimming, normal form,
// exact accepting-run counting, and run validation helpers.
//
// All values are immutable after construction; every operation here is a
// pure function, so sharing across threads is safe.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ambidet {

using State = int;
using Symbol = int;
using Word = std::vector<Symbol>;
using Run = std::vector<State>;  // a run on w is a state sequence of length |w|+1
using BigInt = boost::multiprecision::cpp_int;

struct Transition {
  State from{};
  Symbol sym{};
  State to{};
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Nfa {
  int num_states = 0;
  int alphabet_size = 0;  // symbols are 0 .. alphabet_size-1
  std::vector<Transition> transitions;  // sorted lexicographically, duplicate-free
  std::vector<State> initial;           // sorted, duplicate-free
  std::vector<State> final;             // sorted, duplicate-free

  // Sorts and deduplicates the three set-valued fields.
  void canonicalize() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(final.begin(), final.end());
    final.erase(std::unique(final.begin(), final.end()), final.end());
  }

  void validate() const {
    auto state_ok = [&](State q) { return 0 <= q && q < num_states; };
    for (const Transition& tr : transitions) {
      if (!state_ok(tr.from) || !state_ok(tr.to))
        throw std::invalid_argument("nfa: transition endpoint out of range");
      if (tr.sym < 0 || tr.sym >= alphabet_size)
        throw std::invalid_argument("nfa: transition symbol out of range");
    }
    for (State q : initial)
      if (!state_ok(q)) throw std::invalid_argument("nfa: initial state out of range");
    for (State q : final)
      if (!state_ok(q)) throw std::invalid_argument("nfa: final state out of range");
    if (!std::is_sorted(transitions.begin(), transitions.end()) ||
        std::adjacent_find(transitions.begin(), transitions.end()) != transitions.end())
      throw std::invalid_argument("nfa: transitions not canonical (call canonicalize)");
  }
};

struct WeightedAutomaton {
  Nfa nfa;
  // Weight of transitions[i] is weight[i]; a total function on the transition set.
  std::vector<std::int64_t> weight;

  // Joint sort of (transition, weight) pairs; duplicate transitions with equal
  // weights collapse, conflicting weights on one triple are rejected (the
  // weight function must be well defined on the transition set).
  void canonicalize() {
    if (weight.size() != nfa.transitions.size())
      throw std::invalid_argument("weighted automaton: weight vector size mismatch");
    std::vector<std::pair<Transition, std::int64_t>> rows(nfa.transitions.size());
    for (size_t i = 0; i < rows.size(); ++i) rows[i] = {nfa.transitions[i], weight[i]};
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].first == rows[i - 1].first)
        throw std::invalid_argument(
            "weighted automaton: conflicting weights on one transition");
    nfa.transitions.resize(rows.size());
    weight.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      nfa.transitions[i] = rows[i].first;
      weight[i] = rows[i].second;
    }
    std::sort(nfa.initial.begin(), nfa.initial.end());
    nfa.initial.erase(std::unique(nfa.initial.begin(), nfa.initial.end()),
                      nfa.initial.end());
    std::sort(nfa.final.begin(), nfa.final.end());
    nfa.final.erase(std::unique(nfa.final.begin(), nfa.final.end()), nfa.final.end());
  }

  void validate() const {
    nfa.validate();
    if (weight.size() != nfa.transitions.size())
      throw std::invalid_argument("weighted automaton: weight vector size mismatch");
  }
};

// --- Adjacency ------------------------------------------------------------

// Successor lists indexed by (state, symbol), built from the sorted
// transition vector in O(n*sigma + m).
struct SymCsr {
  int num_states = 0;
  int alphabet_size = 0;
  std::vector<int> off;    // size num_states*alphabet_size + 1
  std::vector<State> dst;  // size m, grouped by (from, sym)

  std::pair<const State*, const State*> succ(State p, Symbol a) const {
    size_t k = static_cast<size_t>(p) * alphabet_size + a;
    return {dst.data() + off[k], dst.data() + off[k + 1]};
  }
};

inline SymCsr sym_csr(const Nfa& a) {
  SymCsr c;
  c.num_states = a.num_states;
  c.alphabet_size = a.alphabet_size;
  size_t cells = static_cast<size_t>(a.num_states) * a.alphabet_size;
  c.off.assign(cells + 1, 0);
  for (const Transition& tr : a.transitions)
    ++c.off[static_cast<size_t>(tr.from) * a.alphabet_size + tr.sym + 1];
  for (size_t k = 1; k <= cells; ++k) c.off[k] += c.off[k - 1];
  c.dst.resize(a.transitions.size());
  std::vector<int> cursor(c.off.begin(), c.off.end() - 1);
  for (const Transition& tr : a.transitions)
    c.dst[cursor[static_cast<size_t>(tr.from) * a.alphabet_size + tr.sym]++] = tr.to;
  return c;
}

inline bool is_deterministic(const Nfa& a) {
  if (a.initial.size() > 1) return false;
  for (size_t i = 1; i < a.transitions.size(); ++i)
    if (a.transitions[i].from == a.transitions[i - 1].from &&
        a.transitions[i].sym == a.transitions[i - 1].sym)
      return false;
  return true;
}

// --- Trim ------------------------------------------------------------------

namespace detail {

// Marks states reachable from `initial` and co-reachable from `final`.
inline std::vector<char> useful_mask(const Nfa& a) {
  std::vector<std::vector<State>> fwd(a.num_states), rev(a.num_states);
  for (const Transition& tr : a.transitions) {
    fwd[tr.from].push_back(tr.to);
    rev[tr.to].push_back(tr.from);
  }
  auto bfs = [&](const std::vector<State>& seeds,
                 const std::vector<std::vector<State>>& adj) {
    std::vector<char> seen(a.num_states, 0);
    std::vector<State> queue(seeds);
    for (State q : seeds) seen[q] = 1;
    while (!queue.empty()) {
      State p = queue.back();
      queue.pop_back();
      for (State q : adj[p])
        if (!seen[q]) {
          seen[q] = 1;
          queue.push_back(q);
        }
    }
    return seen;
  };
  std::vector<char> reach = bfs(a.initial, fwd);
  std::vector<char> coreach = bfs(a.final, rev);
  std::vector<char> keep(a.num_states, 0);
  for (State q = 0; q < a.num_states; ++q) keep[q] = reach[q] && coreach[q];
  return keep;
}

}  // namespace detail

struct TrimResult {
  Nfa nfa;
  std::vector<State> old_of_new;  // new id -> original id
  std::vector<State> new_of_old;  // original id -> new id, or -1 if removed
};

// Removes states that are unreachable from the initial set or cannot reach
// the final set, compacting ids. Preserves the number of accepting runs on
// every word (removed states partake in no accepting run).
inline TrimResult trim(const Nfa& a) {
  std::vector<char> keep = detail::useful_mask(a);
  TrimResult r;
  r.new_of_old.assign(a.num_states, -1);
  for (State q = 0; q < a.num_states; ++q)
    if (keep[q]) {
      r.new_of_old[q] = static_cast<State>(r.old_of_new.size());
      r.old_of_new.push_back(q);
    }
  r.nfa.num_states = static_cast<int>(r.old_of_new.size());
  r.nfa.alphabet_size = a.alphabet_size;
  for (const Transition& tr : a.transitions)
    if (keep[tr.from] && keep[tr.to])
      r.nfa.transitions.push_back(
          {r.new_of_old[tr.from], tr.sym, r.new_of_old[tr.to]});
  for (State q : a.initial)
    if (keep[q]) r.nfa.initial.push_back(r.new_of_old[q]);
  for (State q : a.final)
    if (keep[q]) r.nfa.final.push_back(r.new_of_old[q]);
  // The id remap is monotone, so sortedness is inherited from the input.
  return r;
}

struct WeightedTrimResult {
  WeightedAutomaton wa;
  std::vector<State> old_of_new;
  std::vector<State> new_of_old;
};

inline WeightedTrimResult trim(const WeightedAutomaton& w) {
  std::vector<char> keep = detail::useful_mask(w.nfa);
  WeightedTrimResult r;
  r.new_of_old.assign(w.nfa.num_states, -1);
  for (State q = 0; q < w.nfa.num_states; ++q)
    if (keep[q]) {
      r.new_of_old[q] = static_cast<State>(r.old_of_new.size());
      r.old_of_new.push_back(q);
    }
  r.wa.nfa.num_states = static_cast<int>(r.old_of_new.size());
  r.wa.nfa.alphabet_size = w.nfa.alphabet_size;
  for (size_t i = 0; i < w.nfa.transitions.size(); ++i) {
    const Transition& tr = w.nfa.transitions[i];
    if (keep[tr.from] && keep[tr.to]) {
      r.wa.nfa.transitions.push_back(
          {r.new_of_old[tr.from], tr.sym, r.new_of_old[tr.to]});
      r.wa.weight.push_back(w.weight[i]);
    }
  }
  for (State q : w.nfa.initial)
    if (keep[q]) r.wa.nfa.initial.push_back(r.new_of_old[q]);
  for (State q : w.nfa.final)
    if (keep[q]) r.wa.nfa.final.push_back(r.new_of_old[q]);
  return r;
}

// --- Normal form -----------------------------------------------------------

// Normal form: exactly one initial and one final state.
//
// Construction ("wrap"): fresh states s0 and f0 with transitions
// (s0, sigma, i) for every sigma and every initial i, and (f, sigma, f0) for
// every sigma and every final f. The result B satisfies, exactly,
//     Runs_B(sigma w sigma') = Runs_A(w)   for all sigma, sigma' and all w,
// and Runs_B(v) = 0 for words v not of that shape. In particular the
// ambiguity class and all run-count growth properties are preserved (the
// run-count multiset shifts uniformly by word length 2). Identical run
// counts on the very same words are not achievable in general: no
// normal-form automaton can have two accepting runs on a one-letter word,
// since at most one transition connects its initial state to its final state.
// Inputs already in normal form are returned unchanged.
inline Nfa normalize(const Nfa& a) {
  if (a.initial.size() == 1 && a.final.size() == 1) return a;
  Nfa b;
  b.num_states = a.num_states + 2;
  b.alphabet_size = a.alphabet_size;
  State s0 = a.num_states, f0 = a.num_states + 1;
  b.transitions = a.transitions;
  for (Symbol s = 0; s < a.alphabet_size; ++s) {
    for (State i : a.initial) b.transitions.push_back({s0, s, i});
    for (State f : a.final) b.transitions.push_back({f, s, f0});
  }
  b.initial = {s0};
  b.final = {f0};
  b.canonicalize();
  return b;
}

// Weighted variant: the wrapping transitions carry weight 0, so all cycle
// weights and all weight differences between equal-length runs are preserved.
inline WeightedAutomaton normalize(const WeightedAutomaton& w) {
  if (w.nfa.initial.size() == 1 && w.nfa.final.size() == 1) return w;
  WeightedAutomaton b;
  b.nfa.num_states = w.nfa.num_states + 2;
  b.nfa.alphabet_size = w.nfa.alphabet_size;
  State s0 = w.nfa.num_states, f0 = w.nfa.num_states + 1;
  b.nfa.transitions = w.nfa.transitions;
  b.weight = w.weight;
  for (Symbol s = 0; s < w.nfa.alphabet_size; ++s) {
    for (State i : w.nfa.initial) {
      b.nfa.transitions.push_back({s0, s, i});
      b.weight.push_back(0);
    }
    for (State f : w.nfa.final) {
      b.nfa.transitions.push_back({f, s, f0});
      b.weight.push_back(0);
    }
  }
  b.nfa.initial = {s0};
  b.nfa.final = {f0};
  b.canonicalize();
  return b;
}

// --- Run counting ----------------------------------------------------------

namespace detail {

// One DP pass with u64 counters; returns false on overflow.
inline bool count_runs_u64(const Nfa& a, const SymCsr& csr, const Word& w,
                           std::uint64_t& out) {
  std::vector<std::uint64_t> cur(a.num_states, 0), nxt;
  for (State i : a.initial) cur[i] = 1;
  for (Symbol s : w) {
    nxt.assign(a.num_states, 0);
    for (State p = 0; p < a.num_states; ++p) {
      if (cur[p] == 0) continue;
      auto [b, e] = csr.succ(p, s);
      for (const State* it = b; it != e; ++it)
        if (__builtin_add_overflow(nxt[*it], cur[p], &nxt[*it])) return false;
    }
    cur.swap(nxt);
  }
  out = 0;
  for (State f : a.final)
    if (__builtin_add_overflow(out, cur[f], &out)) return false;
  return true;
}

inline BigInt count_runs_big(const Nfa& a, const SymCsr& csr, const Word& w) {
  std::vector<BigInt> cur(a.num_states, 0), nxt;
  for (State i : a.initial) cur[i] = 1;
  for (Symbol s : w) {
    nxt.assign(a.num_states, BigInt(0));
    for (State p = 0; p < a.num_states; ++p) {
      if (cur[p] == 0) continue;
      auto [b, e] = csr.succ(p, s);
      for (const State* it = b; it != e; ++it) nxt[*it] += cur[p];
    }
    cur.swap(nxt);
  }
  BigInt out = 0;
  for (State f : a.final) out += cur[f];
  return out;
}

}  // namespace detail

// Exact number of accepting runs of `a` on `w`, by dynamic programming over
// per-prefix run-count vectors. Machine integers are used until they would
// overflow, then the pass is redone with arbitrary precision.
inline BigInt count_runs(const Nfa& a, const Word& w) {
  for (Symbol s : w)
    if (s < 0 || s >= a.alphabet_size)
      throw std::invalid_argument("count_runs: word symbol out of range");
  SymCsr csr = sym_csr(a);
  std::uint64_t small = 0;
  if (detail::count_runs_u64(a, csr, w, small)) return BigInt(small);
  return detail::count_runs_big(a, csr, w);
}

// --- Run validation --------------------------------------------------------

inline bool is_run(const Nfa& a, const Word& w, const Run& r) {
  if (r.size() != w.size() + 1) return false;
  for (State q : r)
    if (q < 0 || q >= a.num_states) return false;
  for (size_t i = 0; i < w.size(); ++i) {
    Transition key{r[i], w[i], r[i + 1]};
    if (!std::binary_search(a.transitions.begin(), a.transitions.end(), key))
      return false;
  }
  return true;
}

inline bool is_accepting_run(const Nfa& a, const Word& w, const Run& r) {
  return is_run(a, w, r) && !r.empty() &&
         std::binary_search(a.initial.begin(), a.initial.end(), r.front()) &&
         std::binary_search(a.final.begin(), a.final.end(), r.back());
}

}  // namespace ambidet
