#pragma once
// Constructions that translate one automaton-analysis problem into another:
// orthogonal-vector search and layered-cycle search compile into DFA
// intersection; intersection compiles into unambiguity; unambiguity compiles
// into exponential-ambiguity detection, infinite-ambiguity detection, and the
// twins property of weighted automata. A small gadget language (transitions
// labelled by symbol sets) plus binary-encoding expansions keep the generated
// instances over alphabet {0,1}. Every construction preserves the answer
// exactly, so fast deciders and brute-force oracles can be cross-checked end
// to end on the same instances.
//
// File formats (comments `#` and blank lines ignored, as in io.hpp):
//
//   Orthogonal-vectors instance:
//     ov <k> <n> <d>
//     <n*k lines of d-character bit strings, the first n forming set 1, ...>
//
//   Layered graph:
//     layers <k> <n>
//     edge <layer> <i> <j>     # arc from vertex i of <layer> to vertex j of
//                              # layer (<layer>+1 mod k)

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ambidet/core.hpp"
#include "ambidet/io.hpp"

namespace ambidet {

// --- Symbol sets ------------------------------------------------------------

// A set of symbols given as a contiguous code range [lo, hi) minus at most
// one excluded code. This covers every transition-label shape the
// constructions need: a single symbol, a full-alphabet wildcard, a
// sub-alphabet wildcard, and a wildcard that avoids exactly one symbol.
struct SymbolSet {
  Symbol lo = 0;
  Symbol hi = 0;       // exclusive
  Symbol excluded = -1;  // -1 = nothing excluded; otherwise in [lo, hi)

  static SymbolSet single(Symbol c) { return {c, c + 1, -1}; }
  static SymbolSet range(Symbol lo, Symbol hi) { return {lo, hi, -1}; }
  static SymbolSet range_excluding(Symbol lo, Symbol hi, Symbol x) {
    if (x < lo || x >= hi) x = -1;
    return {lo, hi, x};
  }

  bool contains(Symbol c) const { return lo <= c && c < hi && c != excluded; }
  std::int64_t size() const {
    std::int64_t s = static_cast<std::int64_t>(hi) - lo;
    return s <= 0 ? 0 : s - (excluded >= 0 ? 1 : 0);
  }
  bool empty() const { return size() == 0; }
  bool is_single() const { return size() == 1; }
  // The unique member of a single-symbol set.
  Symbol symbol() const {
    if (!is_single()) throw std::logic_error("SymbolSet::symbol: set is not a singleton");
    return excluded == lo ? lo + 1 : lo;
  }

  friend auto operator<=>(const SymbolSet&, const SymbolSet&) = default;
};

// True if the two sets share at least one symbol.
inline bool symbol_sets_overlap(const SymbolSet& a, const SymbolSet& b) {
  Symbol lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  std::int64_t common = static_cast<std::int64_t>(hi) - lo;
  if (common <= 0) return false;
  if (a.excluded >= lo && a.excluded < hi) --common;
  if (b.excluded >= lo && b.excluded < hi && b.excluded != a.excluded) --common;
  return common > 0;
}

// --- Gadget DFAs ------------------------------------------------------------

// A DFA whose transitions are labelled by symbol sets: a transition applies
// to every symbol its set contains. Determinism is required under that label
// semantics — per state, at most one transition applies to any symbol.
struct GadgetTransition {
  State from = 0;
  SymbolSet on;
  State to = 0;
  friend auto operator<=>(const GadgetTransition&, const GadgetTransition&) = default;
};

struct GadgetDfa {
  int num_states = 0;
  int alphabet_size = 0;
  State initial = 0;
  std::vector<State> final;  // sorted, duplicate-free
  std::vector<GadgetTransition> transitions;

  void canonicalize() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
    std::sort(final.begin(), final.end());
    final.erase(std::unique(final.begin(), final.end()), final.end());
  }

  void validate() const {
    auto state_ok = [&](State q) { return 0 <= q && q < num_states; };
    if (!state_ok(initial)) throw std::invalid_argument("gadget dfa: initial state out of range");
    for (State q : final)
      if (!state_ok(q)) throw std::invalid_argument("gadget dfa: final state out of range");
    for (const GadgetTransition& tr : transitions) {
      if (!state_ok(tr.from) || !state_ok(tr.to))
        throw std::invalid_argument("gadget dfa: transition endpoint out of range");
      if (tr.on.lo < 0 || tr.on.hi > alphabet_size || tr.on.lo >= tr.on.hi)
        throw std::invalid_argument("gadget dfa: label range out of bounds");
      if (tr.on.excluded != -1 && (tr.on.excluded < tr.on.lo || tr.on.excluded >= tr.on.hi))
        throw std::invalid_argument("gadget dfa: excluded symbol outside label range");
      if (tr.on.empty())
        throw std::invalid_argument("gadget dfa: empty transition label");
    }
    if (!std::is_sorted(transitions.begin(), transitions.end()) ||
        std::adjacent_find(transitions.begin(), transitions.end()) != transitions.end())
      throw std::invalid_argument("gadget dfa: transitions not canonical (call canonicalize)");
    // Determinism under label semantics: per state, labels pairwise disjoint.
    // All-singleton states (the common, possibly high-degree case) are
    // checked by sorting; states with set-valued labels pairwise.
    for (std::size_t i = 0; i < transitions.size();) {
      std::size_t j = i;
      bool all_single = true;
      while (j < transitions.size() && transitions[j].from == transitions[i].from) {
        all_single = all_single && transitions[j].on.is_single();
        ++j;
      }
      if (all_single) {
        std::vector<Symbol> syms;
        syms.reserve(j - i);
        for (std::size_t t = i; t < j; ++t) syms.push_back(transitions[t].on.symbol());
        std::sort(syms.begin(), syms.end());
        if (std::adjacent_find(syms.begin(), syms.end()) != syms.end())
          throw std::invalid_argument("gadget dfa: overlapping labels at one state");
      } else {
        for (std::size_t s = i; s < j; ++s)
          for (std::size_t t = s + 1; t < j; ++t)
            if (symbol_sets_overlap(transitions[s].on, transitions[t].on))
              throw std::invalid_argument("gadget dfa: overlapping labels at one state");
      }
      i = j;
    }
  }
};

// Runs the gadget DFA on a word under label semantics.
inline bool gadget_accepts(const GadgetDfa& d, const Word& w) {
  State cur = d.initial;
  for (Symbol c : w) {
    if (c < 0 || c >= d.alphabet_size)
      throw std::invalid_argument("gadget_accepts: word symbol out of range");
    State next = -1;
    for (const GadgetTransition& tr : d.transitions)
      if (tr.from == cur && tr.on.contains(c)) {
        next = tr.to;
        break;
      }
    if (next < 0) return false;
    cur = next;
  }
  return std::binary_search(d.final.begin(), d.final.end(), cur);
}

// Expands every label into its member symbols, yielding an equivalent plain
// NFA over the same alphabet (deterministic whenever the gadget is valid).
// Intended for validation at small alphabet sizes; the expansion is linear
// in the total label mass, guarded below.
inline Nfa gadget_to_nfa(const GadgetDfa& d) {
  d.validate();
  std::int64_t mass = 0;
  for (const GadgetTransition& tr : d.transitions) mass += tr.on.size();
  if (mass > 10'000'000)
    throw std::invalid_argument("gadget_to_nfa: total label mass exceeds 10^7 guard");
  Nfa out;
  out.num_states = d.num_states;
  out.alphabet_size = d.alphabet_size;
  out.initial = {d.initial};
  out.final = d.final;
  out.transitions.reserve(static_cast<std::size_t>(mass));
  for (const GadgetTransition& tr : d.transitions)
    for (Symbol c = tr.on.lo; c < tr.on.hi; ++c)
      if (c != tr.on.excluded) out.transitions.push_back({tr.from, c, tr.to});
  out.canonicalize();
  return out;
}

// --- Binary encoding of symbols ----------------------------------------------

// Number of bits used to encode one symbol of an alphabet of the given size:
// the smallest h >= 1 with 2^h >= size.
inline int encode_width(int alphabet_size) {
  int h = 1;
  while ((std::int64_t{1} << h) < alphabet_size) ++h;
  return h;
}

// Encodes a word symbol-by-symbol, most significant bit first, h bits each.
inline Word encode_word(const Word& w, int h) {
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(h));
  for (Symbol c : w)
    for (int i = 1; i <= h; ++i) out.push_back((c >> (h - i)) & 1);
  return out;
}

namespace detail {

// k-th bit of v, 1-based from the most significant of h bits.
inline int bit_of(Symbol v, int h, int k) { return (v >> (h - k)) & 1; }

// Shared expansion core. Each source state either carries only
// single-symbol labels — expanded through a shared prefix tree, one fresh
// state per (depth, symbol prefix) — or exactly one set-valued label,
// expanded through a chain of comparator states that track whether the bits
// read so far still pin the value to the range boundaries or the excluded
// code. States whose remaining constraint cannot bind any longer are merged,
// so a full wildcard becomes a single chain of h-1 states and an
// almost-wildcard becomes two parallel chains (one still matching the
// excluded code, one already differing).
inline Nfa expand_gadget(const GadgetDfa& d, bool require_concrete, const char* op) {
  d.validate();
  const int h = encode_width(d.alphabet_size);
  Nfa out;
  out.num_states = d.num_states;
  out.alphabet_size = 2;
  out.initial = {d.initial};
  out.final = d.final;

  // Group transitions by source state (they are not necessarily sorted).
  std::vector<std::vector<const GadgetTransition*>> by_state(d.num_states);
  for (const GadgetTransition& tr : d.transitions) by_state[tr.from].push_back(&tr);

  for (State x = 0; x < d.num_states; ++x) {
    const auto& outs = by_state[x];
    if (outs.empty()) continue;
    bool all_single = true;
    for (const GadgetTransition* tr : outs) all_single = all_single && tr->on.is_single();

    if (all_single) {
      // Prefix tree: one state per strict prefix of an outgoing symbol.
      std::map<std::pair<int, Symbol>, State> node;  // (depth, prefix) -> id
      for (const GadgetTransition* tr : outs) {
        Symbol c = tr->on.symbol();
        State prev = x;
        for (int i = 1; i <= h - 1; ++i) {
          Symbol prefix = c >> (h - i);
          auto [it, inserted] = node.try_emplace({i, prefix}, out.num_states);
          if (inserted) {
            ++out.num_states;
            out.transitions.push_back({prev, bit_of(c, h, i), it->second});
          }
          prev = it->second;
        }
        out.transitions.push_back({prev, bit_of(c, h, h), tr->to});
      }
      continue;
    }

    if (require_concrete)
      throw std::invalid_argument(std::string(op) + ": set-valued label present");
    if (outs.size() != 1)
      throw std::invalid_argument(
          std::string(op) + ": a state mixes a set-valued label with other transitions");

    const GadgetTransition& tr = *outs[0];
    const Symbol lo = tr.on.lo;
    const Symbol top = tr.on.hi - 1;  // inclusive upper bound
    const Symbol ex = tr.on.excluded;

    // Flag bits: 1 = prefix equals lo's prefix (value could still fall below
    // lo), 2 = prefix equals top's prefix (could still exceed), 4 = prefix
    // equals the excluded code's prefix. A boundary flag is dropped as soon
    // as the remaining boundary bits cannot constrain anything further.
    auto normalize = [&](int depth, int flags) {
      if (flags & 1) {
        Symbol rest_mask = (Symbol{1} << (h - depth)) - 1;
        if ((lo & rest_mask) == 0) flags &= ~1;
      }
      if (flags & 2) {
        Symbol rest_mask = (Symbol{1} << (h - depth)) - 1;
        if ((top & rest_mask) == rest_mask) flags &= ~2;
      }
      return flags;
    };

    // node_id[depth][flags], depth 1..h-1; depth 0 is x itself.
    std::vector<std::array<State, 8>> node_id(static_cast<std::size_t>(h));
    for (auto& row : node_id) row.fill(-1);
    int start_flags = normalize(0, 1 | 2 | (ex >= 0 ? 4 : 0));
    std::vector<std::pair<int, State>> frontier = {{start_flags, x}};
    for (int depth = 0; depth < h; ++depth) {
      std::vector<std::pair<int, State>> next;
      for (auto [flags, id] : frontier) {
        for (int b = 0; b <= 1; ++b) {
          if ((flags & 1) && b < bit_of(lo, h, depth + 1)) continue;
          if ((flags & 2) && b > bit_of(top, h, depth + 1)) continue;
          int nf = 0;
          if ((flags & 1) && b == bit_of(lo, h, depth + 1)) nf |= 1;
          if ((flags & 2) && b == bit_of(top, h, depth + 1)) nf |= 2;
          if ((flags & 4) && b == bit_of(ex, h, depth + 1)) nf |= 4;
          if (depth + 1 == h) {
            if (nf & 4) continue;  // would spell out the excluded code
            out.transitions.push_back({id, b, tr.to});
            continue;
          }
          nf = normalize(depth + 1, nf);
          State& slot = node_id[static_cast<std::size_t>(depth + 1)][static_cast<std::size_t>(nf)];
          if (slot < 0) {
            slot = out.num_states++;
            next.push_back({nf, slot});
          }
          out.transitions.push_back({id, b, slot});
        }
      }
      frontier = std::move(next);
    }
  }
  out.canonicalize();
  return out;
}

}  // namespace detail

// Re-encodes a gadget DFA with single-symbol labels over the binary alphabet:
// each symbol becomes its h-bit code (h = encode_width), read through a
// shared per-state prefix tree. Acceptance of w in the input corresponds
// exactly to acceptance of encode_word(w, h) in the output; run counts per
// word are preserved, and the output is deterministic whenever the input is.
// Codes that correspond to no input symbol lead nowhere (the padding of a
// non-power-of-two alphabet stays dead). Size grows by a factor of at most h.
inline Nfa binary_encode(const GadgetDfa& d) {
  return detail::expand_gadget(d, true, "binary_encode");
}

// Generalization of binary_encode to set-valued labels: a state with a
// set-valued label gets a comparator chain accepting exactly the h-bit codes
// of the set's members. Requires each state to carry either only
// single-symbol labels or exactly one set-valued label.
inline Nfa expand_wildcards(const GadgetDfa& d) {
  return detail::expand_gadget(d, false, "expand_wildcards");
}

// --- Orthogonal vectors ------------------------------------------------------

// k sets of n bit-vectors of dimension d. The question: does some choice of
// one vector per set have, in every coordinate, at least one zero?
struct OvInstance {
  int k = 0, n = 0, d = 0;
  // sets[i][j][l] in {0,1}: coordinate l of vector j of set i.
  std::vector<std::vector<std::vector<std::uint8_t>>> sets;

  void validate() const {
    if (k < 1 || n < 0 || d < 0) throw std::invalid_argument("ov instance: bad dimensions");
    if (static_cast<int>(sets.size()) != k)
      throw std::invalid_argument("ov instance: set count differs from k");
    for (const auto& set : sets) {
      if (static_cast<int>(set.size()) != n)
        throw std::invalid_argument("ov instance: set size differs from n");
      for (const auto& vec : set) {
        if (static_cast<int>(vec.size()) != d)
          throw std::invalid_argument("ov instance: vector dimension differs from d");
        for (std::uint8_t b : vec)
          if (b > 1) throw std::invalid_argument("ov instance: vector entry not a bit");
      }
    }
  }
};

// The shared alphabet of the generated DFAs: responsibility letters 1..k in
// the low codes, vector-choice letters 1..n tagged with the top bit.
inline int ov_code_width(const OvInstance& ov) {
  return 1 + std::max(encode_width(ov.n), encode_width(ov.k));
}
inline Symbol ov_vector_letter(const OvInstance& ov, int j) {  // 1-based j
  if (j < 1 || j > ov.n) throw std::invalid_argument("ov_vector_letter: index out of range");
  return (Symbol{1} << (ov_code_width(ov) - 1)) + (j - 1);
}
inline Symbol ov_responsibility_letter(const OvInstance& ov, int r) {  // 1-based r
  if (r < 1 || r > ov.k)
    throw std::invalid_argument("ov_responsibility_letter: index out of range");
  return r - 1;
}
inline int ov_alphabet_size(const OvInstance& ov) {
  return static_cast<int>((Symbol{1} << (ov_code_width(ov) - 1)) + ov.n);
}

// Compiles an orthogonal-vectors instance into k gadget DFAs whose
// intersection is nonempty exactly when an orthogonal tuple exists. Words in
// the intersection spell the choice of one vector per set (k vector letters)
// followed by, for each coordinate, the index of a set whose chosen vector is
// zero there (d responsibility letters). DFA i ignores every choice but the
// i-th: it reads any vector letters around its own branch point, then on
// coordinate l accepts any responsibility letter if its vector is zero at l,
// and any letter except its own index otherwise.
inline std::vector<GadgetDfa> kov_to_kie(const OvInstance& ov) {
  ov.validate();
  const SymbolSet vector_letters =
      SymbolSet::range(Symbol{1} << (ov_code_width(ov) - 1), ov_alphabet_size(ov));
  const SymbolSet responsibility_letters = SymbolSet::range(0, ov.k);
  std::vector<GadgetDfa> out;
  out.reserve(static_cast<std::size_t>(ov.k));
  for (int i = 1; i <= ov.k; ++i) {
    GadgetDfa d;
    d.alphabet_size = ov_alphabet_size(ov);
    // Spine: positions 1..i-1 read any vector letter.
    std::vector<State> spine(static_cast<std::size_t>(i));
    for (int p = 0; p <= i - 1; ++p) spine[static_cast<std::size_t>(p)] = d.num_states++;
    d.initial = spine[0];
    // A zero-vector instance has no vector letters at all; the spine then
    // dead-ends at the start (every DFA accepts nothing, matching the
    // vacuously false answer), so empty labels are simply skipped here and in
    // the branches below.
    for (int p = 1; p <= i - 1; ++p)
      if (!vector_letters.empty())
        d.transitions.push_back({spine[static_cast<std::size_t>(p - 1)], vector_letters,
                                 spine[static_cast<std::size_t>(p)]});
    for (int j = 1; j <= ov.n; ++j) {
      // Branch on the vector chosen from set i, then read the remaining
      // vector letters (positions i+1..k), then the d coordinates.
      State prev = d.num_states++;
      d.transitions.push_back(
          {spine[static_cast<std::size_t>(i - 1)],
           SymbolSet::single(ov_vector_letter(ov, j)), prev});
      for (int p = i + 1; p <= ov.k; ++p) {
        State nxt = d.num_states++;
        if (!vector_letters.empty()) d.transitions.push_back({prev, vector_letters, nxt});
        prev = nxt;
      }
      const auto& vec = ov.sets[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      for (int l = 1; l <= ov.d; ++l) {
        State nxt = d.num_states++;
        SymbolSet label = vec[static_cast<std::size_t>(l - 1)] == 0
                              ? responsibility_letters
                              : SymbolSet::range_excluding(0, ov.k, i - 1);
        // A one-set instance with a 1-coordinate leaves no letter to read:
        // the branch simply dead-ends there, as intended.
        if (!label.empty()) d.transitions.push_back({prev, label, nxt});
        prev = nxt;
      }
      d.final.push_back(prev);
    }
    d.canonicalize();
    d.validate();
    out.push_back(std::move(d));
  }
  return out;
}

// --- Layered cycle search ------------------------------------------------------

// k layers of n vertices; arcs go from layer l to layer (l+1) mod k. The
// question: is there a cycle visiting one vertex per layer in order?
struct LayeredEdge {
  int layer = 0;
  int from = 0;  // vertex index within `layer`
  int to = 0;    // vertex index within layer (layer+1) mod k
  friend auto operator<=>(const LayeredEdge&, const LayeredEdge&) = default;
};

struct LayeredGraph {
  int k = 0, n = 0;
  std::vector<LayeredEdge> edges;  // sorted, duplicate-free

  void canonicalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  void validate() const {
    if (k < 1 || n < 0) throw std::invalid_argument("layered graph: bad dimensions");
    for (const LayeredEdge& e : edges)
      if (e.layer < 0 || e.layer >= k || e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
        throw std::invalid_argument("layered graph: edge endpoint out of range");
  }
};

// Compiles layered-cycle search into two gadget DFAs over the alphabet of
// vertex indices. D1 accepts j_0 j_1 ... j_k whenever consecutive letters
// trace arcs layer by layer (wrapping back to layer 0 at the end); D2
// accepts any k+1-letter word whose first and last letters agree. A word in
// both languages closes a cycle through one vertex per layer.
inline std::pair<GadgetDfa, GadgetDfa> kcycle_to_2ie(const LayeredGraph& g) {
  g.validate();
  auto grid = [&](int layer, int j) { return 1 + layer * g.n + j; };

  GadgetDfa d1;
  d1.alphabet_size = g.n;
  d1.num_states = 1 + (g.k + 1) * g.n;
  d1.initial = 0;
  for (int j = 0; j < g.n; ++j)
    d1.transitions.push_back({0, SymbolSet::single(j), grid(0, j)});
  for (const LayeredEdge& e : g.edges)
    d1.transitions.push_back(
        {grid(e.layer, e.from), SymbolSet::single(e.to), grid(e.layer + 1, e.to)});
  for (int j = 0; j < g.n; ++j) d1.final.push_back(grid(g.k, j));
  d1.canonicalize();
  d1.validate();

  GadgetDfa d2;
  d2.alphabet_size = g.n;
  d2.num_states = 1 + (g.k + 1) * g.n;
  d2.initial = 0;
  for (int j = 0; j < g.n; ++j) {
    d2.transitions.push_back({0, SymbolSet::single(j), grid(0, j)});
    for (int l = 0; l <= g.k - 2; ++l)
      d2.transitions.push_back({grid(l, j), SymbolSet::range(0, g.n), grid(l + 1, j)});
    d2.transitions.push_back({grid(g.k - 1, j), SymbolSet::single(j), grid(g.k, j)});
    d2.final.push_back(grid(g.k, j));
  }
  d2.canonicalize();
  d2.validate();
  return {std::move(d1), std::move(d2)};
}

// --- Intersection to unambiguity ----------------------------------------------

// Disjoint union of two DFAs: a word has two accepting runs exactly when
// both halves accept it, so the union is unambiguous iff the languages are
// disjoint.
inline Nfa ie2_to_unambiguity(const Nfa& d1, const Nfa& d2) {
  d1.validate();
  d2.validate();
  if (!is_deterministic(d1) || !is_deterministic(d2))
    throw std::invalid_argument("ie2_to_unambiguity: inputs must be deterministic");
  Nfa u;
  u.num_states = d1.num_states + d2.num_states;
  u.alphabet_size = std::max(d1.alphabet_size, d2.alphabet_size);
  const State off = d1.num_states;
  u.transitions = d1.transitions;
  for (const Transition& tr : d2.transitions)
    u.transitions.push_back({tr.from + off, tr.sym, tr.to + off});
  u.initial = d1.initial;
  for (State q : d2.initial) u.initial.push_back(q + off);
  u.final = d1.final;
  for (State q : d2.final) u.final.push_back(q + off);
  u.canonicalize();
  return u;
}

// --- Unambiguity to exponential ambiguity ---------------------------------------

// Trims and normalizes the automaton, then adds one fresh symbol # and one
// back transition from the final to the initial state. Two accepting runs on
// some word close into two distinct cycles on a common word through the new
// transition, and conversely, so the output has a state with two same-word
// cycles exactly when the input is ambiguous.
//
// A letterless automaton cannot be wrapped into normal form without erasing
// its runs (the only candidate word is the empty one), so that degenerate
// case is answered directly with a canonical two-cycle or cycle-free output.
inline Nfa unambiguity_to_eda(const Nfa& a) {
  a.validate();
  if (a.alphabet_size == 0) {
    std::vector<State> both;
    std::set_intersection(a.initial.begin(), a.initial.end(), a.final.begin(),
                          a.final.end(), std::back_inserter(both));
    Nfa out;
    out.alphabet_size = 1;
    if (both.size() >= 2) {
      out.num_states = 2;
      out.transitions = {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}};
    } else {
      out.num_states = 1;
    }
    out.initial = {0};
    out.final = {0};
    out.canonicalize();
    return out;
  }
  Nfa b = normalize(trim(a).nfa);
  const Symbol hash = b.alphabet_size;
  b.alphabet_size += 1;
  b.transitions.push_back({b.final[0], hash, b.initial[0]});
  b.canonicalize();
  return b;
}

// --- Triple intersection to infinite ambiguity -----------------------------------

// Wires three DFAs over a shared alphabet into one NFA with fresh states s, t
// and fresh symbols $, #: D1 loops on s ($ into D1, # from its finals back to
// s), D2 bridges s to t, D3 loops on t. For any word w in all three
// languages, $w# then pumps runs s->s, s->t, t->t, so the output has
// infinite-ambiguity growth exactly when the triple intersection is
// nonempty.
inline Nfa ie3_to_ida(const Nfa& d1, const Nfa& d2, const Nfa& d3) {
  d1.validate();
  d2.validate();
  d3.validate();
  if (!is_deterministic(d1) || !is_deterministic(d2) || !is_deterministic(d3))
    throw std::invalid_argument("ie3_to_ida: inputs must be deterministic");
  const int alphabet =
      std::max(d1.alphabet_size, std::max(d2.alphabet_size, d3.alphabet_size));
  const Symbol dollar = alphabet, hash = alphabet + 1;
  const State o1 = 0, o2 = d1.num_states, o3 = d1.num_states + d2.num_states;
  const State s = o3 + d3.num_states, t = s + 1;
  Nfa out;
  out.num_states = t + 1;
  out.alphabet_size = alphabet + 2;
  auto copy_into = [&](const Nfa& d, State off) {
    for (const Transition& tr : d.transitions)
      out.transitions.push_back({tr.from + off, tr.sym, tr.to + off});
  };
  copy_into(d1, o1);
  copy_into(d2, o2);
  copy_into(d3, o3);
  if (!d1.initial.empty()) out.transitions.push_back({s, dollar, o1 + d1.initial[0]});
  if (!d2.initial.empty()) out.transitions.push_back({s, dollar, o2 + d2.initial[0]});
  if (!d3.initial.empty()) out.transitions.push_back({t, dollar, o3 + d3.initial[0]});
  for (State q : d1.final) out.transitions.push_back({q + o1, hash, s});
  for (State q : d2.final) out.transitions.push_back({q + o2, hash, t});
  for (State q : d3.final) out.transitions.push_back({q + o3, hash, t});
  out.initial = {s};
  out.final = {t};
  out.canonicalize();
  return out;
}

// --- Unambiguity to the twins property -------------------------------------------

// Builds a weighted automaton from three copies of the normalized input. Copy
// 1 and copy 3 replay the input with weight 0; a $-transition moves any state
// from copy 1 to copy 2 at weight 0; each copy-2 state takes one original
// step into copy 3, weighted by the 1-based rank of the target among the
// sorted successors on that symbol; a #-transition returns from the copy-3
// final state to the copy-1 initial state, which is both initial and final.
// A cycle either stays inside copy 1 or copy 3 (weight 0, word free of $ and
// #) or crosses the copies, spelling accepting runs of the input with one
// step per crossing priced in. Same-word cycles share their $/# pattern, so
// only crossing cycles can disagree in weight: two runs of the input on one
// word yield two same-word cycles of different weight, and conversely. The
// output has the twins property exactly when the input is unambiguous.
//
// The letterless degenerate case is answered directly, as in
// unambiguity_to_eda.
inline WeightedAutomaton unambiguity_to_twins(const Nfa& a) {
  a.validate();
  if (a.alphabet_size == 0) {
    std::vector<State> both;
    std::set_intersection(a.initial.begin(), a.initial.end(), a.final.begin(),
                          a.final.end(), std::back_inserter(both));
    WeightedAutomaton out;
    out.nfa.alphabet_size = 1;
    if (both.size() >= 2) {
      out.nfa.num_states = 2;
      out.nfa.transitions = {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}};
      out.weight = {0, 0, 0, 1};
    } else {
      out.nfa.num_states = 1;
    }
    out.nfa.initial = {0};
    out.nfa.final = {0};
    out.canonicalize();
    return out;
  }
  const Nfa b = normalize(a);
  const int n = b.num_states;
  const State q_init = b.initial[0], q_fin = b.final[0];
  const Symbol dollar = b.alphabet_size, hash = b.alphabet_size + 1;
  WeightedAutomaton w;
  w.nfa.num_states = 3 * n;
  w.nfa.alphabet_size = b.alphabet_size + 2;
  auto add = [&](State p, Symbol s, State q, std::int64_t wt) {
    w.nfa.transitions.push_back({p, s, q});
    w.weight.push_back(wt);
  };
  for (const Transition& tr : b.transitions) {
    add(tr.from, tr.sym, tr.to, 0);                    // copy 1
    add(tr.from + 2 * n, tr.sym, tr.to + 2 * n, 0);    // copy 3
  }
  for (State p = 0; p < n; ++p) add(p, dollar, p + n, 0);
  // Copy 2 -> copy 3 with successor ranks: transitions are sorted, so each
  // (from, sym) group lists its targets in ascending order.
  for (std::size_t i = 0; i < b.transitions.size();) {
    std::size_t j = i;
    std::int64_t rank = 0;
    while (j < b.transitions.size() && b.transitions[j].from == b.transitions[i].from &&
           b.transitions[j].sym == b.transitions[i].sym) {
      add(b.transitions[j].from + n, b.transitions[j].sym, b.transitions[j].to + 2 * n,
          ++rank);
      ++j;
    }
    i = j;
  }
  add(q_fin + 2 * n, hash, q_init, 0);
  w.nfa.initial = {q_init};
  w.nfa.final = {q_init};
  w.canonicalize();
  return w;
}

// --- File formats ---------------------------------------------------------------

inline OvInstance parse_ov_instance(std::istream& in) {
  OvInstance ov;
  std::string line;
  int line_no = 0;
  if (!detail::io_next_line(in, line, line_no))
    throw ParseError(line_no, "expected 'ov <k> <n> <d>' header");
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "ov") throw ParseError(line_no, "expected 'ov' header");
    ov.k = static_cast<int>(detail::io_int(ss, line_no, "k"));
    ov.n = static_cast<int>(detail::io_int(ss, line_no, "n"));
    ov.d = static_cast<int>(detail::io_int(ss, line_no, "d"));
    detail::io_done(ss, line_no);
  }
  if (ov.k < 1 || ov.n < 0 || ov.d < 0) throw ParseError(line_no, "bad ov dimensions");
  ov.sets.assign(static_cast<std::size_t>(ov.k), {});
  for (int i = 0; i < ov.k; ++i) {
    for (int j = 0; j < ov.n; ++j) {
      if (!detail::io_next_line(in, line, line_no))
        throw ParseError(line_no, "expected a bit-vector line");
      std::istringstream ss(line);
      std::string bits;
      ss >> bits;
      detail::io_done(ss, line_no);
      if (static_cast<int>(bits.size()) != ov.d)
        throw ParseError(line_no, "bit vector length differs from d");
      std::vector<std::uint8_t> vec(static_cast<std::size_t>(ov.d));
      for (int l = 0; l < ov.d; ++l) {
        if (bits[static_cast<std::size_t>(l)] != '0' && bits[static_cast<std::size_t>(l)] != '1')
          throw ParseError(line_no, "bit vector contains a non-bit character");
        vec[static_cast<std::size_t>(l)] = bits[static_cast<std::size_t>(l)] == '1';
      }
      ov.sets[static_cast<std::size_t>(i)].push_back(std::move(vec));
    }
  }
  if (detail::io_next_line(in, line, line_no))
    throw ParseError(line_no, "unexpected content after the last vector");
  ov.validate();
  return ov;
}

inline void write_ov_instance(std::ostream& out, const OvInstance& ov) {
  ov.validate();
  out << "ov " << ov.k << ' ' << ov.n << ' ' << ov.d << '\n';
  for (const auto& set : ov.sets)
    for (const auto& vec : set) {
      for (std::uint8_t b : vec) out << static_cast<char>('0' + b);
      out << '\n';
    }
}

inline LayeredGraph parse_layered_graph(std::istream& in) {
  LayeredGraph g;
  std::string line;
  int line_no = 0;
  if (!detail::io_next_line(in, line, line_no))
    throw ParseError(line_no, "expected 'layers <k> <n>' header");
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "layers") throw ParseError(line_no, "expected 'layers' header");
    g.k = static_cast<int>(detail::io_int(ss, line_no, "k"));
    g.n = static_cast<int>(detail::io_int(ss, line_no, "n"));
    detail::io_done(ss, line_no);
  }
  if (g.k < 1 || g.n < 0) throw ParseError(line_no, "bad layered-graph dimensions");
  while (detail::io_next_line(in, line, line_no)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "edge") throw ParseError(line_no, "expected an 'edge' line");
    LayeredEdge e;
    e.layer = static_cast<int>(detail::io_int(ss, line_no, "layer"));
    e.from = static_cast<int>(detail::io_int(ss, line_no, "from-vertex"));
    e.to = static_cast<int>(detail::io_int(ss, line_no, "to-vertex"));
    detail::io_done(ss, line_no);
    if (e.layer < 0 || e.layer >= g.k || e.from < 0 || e.from >= g.n || e.to < 0 ||
        e.to >= g.n)
      throw ParseError(line_no, "edge endpoint out of range");
    g.edges.push_back(e);
  }
  g.canonicalize();
  g.validate();
  return g;
}

inline void write_layered_graph(std::ostream& out, const LayeredGraph& g) {
  g.validate();
  out << "layers " << g.k << ' ' << g.n << '\n';
  for (const LayeredEdge& e : g.edges)
    out << "edge " << e.layer << ' ' << e.from << ' ' << e.to << '\n';
}

}  // namespace ambidet
