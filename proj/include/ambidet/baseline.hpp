#pragma once
// General-alphabet ambiguity deciders: the quadratic unambiguity test, the
// quadratic EDA test (exponential ambiguity) and the cubic IDA test
// (infinite-degree ambiguity), plus the four-way classifier built on them.
//
// All three tests work on the trim part of the automaton and explore product
// automata lazily (breadth-first over reached states only):
//   - Unambiguity: two distinct accepting runs on one word exist iff a
//     flagged pair (p, q, diverged) of the synchronized self-product reaches
//     a pair of final states with the flag set.
//   - EDA: some state q carries two distinct cycles over the same word iff
//     an SCC of the synchronized square contains both a diagonal (q, q) and
//     an off-diagonal (x, y).
//   - IDA: states p != q with same-word runs p->p, p->q, q->q exist iff
//     (p, p, q) reaches (p, q, q) in the synchronized cube.
// Every positive answer comes with a machine-checkable witness in terms of
// the ORIGINAL state ids.

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>

#include "ambidet/core.hpp"
#include "ambidet/graph.hpp"

namespace ambidet {

// --- Witnesses -----------------------------------------------------------------

// Two distinct accepting runs on the same word.
struct TwoRunsWitness {
  Word word;
  Run run1, run2;
};

// Two distinct cycles at `state` labelled by the same nonempty word.
struct EdaWitness {
  State state = 0;
  Word word;
  Run cycle1, cycle2;  // runs state -> state of length |word| + 1
};

// Distinct states p != q with runs p->p, p->q, q->q on the same nonempty word.
struct IdaWitness {
  State p = 0, q = 0;
  Word word;
  Run run_pp, run_pq, run_qq;
};

inline bool two_runs_witness_valid(const Nfa& a, const TwoRunsWitness& w) {
  return w.run1 != w.run2 && is_accepting_run(a, w.word, w.run1) &&
         is_accepting_run(a, w.word, w.run2);
}

inline bool eda_witness_valid(const Nfa& a, const EdaWitness& w) {
  auto closes = [&](const Run& r) {
    return !r.empty() && r.front() == w.state && r.back() == w.state;
  };
  return !w.word.empty() && w.cycle1 != w.cycle2 && closes(w.cycle1) &&
         closes(w.cycle2) && is_run(a, w.word, w.cycle1) && is_run(a, w.word, w.cycle2);
}

inline bool ida_witness_valid(const Nfa& a, const IdaWitness& w) {
  auto connects = [&](const Run& r, State from, State to) {
    return !r.empty() && r.front() == from && r.back() == to && is_run(a, w.word, r);
  };
  return w.p != w.q && !w.word.empty() && connects(w.run_pp, w.p, w.p) &&
         connects(w.run_pq, w.p, w.q) && connects(w.run_qq, w.q, w.q);
}

// --- Unambiguity ------------------------------------------------------------------

struct UnambiguityResult {
  bool unambiguous = true;
  std::optional<TwoRunsWitness> witness;  // engaged iff !unambiguous
};

namespace detail {

inline bool has_transition(const Nfa& a, State p, Symbol s, State q) {
  return std::binary_search(a.transitions.begin(), a.transitions.end(),
                            Transition{p, s, q});
}

// Turns a canonical-pair path (unordered pairs) into two concrete component
// runs: at each step pick the orientation supported by actual transitions.
// Simultaneous component swap preserves transition validity, so a valid
// orientation always extends the current one.
inline std::pair<Run, Run> orient_pair_path(
    const Nfa& a, const std::vector<std::pair<State, State>>& pairs,
    const Word& word) {
  Run r1{pairs[0].first}, r2{pairs[0].second};
  State x = pairs[0].first, y = pairs[0].second;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    Symbol s = word[i - 1];
    if (has_transition(a, x, s, u) && has_transition(a, y, s, v)) {
      x = u;
      y = v;
    } else {
      x = v;
      y = u;
    }
    r1.push_back(x);
    r2.push_back(y);
  }
  return {std::move(r1), std::move(r2)};
}

inline Run lift_run(const Run& r, const std::vector<State>& old_of_new) {
  Run out;
  out.reserve(r.size());
  for (State s : r) out.push_back(old_of_new[s]);
  return out;
}

}  // namespace detail

// Quadratic unambiguity test. On a negative answer the witness word has
// length at most n^2 (n = number of useful states).
inline UnambiguityResult is_unambiguous(const Nfa& input) {
  TrimResult tr = trim(input);
  const Nfa& a = tr.nfa;
  UnambiguityResult res;
  if (a.num_states == 0) return res;
  const std::uint64_t n = static_cast<std::uint64_t>(a.num_states);
  SymCsr csr = sym_csr(a);

  // Key packs (p <= q, flag); value = (parent key, symbol taken), symbol -1
  // at the roots.
  constexpr std::uint64_t kRoot = ~std::uint64_t{0};
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::int32_t>> parent;
  std::deque<std::uint64_t> queue;
  auto key = [n](State p, State q, bool flag) {
    return ((static_cast<std::uint64_t>(p) * n + static_cast<std::uint64_t>(q)) << 1) |
           (flag ? 1u : 0u);
  };
  auto push = [&](State p, State q, bool flag, std::uint64_t from, std::int32_t sym) {
    if (p > q) std::swap(p, q);
    std::uint64_t k = key(p, q, flag);
    if (parent.emplace(k, std::make_pair(from, sym)).second) queue.push_back(k);
  };
  for (std::size_t i = 0; i < a.initial.size(); ++i) {
    push(a.initial[i], a.initial[i], false, kRoot, -1);
    for (std::size_t j = i + 1; j < a.initial.size(); ++j)
      push(a.initial[i], a.initial[j], true, kRoot, -1);
  }
  auto is_final = [&](State s) {
    return std::binary_search(a.final.begin(), a.final.end(), s);
  };

  std::optional<std::uint64_t> accept;
  while (!queue.empty()) {
    std::uint64_t k = queue.front();
    queue.pop_front();
    State p = static_cast<State>((k >> 1) / n), q = static_cast<State>((k >> 1) % n);
    bool flag = (k & 1) != 0;
    if (flag && is_final(p) && is_final(q)) {
      accept = k;
      break;
    }
    for (Symbol s = 0; s < a.alphabet_size; ++s) {
      auto [pb, pe] = csr.succ(p, s);
      auto [qb, qe] = csr.succ(q, s);
      for (const State* pp = pb; pp != pe; ++pp)
        for (const State* qq = qb; qq != qe; ++qq)
          push(*pp, *qq, flag || *pp != *qq, k, s);
    }
  }
  if (!accept) return res;

  std::vector<std::pair<State, State>> pairs;
  Word word;
  for (std::uint64_t k = *accept;;) {
    pairs.push_back({static_cast<State>((k >> 1) / n), static_cast<State>((k >> 1) % n)});
    auto [from, sym] = parent.at(k);
    if (sym < 0) break;
    word.push_back(static_cast<Symbol>(sym));
    k = from;
  }
  std::reverse(pairs.begin(), pairs.end());
  std::reverse(word.begin(), word.end());
  auto [r1, r2] = detail::orient_pair_path(a, pairs, word);
  res.unambiguous = false;
  res.witness = TwoRunsWitness{std::move(word), detail::lift_run(r1, tr.old_of_new),
                               detail::lift_run(r2, tr.old_of_new)};
  return res;
}

// --- EDA ---------------------------------------------------------------------------

struct EdaResult {
  bool eda = false;
  std::optional<EdaWitness> witness;  // engaged iff eda
};

// Quadratic EDA test: SCC analysis of the synchronized square (unordered
// pairs), seeded from all diagonals. Witness word length at most 2 n^2.
inline EdaResult has_eda(const Nfa& input) {
  TrimResult tr = trim(input);
  const Nfa& a = tr.nfa;
  EdaResult res;
  if (a.num_states == 0) return res;
  const std::uint64_t n = static_cast<std::uint64_t>(a.num_states);
  SymCsr csr = sym_csr(a);

  // Lazy exploration from the diagonal: dense ids in discovery order.
  std::unordered_map<std::uint64_t, int> id_of;
  std::vector<std::pair<State, State>> pair_of;
  std::vector<std::vector<std::pair<int, Symbol>>> adj;
  std::deque<int> queue;
  auto intern = [&](State p, State q) {
    if (p > q) std::swap(p, q);
    std::uint64_t k = static_cast<std::uint64_t>(p) * n + static_cast<std::uint64_t>(q);
    auto [it, fresh] = id_of.emplace(k, static_cast<int>(pair_of.size()));
    if (fresh) {
      pair_of.push_back({p, q});
      adj.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (State v = 0; v < a.num_states; ++v) intern(v, v);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [p, q] = pair_of[id];
    for (Symbol s = 0; s < a.alphabet_size; ++s) {
      auto [pb, pe] = csr.succ(p, s);
      auto [qb, qe] = csr.succ(q, s);
      for (const State* pp = pb; pp != pe; ++pp)
        for (const State* qq = qb; qq != qe; ++qq) {
          int succ = intern(*pp, *qq);  // may grow adj; take the row after
          adj[id].push_back({succ, s});
        }
    }
  }

  std::vector<std::vector<int>> plain(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (auto [to, s] : adj[v]) plain[v].push_back(to);
  auto [ncomp, comp] = strongly_connected_components(plain);

  // First component (by id) holding both a diagonal and an off-diagonal pair.
  std::vector<int> comp_diag(ncomp, -1), comp_off(ncomp, -1);
  for (int v = 0; v < static_cast<int>(pair_of.size()); ++v) {
    int c = comp[v];
    if (pair_of[v].first == pair_of[v].second) {
      if (comp_diag[c] < 0) comp_diag[c] = v;
    } else {
      if (comp_off[c] < 0) comp_off[c] = v;
    }
  }
  int target = -1;
  for (int c = 0; c < ncomp && target < 0; ++c)
    if (comp_diag[c] >= 0 && comp_off[c] >= 0) target = c;
  if (target < 0) return res;

  int diag = comp_diag[target], off = comp_off[target];
  auto bfs_path = [&](int src, int dst) {
    std::vector<std::pair<int, Symbol>> par(adj.size(), {-2, -1});
    std::deque<int> bq{src};
    par[src] = {-1, -1};
    while (!bq.empty()) {
      int u = bq.front();
      bq.pop_front();
      if (u == dst) break;
      for (auto [v, s] : adj[u])
        if (par[v].first == -2) {
          par[v] = {u, s};
          bq.push_back(v);
        }
    }
    std::vector<int> nodes;
    Word w;
    for (int u = dst;;) {
      nodes.push_back(u);
      auto [pu, s] = par[u];
      if (pu < 0) break;
      w.push_back(s);
      u = pu;
    }
    std::reverse(nodes.begin(), nodes.end());
    std::reverse(w.begin(), w.end());
    return std::make_pair(std::move(nodes), std::move(w));
  };
  // Walks between members of one SCC never leave it, so plain BFS suffices.
  auto [nodes1, word1] = bfs_path(diag, off);
  auto [nodes2, word2] = bfs_path(off, diag);
  std::vector<std::pair<State, State>> pairs;
  for (int v : nodes1) pairs.push_back(pair_of[v]);
  for (std::size_t i = 1; i < nodes2.size(); ++i) pairs.push_back(pair_of[nodes2[i]]);
  Word word = word1;
  word.insert(word.end(), word2.begin(), word2.end());
  auto [c1, c2] = detail::orient_pair_path(a, pairs, word);

  res.eda = true;
  res.witness = EdaWitness{tr.old_of_new[pair_of[diag].first], std::move(word),
                           detail::lift_run(c1, tr.old_of_new),
                           detail::lift_run(c2, tr.old_of_new)};
  return res;
}

// --- IDA ---------------------------------------------------------------------------

struct IdaResult {
  bool ida = false;
  std::optional<IdaWitness> witness;  // engaged iff ida
};

// Cubic IDA test: per candidate pair (p, q), breadth-first search from
// (p, p, q) to (p, q, q) in the synchronized cube. Candidates are pruned to
// p and q on cycles with q reachable from p (necessary for the three runs);
// enumeration is lexicographic and the first witness wins. Witness word
// length at most n^3.
inline IdaResult has_ida(const Nfa& input) {
  TrimResult tr = trim(input);
  const Nfa& a = tr.nfa;
  IdaResult res;
  if (a.num_states == 0) return res;
  const std::uint64_t n = static_cast<std::uint64_t>(a.num_states);
  SymCsr csr = sym_csr(a);

  std::vector<std::vector<int>> adj1(a.num_states);
  for (const Transition& t : a.transitions) adj1[t.from].push_back(t.to);
  auto [ncomp, comp] = strongly_connected_components(adj1);
  std::vector<int> comp_size(ncomp, 0);
  for (State v = 0; v < a.num_states; ++v) ++comp_size[comp[v]];
  std::vector<char> on_cycle(a.num_states, 0);
  for (State v = 0; v < a.num_states; ++v)
    if (comp_size[comp[v]] > 1) on_cycle[v] = 1;
  for (const Transition& t : a.transitions)
    if (t.from == t.to) on_cycle[t.from] = 1;

  auto bfs_reach = [&](State src) {
    std::vector<char> seen(a.num_states, 0);
    std::deque<State> q{src};
    seen[src] = 1;
    while (!q.empty()) {
      State u = q.front();
      q.pop_front();
      for (State v : adj1[u])
        if (!seen[v]) {
          seen[v] = 1;
          q.push_back(v);
        }
    }
    return seen;
  };

  for (State p = 0; p < a.num_states && !res.ida; ++p) {
    if (!on_cycle[p]) continue;
    std::vector<char> reach = bfs_reach(p);
    for (State q = 0; q < a.num_states && !res.ida; ++q) {
      if (q == p || !on_cycle[q] || !reach[q]) continue;
      // Cube search from (p, p, q) to (p, q, q).
      auto key = [n](State x, State y, State z) {
        return (static_cast<std::uint64_t>(x) * n + y) * n + z;
      };
      const std::uint64_t src = key(p, p, q), dst = key(p, q, q);
      constexpr std::uint64_t kRoot = ~std::uint64_t{0};
      std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::int32_t>> parent;
      std::deque<std::uint64_t> bq{src};
      parent.emplace(src, std::make_pair(kRoot, -1));
      bool found = false;
      while (!bq.empty() && !found) {
        std::uint64_t k = bq.front();
        bq.pop_front();
        State x = static_cast<State>(k / (n * n));
        State y = static_cast<State>((k / n) % n);
        State z = static_cast<State>(k % n);
        for (Symbol s = 0; s < a.alphabet_size && !found; ++s) {
          auto [xb, xe] = csr.succ(x, s);
          auto [yb, ye] = csr.succ(y, s);
          auto [zb, ze] = csr.succ(z, s);
          for (const State* xx = xb; xx != xe && !found; ++xx)
            for (const State* yy = yb; yy != ye && !found; ++yy)
              for (const State* zz = zb; zz != ze && !found; ++zz) {
                std::uint64_t nk = key(*xx, *yy, *zz);
                if (parent.emplace(nk, std::make_pair(k, s)).second) {
                  if (nk == dst) found = true;
                  bq.push_back(nk);
                }
              }
        }
      }
      if (!found) continue;
      Word word;
      std::vector<std::uint64_t> path;
      for (std::uint64_t k = dst;;) {
        path.push_back(k);
        auto [from, sym] = parent.at(k);
        if (sym < 0) break;
        word.push_back(static_cast<Symbol>(sym));
        k = from;
      }
      std::reverse(path.begin(), path.end());
      std::reverse(word.begin(), word.end());
      Run rpp, rpq, rqq;
      for (std::uint64_t k : path) {
        rpp.push_back(static_cast<State>(k / (n * n)));
        rpq.push_back(static_cast<State>((k / n) % n));
        rqq.push_back(static_cast<State>(k % n));
      }
      res.ida = true;
      res.witness = IdaWitness{tr.old_of_new[p],
                               tr.old_of_new[q],
                               std::move(word),
                               detail::lift_run(rpp, tr.old_of_new),
                               detail::lift_run(rpq, tr.old_of_new),
                               detail::lift_run(rqq, tr.old_of_new)};
    }
  }
  return res;
}

// --- Classification -------------------------------------------------------------------

enum class AmbiguityClass {
  Unambiguous,
  FinitelyAmbiguous,
  PolynomiallyAmbiguous,
  ExponentiallyAmbiguous,
};

inline const char* to_string(AmbiguityClass c) {
  switch (c) {
    case AmbiguityClass::Unambiguous: return "Unambiguous";
    case AmbiguityClass::FinitelyAmbiguous: return "FinitelyAmbiguous";
    case AmbiguityClass::PolynomiallyAmbiguous: return "PolynomiallyAmbiguous";
    case AmbiguityClass::ExponentiallyAmbiguous: return "ExponentiallyAmbiguous";
  }
  return "?";
}

struct AmbiguityVerdict {
  AmbiguityClass cls = AmbiguityClass::Unambiguous;
  // Exactly one witness is engaged, matching the class:
  std::optional<TwoRunsWitness> two_runs;  // FinitelyAmbiguous
  std::optional<IdaWitness> ida;           // PolynomiallyAmbiguous
  std::optional<EdaWitness> eda;           // ExponentiallyAmbiguous
};

// Four-way classification on the trim part: unambiguous; else finitely
// ambiguous iff no IDA; else polynomially ambiguous iff no EDA; else
// exponentially ambiguous.
inline AmbiguityVerdict classify(const Nfa& a) {
  AmbiguityVerdict v;
  UnambiguityResult u = is_unambiguous(a);
  if (u.unambiguous) return v;
  IdaResult i = has_ida(a);
  if (!i.ida) {
    v.cls = AmbiguityClass::FinitelyAmbiguous;
    v.two_runs = std::move(u.witness);
    return v;
  }
  EdaResult e = has_eda(a);
  if (!e.eda) {
    v.cls = AmbiguityClass::PolynomiallyAmbiguous;
    v.ida = std::move(i.witness);
    return v;
  }
  v.cls = AmbiguityClass::ExponentiallyAmbiguous;
  v.eda = std::move(e.witness);
  return v;
}

inline bool verdict_witness_valid(const Nfa& a, const AmbiguityVerdict& v) {
  switch (v.cls) {
    case AmbiguityClass::Unambiguous:
      return !v.two_runs && !v.ida && !v.eda;
    case AmbiguityClass::FinitelyAmbiguous:
      return v.two_runs && !v.ida && !v.eda && two_runs_witness_valid(a, *v.two_runs);
    case AmbiguityClass::PolynomiallyAmbiguous:
      return !v.two_runs && v.ida && !v.eda && ida_witness_valid(a, *v.ida);
    case AmbiguityClass::ExponentiallyAmbiguous:
      return !v.two_runs && !v.ida && v.eda && eda_witness_valid(a, *v.eda);
  }
  return false;
}

}  // namespace ambidet
