#pragma once
// Brute-force reference implementations used by the property tests.
// Deliberately simple and slow, and deliberately independent: nothing here
// shares algorithmic code with the fast decision procedures it checks.

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <tuple>

#include "ambidet/baseline.hpp"  // AmbiguityClass only; no decision code is reused
#include "ambidet/core.hpp"
#include "ambidet/progressions.hpp"
#include "ambidet/reductions.hpp"  // OvInstance/LayeredGraph types only
#include "ambidet/st_graph.hpp"

namespace ambidet {

// --- Walk-length enumeration --------------------------------------------------

// Exact number of s-to-t walks of each length 0..cap.
struct WalkLengthProfile {
  std::vector<BigInt> count;  // count[len]

  bool has_duplicate() const {
    for (const BigInt& c : count)
      if (c >= 2) return true;
    return false;
  }
  // Smallest length with at least two walks, if any.
  std::optional<int> first_duplicate() const {
    for (std::size_t len = 0; len < count.size(); ++len)
      if (count[len] >= 2) return static_cast<int>(len);
    return std::nullopt;
  }
};

// Per-length dynamic program over vertices: counts of walks from s iterated
// cap times. The guard keeps accidental quadratic-and-worse blowups out of
// the test suite; counts grow without overflow (big integers).
inline WalkLengthProfile enumerate_walk_lengths(const StGraph& g, std::int64_t cap) {
  if (g.num_vertices <= 0) throw std::invalid_argument("enumerate_walk_lengths: empty graph");
  if (cap < 0 || cap > 10'000 * static_cast<std::int64_t>(g.num_vertices))
    throw std::invalid_argument("enumerate_walk_lengths: cap exceeds 10^4 * n guard");
  WalkLengthProfile profile;
  std::vector<BigInt> cur(g.num_vertices, 0), nxt;
  cur[g.s] = 1;
  profile.count.push_back(cur[g.t]);
  for (std::int64_t step = 1; step <= cap; ++step) {
    nxt.assign(g.num_vertices, BigInt(0));
    for (auto [u, v] : g.edges) nxt[v] += cur[u];
    cur.swap(nxt);
    profile.count.push_back(cur[g.t]);
  }
  return profile;
}

// --- Progression disjointness ---------------------------------------------------

// Enumerates every pair of progressions (flattened across entries, same-entry
// pairs included) and walks both value sequences up to lcm(b_i, b_j) + the
// larger base. Sound: intersecting progressions share a value in that range,
// since common values form a progression with period lcm and the smallest one
// at or above max(a_i, a_j) is below lcm + max(a_i, a_j).
inline bool naive_dp_disjoint(const ProgressionsInstance& inst) {
  inst.validate();
  if (inst.total_steps() > 1000)
    throw std::invalid_argument("naive_dp_disjoint: total step size exceeds 10^3 cap");
  std::vector<std::pair<std::int64_t, std::int64_t>> progs;  // (base, step)
  for (const ProgressionEntry& e : inst.entries)
    for (std::int64_t a : e.bases) progs.emplace_back(a, e.step);
  for (std::size_t i = 0; i < progs.size(); ++i) {
    for (std::size_t j = i + 1; j < progs.size(); ++j) {
      auto [a, b] = progs[i];
      auto [c, d] = progs[j];
      std::int64_t lcm = b / std::gcd(b, d) * d;
      std::int64_t bound = lcm + std::max(a, c);
      std::int64_t v1 = a, v2 = c;
      while (v1 <= bound && v2 <= bound) {
        if (v1 == v2) return false;
        if (v1 < v2)
          v1 += b;
        else
          v2 += d;
      }
    }
  }
  return true;
}

// --- Twins property -----------------------------------------------------------

// Brute-force twins check for unary weighted automata in st-graph form:
// enumerates every simple cycle of the useful part (each cycle anchored at
// its minimum vertex, DFS over larger-indexed vertices) and compares average
// weights pairwise through cross-products in exact arithmetic. Only cycles of
// length <= word_cap are considered; simple cycles are at most n long, so the
// default cap n makes the answer exact — closed walks decompose into simple
// cycles, hence equal simple-cycle averages force equal averages everywhere.
// Usefulness is recomputed here by fixpoint sweeps over the edge list,
// independent of the library trim.
inline bool naive_twins(const StGraph& g, std::int64_t word_cap = -1) {
  g.validate();
  if (!g.weight) throw std::invalid_argument("naive_twins: graph carries no weights");
  if (g.num_vertices > 15)
    throw std::invalid_argument("naive_twins: n exceeds brute-force cap 15");
  const int n = g.num_vertices;
  if (word_cap < 0) word_cap = n;

  std::vector<char> fwd(n, 0), rev(n, 0);
  fwd[g.s] = 1;
  rev[g.t] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : g.edges) {
      if (fwd[u] && !fwd[v]) {
        fwd[v] = 1;
        changed = true;
      }
      if (rev[v] && !rev[u]) {
        rev[u] = 1;
        changed = true;
      }
    }
  }
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(n);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [u, v] = g.edges[i];
    if (fwd[u] && rev[u] && fwd[v] && rev[v]) adj[u].push_back({v, (*g.weight)[i]});
  }

  std::optional<std::pair<std::int64_t, BigInt>> first;  // (length, total weight)
  std::int64_t steps = 0;
  std::vector<char> on_path(n, 0);
  // Anchored enumeration: cycles are emitted from their minimum vertex, so
  // intermediate vertices stay strictly above the anchor. Returns false as
  // soon as two cycles disagree on average weight.
  auto dfs = [&](auto&& self, int anchor, int v, std::int64_t len, BigInt acc) -> bool {
    if (++steps > 10'000'000)
      throw std::invalid_argument("naive_twins: cycle enumeration exceeds step cap 10^7");
    for (auto [x, wx] : adj[v]) {
      if (x == anchor) {
        if (len + 1 > word_cap) continue;
        BigInt total = acc + wx;
        if (!first) {
          first = {len + 1, std::move(total)};
        } else if (BigInt(first->first) * total != BigInt(len + 1) * first->second) {
          return false;
        }
      } else if (x > anchor && !on_path[x] && len + 1 < word_cap) {
        on_path[x] = 1;
        bool keep = self(self, anchor, x, len + 1, acc + wx);
        on_path[x] = 0;
        if (!keep) return false;
      }
    }
    return true;
  };
  for (int anchor = 0; anchor < n; ++anchor) {
    if (!(fwd[anchor] && rev[anchor])) continue;
    on_path[anchor] = 1;
    bool keep = dfs(dfs, anchor, anchor, 0, BigInt(0));
    on_path[anchor] = 0;
    if (!keep) return false;
  }
  return true;
}

// Brute-force twins check for weighted automata over arbitrary alphabets.
// Sibling pairs are found exactly by breadth-first search over state pairs
// from the initial pairs. For each sibling pair (p, q) whose members both lie
// on cycles, a second breadth-first search over (run-1 state, run-2 state,
// weight difference) triples looks for two same-word cycles at p and q whose
// weights differ, trying cycle words of up to word_cap letters. Every
// reported violation is genuine; the verdict is exact whenever some violating
// pair has a cycle word of at most word_cap letters (the default covers the
// generated round-trip instances). Differences are kept in exact arithmetic.
inline bool naive_twins(const WeightedAutomaton& w, std::int64_t word_cap = 8) {
  w.validate();
  const Nfa& a = w.nfa;
  const int n = a.num_states;
  if (n > 64) throw std::invalid_argument("naive_twins: state count exceeds cap 64");
  if (word_cap < 1) throw std::invalid_argument("naive_twins: word cap must be positive");

  // Outgoing (symbol, target, weight) rows per state, in transition order.
  std::vector<std::vector<std::tuple<Symbol, State, std::int64_t>>> out(n);
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    out[a.transitions[i].from].emplace_back(a.transitions[i].sym, a.transitions[i].to,
                                            w.weight[i]);

  // States lying on some cycle: plain reachability from each state's
  // successors back to itself.
  std::vector<std::vector<State>> succ(n);
  for (const Transition& tr : a.transitions) succ[tr.from].push_back(tr.to);
  std::vector<char> on_cycle(n, 0);
  for (State p = 0; p < n; ++p) {
    std::vector<char> seen(n, 0);
    std::vector<State> stack(succ[p]);
    for (State q : stack) seen[q] = 1;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State r : succ[q])
        if (!seen[r]) {
          seen[r] = 1;
          stack.push_back(r);
        }
    }
    on_cycle[p] = seen[p];
  }

  // Sibling pairs: unordered pairs of states reachable on a common word.
  std::vector<char> pair_seen(static_cast<std::size_t>(n) * n, 0);
  std::deque<std::pair<State, State>> queue;
  auto push_pair = [&](State p, State q) {
    if (p > q) std::swap(p, q);
    std::size_t key = static_cast<std::size_t>(p) * n + q;
    if (!pair_seen[key]) {
      pair_seen[key] = 1;
      queue.push_back({p, q});
    }
  };
  for (State i1 : a.initial)
    for (State i2 : a.initial) push_pair(i1, i2);
  std::vector<std::pair<State, State>> siblings;
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    siblings.push_back({p, q});
    for (auto [s1, t1, w1] : out[p])
      for (auto [s2, t2, w2] : out[q])
        if (s1 == s2) push_pair(t1, t2);
  }

  std::int64_t budget = 10'000'000;
  for (auto [p, q] : siblings) {
    if (!on_cycle[p] || !on_cycle[q]) continue;
    std::set<std::tuple<State, State, BigInt>> seen;
    std::vector<std::tuple<State, State, BigInt>> frontier = {{p, q, BigInt(0)}};
    seen.insert(frontier.front());
    for (std::int64_t depth = 1; depth <= word_cap && !frontier.empty(); ++depth) {
      std::vector<std::tuple<State, State, BigInt>> next;
      for (const auto& [x, y, diff] : frontier) {
        for (auto [s1, t1, w1] : out[x])
          for (auto [s2, t2, w2] : out[y]) {
            if (s1 != s2) continue;
            BigInt nd = diff + w1 - w2;
            if (t1 == p && t2 == q && nd != 0) return false;
            auto node = std::make_tuple(t1, t2, std::move(nd));
            if (seen.insert(node).second) {
              if (--budget < 0)
                throw std::invalid_argument(
                    "naive_twins: pair exploration exceeds step cap 10^7");
              next.push_back(std::move(node));
            }
          }
      }
      frontier = std::move(next);
    }
  }
  return true;
}

// --- Orthogonal vectors ------------------------------------------------------------

// Exhaustive scan over all tuples of one vector per set, testing for a
// coordinate-wise zero in every position.
inline bool naive_ov(const OvInstance& ov) {
  ov.validate();
  if (static_cast<std::int64_t>(ov.n) * ov.k * ov.d > 10'000)
    throw std::invalid_argument("naive_ov: n*k*d exceeds cap 10^4");
  if (ov.n == 0) return false;
  std::int64_t work = 0;
  std::vector<std::uint8_t> conj(static_cast<std::size_t>(ov.d), 1);
  auto scan = [&](auto&& self, int i, const std::vector<std::uint8_t>& acc) -> bool {
    if (i == ov.k) {
      for (std::uint8_t b : acc)
        if (b) return false;
      return true;
    }
    for (const auto& vec : ov.sets[static_cast<std::size_t>(i)]) {
      if ((work += ov.d + 1) > 100'000'000)
        throw std::invalid_argument("naive_ov: tuple enumeration exceeds step cap 10^8");
      std::vector<std::uint8_t> next(acc);
      for (int l = 0; l < ov.d; ++l) next[static_cast<std::size_t>(l)] &= vec[static_cast<std::size_t>(l)];
      if (self(self, i + 1, next)) return true;
    }
    return false;
  };
  return scan(scan, 0, conj);
}

// --- Automaton intersection ----------------------------------------------------------

// Exact emptiness test for the intersection of several automata: breadth-first
// search over tuples of states, one per automaton (exact — no word-length
// cap). The product state space is bounded by max_product_states.
inline bool naive_intersection(const std::vector<Nfa>& as,
                               std::int64_t max_product_states = 1'000'000) {
  if (as.empty()) throw std::invalid_argument("naive_intersection: no automata given");
  std::int64_t product = 1;
  int alphabet = 0;
  for (const Nfa& a : as) {
    a.validate();
    if (a.num_states == 0 || a.initial.empty()) return false;
    product *= a.num_states;
    if (product > max_product_states)
      throw std::invalid_argument("naive_intersection: product state cap exceeded");
    alphabet = std::max(alphabet, a.alphabet_size);
  }
  const int k = static_cast<int>(as.size());
  std::vector<std::int64_t> stride(static_cast<std::size_t>(k));
  std::int64_t acc = 1;
  for (int i = k - 1; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = acc;
    acc *= as[static_cast<std::size_t>(i)].num_states;
  }
  auto index_of = [&](const std::vector<State>& tuple) {
    std::int64_t idx = 0;
    for (int i = 0; i < k; ++i) idx += stride[static_cast<std::size_t>(i)] * tuple[static_cast<std::size_t>(i)];
    return idx;
  };
  auto span = [](const Nfa& a, State q, Symbol s) {
    Transition klo{q, s, std::numeric_limits<State>::min()};
    Transition khi{q, s + 1, std::numeric_limits<State>::min()};
    return std::make_pair(
        std::lower_bound(a.transitions.begin(), a.transitions.end(), klo),
        std::lower_bound(a.transitions.begin(), a.transitions.end(), khi));
  };
  auto all_final = [&](const std::vector<State>& tuple) {
    for (int i = 0; i < k; ++i) {
      const Nfa& a = as[static_cast<std::size_t>(i)];
      if (!std::binary_search(a.final.begin(), a.final.end(), tuple[static_cast<std::size_t>(i)]))
        return false;
    }
    return true;
  };

  std::vector<char> visited(static_cast<std::size_t>(product), 0);
  std::deque<std::vector<State>> queue;
  bool found = false;
  auto visit = [&](const std::vector<State>& tuple) {
    std::int64_t idx = index_of(tuple);
    if (visited[static_cast<std::size_t>(idx)]) return;
    visited[static_cast<std::size_t>(idx)] = 1;
    if (all_final(tuple)) found = true;
    queue.push_back(tuple);
  };
  // Seed with every combination of initial states.
  std::vector<State> tuple(static_cast<std::size_t>(k));
  auto seed = [&](auto&& self, int i) -> void {
    if (i == k) {
      visit(tuple);
      return;
    }
    for (State q : as[static_cast<std::size_t>(i)].initial) {
      tuple[static_cast<std::size_t>(i)] = q;
      self(self, i + 1);
    }
  };
  seed(seed, 0);
  while (!queue.empty() && !found) {
    std::vector<State> cur = std::move(queue.front());
    queue.pop_front();
    for (Symbol s = 0; s < alphabet && !found; ++s) {
      std::vector<std::pair<std::vector<Transition>::const_iterator,
                            std::vector<Transition>::const_iterator>> spans;
      spans.reserve(static_cast<std::size_t>(k));
      bool dead = false;
      for (int i = 0; i < k && !dead; ++i) {
        spans.push_back(span(as[static_cast<std::size_t>(i)], cur[static_cast<std::size_t>(i)], s));
        dead = spans.back().first == spans.back().second;
      }
      if (dead) continue;
      auto expand = [&](auto&& self, int i) -> void {
        if (found) return;
        if (i == k) {
          visit(tuple);
          return;
        }
        for (auto it = spans[static_cast<std::size_t>(i)].first;
             it != spans[static_cast<std::size_t>(i)].second; ++it) {
          tuple[static_cast<std::size_t>(i)] = it->to;
          self(self, i + 1);
        }
      };
      expand(expand, 0);
    }
  }
  return found;
}

// --- Layered cycle search -------------------------------------------------------------

// Depth-first search for a cycle through one vertex per layer in order,
// trying every layer-0 start vertex.
inline bool naive_kcycle(const LayeredGraph& g) {
  g.validate();
  if (static_cast<std::int64_t>(g.edges.size()) > 1000)
    throw std::invalid_argument("naive_kcycle: edge count exceeds cap 10^3");
  std::vector<std::vector<std::vector<int>>> adj(
      static_cast<std::size_t>(g.k),
      std::vector<std::vector<int>>(static_cast<std::size_t>(g.n)));
  for (const LayeredEdge& e : g.edges)
    adj[static_cast<std::size_t>(e.layer)][static_cast<std::size_t>(e.from)].push_back(e.to);
  std::int64_t work = 0;
  auto dfs = [&](auto&& self, int start, int layer, int v) -> bool {
    if (++work > 10'000'000)
      throw std::invalid_argument("naive_kcycle: search exceeds step cap 10^7");
    if (layer == g.k) return v == start;
    for (int t : adj[static_cast<std::size_t>(layer)][static_cast<std::size_t>(v)])
      if (self(self, start, layer + 1, t)) return true;
    return false;
  };
  for (int v = 0; v < g.n; ++v)
    if (dfs(dfs, v, 0, v)) return true;
  return false;
}

// --- Ambiguity classification -----------------------------------------------------

namespace oracle_detail {

// Dense state-set bookkeeping for the brute-force classifier. Everything is
// written against flat boolean tables on purpose: no lazy product maps, no
// Tarjan, no shared helpers with the fast deciders.
struct DenseNfa {
  int n = 0, sigma = 0;
  std::vector<char> trans;  // trans[(s * n + p) * n + q]
  std::vector<char> initial, final, useful;

  bool edge(Symbol s, State p, State q) const {
    return trans[(static_cast<std::size_t>(s) * n + p) * n + q] != 0;
  }
};

inline DenseNfa densify(const Nfa& a) {
  DenseNfa d;
  d.n = a.num_states;
  d.sigma = a.alphabet_size;
  d.trans.assign(static_cast<std::size_t>(d.sigma) * d.n * d.n, 0);
  for (const Transition& t : a.transitions)
    d.trans[(static_cast<std::size_t>(t.sym) * d.n + t.from) * d.n + t.to] = 1;
  d.initial.assign(d.n, 0);
  d.final.assign(d.n, 0);
  for (State i : a.initial) d.initial[i] = 1;
  for (State f : a.final) d.final[f] = 1;

  // Usefulness by fixpoint sweeps (quadratic, independent of the library's
  // BFS-based trim).
  std::vector<char> fwd(d.n, 0), rev(d.n, 0);
  for (State i = 0; i < d.n; ++i) fwd[i] = d.initial[i];
  for (State f = 0; f < d.n; ++f) rev[f] = d.final[f];
  bool changed = true;
  while (changed) {
    changed = false;
    for (Symbol s = 0; s < d.sigma; ++s)
      for (State p = 0; p < d.n; ++p)
        for (State q = 0; q < d.n; ++q)
          if (d.edge(s, p, q)) {
            if (fwd[p] && !fwd[q]) {
              fwd[q] = 1;
              changed = true;
            }
            if (rev[q] && !rev[p]) {
              rev[p] = 1;
              changed = true;
            }
          }
  }
  d.useful.assign(d.n, 0);
  for (State v = 0; v < d.n; ++v) d.useful[v] = fwd[v] && rev[v];
  return d;
}

inline bool dense_ambiguous(const DenseNfa& d) {
  // Flagged ordered pairs (p, q, diverged) over useful states.
  const int n = d.n;
  auto idx = [n](State p, State q, int f) { return (p * n + q) * 2 + f; };
  std::vector<char> seen(static_cast<std::size_t>(n) * n * 2, 0);
  std::vector<int> queue;
  for (State i = 0; i < n; ++i) {
    if (!d.initial[i] || !d.useful[i]) continue;
    for (State j = 0; j < n; ++j) {
      if (!d.initial[j] || !d.useful[j]) continue;
      int f = i != j;
      if (!seen[idx(i, j, f)]) {
        seen[idx(i, j, f)] = 1;
        queue.push_back(idx(i, j, f));
      }
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    int f = v % 2;
    State q = (v / 2) % n, p = (v / 2) / n;
    if (f && d.final[p] && d.final[q]) return true;
    for (Symbol s = 0; s < d.sigma; ++s)
      for (State pp = 0; pp < n; ++pp) {
        if (!d.edge(s, p, pp) || !d.useful[pp]) continue;
        for (State qq = 0; qq < n; ++qq) {
          if (!d.edge(s, q, qq) || !d.useful[qq]) continue;
          int nf = f || pp != qq;
          if (!seen[idx(pp, qq, nf)]) {
            seen[idx(pp, qq, nf)] = 1;
            queue.push_back(idx(pp, qq, nf));
          }
        }
      }
  }
  return false;
}

// Reachable set in the ordered square from (p0, q0), useful states only.
inline std::vector<char> dense_square_reach(const DenseNfa& d, State p0, State q0) {
  const int n = d.n;
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> queue;
  seen[p0 * n + q0] = 1;
  queue.push_back(p0 * n + q0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    State p = queue[head] / n, q = queue[head] % n;
    for (Symbol s = 0; s < d.sigma; ++s)
      for (State pp = 0; pp < n; ++pp) {
        if (!d.edge(s, p, pp) || !d.useful[pp]) continue;
        for (State qq = 0; qq < n; ++qq) {
          if (!d.edge(s, q, qq) || !d.useful[qq]) continue;
          if (!seen[pp * n + qq]) {
            seen[pp * n + qq] = 1;
            queue.push_back(pp * n + qq);
          }
        }
      }
  }
  return seen;
}

inline bool dense_eda(const DenseNfa& d) {
  const int n = d.n;
  for (State q = 0; q < n; ++q) {
    if (!d.useful[q]) continue;
    std::vector<char> from_diag = dense_square_reach(d, q, q);
    for (State x = 0; x < n; ++x)
      for (State y = 0; y < n; ++y) {
        if (x == y || !from_diag[x * n + y]) continue;
        if (dense_square_reach(d, x, y)[q * n + q]) return true;
      }
  }
  return false;
}

inline bool dense_ida(const DenseNfa& d) {
  const int n = d.n;
  for (State p = 0; p < n; ++p) {
    if (!d.useful[p]) continue;
    for (State q = 0; q < n; ++q) {
      if (q == p || !d.useful[q]) continue;
      // Cube reachability (p, p, q) -> (p, q, q).
      auto idx = [n](State x, State y, State z) { return (x * n + y) * n + z; };
      std::vector<char> seen(static_cast<std::size_t>(n) * n * n, 0);
      std::vector<int> queue;
      seen[idx(p, p, q)] = 1;
      queue.push_back(idx(p, p, q));
      bool found = false;
      for (std::size_t head = 0; head < queue.size() && !found; ++head) {
        State x = queue[head] / (n * n), y = (queue[head] / n) % n, z = queue[head] % n;
        for (Symbol s = 0; s < d.sigma && !found; ++s)
          for (State xx = 0; xx < n && !found; ++xx) {
            if (!d.edge(s, x, xx) || !d.useful[xx]) continue;
            for (State yy = 0; yy < n && !found; ++yy) {
              if (!d.edge(s, y, yy) || !d.useful[yy]) continue;
              for (State zz = 0; zz < n && !found; ++zz) {
                if (!d.edge(s, z, zz) || !d.useful[zz]) continue;
                if (!seen[idx(xx, yy, zz)]) {
                  seen[idx(xx, yy, zz)] = 1;
                  queue.push_back(idx(xx, yy, zz));
                  if (xx == p && yy == q && zz == q) found = true;
                }
              }
            }
          }
      }
      if (found) return true;
    }
  }
  return false;
}

}  // namespace oracle_detail

// Brute-force four-way classification over dense product tables. Small
// automata only; used to validate the lazy deciders.
inline AmbiguityClass oracle_classify(const Nfa& a) {
  if (a.num_states > 8)
    throw std::invalid_argument("oracle_classify: n exceeds brute-force cap 8");
  oracle_detail::DenseNfa d = oracle_detail::densify(a);
  bool any_useful = false;
  for (char u : d.useful) any_useful |= u != 0;
  if (!any_useful) return AmbiguityClass::Unambiguous;
  if (!oracle_detail::dense_ambiguous(d)) return AmbiguityClass::Unambiguous;
  if (!oracle_detail::dense_ida(d)) return AmbiguityClass::FinitelyAmbiguous;
  if (!oracle_detail::dense_eda(d)) return AmbiguityClass::PolynomiallyAmbiguous;
  return AmbiguityClass::ExponentiallyAmbiguous;
}

}  // namespace ambidet
