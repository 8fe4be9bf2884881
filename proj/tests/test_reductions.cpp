#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ambidet/baseline.hpp"
#include "ambidet/core.hpp"
#include "ambidet/fixtures.hpp"
#include "ambidet/generators.hpp"
#include "ambidet/oracles.hpp"
#include "ambidet/reductions.hpp"

using namespace ambidet;

namespace {

bool nfa_accepts(const Nfa& a, const Word& w) { return count_runs(a, w) >= 1; }

// Every word over [0, alphabet) of length 0..max_len.
std::vector<Word> all_words(int alphabet, int max_len) {
  std::vector<Word> out = {{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (Symbol c = 0; c < alphabet; ++c) {
        Word w = out[i];
        w.push_back(c);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

// Random complete-enough DFA: single initial state, per (state, symbol) at
// most one transition.
Nfa random_dfa(gen::Engine& rng, int max_states, int alphabet) {
  Nfa a;
  a.num_states = gen::uniform_int(rng, 1, max_states);
  a.alphabet_size = alphabet;
  a.initial = {0};
  for (State q = 0; q < a.num_states; ++q) {
    for (Symbol s = 0; s < alphabet; ++s)
      if (gen::chance(rng, 0.7))
        a.transitions.push_back({q, s, gen::uniform_int(rng, 0, a.num_states - 1)});
    if (gen::chance(rng, 0.35)) a.final.push_back(q);
  }
  if (a.final.empty()) a.final.push_back(gen::uniform_int(rng, 0, a.num_states - 1));
  a.canonicalize();
  return a;
}

OvInstance random_ov(gen::Engine& rng, int k, int max_n, int max_d, double one_density) {
  OvInstance ov;
  ov.k = k;
  ov.n = gen::uniform_int(rng, 1, max_n);
  ov.d = gen::uniform_int(rng, 1, max_d);
  ov.sets.assign(static_cast<std::size_t>(k), {});
  for (auto& set : ov.sets)
    for (int j = 0; j < ov.n; ++j) {
      std::vector<std::uint8_t> vec(static_cast<std::size_t>(ov.d));
      for (auto& b : vec) b = gen::chance(rng, one_density) ? 1 : 0;
      set.push_back(std::move(vec));
    }
  return ov;
}

LayeredGraph random_layers(gen::Engine& rng, int k, int max_n, double density) {
  LayeredGraph g;
  g.k = k;
  g.n = gen::uniform_int(rng, 1, max_n);
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (gen::chance(rng, density)) g.edges.push_back({l, i, j});
  g.canonicalize();
  return g;
}

std::int64_t run_weight(const WeightedAutomaton& w, const Word& word, const Run& run) {
  REQUIRE(is_run(w.nfa, word, run));
  std::int64_t total = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    Transition key{run[i], word[i], run[i + 1]};
    auto it = std::lower_bound(w.nfa.transitions.begin(), w.nfa.transitions.end(), key);
    REQUIRE(it != w.nfa.transitions.end());
    REQUIRE(*it == key);
    total += w.weight[static_cast<std::size_t>(it - w.nfa.transitions.begin())];
  }
  return total;
}

OvInstance parse_ov_str(const std::string& s) {
  std::istringstream in(s);
  return parse_ov_instance(in);
}

LayeredGraph parse_layers_str(const std::string& s) {
  std::istringstream in(s);
  return parse_layered_graph(in);
}

// Letterless automaton with the given initial and final sets.
Nfa letterless(int n, std::vector<State> initial, std::vector<State> final_states) {
  Nfa a;
  a.num_states = n;
  a.alphabet_size = 0;
  a.initial = std::move(initial);
  a.final = std::move(final_states);
  a.canonicalize();
  return a;
}

}  // namespace

TEST_CASE("symbol sets: membership, size, singleton extraction") {
  SymbolSet s = SymbolSet::single(3);
  CHECK(s.contains(3));
  CHECK(!s.contains(2));
  CHECK(!s.contains(4));
  CHECK(s.size() == 1);
  CHECK(s.is_single());
  CHECK(s.symbol() == 3);

  SymbolSet r = SymbolSet::range(2, 6);
  CHECK(r.size() == 4);
  CHECK(r.contains(2));
  CHECK(r.contains(5));
  CHECK(!r.contains(1));
  CHECK(!r.contains(6));
  CHECK(!r.is_single());
  CHECK(!r.empty());
  CHECK_THROWS_AS(r.symbol(), std::logic_error);

  SymbolSet e = SymbolSet::range_excluding(0, 4, 2);
  CHECK(e.size() == 3);
  CHECK(e.contains(0));
  CHECK(e.contains(1));
  CHECK(!e.contains(2));
  CHECK(e.contains(3));

  // Out-of-range exclusions are normalized away.
  CHECK(SymbolSet::range_excluding(0, 4, 7) == SymbolSet::range(0, 4));
  CHECK(SymbolSet::range_excluding(2, 4, 1) == SymbolSet::range(2, 4));

  // Singletons formed by excluding one end of a two-symbol range.
  CHECK(SymbolSet::range_excluding(5, 7, 5).symbol() == 6);
  CHECK(SymbolSet::range_excluding(5, 7, 6).symbol() == 5);

  CHECK(SymbolSet{3, 3, -1}.empty());
  CHECK(SymbolSet::range_excluding(3, 4, 3).empty());
}

TEST_CASE("symbol-set overlap agrees with exhaustive membership") {
  std::vector<SymbolSet> all;
  for (Symbol lo = 0; lo < 6; ++lo)
    for (Symbol hi = lo + 1; hi <= 6; ++hi) {
      all.push_back(SymbolSet::range(lo, hi));
      for (Symbol ex = lo; ex < hi; ++ex)
        all.push_back(SymbolSet::range_excluding(lo, hi, ex));
    }
  for (const SymbolSet& a : all)
    for (const SymbolSet& b : all) {
      bool shared = false;
      for (Symbol c = 0; c < 6; ++c) shared = shared || (a.contains(c) && b.contains(c));
      CAPTURE(a.lo);
      CAPTURE(a.hi);
      CAPTURE(a.excluded);
      CAPTURE(b.lo);
      CAPTURE(b.hi);
      CAPTURE(b.excluded);
      CHECK(symbol_sets_overlap(a, b) == shared);
    }
}

TEST_CASE("gadget validation catches malformed automata") {
  GadgetDfa ok;
  ok.num_states = 3;
  ok.alphabet_size = 6;
  ok.initial = 0;
  ok.final = {2};
  ok.transitions = {{0, SymbolSet::single(1), 1},
                    {0, SymbolSet::range(2, 5), 2},
                    {1, SymbolSet::range_excluding(0, 4, 2), 2},
                    {1, SymbolSet::single(2), 1}};
  ok.canonicalize();
  CHECK_NOTHROW(ok.validate());

  GadgetDfa d = ok;
  d.initial = 3;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.final = {5};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({2, SymbolSet::single(0), 7});
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({2, SymbolSet::range(4, 9), 0});  // beyond the alphabet
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({2, SymbolSet{4, 4, -1}, 0});  // empty range
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({2, SymbolSet{0, 3, 4}, 0});  // exclusion outside range
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({2, SymbolSet::range_excluding(3, 4, 3), 0});  // empties out
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);

  // Overlaps: a symbol duplicated among singles, a single inside a range,
  // and two ranges meeting.
  d = ok;
  d.transitions.push_back({2, SymbolSet::single(0), 0});
  d.transitions.push_back({2, SymbolSet::single(0), 1});
  d.canonicalize();
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({0, SymbolSet::single(3), 0});
  d.canonicalize();
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d = ok;
  d.transitions.push_back({1, SymbolSet::range(3, 6), 0});  // meets [0,4)\{2} at 3
  d.canonicalize();
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  // Non-overlap thanks to the exclusion: {2} against [0,4)\{2} is fine (in ok).

  // Unsorted transition lists are refused outright.
  d = ok;
  std::swap(d.transitions.front(), d.transitions.back());
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("gadget acceptance matches the expanded automaton") {
  GadgetDfa d;
  d.num_states = 3;
  d.alphabet_size = 4;
  d.initial = 0;
  d.final = {2};
  d.transitions = {{0, SymbolSet::range(0, 3), 1},
                   {0, SymbolSet::single(3), 2},
                   {1, SymbolSet::range_excluding(0, 4, 1), 2},
                   {2, SymbolSet::single(0), 2}};
  d.canonicalize();
  Nfa n = gadget_to_nfa(d);
  CHECK(n.num_states == 3);
  CHECK(n.alphabet_size == 4);
  CHECK(n.transitions.size() == 3 + 1 + 3 + 1);
  CHECK(is_deterministic(n));
  for (const Word& w : all_words(4, 3)) {
    CAPTURE(w.size());
    CHECK(gadget_accepts(d, w) == nfa_accepts(n, w));
  }
  CHECK(gadget_accepts(d, {1, 2}));
  CHECK(!gadget_accepts(d, {1, 1}));
  CHECK(gadget_accepts(d, {3, 0, 0}));
  CHECK_THROWS_AS(gadget_accepts(d, {4}), std::invalid_argument);

  GadgetDfa huge;
  huge.num_states = 2;
  huge.alphabet_size = 20'000'000;
  huge.initial = 0;
  huge.final = {1};
  huge.transitions = {{0, SymbolSet::range(0, 20'000'000), 1}};
  CHECK_THROWS_AS(gadget_to_nfa(huge), std::invalid_argument);
}

TEST_CASE("binary encoding: width and word helpers") {
  CHECK(encode_width(1) == 1);
  CHECK(encode_width(2) == 1);
  CHECK(encode_width(3) == 2);
  CHECK(encode_width(4) == 2);
  CHECK(encode_width(5) == 3);
  CHECK(encode_width(8) == 3);
  CHECK(encode_width(9) == 4);
  CHECK(encode_width(16) == 4);
  CHECK(encode_width(17) == 5);
  CHECK(encode_word({5, 4}, 3) == Word{1, 0, 1, 1, 0, 0});
  CHECK(encode_word({1}, 1) == Word{1});
  CHECK(encode_word({}, 4) == Word{});
}

TEST_CASE("binary encoding: shape pins") {
  // Width 1: the structure carries over unchanged.
  GadgetDfa tiny;
  tiny.num_states = 2;
  tiny.alphabet_size = 2;
  tiny.initial = 0;
  tiny.final = {1};
  tiny.transitions = {{0, SymbolSet::single(0), 1}, {1, SymbolSet::single(1), 1}};
  tiny.canonicalize();
  Nfa enc = binary_encode(tiny);
  CHECK(enc.num_states == 2);
  CHECK(enc.transitions == std::vector<Transition>{{0, 0, 1}, {1, 1, 1}});
  CHECK(enc.initial == std::vector<State>{0});
  CHECK(enc.final == std::vector<State>{1});

  // A state with all 8 symbols outgoing: complete depth-3 prefix tree with
  // 2 + 4 = 6 interior states and 2 + 4 + 8 = 14 transitions.
  GadgetDfa fan;
  fan.num_states = 9;
  fan.alphabet_size = 8;
  fan.initial = 0;
  fan.final = {1, 2, 3, 4, 5, 6, 7, 8};
  for (Symbol c = 0; c < 8; ++c) fan.transitions.push_back({0, SymbolSet::single(c), c + 1});
  fan.canonicalize();
  Nfa tree = binary_encode(fan);
  CHECK(tree.num_states == 9 + 6);
  CHECK(tree.transitions.size() == 14);
  CHECK(is_deterministic(tree));
  for (Symbol c = 0; c < 8; ++c) CHECK(nfa_accepts(tree, encode_word({c}, 3)));

  // Set-valued labels are rejected here.
  GadgetDfa wild;
  wild.num_states = 2;
  wild.alphabet_size = 4;
  wild.initial = 0;
  wild.final = {1};
  wild.transitions = {{0, SymbolSet::range(0, 4), 1}};
  CHECK_THROWS_AS(binary_encode(wild), std::invalid_argument);
}

TEST_CASE("binary encoding accepts exactly the codes of accepted words") {
  gen::Engine rng(9311);
  for (int it = 0; it < 30; ++it) {
    CAPTURE(it);
    const int alphabet = gen::uniform_int(rng, 1, 8);
    Nfa a = random_dfa(rng, 6, alphabet);
    GadgetDfa d;
    d.num_states = a.num_states;
    d.alphabet_size = alphabet;
    d.initial = a.initial[0];
    d.final = a.final;
    for (const Transition& tr : a.transitions)
      d.transitions.push_back({tr.from, SymbolSet::single(tr.sym), tr.to});
    d.canonicalize();
    const int h = encode_width(alphabet);
    Nfa enc = binary_encode(d);
    CHECK(is_deterministic(enc));
    // Every binary word up to length 2h + 1: accepted exactly when it is the
    // code of an accepted word (in particular, never at non-multiple lengths
    // or through the dead padding codes of a non-power-of-two alphabet).
    for (const Word& v : all_words(2, 2 * h + 1)) {
      bool expct = false;
      if (v.size() % static_cast<std::size_t>(h) == 0) {
        Word decoded;
        bool in_range = true;
        for (std::size_t at = 0; at < v.size(); at += static_cast<std::size_t>(h)) {
          Symbol val = 0;
          for (int b = 0; b < h; ++b) val = (val << 1) | v[at + static_cast<std::size_t>(b)];
          in_range = in_range && val < alphabet;
          decoded.push_back(val);
        }
        expct = in_range && gadget_accepts(d, decoded);
      }
      CHECK(nfa_accepts(enc, v) == expct);
    }
  }
}

TEST_CASE("wildcard expansion: comparator-chain shape pins") {
  auto one_label = [](int alphabet, SymbolSet label) {
    GadgetDfa d;
    d.num_states = 2;
    d.alphabet_size = alphabet;
    d.initial = 0;
    d.final = {1};
    d.transitions = {{0, label, 1}};
    return d;
  };

  // Full 16-symbol wildcard: one chain of 3 interior states, 8 transitions.
  Nfa wc = expand_wildcards(one_label(16, SymbolSet::range(0, 16)));
  CHECK(wc.num_states == 2 + 3);
  CHECK(wc.transitions.size() == 8);
  CHECK(is_deterministic(wc));

  // 15-of-16 wildcard (all but symbol 9): two parallel chains while the code
  // can still match 9, 6 interior states and 13 transitions in total.
  Nfa awc = expand_wildcards(one_label(16, SymbolSet::range_excluding(0, 16, 9)));
  CHECK(awc.num_states == 2 + 6);
  CHECK(awc.transitions.size() == 13);
  CHECK(is_deterministic(awc));
  for (Symbol c = 0; c < 16; ++c)
    CHECK(nfa_accepts(awc, encode_word({c}, 4)) == (c != 9));

  // Sub-range [0, 2) of an 8-symbol alphabet: a single tight chain.
  Nfa sub = expand_wildcards(one_label(8, SymbolSet::range(0, 2)));
  CHECK(sub.num_states == 2 + 2);
  CHECK(sub.transitions.size() == 4);
  for (Symbol c = 0; c < 8; ++c)
    CHECK(nfa_accepts(sub, encode_word({c}, 3)) == (c < 2));

  // [0, 2) minus 0 is a singleton, expanded through the prefix tree instead.
  Nfa single = expand_wildcards(one_label(8, SymbolSet::range_excluding(0, 2, 0)));
  CHECK(single.num_states == 2 + 2);
  CHECK(single.transitions.size() == 3);
  for (Symbol c = 0; c < 8; ++c)
    CHECK(nfa_accepts(single, encode_word({c}, 3)) == (c == 1));

  // A state mixing a set-valued label with anything else is refused, even
  // when the labels are disjoint.
  GadgetDfa mixed;
  mixed.num_states = 3;
  mixed.alphabet_size = 4;
  mixed.initial = 0;
  mixed.final = {1, 2};
  mixed.transitions = {{0, SymbolSet::range(0, 2), 1}, {0, SymbolSet::single(3), 2}};
  CHECK_THROWS_AS(expand_wildcards(mixed), std::invalid_argument);
  mixed.transitions = {{0, SymbolSet::range(0, 2), 1}, {0, SymbolSet::range(2, 4), 2}};
  CHECK_THROWS_AS(expand_wildcards(mixed), std::invalid_argument);
}

TEST_CASE("wildcard expansion accepts exactly the codes of the label members") {
  for (int h = 1; h <= 4; ++h) {
    for (int alphabet : {(1 << h) - 1, 1 << h}) {
      if (alphabet < 1 || encode_width(alphabet) != h) continue;
      for (Symbol lo = 0; lo < alphabet; ++lo)
        for (Symbol hi = lo + 1; hi <= alphabet; ++hi)
          for (Symbol ex = lo - 1; ex < hi; ++ex) {
            SymbolSet label = ex < lo ? SymbolSet::range(lo, hi)
                                      : SymbolSet::range_excluding(lo, hi, ex);
            if (label.empty()) continue;
            GadgetDfa d;
            d.num_states = 2;
            d.alphabet_size = alphabet;
            d.initial = 0;
            d.final = {1};
            d.transitions = {{0, label, 1}};
            Nfa enc = expand_wildcards(d);
            CAPTURE(h);
            CAPTURE(alphabet);
            CAPTURE(lo);
            CAPTURE(hi);
            CAPTURE(ex);
            CHECK(is_deterministic(enc));
            // Codes of length h decide by membership; any other length fails.
            for (const Word& v : all_words(2, h + 1)) {
              bool expct = false;
              if (static_cast<int>(v.size()) == h) {
                Symbol val = 0;
                for (Symbol b : v) val = (val << 1) | b;
                expct = label.contains(val);
              }
              CHECK(nfa_accepts(enc, v) == expct);
            }
          }
    }
  }
}

TEST_CASE("orthogonal vectors to intersection: worked 2-set example") {
  OvInstance ov = fixtures::orthogonal_pair_ov_instance();
  CHECK_NOTHROW(ov.validate());
  CHECK(ov_code_width(ov) == 3);
  CHECK(ov_alphabet_size(ov) == 7);
  CHECK(ov_vector_letter(ov, 1) == 4);
  CHECK(ov_vector_letter(ov, 3) == 6);
  CHECK(ov_responsibility_letter(ov, 1) == 0);
  CHECK(ov_responsibility_letter(ov, 2) == 1);
  CHECK_THROWS_AS(ov_vector_letter(ov, 0), std::invalid_argument);
  CHECK_THROWS_AS(ov_vector_letter(ov, 4), std::invalid_argument);
  CHECK_THROWS_AS(ov_responsibility_letter(ov, 3), std::invalid_argument);

  std::vector<GadgetDfa> ds = kov_to_kie(ov);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].num_states == 19);
  CHECK(ds[0].transitions.size() == 18);
  CHECK(ds[1].num_states == 17);
  CHECK(ds[1].transitions.size() == 16);

  // The common word spelling the orthogonal pair (second vector of set 1,
  // first of set 2) with responsibilities 1,2,2,1 across the coordinates.
  const Word witness = {5, 4, 0, 1, 1, 0};
  CHECK(gadget_accepts(ds[0], witness));
  CHECK(gadget_accepts(ds[1], witness));
  // Swapping in the all-ones vector breaks it.
  CHECK(!(gadget_accepts(ds[0], {6, 4, 0, 1, 1, 0}) &&
          gadget_accepts(ds[1], {6, 4, 0, 1, 1, 0})));

  CHECK(naive_ov(ov));
  CHECK(naive_intersection({gadget_to_nfa(ds[0]), gadget_to_nfa(ds[1])}));

  const int h = encode_width(ov_alphabet_size(ov));
  CHECK(h == 3);
  std::vector<Nfa> enc = {expand_wildcards(ds[0]), expand_wildcards(ds[1])};
  CHECK(is_deterministic(enc[0]));
  CHECK(is_deterministic(enc[1]));
  CHECK(nfa_accepts(enc[0], encode_word(witness, h)));
  CHECK(nfa_accepts(enc[1], encode_word(witness, h)));
  CHECK(naive_intersection(enc));

  // All-ones vectors everywhere: nothing is orthogonal and the DFAs share no
  // word.
  OvInstance ones = ov;
  for (auto& set : ones.sets)
    for (auto& vec : set) std::fill(vec.begin(), vec.end(), 1);
  CHECK(!naive_ov(ones));
  std::vector<GadgetDfa> dones = kov_to_kie(ones);
  CHECK(!naive_intersection({gadget_to_nfa(dones[0]), gadget_to_nfa(dones[1])}));
}

TEST_CASE("orthogonal-vector reduction matches the exhaustive scan") {
  gen::Engine rng(9312);
  int found = 0, missing = 0;
  for (int it = 0; it < 70; ++it) {
    CAPTURE(it);
    const int k = 2 + (it % 2);
    OvInstance ov = random_ov(rng, k, 4, 4, (it / 2) % 2 ? 0.85 : 0.3);
    const bool expct = naive_ov(ov);
    std::vector<GadgetDfa> ds = kov_to_kie(ov);
    std::vector<Nfa> as;
    for (const GadgetDfa& d : ds) as.push_back(gadget_to_nfa(d));
    CHECK(naive_intersection(as) == expct);
    if (it % 3 == 0) {
      std::vector<Nfa> enc;
      for (const GadgetDfa& d : ds) enc.push_back(expand_wildcards(d));
      CHECK(naive_intersection(enc) == expct);
    }
    ++(expct ? found : missing);
  }
  CHECK(found >= 15);
  CHECK(missing >= 15);
}

TEST_CASE("layered-cycle search to intersection: worked 3-layer example") {
  LayeredGraph g = fixtures::three_layer_cycle_graph();
  CHECK(naive_kcycle(g));
  auto [d1, d2] = kcycle_to_2ie(g);
  CHECK(d1.num_states == 9);
  CHECK(d1.transitions.size() == 8);
  CHECK(d2.num_states == 9);
  CHECK(d2.transitions.size() == 8);

  const Word cyc = {1, 1, 0, 1};
  CHECK(gadget_accepts(d1, cyc));
  CHECK(gadget_accepts(d2, cyc));
  // The graph has exactly one layer-ordered cycle, so that word is the only
  // common one (checked exhaustively through length 5).
  for (const Word& v : all_words(2, 5)) {
    bool common = gadget_accepts(d1, v) && gadget_accepts(d2, v);
    CHECK(common == (v == cyc));
  }
  CHECK(naive_intersection({gadget_to_nfa(d1), gadget_to_nfa(d2)}));

  LayeredGraph edgeless;
  edgeless.k = 3;
  edgeless.n = 2;
  CHECK(!naive_kcycle(edgeless));
  auto [e1, e2] = kcycle_to_2ie(edgeless);
  CHECK(!naive_intersection({gadget_to_nfa(e1), gadget_to_nfa(e2)}));
}

TEST_CASE("layered-cycle reduction matches the cycle search on random graphs") {
  gen::Engine rng(9313);
  int cyclic = 0, acyclic = 0;
  for (int it = 0; it < 90; ++it) {
    CAPTURE(it);
    const int k = 1 + (it % 3);
    LayeredGraph g = random_layers(rng, k, 4, 0.15 + 0.25 * (it % 3));
    const bool expct = naive_kcycle(g);
    auto [d1, d2] = kcycle_to_2ie(g);
    CHECK(naive_intersection({gadget_to_nfa(d1), gadget_to_nfa(d2)}) == expct);
    if (it % 4 == 0) {
      CHECK(naive_intersection({expand_wildcards(d1), expand_wildcards(d2)}) == expct);
    }
    ++(expct ? cyclic : acyclic);
  }
  CHECK(cyclic >= 20);
  CHECK(acyclic >= 20);
}

TEST_CASE("pairing two deterministic automata turns shared words into double runs") {
  Nfa d1;  // a a*
  d1.num_states = 2;
  d1.alphabet_size = 2;
  d1.initial = {0};
  d1.final = {1};
  d1.transitions = {{0, 0, 1}, {1, 0, 1}};
  d1.canonicalize();
  Nfa d2 = d1;  // b b*
  d2.transitions = {{0, 1, 1}, {1, 1, 1}};
  d2.canonicalize();

  Nfa u = ie2_to_unambiguity(d1, d2);
  CHECK(u.num_states == 4);
  CHECK(u.alphabet_size == 2);
  CHECK(u.initial == std::vector<State>{0, 2});
  CHECK(u.final == std::vector<State>{1, 3});
  CHECK(is_unambiguous(u).unambiguous);  // the languages are disjoint

  Nfa uu = ie2_to_unambiguity(d1, d1);  // same language twice
  UnambiguityResult r = is_unambiguous(uu);
  REQUIRE(!r.unambiguous);
  REQUIRE(r.witness.has_value());
  CHECK(two_runs_witness_valid(uu, *r.witness));
  CHECK(count_runs(uu, {0}) == 2);

  CHECK_THROWS_AS(ie2_to_unambiguity(fixtures::third_from_end_nfa(), d1),
                  std::invalid_argument);

  // Chained from the layered-cycle example: the unique common word gets
  // exactly two runs in the union.
  auto [g1, g2] = kcycle_to_2ie(fixtures::three_layer_cycle_graph());
  Nfa c = ie2_to_unambiguity(gadget_to_nfa(g1), gadget_to_nfa(g2));
  CHECK(count_runs(c, {1, 1, 0, 1}) == 2);
  CHECK(!is_unambiguous(c).unambiguous);
}

TEST_CASE("union ambiguity agrees with language intersection on random DFA pairs") {
  gen::Engine rng(9314);
  int meet = 0, disjoint = 0;
  for (int it = 0; it < 120; ++it) {
    CAPTURE(it);
    Nfa d1 = random_dfa(rng, 5, 2), d2 = random_dfa(rng, 5, 2);
    const bool inter = naive_intersection({d1, d2});
    Nfa u = ie2_to_unambiguity(d1, d2);
    UnambiguityResult r = is_unambiguous(u);
    CHECK(r.unambiguous == !inter);
    if (r.witness) CHECK(two_runs_witness_valid(u, *r.witness));
    ++(inter ? meet : disjoint);
  }
  CHECK(meet >= 25);
  CHECK(disjoint >= 25);
}

TEST_CASE("ambiguity becomes exponential ambiguity through the cycle-closing symbol") {
  // Trim inputs in normal form gain exactly one transition and one symbol.
  Nfa f = fixtures::forked_runs_nfa();
  Nfa e = unambiguity_to_eda(f);
  CHECK(e.num_states == f.num_states);
  CHECK(e.alphabet_size == f.alphabet_size + 1);
  CHECK(e.transitions.size() == f.transitions.size() + 1);
  EdaResult r = has_eda(e);
  REQUIRE(r.eda);
  CHECK(eda_witness_valid(e, *r.witness));

  Nfa t = fixtures::third_from_end_nfa();
  Nfa et = unambiguity_to_eda(t);
  CHECK(et.num_states == t.num_states);
  CHECK(et.alphabet_size == t.alphabet_size + 1);
  CHECK(et.transitions.size() == t.transitions.size() + 1);
  CHECK(!has_eda(et).eda);

  // Letterless degenerates: two shared initial-final states mean two runs on
  // the empty word; at most one shared state is unambiguous.
  Nfa two = letterless(2, {0, 1}, {0, 1});
  REQUIRE(!is_unambiguous(two).unambiguous);
  CHECK(has_eda(unambiguity_to_eda(two)).eda);
  Nfa one = letterless(2, {0, 1}, {1});
  REQUIRE(is_unambiguous(one).unambiguous);
  CHECK(!has_eda(unambiguity_to_eda(one)).eda);
  Nfa none = letterless(1, {0}, {});
  CHECK(!has_eda(unambiguity_to_eda(none)).eda);
}

TEST_CASE("exponential-ambiguity reduction is exact on random automata") {
  gen::Engine rng(9315);
  int ambiguous = 0, unambiguous = 0;
  for (int it = 0; it < 150; ++it) {
    CAPTURE(it);
    Nfa a = gen::random_nfa(rng, 5, 2);
    const bool two_runs = !is_unambiguous(a).unambiguous;
    Nfa e = unambiguity_to_eda(a);
    EdaResult r = has_eda(e);
    CHECK(r.eda == two_runs);
    if (r.eda) CHECK(eda_witness_valid(e, *r.witness));
    ++(two_runs ? ambiguous : unambiguous);
  }
  CHECK(ambiguous >= 30);
  CHECK(unambiguous >= 30);
}

TEST_CASE("triple intersection to infinite ambiguity: worked chain example") {
  std::vector<GadgetDfa> ds = fixtures::shared_word_dfa_triple();
  REQUIRE(ds.size() == 3);
  Nfa out = ie3_to_ida(gadget_to_nfa(ds[0]), gadget_to_nfa(ds[1]), gadget_to_nfa(ds[2]));
  CHECK(out.num_states == 11);
  CHECK(out.transitions.size() == 12);
  CHECK(out.alphabet_size == 3);
  CHECK(out.initial == std::vector<State>{9});
  CHECK(out.final == std::vector<State>{10});

  // On $ a a # (with $ = 1, # = 2): a loop at s through copy 1, a bridge
  // s -> t through copy 2, a loop at t through copy 3.
  const Word w = {1, 0, 0, 2};
  CHECK(is_run(out, w, {9, 0, 1, 2, 9}));
  CHECK(is_run(out, w, {9, 3, 4, 5, 10}));
  CHECK(is_run(out, w, {10, 6, 7, 8, 10}));

  IdaResult r = has_ida(out);
  REQUIRE(r.ida);
  CHECK(ida_witness_valid(out, *r.witness));

  CHECK_THROWS_AS(
      ie3_to_ida(fixtures::third_from_end_nfa(), gadget_to_nfa(ds[1]), gadget_to_nfa(ds[2])),
      std::invalid_argument);
}

TEST_CASE("infinite-ambiguity reduction agrees with the triple intersection") {
  gen::Engine rng(9316);
  int meet = 0, disjoint = 0;
  for (int it = 0; it < 80; ++it) {
    CAPTURE(it);
    Nfa d1 = random_dfa(rng, 4, 2), d2 = random_dfa(rng, 4, 2), d3 = random_dfa(rng, 4, 2);
    const bool inter = naive_intersection({d1, d2, d3});
    Nfa out = ie3_to_ida(d1, d2, d3);
    IdaResult r = has_ida(out);
    CHECK(r.ida == inter);
    if (r.ida) CHECK(ida_witness_valid(out, *r.witness));
    ++(inter ? meet : disjoint);
  }
  CHECK(meet >= 15);
  CHECK(disjoint >= 15);
}

TEST_CASE("ambiguity becomes a twins violation: worked example") {
  Nfa f = fixtures::forked_runs_nfa();
  WeightedAutomaton w = unambiguity_to_twins(f);
  CHECK(w.nfa.num_states == 12);
  CHECK(w.nfa.transitions.size() == 20);
  CHECK(w.nfa.alphabet_size == 4);
  CHECK(w.nfa.initial == std::vector<State>{0});
  CHECK(w.nfa.final == std::vector<State>{0});

  // The two runs of the input on "aba" become same-word cycles at the
  // sibling states 10 and 11 whose weights differ (ranks 1 vs 2 of the
  // nondeterministic b-step out of the fork).
  const Word cyc = {0, 3, 0, 2, 1};
  CHECK(run_weight(w, cyc, {10, 11, 0, 1, 5, 10}) == 1);
  CHECK(run_weight(w, cyc, {11, 11, 0, 1, 5, 11}) == 2);
  CHECK(!naive_twins(w));

  // An unambiguous input (already in normal form): 3n states,
  // 3m + n + 1 transitions, two fresh symbols, and the twins property.
  Nfa t = fixtures::third_from_end_nfa();
  WeightedAutomaton wt = unambiguity_to_twins(t);
  CHECK(wt.nfa.num_states == 3 * t.num_states);
  CHECK(wt.nfa.transitions.size() == 3 * t.transitions.size() + t.num_states + 1);
  CHECK(wt.nfa.alphabet_size == t.alphabet_size + 2);
  CHECK(naive_twins(wt));

  // Deterministic inputs give all-rank-1 weights: always twins.
  Nfa det;
  det.num_states = 2;
  det.alphabet_size = 2;
  det.initial = {0};
  det.final = {1};
  det.transitions = {{0, 0, 1}, {1, 1, 0}, {1, 0, 1}};
  det.canonicalize();
  CHECK(naive_twins(unambiguity_to_twins(det)));

  // Letterless degenerates.
  CHECK(!naive_twins(unambiguity_to_twins(letterless(2, {0, 1}, {0, 1}))));
  CHECK(naive_twins(unambiguity_to_twins(letterless(2, {0, 1}, {1}))));
  CHECK(naive_twins(unambiguity_to_twins(letterless(1, {0}, {}))));
}

TEST_CASE("twins reduction round-trip on random automata") {
  gen::Engine rng(9317);
  int ambiguous = 0, unambiguous = 0;
  for (int it = 0; it < 140; ++it) {
    CAPTURE(it);
    Nfa a = gen::random_nfa(rng, 5, 2);
    WeightedAutomaton w = unambiguity_to_twins(a);
    UnambiguityResult r = is_unambiguous(normalize(a));
    if (r.unambiguous) {
      // No violation exists at all, so any word cap gives the exact verdict.
      CHECK(naive_twins(w));
      ++unambiguous;
    } else {
      // The shortest double-run word closes a violating cycle of exactly
      // |word| + 2 letters, so that cap makes the oracle exact here.
      const std::int64_t cap = static_cast<std::int64_t>(r.witness->word.size()) + 2;
      CHECK(!naive_twins(w, std::max<std::int64_t>(8, cap)));
      ++ambiguous;
    }
  }
  CHECK(ambiguous >= 30);
  CHECK(unambiguous >= 30);
}

TEST_CASE("weighted twins oracle: sibling gadget truth table and caps") {
  for (std::int64_t x1 : {0, 2})
    for (std::int64_t x2 : {0, 2})
      for (std::int64_t y1 : {-1, 0, 2})
        for (std::int64_t y2 : {-1, 0, 2}) {
          CAPTURE(x1);
          CAPTURE(x2);
          CAPTURE(y1);
          CAPTURE(y2);
          CHECK(naive_twins(fixtures::sibling_pair_wfa(x1, x2, y1, y2)) == (y1 == y2));
        }

  // Two 3-cycles from two initial states, weights 1 vs 0: invisible below
  // word cap 3 and caught from there on.
  WeightedAutomaton tri;
  tri.nfa.num_states = 6;
  tri.nfa.alphabet_size = 1;
  tri.nfa.initial = {0, 1};
  tri.nfa.final = {0};
  tri.nfa.transitions = {{0, 0, 2}, {2, 0, 3}, {3, 0, 0},
                         {1, 0, 4}, {4, 0, 5}, {5, 0, 1}};
  tri.weight = {1, 0, 0, 0, 0, 0};
  tri.canonicalize();
  CHECK(naive_twins(tri, 1));
  CHECK(naive_twins(tri, 2));
  CHECK(!naive_twins(tri, 3));
  CHECK(!naive_twins(tri));

  WeightedAutomaton big;
  big.nfa.num_states = 65;
  big.nfa.alphabet_size = 1;
  big.nfa.initial = {0};
  big.nfa.final = {0};
  CHECK_THROWS_AS(naive_twins(big), std::invalid_argument);
  CHECK_THROWS_AS(naive_twins(fixtures::sibling_pair_wfa(0, 0, 0, 0), 0),
                  std::invalid_argument);
}

TEST_CASE("exhaustive orthogonal-vector scan: pins and caps") {
  CHECK(naive_ov(fixtures::orthogonal_pair_ov_instance()));

  OvInstance none;
  none.k = 2;
  none.n = 0;
  none.d = 3;
  none.sets = {{}, {}};
  CHECK(!naive_ov(none));

  // Dimension 0: any tuple is vacuously orthogonal.
  OvInstance flat;
  flat.k = 2;
  flat.n = 1;
  flat.d = 0;
  flat.sets = {{{}}, {{}}};
  CHECK(naive_ov(flat));

  OvInstance big;
  big.k = 2;
  big.n = 100;
  big.d = 51;
  big.sets.assign(2, std::vector<std::vector<std::uint8_t>>(
                         100, std::vector<std::uint8_t>(51, 1)));
  CHECK_THROWS_AS(naive_ov(big), std::invalid_argument);

  OvInstance bad = fixtures::orthogonal_pair_ov_instance();
  bad.sets[0].pop_back();
  CHECK_THROWS_AS(naive_ov(bad), std::invalid_argument);
}

TEST_CASE("product emptiness oracle: pins, seeds and caps") {
  Nfa odd;  // odd number of a's
  odd.num_states = 2;
  odd.alphabet_size = 1;
  odd.initial = {0};
  odd.final = {1};
  odd.transitions = {{0, 0, 1}, {1, 0, 0}};
  odd.canonicalize();
  Nfa even = odd;  // even number (including zero)
  even.final = {0};
  even.canonicalize();

  CHECK(!naive_intersection({odd, even}));
  CHECK(naive_intersection({odd, odd}));
  CHECK(naive_intersection({even, even}));

  Nfa third;  // multiples of three
  third.num_states = 3;
  third.alphabet_size = 1;
  third.initial = {0};
  third.final = {0};
  third.transitions = {{0, 0, 1}, {1, 0, 2}, {2, 0, 0}};
  third.canonicalize();
  CHECK(naive_intersection({odd, third}));         // words of length 3
  CHECK(naive_intersection({even, third}));        // length 0 (both accept it)
  CHECK(naive_intersection({odd, even, third}) == false);

  // The empty word is found in the seed tuples themselves.
  Nfa eps;
  eps.num_states = 1;
  eps.alphabet_size = 1;
  eps.initial = {0};
  eps.final = {0};
  eps.canonicalize();
  CHECK(naive_intersection({eps, eps, eps}));

  // Nondeterministic members are fine.
  CHECK(naive_intersection({fixtures::third_from_end_nfa(), fixtures::two_branch_nfa()}));

  Nfa hollow;  // no states at all
  hollow.alphabet_size = 1;
  CHECK(!naive_intersection({odd, hollow}));
  Nfa unentered;  // states but no initial one
  unentered.num_states = 2;
  unentered.alphabet_size = 1;
  unentered.final = {1};
  unentered.transitions = {{0, 0, 1}};
  unentered.canonicalize();
  CHECK(!naive_intersection({unentered}));

  CHECK_THROWS_AS(naive_intersection({}), std::invalid_argument);
  CHECK_THROWS_AS(naive_intersection({odd, even}, 3), std::invalid_argument);
}

TEST_CASE("layered cycle oracle: pins and caps") {
  CHECK(naive_kcycle(fixtures::three_layer_cycle_graph()));

  LayeredGraph edgeless;
  edgeless.k = 3;
  edgeless.n = 2;
  CHECK(!naive_kcycle(edgeless));

  LayeredGraph loop;  // one layer: a cycle is a self-loop
  loop.k = 1;
  loop.n = 2;
  loop.edges = {{0, 0, 1}, {0, 1, 0}};
  CHECK(!naive_kcycle(loop));
  loop.edges.push_back({0, 1, 1});
  loop.canonicalize();
  CHECK(naive_kcycle(loop));

  LayeredGraph big;
  big.k = 1;
  big.n = 32;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) big.edges.push_back({0, i, j});
  CHECK_THROWS_AS(naive_kcycle(big), std::invalid_argument);
}

TEST_CASE("orthogonal-vector file format round-trips") {
  OvInstance ov = fixtures::orthogonal_pair_ov_instance();
  std::ostringstream os;
  write_ov_instance(os, ov);
  OvInstance back = parse_ov_str(os.str());
  CHECK(back.k == ov.k);
  CHECK(back.n == ov.n);
  CHECK(back.d == ov.d);
  CHECK(back.sets == ov.sets);

  OvInstance one = parse_ov_str("# header comment\n\nov 1 1 2\n  # indented comment\n01\n");
  CHECK(one.k == 1);
  CHECK(one.sets[0][0] == std::vector<std::uint8_t>{0, 1});

  CHECK_THROWS_AS(parse_ov_str(""), ParseError);
  CHECK_THROWS_AS(parse_ov_str("xx 1 1 1\n0"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 1 1 2 9\n00\n"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 1 1 2\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 1 1 2\n0x\n"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 1 2 2\n00\n"), ParseError);
  CHECK_THROWS_AS(parse_ov_str("ov 1 1 2\n00\n11\n"), ParseError);
}

TEST_CASE("layered-graph file format round-trips") {
  LayeredGraph g = fixtures::three_layer_cycle_graph();
  std::ostringstream os;
  write_layered_graph(os, g);
  LayeredGraph back = parse_layers_str(os.str());
  CHECK(back.k == g.k);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);

  // Duplicate edge lines collapse; comments and blanks are skipped.
  LayeredGraph two = parse_layers_str("layers 2 1\n# c\nedge 0 0 0\n\nedge 0 0 0\nedge 1 0 0\n");
  CHECK(two.edges.size() == 2);
  CHECK(naive_kcycle(two));

  CHECK_THROWS_AS(parse_layers_str(""), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layer 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 2\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 2 1\nedge 2 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 2 1\nedge 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 2 1\nedge 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 2 1\nedge 0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_layers_str("layers 2 1\nvertex 0\n"), ParseError);
}

TEST_CASE("full reduction chains on random instances") {
  gen::Engine rng(9318);
  int found = 0, missing = 0;
  for (int it = 0; it < 40; ++it) {
    CAPTURE(it);
    OvInstance ov = random_ov(rng, 2, 3, 3, it % 2 ? 0.65 : 0.3);
    const bool expct = naive_ov(ov);
    std::vector<GadgetDfa> ds = kov_to_kie(ov);
    Nfa n1 = expand_wildcards(ds[0]), n2 = expand_wildcards(ds[1]);
    CHECK(naive_intersection({n1, n2}) == expct);
    Nfa u = ie2_to_unambiguity(n1, n2);
    CHECK(!is_unambiguous(u).unambiguous == expct);
    CHECK(has_eda(unambiguity_to_eda(u)).eda == expct);
    ++(expct ? found : missing);
  }
  CHECK(found >= 8);
  CHECK(missing >= 8);

  for (int it = 0; it < 25; ++it) {
    CAPTURE(it);
    OvInstance ov = random_ov(rng, 3, 3, 3, it % 2 ? 0.7 : 0.3);
    const bool expct = naive_ov(ov);
    std::vector<GadgetDfa> ds = kov_to_kie(ov);
    Nfa out = ie3_to_ida(gadget_to_nfa(ds[0]), gadget_to_nfa(ds[1]), gadget_to_nfa(ds[2]));
    CHECK(has_ida(out).ida == expct);
  }
}
