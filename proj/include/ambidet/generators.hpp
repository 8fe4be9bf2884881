#pragma once
// Deterministic random-instance generators shared by property tests, the
// `verify` CLI command and the benchmark harness. All draws go through a
// caller-supplied engine so every suite is reproducible from one seed.

#include <random>

#include "ambidet/core.hpp"
#include "ambidet/progressions.hpp"
#include "ambidet/st_graph.hpp"

namespace ambidet::gen {

using Engine = std::mt19937_64;

inline int uniform_int(Engine& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Engine& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Random NFA with n <= max_states states; transition density tuned so that
// interesting ambiguity structure (shared words, cycles) appears often.
inline Nfa random_nfa(Engine& rng, int max_states, int alphabet_size) {
  Nfa a;
  a.num_states = uniform_int(rng, 1, max_states);
  a.alphabet_size = alphabet_size;
  double density = std::uniform_real_distribution<double>(0.15, 0.5)(rng);
  for (State p = 0; p < a.num_states; ++p)
    for (Symbol s = 0; s < alphabet_size; ++s)
      for (State q = 0; q < a.num_states; ++q)
        if (chance(rng, density)) a.transitions.push_back({p, s, q});
  for (State q = 0; q < a.num_states; ++q) {
    if (chance(rng, 0.35)) a.initial.push_back(q);
    if (chance(rng, 0.35)) a.final.push_back(q);
  }
  if (a.initial.empty()) a.initial.push_back(uniform_int(rng, 0, a.num_states - 1));
  if (a.final.empty()) a.final.push_back(uniform_int(rng, 0, a.num_states - 1));
  a.canonicalize();
  return a;
}

// Random sparse st-graph on up to max_vertices vertices with roughly
// edge_factor * n edges. Not necessarily trim; callers trim as needed.
inline StGraph random_st_graph(Engine& rng, int max_vertices, double edge_factor) {
  StGraph g;
  g.num_vertices = uniform_int(rng, 2, std::max(2, max_vertices));
  g.s = 0;
  g.t = g.num_vertices - 1;
  int target_edges =
      std::max(1, static_cast<int>(edge_factor * g.num_vertices));
  // A random chain s -> ... -> t keeps most instances non-empty after trim.
  for (int v = 0; v + 1 < g.num_vertices; ++v)
    if (chance(rng, 0.8)) g.edges.emplace_back(v, v + 1);
  for (int i = 0; i < target_edges; ++i)
    g.edges.emplace_back(uniform_int(rng, 0, g.num_vertices - 1),
                         uniform_int(rng, 0, g.num_vertices - 1));
  g.canonicalize();
  return g;
}

// Random weighted st-graph with integer weights in [-max_abs_weight, +max_abs_weight].
inline StGraph random_weighted_st_graph(Engine& rng, int max_vertices,
                                        double edge_factor,
                                        std::int64_t max_abs_weight) {
  StGraph g = random_st_graph(rng, max_vertices, edge_factor);
  std::vector<std::int64_t> w(g.edges.size());
  for (auto& x : w)
    x = std::uniform_int_distribution<std::int64_t>(-max_abs_weight,
                                                    max_abs_weight)(rng);
  g.weight = std::move(w);
  return g;
}

// Random word over the automaton's alphabet.
inline Word random_word(Engine& rng, int alphabet_size, int length) {
  Word w(length);
  for (auto& s : w) s = uniform_int(rng, 0, alphabet_size - 1);
  return w;
}

// Random progressions instance with total step size <= max_total_step.
// Small steps make residue collisions common, so both verdicts appear.
inline ProgressionsInstance random_progressions(Engine& rng,
                                                std::int64_t max_total_step) {
  ProgressionsInstance inst;
  int k = uniform_int(rng, 1, 4);
  std::int64_t step = 0, total = 0;
  for (int i = 0; i < k; ++i) {
    step += uniform_int(rng, 1, 6);
    if (total + step > max_total_step) break;
    total += step;
    ProgressionEntry e;
    e.step = step;
    int want = uniform_int(rng, 0, static_cast<int>(std::min<std::int64_t>(step, 4)));
    for (int j = 0; j < want; ++j)
      e.bases.push_back(uniform_int(rng, 0, static_cast<int>(step) - 1));
    std::sort(e.bases.begin(), e.bases.end());
    e.bases.erase(std::unique(e.bases.begin(), e.bases.end()), e.bases.end());
    inst.entries.push_back(std::move(e));
  }
  if (inst.entries.empty()) {
    ProgressionEntry e;
    e.step = 1;
    e.bases = {0};
    inst.entries.push_back(std::move(e));
  }
  return inst;
}

// Guaranteed-disjoint instance: all steps share a modulus M, entry i's bases
// are all ≡ r_i (mod M) with the r_i pairwise distinct. Any cross-entry gcd
// is a multiple of M, so residues never collide; same-entry progressions are
// disjoint automatically. Used by the bench harness for the
// unambiguous-by-construction family.
inline ProgressionsInstance random_disjoint_progressions(Engine& rng, int entries,
                                                         int max_multiplier) {
  ProgressionsInstance inst;
  int M = entries + uniform_int(rng, 0, 2);
  std::vector<int> residues(M);
  for (int i = 0; i < M; ++i) residues[i] = i;
  std::shuffle(residues.begin(), residues.end(), rng);
  std::int64_t mult = 0;
  for (int i = 0; i < entries; ++i) {
    mult += uniform_int(rng, 1, std::max(1, max_multiplier));
    ProgressionEntry e;
    e.step = M * mult;
    int want = uniform_int(rng, 1, static_cast<int>(std::min<std::int64_t>(mult, 3)));
    for (int j = 0; j < want; ++j) {
      std::int64_t q = uniform_int(rng, 0, static_cast<int>(mult) - 1);
      e.bases.push_back(residues[i] + M * q);
    }
    std::sort(e.bases.begin(), e.bases.end());
    e.bases.erase(std::unique(e.bases.begin(), e.bases.end()), e.bases.end());
    inst.entries.push_back(std::move(e));
  }
  return inst;
}

}  // namespace ambidet::gen
