#pragma once
// Number-theoretic core: arithmetic-progression disjointness via GCD residue
// collisions. Two progressions a + x·b and c + x·d (x ranging over the
// naturals) intersect if and only if a ≡ c modulo gcd(b, d), so disjointness
// of a whole family reduces to residue-set intersections at pairwise GCDs.
// Residue sets modulo every divisor of a step are precomputed by walking the
// divisor lattice top-down, which keeps the total work near-linear in the sum
// of the steps.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>

#include "ambidet/core.hpp"
#include "ambidet/io.hpp"

namespace ambidet {

// --- Instances ---------------------------------------------------------------

struct ProgressionEntry {
  std::int64_t step = 1;               // b_i >= 1
  std::vector<std::int64_t> bases;     // sorted, distinct, each in [0, step)
};

// A family of arithmetic progressions grouped by step: entry i contributes
// one progression a + x·step per base a. Steps are strictly increasing across
// entries; bases within an entry are distinct, so same-step progressions are
// disjoint by construction.
struct ProgressionsInstance {
  std::vector<ProgressionEntry> entries;

  void canonicalize() {
    for (ProgressionEntry& e : entries) {
      std::sort(e.bases.begin(), e.bases.end());
      e.bases.erase(std::unique(e.bases.begin(), e.bases.end()), e.bases.end());
    }
  }

  void validate() const {
    std::int64_t prev = 0;  // steps must exceed this (strictly increasing, >= 1)
    for (const ProgressionEntry& e : entries) {
      if (e.step <= prev)
        throw std::invalid_argument(
            "progressions: steps must be strictly increasing and positive");
      prev = e.step;
      if (!std::is_sorted(e.bases.begin(), e.bases.end()) ||
          std::adjacent_find(e.bases.begin(), e.bases.end()) != e.bases.end())
        throw std::invalid_argument("progressions: bases not sorted/distinct");
      for (std::int64_t a : e.bases)
        if (a < 0 || a >= e.step)
          throw std::invalid_argument("progressions: base out of [0, step)");
    }
  }

  std::int64_t total_steps() const {
    std::int64_t sum = 0;
    for (const ProgressionEntry& e : entries) sum += e.step;
    return sum;
  }

  std::size_t progression_count() const {
    std::size_t n = 0;
    for (const ProgressionEntry& e : entries) n += e.bases.size();
    return n;
  }
};

// --- GCD kernels -------------------------------------------------------------

namespace detail {

// Binary GCD; the hot loop of the pairwise phase.
inline std::uint64_t binary_gcd(std::uint64_t u, std::uint64_t v) {
  if (u == 0) return v;
  if (v == 0) return u;
  int shift = std::countr_zero(u | v);
  u >>= std::countr_zero(u);
  do {
    v >>= std::countr_zero(v);
    if (u > v) std::swap(u, v);
    v -= u;
  } while (v != 0);
  return u << shift;
}

}  // namespace detail

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(detail::binary_gcd(
      static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
}

// Returns (g, x, y) with a·x + b·y = g = gcd(a, b); a, b >= 0. Witness path
// only, so big integers keep it overflow-free for any int64 steps.
inline std::tuple<BigInt, BigInt, BigInt> extended_gcd(BigInt a, BigInt b) {
  BigInt old_r = std::move(a), r = std::move(b);
  BigInt old_x = 1, x = 0, old_y = 0, y = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_x -= q * x;
    std::swap(old_x, x);
    old_y -= q * y;
    std::swap(old_y, y);
  }
  return {std::move(old_r), std::move(old_x), std::move(old_y)};
}

// --- Pairwise test -----------------------------------------------------------

// True iff the progressions a + x·b and c + x·d (x in the naturals) are
// disjoint: they meet iff a ≡ c (mod gcd(b, d)).
inline bool pair_disjoint(std::int64_t a, std::int64_t b, std::int64_t c,
                          std::int64_t d) {
  if (b <= 0 || d <= 0) throw std::invalid_argument("pair_disjoint: steps must be positive");
  std::int64_t p = gcd64(b, d);
  return a % p != c % p;
}

// A common value of two intersecting progressions, rebuilt from a Bézout
// certificate and lifted until it lies in both (v >= max(a, c)).
inline BigInt collision_value(std::int64_t a, std::int64_t b, std::int64_t c,
                              std::int64_t d) {
  auto [g, x, y] = extended_gcd(BigInt(b), BigInt(d));
  (void)y;
  BigInt diff = BigInt(c) - a;
  if (diff % g != 0)
    throw std::logic_error("collision_value: progressions are disjoint");
  BigInt l = BigInt(b) / g * d;  // lcm(b, d)
  BigInt v = BigInt(a) + BigInt(b) * x * (diff / g);
  v %= l;
  if (v < 0) v += l;
  BigInt m = a >= c ? BigInt(a) : BigInt(c);
  if (v < m) v += ((m - v + l - 1) / l) * l;
  return v;
}

// --- Divisor-lattice residue sets ---------------------------------------------

// For A ⊆ [0, N): the reduced set A^(d) = {a mod d : a ∈ A} for every divisor
// d of N.
struct DivisorModSets {
  std::int64_t n = 1;
  std::map<std::int64_t, std::vector<std::int64_t>> sets;  // divisor -> sorted residues

  const std::vector<std::int64_t>& at(std::int64_t d) const {
    auto it = sets.find(d);
    if (it == sets.end())
      throw std::invalid_argument("DivisorModSets: not a divisor of n");
    return it->second;
  }
};

namespace detail {

// Distinct prime factors of n, via a prime sieve up to √n.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  std::vector<char> composite(static_cast<std::size_t>(root) + 1, 0);
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p <= root; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::int64_t q = p * p; q <= root; q += p) composite[q] = 1;
  }
  std::vector<std::int64_t> factors;
  for (std::int64_t p : primes) {
    if (n % p == 0) {
      factors.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) factors.push_back(n);  // one prime factor above √(original n)
  return factors;
}

}  // namespace detail

// Computes A^(d) for every divisor d of N by walking the divisor lattice from
// N downward: each child d = e / p is reduced from an already-computed parent
// e, so the total work is proportional to the sum of all |A^(d)| (at most
// σ₁(N)) times a log factor for the sorting.
inline DivisorModSets precompute_mod_sets(const std::vector<std::int64_t>& A,
                                          std::int64_t N) {
  if (N <= 0) throw std::invalid_argument("precompute_mod_sets: N must be positive");
  DivisorModSets out;
  out.n = N;
  std::vector<std::int64_t> top(A);
  std::sort(top.begin(), top.end());
  top.erase(std::unique(top.begin(), top.end()), top.end());
  if (!top.empty() && (top.front() < 0 || top.back() >= N))
    throw std::invalid_argument("precompute_mod_sets: A not contained in [0, N)");

  std::vector<std::int64_t> primes = detail::prime_factors(N);
  std::vector<std::int64_t> divisors{1};
  {
    std::int64_t rest = N;
    for (std::int64_t p : primes) {
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      std::size_t old = divisors.size();
      std::int64_t pw = 1;
      for (int i = 1; i <= e; ++i) {
        pw *= p;
        for (std::size_t j = 0; j < old; ++j) divisors.push_back(divisors[j] * pw);
      }
    }
  }
  std::sort(divisors.begin(), divisors.end(), std::greater<>());

  out.sets.emplace(N, std::move(top));
  for (std::int64_t e : divisors) {
    auto parent = out.sets.find(e);
    // Every divisor below N is some larger divisor over one prime, so the
    // descending sweep reaches e with its set already filled in.
    for (std::int64_t p : primes) {
      if (e % p != 0) continue;
      std::int64_t d = e / p;
      if (out.sets.count(d)) continue;
      std::vector<std::int64_t> reduced;
      reduced.reserve(parent->second.size());
      for (std::int64_t z : parent->second) reduced.push_back(z % d);
      std::sort(reduced.begin(), reduced.end());
      reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
      out.sets.emplace(d, std::move(reduced));
    }
  }
  return out;
}

// --- Family disjointness -------------------------------------------------------

struct ProgressionRef {
  int entry = 0;           // index into ProgressionsInstance::entries
  std::int64_t base = 0;   // the colliding base within that entry
};

struct ProgressionCollision {
  BigInt value;  // lies in both progressions: value ≡ base (mod step) and value >= base
  ProgressionRef first, second;
};

struct DisjointnessResult {
  bool disjoint = true;
  std::optional<ProgressionCollision> collision;  // engaged iff !disjoint
};

// Decides whether all progressions in the family are pairwise disjoint.
// Same-entry progressions never collide (distinct bases modulo a common
// step), so only cross-entry pairs are examined: entries i < j intersect iff
// their residue sets modulo p = gcd(b_i, b_j) intersect, and those residue
// sets are exactly A_i^(p), A_j^(p) from the divisor-lattice precomputation.
inline DisjointnessResult disjoint_progressions(const ProgressionsInstance& inst) {
  inst.validate();
  DisjointnessResult res;
  int k = static_cast<int>(inst.entries.size());
  if (k < 2) return res;

  std::vector<DivisorModSets> mods;
  mods.reserve(inst.entries.size());
  for (const ProgressionEntry& e : inst.entries)
    mods.push_back(precompute_mod_sets(e.bases, e.step));

  // Residue intersections use one timestamped array indexed by residue
  // (residues are < gcd <= the second-largest step). Steps too large for
  // that allocation fall back to a sorted-merge intersection; both are
  // linear in the residue-set sizes.
  std::int64_t largest = inst.entries.back().step;
  constexpr std::int64_t kStampLimit = 10'000'000;
  std::vector<int> stamp;
  if (largest <= kStampLimit) stamp.assign(static_cast<std::size_t>(largest), 0);
  int ts = 0;

  auto common_residue = [&](const std::vector<std::int64_t>& x,
                            const std::vector<std::int64_t>& y)
      -> std::optional<std::int64_t> {
    if (!stamp.empty()) {
      ++ts;
      for (std::int64_t r : x) stamp[static_cast<std::size_t>(r)] = ts;
      for (std::int64_t r : y)
        if (stamp[static_cast<std::size_t>(r)] == ts) return r;
      return std::nullopt;
    }
    auto ix = x.begin();
    auto iy = y.begin();
    while (ix != x.end() && iy != y.end()) {
      if (*ix == *iy) return *ix;
      if (*ix < *iy)
        ++ix;
      else
        ++iy;
    }
    return std::nullopt;
  };

  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::int64_t p = gcd64(inst.entries[i].step, inst.entries[j].step);
      std::optional<std::int64_t> r = common_residue(mods[i].at(p), mods[j].at(p));
      if (!r) continue;
      auto find_base = [&](const ProgressionEntry& e) {
        for (std::int64_t a : e.bases)
          if (a % p == *r) return a;
        throw std::logic_error("disjoint_progressions: residue set out of sync");
      };
      std::int64_t ai = find_base(inst.entries[i]);
      std::int64_t aj = find_base(inst.entries[j]);
      res.disjoint = false;
      res.collision = ProgressionCollision{
          collision_value(ai, inst.entries[i].step, aj, inst.entries[j].step),
          ProgressionRef{i, ai}, ProgressionRef{j, aj}};
      return res;
    }
  }
  return res;
}

// --- Instrumentation ------------------------------------------------------------

// Exact sum of divisors σ₁(n).
inline std::int64_t sigma1(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sigma1: n must be >= 1");
  std::int64_t result = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::int64_t term = 1, pw = 1;
    while (n % p == 0) {
      n /= p;
      pw *= p;
      term += pw;
    }
    result *= term;
  }
  if (n > 1) result *= 1 + n;
  return result;
}

// Exact number of divisors σ₀(n).
inline std::int64_t sigma0(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sigma0: n must be >= 1");
  std::int64_t result = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result *= e + 1;
  }
  if (n > 1) result *= 2;
  return result;
}

// Σ_{a,b ∈ A} gcd(a, b) over all ordered pairs (diagonal included), exact.
inline std::int64_t gcd_sum(const std::vector<std::int64_t>& A) {
  if (A.empty()) throw std::invalid_argument("gcd_sum: set must be nonempty");
  std::vector<std::int64_t> set(A);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.front() < 1) throw std::invalid_argument("gcd_sum: values must be positive");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    sum += set[i];  // gcd(a, a)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      sum += 2 * gcd64(set[i], set[j]);  // both orders
  }
  return sum;
}

// --- Text format -----------------------------------------------------------------
//
//   prog <step> <base> <base> ...     (one entry per line, steps increasing)
//
// '#' starts a comment; blank lines are skipped. Bases may be empty; they
// must be distinct and lie in [0, step).

inline ProgressionsInstance parse_progressions(std::istream& in) {
  ProgressionsInstance inst;
  std::string line;
  int lineno = 0;
  std::int64_t prev_step = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind != "prog") throw ParseError(lineno, "expected 'prog' record");
    ProgressionEntry e;
    if (!(ss >> e.step) || e.step < 1)
      throw ParseError(lineno, "prog: step must be a positive integer");
    if (e.step <= prev_step)
      throw ParseError(lineno, "prog: steps must be strictly increasing");
    prev_step = e.step;
    std::int64_t a;
    while (ss >> a) {
      if (a < 0 || a >= e.step) throw ParseError(lineno, "prog: base out of [0, step)");
      e.bases.push_back(a);
    }
    if (!ss.eof()) throw ParseError(lineno, "prog: malformed integer");
    std::sort(e.bases.begin(), e.bases.end());
    if (std::adjacent_find(e.bases.begin(), e.bases.end()) != e.bases.end())
      throw ParseError(lineno, "prog: duplicate base");
    inst.entries.push_back(std::move(e));
  }
  inst.validate();
  return inst;
}

inline ProgressionsInstance parse_progressions(const std::string& text) {
  std::istringstream ss(text);
  return parse_progressions(ss);
}

inline std::string serialize(const ProgressionsInstance& inst) {
  std::ostringstream out;
  for (const ProgressionEntry& e : inst.entries) {
    out << "prog " << e.step;
    for (std::int64_t a : e.bases) out << ' ' << a;
    out << '\n';
  }
  return out.str();
}

}  // namespace ambidet
