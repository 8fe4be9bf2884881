#pragma once
// Text format for automata.
//
//   # comment lines and blank lines are ignored
//   nfa <num_states> <alphabet_size>
//   initial <id> <id> ...
//   final <id> ...
//   trans <p> <a> <q> [<weight>]
//
// The automaton is weighted iff every `trans` line carries a weight column
// (mixing is a parse error). Duplicate transition triples are deduplicated
// (set semantics); duplicates with conflicting weights are rejected.
// Serialization is deterministic: transitions sorted lexicographically.

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>

#include "ambidet/core.hpp"

namespace ambidet {

class ParseError : public std::runtime_error {
 public:
  int line;
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

struct ParsedAutomaton {
  Nfa nfa;
  std::optional<std::vector<std::int64_t>> weights;  // present iff weighted

  bool weighted() const { return weights.has_value(); }
  WeightedAutomaton weighted_automaton() const {
    if (!weights)
      throw std::invalid_argument("automaton file carries no weights");
    return WeightedAutomaton{nfa, *weights};
  }
};

namespace detail {

inline bool io_next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;   // blank
    if (line[i] == '#') continue;           // comment
    return true;
  }
  return false;
}

inline long long io_int(std::istringstream& ss, int line_no, const char* what) {
  long long x;
  if (!(ss >> x)) throw ParseError(line_no, std::string("expected ") + what);
  return x;
}

inline void io_done(std::istringstream& ss, int line_no) {
  std::string rest;
  if (ss >> rest) throw ParseError(line_no, "unexpected token '" + rest + "'");
}

}  // namespace detail

inline ParsedAutomaton parse_automaton(std::istream& in) {
  ParsedAutomaton out;
  std::vector<std::int64_t> weights;
  bool have_header = false;
  bool any_trans = false, all_weighted = true, any_weighted = false;
  std::string line;
  int line_no = 0;
  while (detail::io_next_line(in, line, line_no)) {
    std::istringstream ss(line);
    std::string kw;
    ss >> kw;
    if (kw == "nfa") {
      if (have_header) throw ParseError(line_no, "duplicate 'nfa' header");
      have_header = true;
      long long n = detail::io_int(ss, line_no, "state count");
      long long sigma = detail::io_int(ss, line_no, "alphabet size");
      detail::io_done(ss, line_no);
      if (n < 0 || n > (1 << 30)) throw ParseError(line_no, "state count out of range");
      if (sigma < 0 || sigma > (1 << 30))
        throw ParseError(line_no, "alphabet size out of range");
      out.nfa.num_states = static_cast<int>(n);
      out.nfa.alphabet_size = static_cast<int>(sigma);
    } else if (kw == "initial" || kw == "final") {
      if (!have_header) throw ParseError(line_no, "'" + kw + "' before 'nfa' header");
      long long q;
      while (ss >> q) {
        if (q < 0 || q >= out.nfa.num_states)
          throw ParseError(line_no, "state id out of range");
        (kw == "initial" ? out.nfa.initial : out.nfa.final)
            .push_back(static_cast<State>(q));
      }
      if (!ss.eof()) throw ParseError(line_no, "expected state id");
    } else if (kw == "trans") {
      if (!have_header) throw ParseError(line_no, "'trans' before 'nfa' header");
      long long p = detail::io_int(ss, line_no, "source state");
      long long a = detail::io_int(ss, line_no, "symbol");
      long long q = detail::io_int(ss, line_no, "target state");
      if (p < 0 || p >= out.nfa.num_states || q < 0 || q >= out.nfa.num_states)
        throw ParseError(line_no, "state id out of range");
      if (a < 0 || a >= out.nfa.alphabet_size)
        throw ParseError(line_no, "symbol out of range");
      long long w = 0;
      bool has_w = static_cast<bool>(ss >> w);
      if (!has_w && !ss.eof()) throw ParseError(line_no, "expected weight");
      if (has_w) detail::io_done(ss, line_no);
      if (any_trans && has_w != any_weighted)
        throw ParseError(line_no,
                         "mixed weighted and unweighted 'trans' lines");
      any_trans = true;
      any_weighted = has_w;
      all_weighted = all_weighted && has_w;
      out.nfa.transitions.push_back({static_cast<State>(p), static_cast<Symbol>(a),
                                     static_cast<State>(q)});
      weights.push_back(w);
    } else {
      throw ParseError(line_no, "unknown record '" + kw + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'nfa' header");
  if (any_trans && all_weighted) {
    WeightedAutomaton wa{out.nfa, weights};
    try {
      wa.canonicalize();
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    out.nfa = wa.nfa;
    out.weights = wa.weight;
  } else {
    out.nfa.canonicalize();
  }
  out.nfa.validate();
  return out;
}

inline ParsedAutomaton parse_automaton(const std::string& text) {
  std::istringstream in(text);
  return parse_automaton(in);
}

namespace detail {

inline void serialize_common(std::ostringstream& os, const Nfa& a) {
  os << "nfa " << a.num_states << ' ' << a.alphabet_size << '\n';
  os << "initial";
  for (State q : a.initial) os << ' ' << q;
  os << '\n';
  os << "final";
  for (State q : a.final) os << ' ' << q;
  os << '\n';
}

}  // namespace detail

inline std::string serialize(const Nfa& a) {
  std::ostringstream os;
  detail::serialize_common(os, a);
  for (const Transition& tr : a.transitions)
    os << "trans " << tr.from << ' ' << tr.sym << ' ' << tr.to << '\n';
  return os.str();
}

inline std::string serialize(const WeightedAutomaton& w) {
  std::ostringstream os;
  detail::serialize_common(os, w.nfa);
  for (size_t i = 0; i < w.nfa.transitions.size(); ++i) {
    const Transition& tr = w.nfa.transitions[i];
    os << "trans " << tr.from << ' ' << tr.sym << ' ' << tr.to << ' ' << w.weight[i]
       << '\n';
  }
  return os.str();
}

}  // namespace ambidet
