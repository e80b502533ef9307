#pragma once
// Shared helpers for the test suites: seeded random regexes, a direct
// recursive regex matcher and word enumeration.

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "imprint/alphabet.hpp"
#include "imprint/nfa.hpp"
#include "imprint/regex.hpp"

namespace testsupport {

using imprint::Alphabet;
using imprint::Regex;
using imprint::Symbol;
using imprint::Word;

// Set of end positions reachable by matching r against w from position i.
inline std::set<std::size_t> match_ends(const Regex& r, const Word& w, std::size_t i) {
  using Op = Regex::Op;
  switch (r.op()) {
    case Op::Empty:
      return {};
    case Op::Epsilon:
      return {i};
    case Op::Letter:
      if (i < w.size() && w[i] == r.symbol()) return {i + 1};
      return {};
    case Op::Union: {
      auto a = match_ends(r.left(), w, i);
      auto b = match_ends(r.right(), w, i);
      a.insert(b.begin(), b.end());
      return a;
    }
    case Op::Concat: {
      std::set<std::size_t> out;
      for (auto j : match_ends(r.left(), w, i)) {
        auto b = match_ends(r.right(), w, j);
        out.insert(b.begin(), b.end());
      }
      return out;
    }
    case Op::Star:
    case Op::Plus: {
      std::set<std::size_t> out;
      std::set<std::size_t> frontier{i};
      if (r.op() == Op::Star) out.insert(i);
      std::set<std::size_t> seen{i};
      while (!frontier.empty()) {
        std::set<std::size_t> next;
        for (auto j : frontier)
          for (auto k : match_ends(r.inner(), w, j)) {
            out.insert(k);
            if (seen.insert(k).second) next.insert(k);
          }
        frontier.swap(next);
      }
      return out;
    }
  }
  return {};
}

inline bool matches(const Regex& r, const Word& w) { return match_ends(r, w, 0).count(w.size()) > 0; }

// All words over the first k symbols with length <= n.
inline std::vector<Word> words_upto(std::size_t k, std::size_t n) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

inline Regex random_regex(std::mt19937_64& rng, std::size_t letters, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
  int c = pick(rng);
  if (depth <= 0 || c <= 1) {
    if (c == 0 && std::uniform_int_distribution<int>(0, 5)(rng) == 0) return Regex::epsilon();
    return Regex::letter(static_cast<Symbol>(std::uniform_int_distribution<std::size_t>(0, letters - 1)(rng)));
  }
  switch (c) {
    case 2:
    case 3:
      return Regex::alt(random_regex(rng, letters, depth - 1), random_regex(rng, letters, depth - 1));
    case 4:
    case 5:
      return Regex::cat(random_regex(rng, letters, depth - 1), random_regex(rng, letters, depth - 1));
    case 6:
      return Regex::star(random_regex(rng, letters, depth - 1));
    default:
      return Regex::plus(random_regex(rng, letters, depth - 1));
  }
}

// Random automaton with 1..max_states states; every state has a fair chance of
// being initial or final, each transition is present with probability 2/5.
inline imprint::Nfa random_nfa(std::mt19937_64& rng, const Alphabet& a, std::size_t max_states) {
  std::size_t states = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  imprint::Nfa n(a, states);
  std::bernoulli_distribution coin(0.5), edge(0.4);
  n.set_initial(0);
  for (imprint::State q = 0; q < states; ++q) {
    if (q > 0 && coin(rng)) n.set_initial(q);
    if (coin(rng)) n.set_final(q);
    for (Symbol s = 0; s < a.size(); ++s)
      for (imprint::State r = 0; r < states; ++r)
        if (edge(rng)) n.add_transition(q, s, r);
  }
  return n;
}

inline Word random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_length) {
  Word w(std::uniform_int_distribution<std::size_t>(0, max_length)(rng));
  for (auto& s : w) s = static_cast<Symbol>(std::uniform_int_distribution<std::size_t>(0, letters - 1)(rng));
  return w;
}

inline imprint::Nfa nfa_of(const std::string& text, const Alphabet& a) {
  return imprint::regex_to_nfa(imprint::regex_parse(text, a), a);
}

// u is a scattered subword of v
inline bool is_piece(const Word& u, const Word& v) {
  std::size_t i = 0;
  for (Symbol s : v)
    if (i < u.size() && u[i] == s) ++i;
  return i == u.size();
}

}  // namespace testsupport
