#include <algorithm>
#include <deque>
#include <unordered_map>

#include "imprint/cover.hpp"
#include "imprint/error.hpp"

namespace imprint {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : b) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }
};

bool bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool is_subword(const Word& u, const Word& w) {
  std::size_t i = 0;
  for (Symbol s : w)
    if (i < u.size() && u[i] == s) ++i;
  return i == u.size();
}

}  // namespace

std::size_t default_max_k(const Alphabet& a) noexcept {
  if (a.size() <= 2) return 4;
  if (a.size() == 3) return 3;
  return 2;
}

PieceAutomaton pt_partition(std::size_t k, const Alphabet& a, std::size_t max_states) {
  const std::size_t n = a.size();
  PieceAutomaton pa;
  pa.k = k;
  // universe of words of length <= k, breadth first
  pa.universe.push_back(Word{});
  for (std::size_t i = 0; i < pa.universe.size(); ++i) {
    if (pa.universe[i].size() == k) continue;
    for (Symbol s = 0; s < n; ++s) {
      Word w = pa.universe[i];
      w.push_back(s);
      pa.universe.push_back(std::move(w));
    }
  }
  const std::size_t size = pa.universe.size(), words = (size + 63) / 64;
  // extension table: index of u·s, for |u| < k (children are laid out contiguously)
  std::vector<std::size_t> ext(size * n, size);
  for (std::size_t i = 0, next = 1; i < size; ++i) {
    if (pa.universe[i].size() == k) continue;
    for (Symbol s = 0; s < n; ++s) ext[i * n + s] = next++;
  }

  std::unordered_map<Bits, State, BitsHash> ids;
  Bits start(words, 0);
  set_bit(start, 0);
  ids.emplace(start, 0);
  pa.sets.push_back(start);
  std::vector<State> delta;
  for (State q = 0; q < pa.sets.size(); ++q) {
    for (Symbol s = 0; s < n; ++s) {
      Bits next = pa.sets[q];
      const Bits& cur = pa.sets[q];
      for (std::size_t i = 0; i < size; ++i)
        if (ext[i * n + s] < size && bit(cur, i)) set_bit(next, ext[i * n + s]);
      auto [it, inserted] = ids.emplace(next, static_cast<State>(pa.sets.size()));
      if (inserted) {
        if (pa.sets.size() >= max_states) throw CapExceeded("max-states", max_states, "pt_partition");
        pa.sets.push_back(std::move(next));
      }
      delta.push_back(it->second);
    }
  }
  pa.dfa.alphabet = a;
  pa.dfa.states = pa.sets.size();
  pa.dfa.initial = 0;
  pa.dfa.delta = std::move(delta);
  pa.dfa.accepting.assign(pa.dfa.states, 0);
  return pa;
}

std::vector<Word> PieceAutomaton::pieces_of(State q) const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (bit(sets.at(q), i)) out.push_back(universe[i]);
  return out;
}

Nfa PieceAutomaton::class_of(State q) const {
  Dfa d = dfa;
  d.accepting.assign(d.states, 0);
  d.accepting.at(q) = 1;
  return nfa_trim(d.to_nfa());
}

std::vector<Word> PieceAutomaton::maximal_pieces(State q) const {
  auto all = pieces_of(q);
  std::vector<Word> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j)
      dominated = all[j].size() > all[i].size() && is_subword(all[i], all[j]);
    if (!dominated) out.push_back(all[i]);
  }
  return out;
}

bool is_pt_k(const Nfa& n, std::size_t k, std::size_t max_states) {
  Dfa d = minimize(determinize(n));
  PieceAutomaton pa = pt_partition(k, n.alphabet(), max_states);
  const std::size_t m = n.alphabet().size();
  std::vector<signed char> verdict(pa.size(), -1);
  std::vector<char> seen(pa.size() * d.states, 0);
  std::deque<std::pair<State, State>> queue{{pa.dfa.initial, d.initial}};
  seen[pa.dfa.initial * d.states + d.initial] = 1;
  while (!queue.empty()) {
    auto [q, p] = queue.front();
    queue.pop_front();
    signed char acc = d.accepting[p] ? 1 : 0;
    if (verdict[q] == -1)
      verdict[q] = acc;
    else if (verdict[q] != acc)
      return false;
    for (Symbol s = 0; s < m; ++s) {
      State q2 = pa.dfa.next(q, s), p2 = d.next(p, s);
      if (!seen[q2 * d.states + p2]) {
        seen[q2 * d.states + p2] = 1;
        queue.emplace_back(q2, p2);
      }
    }
  }
  return true;
}

namespace {

Cover partition_cover(const PieceAutomaton& pa, bool optimal) {
  const Alphabet& a = pa.dfa.alphabet;
  Cover c;
  c.cls = ClassId::BSigma1;
  c.target = Nfa::universal(a);
  c.k = pa.k;
  c.optimal = optimal;
  c.provenance = "~" + std::to_string(pa.k) + " partition (" + std::to_string(pa.size()) + " classes)";
  const bool with_regex = pa.size() <= 64;
  for (State q = 0; q < pa.size(); ++q) {
    std::string label = "~" + std::to_string(pa.k) + " class, maximal pieces {";
    auto maximal = pa.maximal_pieces(q);
    for (std::size_t i = 0; i < maximal.size(); ++i)
      label += (i ? "," : "") + (maximal[i].empty() ? std::string("ε") : a.format(maximal[i]));
    label += "}";
    Nfa cls = pa.class_of(q);
    std::optional<Regex> regex;
    if (with_regex) regex = nfa_to_regex(cls, 400);
    c.pieces.push_back(CoverPiece{std::move(cls), std::move(regex), std::move(label)});
  }
  return c;
}

}  // namespace

Cover bsigma1_cover(const RatingMap& rho, const ImprintSet& goal, const BSigma1Options& opts, ImprintSet* achieved) {
  const std::size_t max_k = opts.max_k.value_or(default_max_k(rho.alphabet));
  std::optional<PieceAutomaton> best;
  ImprintSet best_imprint(rho.R);
  bool matched = false;
  for (std::size_t k = 0; k <= max_k; ++k) {
    PieceAutomaton pa;
    try {
      pa = pt_partition(k, rho.alphabet, opts.max_states);
    } catch (const CapExceeded&) {
      if (!best) throw;
      break;
    }
    ImprintSet imprint(rho.R, rm_eval_states(rho, pa.dfa.to_nfa()));
    best = std::move(pa);
    best_imprint = std::move(imprint);
    if (best_imprint == goal) {
      matched = true;
      break;
    }
  }
  if (achieved) *achieved = best_imprint;
  Cover c = partition_cover(*best, matched);
  if (!matched) c.provenance += "; deepening stopped before reaching the optimal imprint";
  return c;
}

}  // namespace imprint
