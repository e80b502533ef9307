#include "imprint/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "imprint/error.hpp"

namespace imprint {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using StateSet = std::vector<std::uint64_t>;

void set_bit(StateSet& s, State q) { s[q / 64] |= std::uint64_t{1} << (q % 64); }
bool get_bit(const StateSet& s, State q) { return s[q / 64] >> (q % 64) & 1u; }

}  // namespace

void require_same_alphabet(const Nfa& a, const Nfa& b, const char* where) {
  if (a.alphabet() != b.alphabet())
    throw InputError(std::string(where) + ": alphabet mismatch ('" + a.alphabet().symbols() + "' vs '" +
                     b.alphabet().symbols() + "')");
}

Nfa::Nfa(Alphabet alphabet, std::size_t states)
    : alphabet_(std::move(alphabet)),
      initial_(states, 0),
      final_(states, 0),
      delta_(states * alphabet_.size()) {}

State Nfa::add_state() {
  initial_.push_back(0);
  final_.push_back(0);
  delta_.resize(delta_.size() + alphabet_.size());
  return static_cast<State>(initial_.size() - 1);
}

void Nfa::add_transition(State from, Symbol symbol, State to) {
  if (from >= state_count() || to >= state_count() || symbol >= alphabet_.size())
    throw InputError("transition out of range");
  auto& succ = delta_[from * alphabet_.size() + symbol];
  if (std::find(succ.begin(), succ.end(), to) == succ.end()) succ.push_back(to);
}

std::vector<State> Nfa::initials() const {
  std::vector<State> out;
  for (State q = 0; q < state_count(); ++q)
    if (initial_[q]) out.push_back(q);
  return out;
}

std::vector<State> Nfa::finals() const {
  std::vector<State> out;
  for (State q = 0; q < state_count(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

std::size_t Nfa::transition_count() const {
  std::size_t n = 0;
  for (const auto& s : delta_) n += s.size();
  return n;
}

bool Nfa::accepts(const Word& w) const {
  std::vector<char> cur(initial_.begin(), initial_.end());
  std::vector<char> nxt(state_count());
  for (Symbol a : w) {
    std::fill(nxt.begin(), nxt.end(), 0);
    bool any = false;
    for (State q = 0; q < state_count(); ++q)
      if (cur[q])
        for (State r : successors(q, a)) nxt[r] = any = true;
    if (!any) return false;
    cur.swap(nxt);
  }
  for (State q = 0; q < state_count(); ++q)
    if (cur[q] && final_[q]) return true;
  return false;
}

Nfa Nfa::empty_language(const Alphabet& a) {
  Nfa n(a, 1);
  n.set_initial(0);
  return n;
}

Nfa Nfa::epsilon_only(const Alphabet& a) {
  Nfa n(a, 1);
  n.set_initial(0);
  n.set_final(0);
  return n;
}

Nfa Nfa::universal(const Alphabet& a) {
  Nfa n = epsilon_only(a);
  for (Symbol s = 0; s < a.size(); ++s) n.add_transition(0, s, 0);
  return n;
}

Nfa Nfa::single_word(const Alphabet& a, const Word& w) {
  Nfa n(a, w.size() + 1);
  n.set_initial(0);
  for (std::size_t i = 0; i < w.size(); ++i) n.add_transition(i, w[i], i + 1);
  n.set_final(w.size());
  return n;
}

Nfa Nfa::containing_letter(const Alphabet& a, Symbol s) {
  Nfa n(a, 2);
  n.set_initial(0);
  n.set_final(1);
  for (Symbol b = 0; b < a.size(); ++b) {
    n.add_transition(0, b, 0);
    n.add_transition(1, b, 1);
  }
  n.add_transition(0, s, 1);
  return n;
}

nlohmann::json Nfa::to_json() const {
  nlohmann::json j;
  j["alphabet"] = alphabet_.symbols();
  j["states"] = state_count();
  j["initials"] = initials();
  j["finals"] = finals();
  auto trans = nlohmann::json::array();
  for (State q = 0; q < state_count(); ++q)
    for (Symbol a = 0; a < alphabet_.size(); ++a)
      for (State r : successors(q, a)) trans.push_back({q, std::string(1, alphabet_.symbol(a)), r});
  j["transitions"] = std::move(trans);
  return j;
}

Nfa Nfa::from_json(const nlohmann::json& j) {
  try {
    Alphabet a(j.at("alphabet").get<std::string>());
    auto states = j.at("states").get<std::size_t>();
    Nfa n(a, states);
    auto check = [&](std::size_t q) {
      if (q >= states) throw InputError("NFA JSON: state " + std::to_string(q) + " out of range");
      return static_cast<State>(q);
    };
    for (auto q : j.at("initials")) n.set_initial(check(q.get<std::size_t>()));
    for (auto q : j.at("finals")) n.set_final(check(q.get<std::size_t>()));
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3) throw InputError("NFA JSON: transition must be [q, \"a\", r]");
      auto sym = t[1].get<std::string>();
      if (sym.size() != 1) throw InputError("NFA JSON: symbol must be a single character");
      auto idx = a.index_of(sym[0]);
      if (!idx) throw InputError("NFA JSON: symbol '" + sym + "' not in alphabet");
      n.add_transition(check(t[0].get<std::size_t>()), *idx, check(t[2].get<std::size_t>()));
    }
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("NFA JSON: ") + e.what());
  }
}

State Dfa::run(State q, const Word& w) const {
  for (Symbol a : w) q = next(q, a);
  return q;
}

Nfa Dfa::to_nfa() const {
  Nfa n(alphabet, states);
  n.set_initial(initial);
  for (State q = 0; q < states; ++q) {
    if (accepting[q]) n.set_final(q);
    for (Symbol a = 0; a < alphabet.size(); ++a) n.add_transition(q, a, next(q, a));
  }
  return n;
}

Dfa determinize(const Nfa& n, std::size_t max_states) {
  const std::size_t k = n.alphabet().size();
  const std::size_t words = (n.state_count() + 63) / 64 + (n.state_count() == 0);
  Dfa d;
  d.alphabet = n.alphabet();
  std::unordered_map<StateSet, State, VecHash> index;
  std::vector<StateSet> sets;
  auto intern = [&](StateSet s) -> State {
    auto [it, inserted] = index.try_emplace(s, static_cast<State>(sets.size()));
    if (inserted) {
      if (sets.size() >= max_states) throw CapExceeded("max-states", max_states, "determinization");
      sets.push_back(std::move(s));
    }
    return it->second;
  };
  StateSet init(words, 0);
  for (State q : n.initials()) set_bit(init, q);
  d.initial = intern(init);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Symbol a = 0; a < k; ++a) {
      StateSet next(words, 0);
      for (State q = 0; q < n.state_count(); ++q)
        if (get_bit(sets[i], q))
          for (State r : n.successors(q, a)) set_bit(next, r);
      State j = intern(std::move(next));
      d.delta.push_back(j);
    }
  }
  d.states = sets.size();
  d.accepting.assign(d.states, 0);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (State q = 0; q < n.state_count(); ++q)
      if (get_bit(sets[i], q) && n.is_final(q)) d.accepting[i] = 1;
  return d;
}

Dfa minimize(const Dfa& d) {
  const std::size_t k = d.alphabet.size();
  // Restrict to reachable states first.
  std::vector<State> order;
  std::vector<std::int64_t> remap(d.states, -1);
  std::deque<State> queue{d.initial};
  remap[d.initial] = 0;
  order.push_back(d.initial);
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol a = 0; a < k; ++a) {
      State r = d.next(q, a);
      if (remap[r] < 0) {
        remap[r] = static_cast<std::int64_t>(order.size());
        order.push_back(r);
        queue.push_back(r);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<State> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = d.accepting[order[i]] ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<State>, State> sig_index;
    std::vector<State> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<State> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[i]);
      for (Symbol a = 0; a < k; ++a) sig.push_back(cls[remap[d.next(order[i], a)]]);
      auto [it, _] = sig_index.try_emplace(std::move(sig), static_cast<State>(sig_index.size()));
      next[i] = it->second;
    }
    std::size_t now = sig_index.size();
    cls.swap(next);
    if (now == classes) break;
    classes = now;
  }
  Dfa m;
  m.alphabet = d.alphabet;
  m.states = classes;
  m.initial = cls[0];
  m.delta.assign(classes * k, 0);
  m.accepting.assign(classes, 0);
  for (std::size_t i = 0; i < n; ++i) {
    State c = cls[i];
    m.accepting[c] = d.accepting[order[i]];
    for (Symbol a = 0; a < k; ++a) m.delta[c * k + a] = cls[remap[d.next(order[i], a)]];
  }
  return m;
}

Nfa nfa_union(const Nfa& lhs, const Nfa& rhs) {
  require_same_alphabet(lhs, rhs, "union");
  const State off = static_cast<State>(lhs.state_count());
  Nfa out(lhs.alphabet(), lhs.state_count() + rhs.state_count());
  const std::size_t k = lhs.alphabet().size();
  for (State q = 0; q < lhs.state_count(); ++q) {
    out.set_initial(q, lhs.is_initial(q));
    out.set_final(q, lhs.is_final(q));
    for (Symbol a = 0; a < k; ++a)
      for (State r : lhs.successors(q, a)) out.add_transition(q, a, r);
  }
  for (State q = 0; q < rhs.state_count(); ++q) {
    out.set_initial(off + q, rhs.is_initial(q));
    out.set_final(off + q, rhs.is_final(q));
    for (Symbol a = 0; a < k; ++a)
      for (State r : rhs.successors(q, a)) out.add_transition(off + q, a, off + r);
  }
  return out;
}

Nfa nfa_intersection(const Nfa& lhs, const Nfa& rhs) {
  require_same_alphabet(lhs, rhs, "intersection");
  const std::size_t k = lhs.alphabet().size();
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  Nfa out(lhs.alphabet(), 0);
  auto intern = [&](State p, State q) {
    auto [it, inserted] = index.try_emplace({p, q}, static_cast<State>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(p, q);
      out.add_state();
      if (lhs.is_final(p) && rhs.is_final(q)) out.set_final(it->second);
    }
    return it->second;
  };
  for (State p : lhs.initials())
    for (State q : rhs.initials()) out.set_initial(intern(p, q));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (Symbol a = 0; a < k; ++a)
      for (State p2 : lhs.successors(p, a))
        for (State q2 : rhs.successors(q, a)) {
          State j = intern(p2, q2);
          out.add_transition(static_cast<State>(i), a, j);
        }
  }
  if (out.state_count() == 0) return Nfa::empty_language(lhs.alphabet());
  return out;
}

Nfa nfa_concat(const Nfa& lhs, const Nfa& rhs) {
  require_same_alphabet(lhs, rhs, "concatenation");
  const std::size_t k = lhs.alphabet().size();
  const State off = static_cast<State>(lhs.state_count());
  Nfa out = nfa_union(lhs, rhs);
  const bool lhs_eps = std::ranges::any_of(lhs.initials(), [&](State q) { return lhs.is_final(q); });
  const bool rhs_eps = std::ranges::any_of(rhs.initials(), [&](State q) { return rhs.is_final(q); });
  for (State q = 0; q < rhs.state_count(); ++q) out.set_initial(off + q, lhs_eps && rhs.is_initial(q));
  for (State p = 0; p < lhs.state_count(); ++p) out.set_final(p, rhs_eps && lhs.is_final(p));
  for (State p = 0; p < lhs.state_count(); ++p) {
    if (!lhs.is_final(p)) continue;
    for (State q : rhs.initials())
      for (Symbol a = 0; a < k; ++a)
        for (State r : rhs.successors(q, a)) out.add_transition(p, a, off + r);
  }
  return out;
}

Nfa nfa_combine(CombineOp op, const Nfa& lhs, const Nfa& rhs) {
  switch (op) {
    case CombineOp::Union:
      return nfa_union(lhs, rhs);
    case CombineOp::Intersection:
      return nfa_intersection(lhs, rhs);
    case CombineOp::Concatenation:
      return nfa_concat(lhs, rhs);
  }
  throw std::logic_error("unknown combine op");
}

Nfa nfa_complement(const Nfa& n, std::size_t max_states) {
  Dfa d = determinize(n, max_states);
  for (auto& acc : d.accepting) acc = !acc;
  return minimize(d).to_nfa();
}

Nfa nfa_trim(const Nfa& n) {
  const std::size_t k = n.alphabet().size();
  const std::size_t s = n.state_count();
  std::vector<char> reach(s, 0), coreach(s, 0);
  std::vector<std::vector<State>> rev(s);
  for (State q = 0; q < s; ++q)
    for (Symbol a = 0; a < k; ++a)
      for (State r : n.successors(q, a)) rev[r].push_back(q);
  std::vector<State> stack = n.initials();
  for (State q : stack) reach[q] = 1;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < k; ++a)
      for (State r : n.successors(q, a))
        if (!reach[r]) reach[r] = 1, stack.push_back(r);
  }
  stack = n.finals();
  for (State q : stack) coreach[q] = 1;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q])
      if (!coreach[p]) coreach[p] = 1, stack.push_back(p);
  }
  std::vector<std::int64_t> remap(s, -1);
  std::size_t kept = 0;
  for (State q = 0; q < s; ++q)
    if (reach[q] && coreach[q]) remap[q] = static_cast<std::int64_t>(kept++);
  if (kept == 0) return Nfa::empty_language(n.alphabet());
  Nfa out(n.alphabet(), kept);
  for (State q = 0; q < s; ++q) {
    if (remap[q] < 0) continue;
    State nq = static_cast<State>(remap[q]);
    out.set_initial(nq, n.is_initial(q));
    out.set_final(nq, n.is_final(q));
    for (Symbol a = 0; a < k; ++a)
      for (State r : n.successors(q, a))
        if (remap[r] >= 0) out.add_transition(nq, a, static_cast<State>(remap[r]));
  }
  return out;
}

Nfa upward_closure(const Nfa& n) {
  Nfa out = n;
  for (State q = 0; q < out.state_count(); ++q)
    for (Symbol a = 0; a < out.alphabet().size(); ++a) out.add_transition(q, a, q);
  return out;
}

bool nfa_is_empty(const Nfa& n) {
  const std::size_t k = n.alphabet().size();
  std::vector<char> seen(n.state_count(), 0);
  std::vector<State> stack = n.initials();
  for (State q : stack) seen[q] = 1;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    if (n.is_final(q)) return false;
    for (Symbol a = 0; a < k; ++a)
      for (State r : n.successors(q, a))
        if (!seen[r]) seen[r] = 1, stack.push_back(r);
  }
  return true;
}

bool nfa_intersects(const Nfa& a, const Nfa& b) { return !nfa_is_empty(nfa_intersection(a, b)); }

bool nfa_includes(const Nfa& sub, const Nfa& super, std::size_t max_states) {
  require_same_alphabet(sub, super, "inclusion");
  // Product of `sub` with the on-the-fly subset construction of `super`;
  // a counterexample is a final state of `sub` paired with a non-accepting subset.
  const std::size_t k = sub.alphabet().size();
  const std::size_t words = (super.state_count() + 63) / 64 + 1;
  std::unordered_map<StateSet, State, VecHash> index;
  std::vector<StateSet> sets;
  std::vector<char> sets_accept;
  auto intern = [&](StateSet s) -> State {
    auto [it, inserted] = index.try_emplace(s, static_cast<State>(sets.size()));
    if (inserted) {
      if (sets.size() >= max_states) throw CapExceeded("max-states", max_states, "inclusion check");
      bool acc = false;
      for (State q = 0; q < super.state_count(); ++q)
        if (get_bit(s, q) && super.is_final(q)) acc = true;
      sets.push_back(std::move(s));
      sets_accept.push_back(acc);
    }
    return it->second;
  };
  StateSet init(words, 0);
  for (State q : super.initials()) set_bit(init, q);
  State s0 = intern(init);
  std::vector<std::vector<State>> succ_cache;
  auto successor = [&](State s, Symbol a) {
    if (succ_cache.size() <= s) succ_cache.resize(sets.size(), std::vector<State>(k, ~State{0}));
    if (succ_cache[s][a] != ~State{0}) return succ_cache[s][a];
    StateSet next(words, 0);
    for (State q = 0; q < super.state_count(); ++q)
      if (get_bit(sets[s], q))
        for (State r : super.successors(q, a)) set_bit(next, r);
    State t = intern(std::move(next));
    if (succ_cache.size() <= s) succ_cache.resize(sets.size(), std::vector<State>(k, ~State{0}));
    succ_cache[s][a] = t;
    return t;
  };
  std::set<std::pair<State, State>> seen;
  std::vector<std::pair<State, State>> stack;
  for (State p : sub.initials())
    if (seen.insert({p, s0}).second) stack.emplace_back(p, s0);
  while (!stack.empty()) {
    auto [p, s] = stack.back();
    stack.pop_back();
    if (sub.is_final(p) && !sets_accept[s]) return false;
    for (Symbol a = 0; a < k; ++a) {
      if (sub.successors(p, a).empty()) continue;
      State t = successor(s, a);
      for (State p2 : sub.successors(p, a))
        if (seen.insert({p2, t}).second) stack.emplace_back(p2, t);
    }
  }
  return true;
}

bool nfa_equivalent(const Nfa& a, const Nfa& b, std::size_t max_states) {
  return nfa_includes(a, b, max_states) && nfa_includes(b, a, max_states);
}

bool nfa_decide(const DecideQuery& query, const Nfa& n, std::size_t max_states) {
  switch (query.kind) {
    case DecideQuery::Kind::Emptiness:
      return nfa_is_empty(n);
    case DecideQuery::Kind::Membership:
      return n.accepts(query.word);
    case DecideQuery::Kind::Inclusion:
      if (!query.other) throw InputError("inclusion query needs a second automaton");
      return nfa_includes(n, *query.other, max_states);
    case DecideQuery::Kind::Equivalence:
      if (!query.other) throw InputError("equivalence query needs a second automaton");
      return nfa_equivalent(n, *query.other, max_states);
  }
  return false;
}

AlphabetLanguages alphabet_languages(const Alphabet& a, LetterSet letters) {
  if (letters & ~a.full()) throw InputError("sub-alphabet is not contained in the alphabet");
  Nfa star(a, 1);
  star.set_initial(0);
  star.set_final(0);
  for (Symbol s = 0; s < a.size(); ++s)
    if (letters >> s & 1u) star.add_transition(0, s, 0);

  // States are the subsets of `letters` seen so far, indexed densely.
  std::vector<LetterSet> subsets;
  for (LetterSet sub = letters;; sub = (sub - 1) & letters) {
    subsets.push_back(sub);
    if (sub == 0) break;
  }
  std::reverse(subsets.begin(), subsets.end());
  std::unordered_map<LetterSet, State> idx;
  for (std::size_t i = 0; i < subsets.size(); ++i) idx[subsets[i]] = static_cast<State>(i);
  Nfa exact(a, subsets.size());
  exact.set_initial(idx[0]);
  exact.set_final(idx[letters]);
  for (LetterSet sub : subsets)
    for (Symbol s = 0; s < a.size(); ++s)
      if (letters >> s & 1u) exact.add_transition(idx[sub], s, idx[sub | (1u << s)]);
  return {std::move(star), std::move(exact)};
}

std::optional<Word> nfa_shortest_word(const Nfa& n) {
  const std::size_t k = n.alphabet().size();
  std::vector<std::int64_t> parent(n.state_count(), -2);
  std::vector<Symbol> via(n.state_count(), 0);
  std::deque<State> queue;
  for (State q : n.initials()) {
    parent[q] = -1;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (n.is_final(q)) {
      Word w;
      for (std::int64_t cur = q; parent[cur] != -1; cur = parent[cur]) w.push_back(via[cur]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol a = 0; a < k; ++a)
      for (State r : n.successors(q, a))
        if (parent[r] == -2) {
          parent[r] = q;
          via[r] = a;
          queue.push_back(r);
        }
  }
  return std::nullopt;
}

}  // namespace imprint
