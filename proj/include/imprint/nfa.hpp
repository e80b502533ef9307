#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprint/alphabet.hpp"

namespace imprint {

using State = std::uint32_t;

inline constexpr std::size_t kDefaultMaxDfaStates = std::size_t{1} << 20;

/// Epsilon-free nondeterministic automaton over a fixed alphabet.
class Nfa {
 public:
  Nfa() = default;
  Nfa(Alphabet alphabet, std::size_t states);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return initial_.size(); }

  State add_state();
  void add_transition(State from, Symbol symbol, State to);
  void set_initial(State q, bool on = true) { initial_.at(q) = on; }
  void set_final(State q, bool on = true) { final_.at(q) = on; }

  bool is_initial(State q) const { return initial_[q]; }
  bool is_final(State q) const { return final_[q]; }
  std::span<const State> successors(State q, Symbol a) const {
    return delta_[q * alphabet_.size() + a];
  }
  std::vector<State> initials() const;
  std::vector<State> finals() const;
  std::size_t transition_count() const;

  bool accepts(const Word& w) const;

  static Nfa empty_language(const Alphabet& a);
  static Nfa epsilon_only(const Alphabet& a);
  static Nfa universal(const Alphabet& a);
  static Nfa single_word(const Alphabet& a, const Word& w);
  /// A*aA*
  static Nfa containing_letter(const Alphabet& a, Symbol s);

  /// {"alphabet":"abc","states":N,"initials":[..],"finals":[..],"transitions":[[q,"a",r],..]}
  nlohmann::json to_json() const;
  static Nfa from_json(const nlohmann::json& j);

 private:
  Alphabet alphabet_;
  std::vector<char> initial_;
  std::vector<char> final_;
  std::vector<std::vector<State>> delta_;
};

/// Complete deterministic automaton.
struct Dfa {
  Alphabet alphabet;
  std::size_t states = 0;
  State initial = 0;
  std::vector<State> delta;  // states * |A|
  std::vector<char> accepting;

  State next(State q, Symbol a) const { return delta[q * alphabet.size() + a]; }
  State run(State q, const Word& w) const;
  bool accepts(const Word& w) const { return accepting[run(initial, w)]; }
  Nfa to_nfa() const;
};

Dfa determinize(const Nfa& n, std::size_t max_states = kDefaultMaxDfaStates);
/// Moore partition refinement on the reachable part.
Dfa minimize(const Dfa& d);

enum class CombineOp { Union, Intersection, Concatenation };

Nfa nfa_union(const Nfa& lhs, const Nfa& rhs);
Nfa nfa_intersection(const Nfa& lhs, const Nfa& rhs);
Nfa nfa_concat(const Nfa& lhs, const Nfa& rhs);
Nfa nfa_combine(CombineOp op, const Nfa& lhs, const Nfa& rhs);
Nfa nfa_complement(const Nfa& n, std::size_t max_states = kDefaultMaxDfaStates);
/// Removes states that are not both reachable and co-reachable. Keeps at least
/// one state so that the empty language stays representable.
Nfa nfa_trim(const Nfa& n);
/// Adds a self-loop on every symbol at every state: the superword closure.
Nfa upward_closure(const Nfa& n);

bool nfa_is_empty(const Nfa& n);
bool nfa_includes(const Nfa& sub, const Nfa& super, std::size_t max_states = kDefaultMaxDfaStates);
bool nfa_equivalent(const Nfa& a, const Nfa& b, std::size_t max_states = kDefaultMaxDfaStates);
bool nfa_intersects(const Nfa& a, const Nfa& b);

struct DecideQuery {
  enum class Kind { Emptiness, Membership, Inclusion, Equivalence } kind;
  Word word{};
  const Nfa* other = nullptr;
};
bool nfa_decide(const DecideQuery& query, const Nfa& n, std::size_t max_states = kDefaultMaxDfaStates);

struct AlphabetLanguages {
  Nfa star;   // B*
  Nfa exact;  // words whose letter set is exactly B
};
AlphabetLanguages alphabet_languages(const Alphabet& a, LetterSet letters);

/// Shortest accepted word, if any.
std::optional<Word> nfa_shortest_word(const Nfa& n);

void require_same_alphabet(const Nfa& a, const Nfa& b, const char* where);

}  // namespace imprint
