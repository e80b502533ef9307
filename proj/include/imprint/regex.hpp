#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "imprint/alphabet.hpp"

namespace imprint {

class Nfa;

/// Immutable regular-expression AST. Nodes are shared; copies are cheap.
class Regex {
 public:
  enum class Op { Empty, Epsilon, Letter, Union, Concat, Star, Plus };

  Regex();  // Empty

  static Regex empty();
  static Regex epsilon();
  static Regex letter(Symbol s);
  static Regex alt(Regex lhs, Regex rhs);
  static Regex cat(Regex lhs, Regex rhs);
  static Regex star(Regex inner);
  static Regex plus(Regex inner);

  // Constructors that fold units and zeros (∅|r = r, ε·r = r, ∅·r = ∅, ...).
  static Regex alt_simplified(Regex lhs, Regex rhs);
  static Regex cat_simplified(Regex lhs, Regex rhs);
  static Regex star_simplified(Regex inner);

  Op op() const noexcept;
  Symbol symbol() const;
  const Regex& left() const;
  const Regex& right() const;
  const Regex& inner() const { return left(); }

  /// Number of AST nodes.
  std::size_t size() const noexcept;

  /// Prints in the grammar accepted by `regex_parse`, with minimal parentheses.
  std::string to_string(const Alphabet& alphabet) const;

 private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// expr := term ('|' term)* ; term := factor+ ; factor := atom ('*'|'+')* ;
/// atom := symbol | '(' expr ')' | '%eps' | '%empty'. Whitespace is ignored.
Regex regex_parse(std::string_view text, const Alphabet& alphabet);

/// Glushkov position automaton: epsilon-free, |positions|+1 states.
Nfa regex_to_nfa(const Regex& r, const Alphabet& alphabet);

/// Regex for B* (`%eps` when B is empty).
Regex regex_star_of(LetterSet letters);
/// Regex for the words whose letter set is exactly B.
Regex regex_exact_alphabet(LetterSet letters);
/// Regex for A*a1A*a2...A*anA*.
Regex regex_upward_word(const Word& w, LetterSet all_letters);
/// Regex for a single word.
Regex regex_word(const Word& w);

}  // namespace imprint
