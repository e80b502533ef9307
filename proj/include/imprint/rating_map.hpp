#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "imprint/imprint_set.hpp"
#include "imprint/monoid.hpp"
#include "imprint/nfa.hpp"
#include "imprint/semiring.hpp"

namespace imprint {

/// Nice multiplicative rating map: a semiring plus the images of the letters.
struct RatingMap {
  Alphabet alphabet;
  Semiring R;
  std::vector<Elem> letters;
  /// Component index of the 2^{2^A} factor when the map is alphabet compatible.
  std::optional<std::size_t> cont_component;

  const Elem& letter(Symbol a) const { return letters.at(a); }
  bool alphabet_compatible() const noexcept { return cont_component.has_value(); }
  /// Whether B belongs to cont(r).
  bool cont_has(const Elem& r, LetterSet b) const;
  /// The sub-alphabets B with B in cont(r).
  std::vector<LetterSet> cont(const Elem& r) const;
  /// r with its cont component replaced by {B}.
  Elem with_cont(const Elem& r, LetterSet b) const;
};

/// tau together with delta, so that rho = delta . tau. When built from a
/// multiset of languages the target is 2^L encoded as flags.
struct Extension {
  RatingMap tau;
  SemiringMorphism delta;
  std::size_t languages = 0;
  /// Recognizer kind per language ("nfa", "dfa" or "monoid") and its size.
  std::vector<std::string> recognizers;

  /// delta(r) as a bitmask over the languages.
  std::uint64_t flags(const Elem& r) const;
  /// r in F_R: delta(r) hits every language.
  bool marked(const Elem& r) const;
  std::uint64_t all_flags() const noexcept {
    return languages >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << languages) - 1;
  }
};

/// A language given either as an automaton or as a morphism plus accepting set.
using LanguageSpec = std::variant<Nfa, RecognizingMorphism>;

Extension rm_from_morphism(const RecognizingMorphism& alpha);
Extension rm_from_nfa(const Nfa& n);
Extension rm_from_multiset(const std::vector<LanguageSpec>& langs);
/// tau(K) = (rho(K), {alph(w) : w in K}); delta is the first projection.
Extension rm_alphabet_augment(const RatingMap& rho);
/// Augments tau and composes the projection into delta.
Extension rm_augment_extension(const Extension& ext);

Elem rm_eval(const RatingMap& rho, const Word& w);
/// rho(L(n)) as the least fixpoint of per-state sums of word images.
Elem rm_eval(const RatingMap& rho, const Nfa& n);
/// rho(L(n)) for each state taken as the only final state.
std::vector<Elem> rm_eval_states(const RatingMap& rho, const Nfa& n);

/// The multiplicative submonoid {rho(w) : w in A*}, explicitly.
std::vector<Elem> rm_word_images(const RatingMap& rho, std::size_t cap);
/// Pairs (alpha(w), rho(w)) for all w.
std::vector<std::pair<MonoidElem, Elem>> rm_pointed_word_images(const MonoidMorphism& alpha, const RatingMap& rho,
                                                                 std::size_t cap);
ImprintSet rm_trivial_imprint(const RatingMap& rho, std::size_t cap);
PointedImprintSet rm_trivial_imprint(const MonoidMorphism& alpha, const RatingMap& rho, std::size_t cap);

/// Down-closure of delta(S).
ImprintSet imprint_pullback(const SemiringMorphism& delta, const ImprintSet& s);
PointedImprintSet imprint_pullback(const SemiringMorphism& delta, const PointedImprintSet& s);

}  // namespace imprint
