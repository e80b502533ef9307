#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprint/alphabet.hpp"

namespace imprint {

class Nfa;

using MonoidElem = std::uint32_t;

inline constexpr std::size_t kDefaultMaxMonoid = 4096;

/// Finite monoid given by its multiplication table, with the images of the letters.
class MonoidMorphism {
 public:
  MonoidMorphism() = default;
  MonoidMorphism(Alphabet alphabet, std::size_t size, MonoidElem identity, std::vector<MonoidElem> mul,
                 std::vector<MonoidElem> letter_image);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return size_; }
  MonoidElem identity() const noexcept { return identity_; }
  MonoidElem multiply(MonoidElem x, MonoidElem y) const { return mul_[x * size_ + y]; }
  MonoidElem letter_image(Symbol a) const { return letters_.at(a); }
  const std::vector<MonoidElem>& table() const noexcept { return mul_; }
  MonoidElem image(const Word& w) const;
  bool is_idempotent(MonoidElem x) const { return multiply(x, x) == x; }

  /// Associativity, identity, letter-image and table-range violations; empty when valid.
  std::vector<std::string> validate() const;

  /// {"alphabet":"ab","size":n,"identity":i,"mul":[[..]],"letters":{"a":x,..}}
  nlohmann::json to_json() const;
  static MonoidMorphism from_json(const nlohmann::json& j);

 private:
  Alphabet alphabet_;
  std::size_t size_ = 0;
  MonoidElem identity_ = 0;
  std::vector<MonoidElem> mul_;
  std::vector<MonoidElem> letters_;
};

struct RecognizingMorphism {
  MonoidMorphism morphism;
  std::vector<char> accepting;  // indexed by monoid element

  bool accepts(const Word& w) const { return accepting[morphism.image(w)]; }
  std::vector<MonoidElem> accepting_elements() const;
};

/// Transition monoid of the minimal complete DFA of `n`; L(n) = alpha^-1(accepting).
RecognizingMorphism transition_monoid(const Nfa& n, std::size_t max_size = kDefaultMaxMonoid,
                                      std::size_t max_dfa_states = std::size_t{1} << 20);

}  // namespace imprint
