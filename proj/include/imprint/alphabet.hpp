#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace imprint {

using Symbol = std::uint8_t;
/// A word is a sequence of symbol indices; the empty vector is the empty word.
using Word = std::vector<Symbol>;
/// Sub-alphabet as a bitmask over symbol indices.
using LetterSet = std::uint32_t;

inline constexpr std::size_t kMaxAlphabet = 16;

/// Ordered set of single-character symbols. Index of a symbol is its rank.
class Alphabet {
 public:
  Alphabet() = default;
  /// Accepts the symbols in any order; rejects duplicates, sizes outside 1..16
  /// and characters reserved by the regex grammar.
  explicit Alphabet(std::string_view symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  char symbol(Symbol index) const { return symbols_.at(index); }
  const std::string& symbols() const noexcept { return symbols_; }
  std::optional<Symbol> index_of(char c) const noexcept;

  LetterSet full() const noexcept { return size() >= 32 ? ~0u : ((1u << size()) - 1u); }

  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;
  std::string format_set(LetterSet set) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::string symbols_;
};

/// Set of letters occurring in `w`.
LetterSet letters_of(const Word& w) noexcept;

}  // namespace imprint
