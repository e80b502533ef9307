#include "imprint/alphabet.hpp"

#include <algorithm>

#include "imprint/error.hpp"

namespace imprint {

namespace {
constexpr std::string_view kReserved = "()|*+% \t\r\n";
}

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
  std::sort(symbols_.begin(), symbols_.end());
  if (symbols_.empty() || symbols_.size() > kMaxAlphabet)
    throw InputError("alphabet must have between 1 and 16 symbols");
  if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end())
    throw InputError("alphabet has duplicate symbols: '" + std::string(symbols) + "'");
  for (char c : symbols_)
    if (kReserved.find(c) != std::string_view::npos)
      throw InputError(std::string("reserved character in alphabet: '") + c + "'");
}

std::optional<Symbol> Alphabet::index_of(char c) const noexcept {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), c);
  if (it == symbols_.end() || *it != c) return std::nullopt;
  return static_cast<Symbol>(it - symbols_.begin());
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    auto idx = index_of(c);
    if (!idx) throw InputError(std::string("symbol '") + c + "' not in alphabet '" + symbols_ + "'");
    w.push_back(*idx);
  }
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(symbol(s));
  return out;
}

std::string Alphabet::format_set(LetterSet set) const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i)
    if (set >> i & 1u) out.push_back(symbols_[i]);
  out.push_back('}');
  return out;
}

LetterSet letters_of(const Word& w) noexcept {
  LetterSet set = 0;
  for (Symbol s : w) set |= 1u << s;
  return set;
}

}  // namespace imprint
