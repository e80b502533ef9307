#include "imprint/monoid.hpp"

#include <map>

#include "imprint/error.hpp"
#include "imprint/nfa.hpp"

namespace imprint {

MonoidMorphism::MonoidMorphism(Alphabet alphabet, std::size_t size, MonoidElem identity,
                               std::vector<MonoidElem> mul, std::vector<MonoidElem> letter_image)
    : alphabet_(std::move(alphabet)),
      size_(size),
      identity_(identity),
      mul_(std::move(mul)),
      letters_(std::move(letter_image)) {
  if (size_ == 0) throw InputError("monoid must have at least one element");
  if (mul_.size() != size_ * size_) throw InputError("monoid table must be size x size");
  if (letters_.size() != alphabet_.size()) throw InputError("monoid needs one image per letter");
  if (identity_ >= size_) throw InputError("monoid identity out of range");
  for (auto x : mul_)
    if (x >= size_) throw InputError("monoid table entry out of range");
  for (auto x : letters_)
    if (x >= size_) throw InputError("letter image out of range");
}

MonoidElem MonoidMorphism::image(const Word& w) const {
  MonoidElem x = identity_;
  for (Symbol a : w) x = multiply(x, letters_.at(a));
  return x;
}

std::vector<std::string> MonoidMorphism::validate() const {
  // one entry per broken law, with the first witness and a count
  std::vector<std::string> out;
  std::size_t bad_identity = 0, bad_assoc = 0;
  std::string first_identity, first_assoc;
  for (MonoidElem x = 0; x < size_; ++x) {
    if (multiply(identity_, x) != x || multiply(x, identity_) != x)
      if (bad_identity++ == 0) first_identity = std::to_string(x);
  }
  for (MonoidElem x = 0; x < size_; ++x)
    for (MonoidElem y = 0; y < size_; ++y)
      for (MonoidElem z = 0; z < size_; ++z)
        if (multiply(multiply(x, y), z) != multiply(x, multiply(y, z)))
          if (bad_assoc++ == 0)
            first_assoc = "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
  if (bad_identity)
    out.push_back("identity is not neutral for element " + first_identity + " (" + std::to_string(bad_identity) +
                  " elements)");
  if (bad_assoc)
    out.push_back("associativity fails at " + first_assoc + " (" + std::to_string(bad_assoc) + " triples)");
  return out;
}

nlohmann::json MonoidMorphism::to_json() const {
  nlohmann::json j;
  j["alphabet"] = alphabet_.symbols();
  j["size"] = size_;
  j["identity"] = identity_;
  auto rows = nlohmann::json::array();
  for (MonoidElem x = 0; x < size_; ++x) {
    std::vector<MonoidElem> row(mul_.begin() + x * size_, mul_.begin() + (x + 1) * size_);
    rows.push_back(row);
  }
  j["mul"] = rows;
  nlohmann::json letters = nlohmann::json::object();
  for (Symbol a = 0; a < alphabet_.size(); ++a) letters[std::string(1, alphabet_.symbol(a))] = letters_[a];
  j["letters"] = letters;
  return j;
}

MonoidMorphism MonoidMorphism::from_json(const nlohmann::json& j) {
  try {
    Alphabet a(j.at("alphabet").get<std::string>());
    auto size = j.at("size").get<std::size_t>();
    std::vector<MonoidElem> mul;
    const auto& rows = j.at("mul");
    if (rows.size() != size) throw InputError("monoid JSON: mul must have `size` rows");
    for (const auto& row : rows) {
      if (row.size() != size) throw InputError("monoid JSON: mul rows must have `size` entries");
      for (const auto& x : row) mul.push_back(x.get<MonoidElem>());
    }
    std::vector<MonoidElem> letters(a.size());
    for (Symbol s = 0; s < a.size(); ++s) letters[s] = j.at("letters").at(std::string(1, a.symbol(s))).get<MonoidElem>();
    return MonoidMorphism(a, size, j.at("identity").get<MonoidElem>(), std::move(mul), std::move(letters));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("monoid JSON: ") + e.what());
  }
}

std::vector<MonoidElem> RecognizingMorphism::accepting_elements() const {
  std::vector<MonoidElem> out;
  for (MonoidElem x = 0; x < accepting.size(); ++x)
    if (accepting[x]) out.push_back(x);
  return out;
}

RecognizingMorphism transition_monoid(const Nfa& n, std::size_t max_size, std::size_t max_dfa_states) {
  Dfa d = minimize(determinize(n, max_dfa_states));
  const std::size_t k = d.alphabet.size();
  using Transformation = std::vector<State>;
  std::map<Transformation, MonoidElem> index;
  std::vector<Transformation> elems;
  auto intern = [&](Transformation t) {
    auto [it, inserted] = index.try_emplace(t, static_cast<MonoidElem>(elems.size()));
    if (inserted) {
      if (elems.size() >= max_size) throw CapExceeded("max-monoid", max_size, "transition monoid");
      elems.push_back(std::move(t));
    }
    return it->second;
  };
  Transformation id(d.states);
  for (State q = 0; q < d.states; ++q) id[q] = q;
  intern(id);
  std::vector<Transformation> letter_maps(k, Transformation(d.states));
  for (Symbol a = 0; a < k; ++a)
    for (State q = 0; q < d.states; ++q) letter_maps[a][q] = d.next(q, a);
  std::vector<MonoidElem> letters(k);
  for (Symbol a = 0; a < k; ++a) letters[a] = intern(letter_maps[a]);
  // right Cayley closure: elements are images of words, x.a means x then a
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      Transformation t(d.states);
      for (State q = 0; q < d.states; ++q) t[q] = letter_maps[a][elems[i][q]];
      intern(std::move(t));
    }
  const std::size_t size = elems.size();
  std::vector<MonoidElem> mul(size * size);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y) {
      Transformation t(d.states);
      for (State q = 0; q < d.states; ++q) t[q] = elems[y][elems[x][q]];
      mul[x * size + y] = index.at(t);
    }
  RecognizingMorphism out{MonoidMorphism(d.alphabet, size, 0, std::move(mul), std::move(letters)),
                          std::vector<char>(size, 0)};
  for (std::size_t x = 0; x < size; ++x) out.accepting[x] = d.accepting[elems[x][d.initial]];
  return out;
}

}  // namespace imprint
