#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "imprint/cover.hpp"
#include "imprint/error.hpp"

namespace imprint {

namespace {

struct Piece {
  Regex regex;
  Elem value;  // rho of the piece, tracked alongside
};

class Fo2Builder {
 public:
  Fo2Builder(const RatingMap& rho, const ImprintSet& s, const Fo2Options& opts)
      : rho_(rho), r_(rho.R), s_(s), opts_(opts), stars_(star_images(rho)) {}

  const std::vector<Piece>& cover(LetterSet b, const Elem& tl, const Elem& tr) {
    Key key{b, tl, tr};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) throw InputError("fo2_cover: the supplied set is not FO2-saturated");
    std::vector<Piece> out = compact(build(b, tl, tr), tl, tr);
    active_.erase(key);
    if (out.size() > opts_.max_pieces) throw CapExceeded("fo2-pieces", opts_.max_pieces, "fo2_cover");
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  using Key = std::tuple<LetterSet, Elem, Elem>;

  std::vector<Piece> build(LetterSet b, const Elem& tl, const Elem& tr) {
    if (b == 0) return {Piece{Regex::epsilon(), r_.one()}};
    auto right = unsaturated_letter(b, tl, true);
    auto left = right ? std::nullopt : unsaturated_letter(b, tr, false);
    if (!right && !left) return {Piece{regex_star_of(b), stars_[b]}};

    const Symbol letter = right ? *right : *left;
    const LetterSet c = b & ~(LetterSet{1} << letter);
    const Elem& image = rho_.letter(letter);
    std::vector<Piece> hs = cover(c, r_.one(), r_.one());
    std::vector<Piece> out = hs;
    for (const auto& h : hs) {
      if (right) {
        // leftmost occurrence of the letter: H b K
        Elem th = r_.mul(r_.mul(tl, h.value), image);
        for (const auto& k : cover(b, th, tr))
          out.push_back(Piece{Regex::cat_simplified(Regex::cat(h.regex, Regex::letter(letter)), k.regex),
                              r_.mul(r_.mul(h.value, image), k.value)});
      } else {
        // rightmost occurrence: K b H
        Elem th = r_.mul(r_.mul(image, h.value), tr);
        for (const auto& k : cover(b, tl, th))
          out.push_back(Piece{Regex::cat_simplified(Regex::cat(k.regex, Regex::letter(letter)), h.regex),
                              r_.mul(r_.mul(k.value, image), h.value)});
      }
      if (out.size() > opts_.max_pieces) throw CapExceeded("fo2-pieces", opts_.max_pieces, "fo2_cover");
    }
    return out;
  }

  // Greedy unions of pieces whose summed value still satisfies tl·v·tr ∈ S.
  std::vector<Piece> compact(std::vector<Piece> pieces, const Elem& tl, const Elem& tr) const {
    std::vector<Piece> out;
    for (auto& p : pieces) {
      bool merged = false;
      for (auto& g : out) {
        Elem sum = r_.add(g.value, p.value);
        if (sum != g.value && !s_.contains(r_.mul(r_.mul(tl, sum), tr))) continue;
        g.regex = Regex::alt_simplified(g.regex, p.regex);
        g.value = sum;
        merged = true;
        break;
      }
      if (!merged) out.push_back(std::move(p));
    }
    return out;
  }

  // Smallest letter of B witnessing that t is not right (resp. left) saturated.
  std::optional<Symbol> unsaturated_letter(LetterSet b, const Elem& t, bool right) {
    const auto& sb = submonoid(b);
    for (Symbol a = 0; a < rho_.alphabet.size(); ++a) {
      if (!(b >> a & 1u)) continue;
      bool found = false;
      for (const auto& x : sb) {
        Elem u = right ? r_.mul(r_.mul(t, x), rho_.letter(a)) : r_.mul(rho_.letter(a), r_.mul(x, t));
        for (const auto& y : sb)
          if ((right ? r_.mul(u, y) : r_.mul(y, u)) == t) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) return a;
    }
    return std::nullopt;
  }

  // S_B: members of S of the form rho(K) with K a nonempty subset of B*.
  const std::vector<Elem>& submonoid(LetterSet b) {
    if (auto it = sb_.find(b); it != sb_.end()) return it->second;
    std::vector<Elem> words{r_.one()};
    std::set<Elem> seen{r_.one()};
    for (std::size_t i = 0; i < words.size(); ++i)
      for (Symbol a = 0; a < rho_.alphabet.size(); ++a) {
        if (!(b >> a & 1u)) continue;
        Elem next = r_.mul(words[i], rho_.letter(a));
        if (seen.insert(next).second) {
          if (words.size() >= opts_.max_submonoid)
            throw CapExceeded("fo2-submonoid", opts_.max_submonoid, "fo2_cover");
          words.push_back(next);
        }
      }
    // sums of word images that stay inside S (S is a downset, so prune early)
    std::vector<Elem> sums(words.begin(), words.end());
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (const auto& w : words) {
        Elem next = r_.add(sums[i], w);
        if (seen.count(next) || !s_.contains(next)) continue;
        if (sums.size() >= opts_.max_submonoid) throw CapExceeded("fo2-submonoid", opts_.max_submonoid, "fo2_cover");
        seen.insert(next);
        sums.push_back(next);
      }
    return sb_.emplace(b, std::move(sums)).first->second;
  }

  const RatingMap& rho_;
  const Semiring& r_;
  const ImprintSet& s_;
  Fo2Options opts_;
  std::vector<Elem> stars_;
  std::map<Key, std::vector<Piece>> memo_;
  std::set<Key> active_;
  std::map<LetterSet, std::vector<Elem>> sb_;
};

}  // namespace

Cover fo2_cover(const RatingMap& rho, const ImprintSet& s, LetterSet letters, const Elem& tl, const Elem& tr,
                const Fo2Options& opts) {
  if (!s.contains(tl) || !s.contains(tr)) throw InputError("fo2_cover: tl and tr must belong to S");
  if ((letters & ~rho.alphabet.full()) != 0) throw InputError("fo2_cover: sub-alphabet outside the alphabet");
  Fo2Builder builder(rho, s, opts);
  const auto& pieces = builder.cover(letters, tl, tr);
  Cover c;
  c.cls = ClassId::FO2;
  c.target = alphabet_languages(rho.alphabet, letters).star;
  for (const auto& p : pieces) c.pieces.push_back(piece_from_regex(p.regex, rho.alphabet));
  c.provenance = "FO2 induction on (B, right index of tl, left index of tr) over B = " +
                 rho.alphabet.format_set(letters) + ", " + std::to_string(c.pieces.size()) + " pieces";
  return c;
}

Cover fo2_cover(const RatingMap& rho, const ImprintSet& s, const Fo2Options& opts) {
  return fo2_cover(rho, s, rho.alphabet.full(), rho.R.one(), rho.R.one(), opts);
}

}  // namespace imprint
