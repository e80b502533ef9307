#include <bit>

#include "imprint/cover.hpp"
#include "imprint/error.hpp"

namespace imprint {

namespace {

struct Segment {
  Unit unit;
  std::size_t begin = 0, end = 0;  // factor of w
};

LetterSet letters_between(const Word& w, std::size_t begin, std::size_t end) {
  LetterSet out = 0;
  for (std::size_t i = begin; i < end; ++i) out |= LetterSet{1} << w[i];
  return out;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

Symbol smallest(LetterSet s) { return static_cast<Symbol>(std::countr_zero(s)); }

// Template of length <= (n+2)^|B| - 1 for w[begin, end), with B its alphabet.
std::vector<Segment> build(const Word& w, std::size_t begin, std::size_t end, std::size_t n) {
  const LetterSet b = letters_between(w, begin, end);
  if (b == 0) return {};
  std::vector<Segment> units;
  for (std::size_t i = begin; i < end; ++i) units.push_back({Unit::letter(w[i]), i, i + 1});
  const std::size_t width = static_cast<std::size_t>(std::popcount(b));
  const std::size_t window = power(n + 2, width - 1);
  while (units.size() >= power(n + 2, width)) {
    bool replaced = false;
    for (std::size_t i = 0; i + window <= units.size() && !replaced; ++i) {
      std::size_t lo = units[i].begin, hi = units[i + window - 1].end;
      if (letters_between(w, lo, hi) == b) continue;
      auto inner = build(w, lo, hi, n);
      units.erase(units.begin() + static_cast<std::ptrdiff_t>(i),
                  units.begin() + static_cast<std::ptrdiff_t>(i + window));
      units.insert(units.begin() + static_cast<std::ptrdiff_t>(i), inner.begin(), inner.end());
      replaced = true;
    }
    if (!replaced) return {{Unit::triple(smallest(b), b, smallest(b)), begin, end}};
  }
  return units;
}

// Merges neighbours that break unambiguity; the covered language only grows.
void merge_ambiguous(std::vector<Segment>& units) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < units.size() && !changed; ++i) {
      const Unit &u = units[i].unit, &v = units[i + 1].unit;
      LetterSet merged = 0;
      if (u.is_letter() && !v.is_letter() && (v.letters >> u.b & 1u)) merged = v.letters;
      if (!u.is_letter() && v.is_letter() && (u.letters >> v.b & 1u)) merged = u.letters;
      if (!u.is_letter() && !v.is_letter()) {
        if ((u.letters & v.letters) == u.letters) merged = v.letters;
        if ((u.letters & v.letters) == v.letters) merged = u.letters;
      }
      if (merged == 0) continue;
      units[i] = {Unit::triple(smallest(merged), merged, smallest(merged)), units[i].begin, units[i + 1].end};
      units.erase(units.begin() + static_cast<std::ptrdiff_t>(i + 1));
      changed = true;
    }
  }
  // pick b and c outside the neighbouring triples
  for (std::size_t i = 0; i < units.size(); ++i) {
    Unit& u = units[i].unit;
    if (u.is_letter()) continue;
    LetterSet left = u.letters, right = u.letters;
    if (i > 0 && !units[i - 1].unit.is_letter()) left &= ~units[i - 1].unit.letters;
    if (i + 1 < units.size() && !units[i + 1].unit.is_letter()) right &= ~units[i + 1].unit.letters;
    u.b = smallest(left);
    u.c = smallest(right);
  }
}

}  // namespace

bool template_unambiguous(const Template& t) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const Unit &u = t[i], &v = t[i + 1];
    if (u.is_letter() && v.is_letter()) continue;
    if (u.is_letter()) {
      if (v.letters >> u.b & 1u) return false;
    } else if (v.is_letter()) {
      if (u.letters >> v.b & 1u) return false;
    } else if ((v.letters >> u.c & 1u) || (u.letters >> v.b & 1u)) {
      return false;
    }
  }
  return true;
}

Regex template_regex(const Template& t, std::size_t n) {
  Regex out = Regex::epsilon();
  for (const auto& u : t) {
    Regex r = Regex::letter(u.b);
    if (!u.is_letter()) {
      Regex star = regex_star_of(u.letters);
      r = Regex::cat(star, Regex::letter(u.b));
      for (std::size_t i = 0; i < n; ++i) r = Regex::cat(r, regex_exact_alphabet(u.letters));
      r = Regex::cat(Regex::cat(r, Regex::letter(u.c)), star);
    }
    out = Regex::cat_simplified(out, r);
  }
  return out;
}

std::string template_to_string(const Template& t, const Alphabet& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    const Unit& u = t[i];
    if (u.is_letter())
      out += a.symbol(u.b);
    else
      out += std::string("(") + a.symbol(u.b) + "," + a.format_set(u.letters) + "," + a.symbol(u.c) + ")";
  }
  return out + ")";
}

std::size_t template_bound(std::size_t n, LetterSet letters) {
  return power(n + 2, static_cast<std::size_t>(std::popcount(letters))) - 1;
}

TemplateWitness bsigma1_template_witness(const Word& w, std::size_t n) {
  if (n == 0) throw InputError("template witness needs n >= 1");
  auto segments = build(w, 0, w.size(), n);
  merge_ambiguous(segments);
  Template t;
  for (const auto& s : segments) t.push_back(s.unit);
  return TemplateWitness{t, template_regex(t, n)};
}

}  // namespace imprint
