#include "imprint/rating_map.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "imprint/error.hpp"

namespace imprint {

bool RatingMap::cont_has(const Elem& r, LetterSet b) const {
  if (!cont_component) throw InputError("rating map is not alphabet compatible");
  return r.test(R.components()[*cont_component].offset + b);
}

std::vector<LetterSet> RatingMap::cont(const Elem& r) const {
  if (!cont_component) throw InputError("rating map is not alphabet compatible");
  const auto& c = R.components()[*cont_component];
  std::vector<LetterSet> out;
  for (std::size_t b = 0; b < c.width; ++b)
    if (r.test(c.offset + b)) out.push_back(static_cast<LetterSet>(b));
  return out;
}

Elem RatingMap::with_cont(const Elem& r, LetterSet b) const {
  if (!cont_component) throw InputError("rating map is not alphabet compatible");
  Elem part;
  part.set(b);
  Elem out = r;
  R.assign_component(out, *cont_component, part);
  return out;
}

std::uint64_t Extension::flags(const Elem& r) const { return delta.apply(r).get_bits(0, languages); }

bool Extension::marked(const Elem& r) const { return languages > 0 && flags(r) == all_flags(); }

namespace {

struct Recognizer {
  Semiring semiring;
  std::vector<Elem> letters;  // component-local encodings
  Elem accept_mask;           // bits whose presence means "hits the language"
  std::string label;
};

Recognizer relation_recognizer(const Nfa& n, const std::string& kind) {
  const std::size_t q = n.state_count();
  Recognizer r{Semiring::relation(q), {}, {}, kind + "(" + std::to_string(q) + ")"};
  for (Symbol a = 0; a < n.alphabet().size(); ++a) {
    Elem e;
    for (State p = 0; p < q; ++p)
      for (State t : n.successors(p, a)) e.set(p * q + t);
    r.letters.push_back(e);
  }
  for (State i : n.initials())
    for (State f : n.finals()) r.accept_mask.set(i * q + f);
  return r;
}

Recognizer monoid_recognizer(const RecognizingMorphism& alpha) {
  auto m = std::make_shared<const MonoidMorphism>(alpha.morphism);
  Recognizer r{Semiring::powerset(m), {}, {}, "monoid(" + std::to_string(m->size()) + ")"};
  for (Symbol a = 0; a < m->alphabet().size(); ++a) {
    Elem e;
    e.set(m->letter_image(a));
    r.letters.push_back(e);
  }
  for (MonoidElem s = 0; s < alpha.accepting.size(); ++s)
    if (alpha.accepting[s]) r.accept_mask.set(s);
  return r;
}

Nfa dfa_without_sink(const Dfa& d) {
  return nfa_trim(d.to_nfa());
}

// Smallest encoding among trimmed NFA, trimmed minimal DFA and transition monoid.
Recognizer choose_recognizer(const Nfa& n) {
  std::optional<Recognizer> best;
  auto offer = [&](Recognizer r) {
    if (!best || r.semiring.width() < best->semiring.width()) best = std::move(r);
  };
  Nfa trimmed = nfa_trim(n);
  if (trimmed.state_count() <= kMaxRelationStates) offer(relation_recognizer(trimmed, "nfa"));
  try {
    Nfa dfa = dfa_without_sink(minimize(determinize(n, 1u << 16)));
    if (dfa.state_count() <= kMaxRelationStates) offer(relation_recognizer(dfa, "dfa"));
    if (!best || best->semiring.width() > kMaxPowersetMonoid) {
      auto m = transition_monoid(n, kMaxPowersetMonoid);
      offer(monoid_recognizer(m));
    }
  } catch (const CapExceeded&) {
  }
  if (!best)
    throw CapExceeded("relation-states", kMaxRelationStates,
                      "no recognizer fits (trimmed NFA has " + std::to_string(trimmed.state_count()) + " states)");
  return *best;
}

Extension assemble(const Alphabet& alphabet, std::vector<Recognizer> parts) {
  std::vector<Semiring> rings;
  for (const auto& p : parts) rings.push_back(p.semiring);
  Semiring r = Semiring::product(rings);
  RatingMap tau{alphabet, r, std::vector<Elem>(alphabet.size()), std::nullopt};
  for (Symbol a = 0; a < alphabet.size(); ++a)
    for (std::size_t i = 0; i < parts.size(); ++i) r.assign_component(tau.letters[a], i, parts[i].letters[a]);
  // masks in the full layout
  std::vector<Elem> masks(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) r.assign_component(masks[i], i, parts[i].accept_mask);
  const std::size_t n = parts.size();
  Semiring target = Semiring::flags(n);
  SemiringMorphism delta{r, target,
                         [masks](const Elem& x) {
                           Elem out;
                           for (std::size_t i = 0; i < masks.size(); ++i)
                             if (!(x & masks[i]).none()) out.set(i);
                           return out;
                         },
                         "hits"};
  Extension ext{std::move(tau), std::move(delta), n, {}};
  for (const auto& p : parts) ext.recognizers.push_back(p.label);
  return ext;
}

}  // namespace

Extension rm_from_morphism(const RecognizingMorphism& alpha) {
  return assemble(alpha.morphism.alphabet(), {monoid_recognizer(alpha)});
}

Extension rm_from_nfa(const Nfa& n) { return assemble(n.alphabet(), {relation_recognizer(n, "nfa")}); }

Extension rm_from_multiset(const std::vector<LanguageSpec>& langs) {
  if (langs.empty()) throw InputError("the multiset needs at least one language");
  std::vector<Recognizer> parts;
  std::optional<Alphabet> alphabet;
  for (const auto& l : langs) {
    const Alphabet& a = std::visit(
        [](const auto& x) -> const Alphabet& {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Nfa>)
            return x.alphabet();
          else
            return x.morphism.alphabet();
        },
        l);
    if (!alphabet) alphabet = a;
    if (!(*alphabet == a)) throw InputError("multiset languages must share one alphabet");
    if (const Nfa* n = std::get_if<Nfa>(&l))
      parts.push_back(choose_recognizer(*n));
    else
      parts.push_back(monoid_recognizer(std::get<RecognizingMorphism>(l)));
  }
  return assemble(*alphabet, std::move(parts));
}

Extension rm_alphabet_augment(const RatingMap& rho) {
  const std::size_t k = rho.alphabet.size();
  Semiring r = Semiring::product({rho.R, Semiring::alphabet_sets(k)});
  const std::size_t idx = rho.R.components().size();
  RatingMap tau{rho.alphabet, r, std::vector<Elem>(k), idx};
  for (Symbol a = 0; a < k; ++a) {
    Elem e = rho.letters[a];  // base components sit at the same offsets
    Elem part;
    part.set(LetterSet{1} << a);
    r.assign_component(e, idx, part);
    tau.letters[a] = e;
  }
  return {std::move(tau), SemiringMorphism::projection(r, 0, idx), 0, {}};
}

Extension rm_augment_extension(const Extension& ext) {
  Extension aug = rm_alphabet_augment(ext.tau);
  aug.delta = compose(ext.delta, aug.delta);
  aug.languages = ext.languages;
  aug.recognizers = ext.recognizers;
  return aug;
}

Elem rm_eval(const RatingMap& rho, const Word& w) {
  Elem x = rho.R.one();
  for (Symbol a : w) x = rho.R.mul(x, rho.letter(a));
  return x;
}

std::vector<Elem> rm_eval_states(const RatingMap& rho, const Nfa& n) {
  if (!(rho.alphabet == n.alphabet())) throw InputError("rating map and automaton use different alphabets");
  const Semiring& r = rho.R;
  std::vector<Elem> v(n.state_count(), r.zero());
  std::deque<State> queue;
  std::vector<char> queued(n.state_count(), 0);
  for (State q : n.initials()) {
    v[q] = r.one();
    queue.push_back(q);
    queued[q] = 1;
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    queued[q] = 0;
    for (Symbol a = 0; a < n.alphabet().size(); ++a) {
      auto succ = n.successors(q, a);
      if (succ.empty()) continue;
      Elem step = r.mul(v[q], rho.letter(a));
      for (State t : succ) {
        Elem nv = r.add(v[t], step);
        if (nv != v[t]) {
          v[t] = nv;
          if (!queued[t]) {
            queued[t] = 1;
            queue.push_back(t);
          }
        }
      }
    }
  }
  return v;
}

Elem rm_eval(const RatingMap& rho, const Nfa& n) {
  auto v = rm_eval_states(rho, n);
  Elem sum = rho.R.zero();
  for (State f : n.finals()) sum = rho.R.add(sum, v[f]);
  return sum;
}

std::vector<Elem> rm_word_images(const RatingMap& rho, std::size_t cap) {
  std::unordered_set<Elem, ElemHash> seen{rho.R.one()};
  std::vector<Elem> out{rho.R.one()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& l : rho.letters) {
      Elem x = rho.R.mul(out[i], l);
      if (seen.insert(x).second) {
        if (out.size() >= cap) throw CapExceeded("max-elements", cap, "trivial imprint");
        out.push_back(x);
      }
    }
  return out;
}

std::vector<std::pair<MonoidElem, Elem>> rm_pointed_word_images(const MonoidMorphism& alpha, const RatingMap& rho,
                                                                 std::size_t cap) {
  if (!(alpha.alphabet() == rho.alphabet)) throw InputError("morphism and rating map use different alphabets");
  struct PairHash {
    std::size_t operator()(const std::pair<MonoidElem, Elem>& p) const noexcept {
      return ElemHash{}(p.second) * 31 + p.first;
    }
  };
  std::unordered_set<std::pair<MonoidElem, Elem>, PairHash> seen;
  std::vector<std::pair<MonoidElem, Elem>> out{{alpha.identity(), rho.R.one()}};
  seen.insert(out.front());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Symbol a = 0; a < rho.alphabet.size(); ++a) {
      std::pair<MonoidElem, Elem> next{alpha.multiply(out[i].first, alpha.letter_image(a)),
                                       rho.R.mul(out[i].second, rho.letter(a))};
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw CapExceeded("max-elements", cap, "pointed trivial imprint");
        out.push_back(next);
      }
    }
  return out;
}

ImprintSet rm_trivial_imprint(const RatingMap& rho, std::size_t cap) {
  return ImprintSet(rho.R, rm_word_images(rho, cap));
}

PointedImprintSet rm_trivial_imprint(const MonoidMorphism& alpha, const RatingMap& rho, std::size_t cap) {
  PointedImprintSet p(alpha.size(), rho.R);
  for (const auto& [s, r] : rm_pointed_word_images(alpha, rho, cap)) p.insert(s, r);
  return p;
}

ImprintSet imprint_pullback(const SemiringMorphism& delta, const ImprintSet& s) {
  ImprintSet out(delta.target);
  for (const auto& g : s.maximal()) out.insert(delta.apply(g));
  return out;
}

PointedImprintSet imprint_pullback(const SemiringMorphism& delta, const PointedImprintSet& s) {
  PointedImprintSet out(s.monoid_size(), delta.target);
  for (std::size_t m = 0; m < s.monoid_size(); ++m)
    for (const auto& g : s.at(m).maximal()) out.insert(m, delta.apply(g));
  return out;
}

}  // namespace imprint
