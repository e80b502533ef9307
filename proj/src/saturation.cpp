#include "imprint/saturation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "imprint/error.hpp"

namespace imprint {

std::string class_name(ClassId c) {
  switch (c) {
    case ClassId::AT: return "at";
    case ClassId::Sigma1: return "sigma1";
    case ClassId::BSigma1: return "bsigma1";
    case ClassId::Sigma2: return "sigma2";
    case ClassId::FO2: return "fo2";
    case ClassId::FO: return "fo";
  }
  return "?";
}

ClassId parse_class(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (n == "at") return ClassId::AT;
  if (n == "sigma1" || n == "s1") return ClassId::Sigma1;
  if (n == "bsigma1" || n == "bs1" || n == "pt") return ClassId::BSigma1;
  if (n == "sigma2" || n == "s2") return ClassId::Sigma2;
  if (n == "fo2") return ClassId::FO2;
  if (n == "fo") return ClassId::FO;
  throw InputError("unknown class '" + std::string(name) + "' (expected at, sigma1, bsigma1, sigma2, fo2 or fo)");
}

bool is_pointed(ClassId c) noexcept { return c == ClassId::Sigma1 || c == ClassId::Sigma2; }
bool needs_cont(ClassId c) noexcept { return c == ClassId::FO2 || c == ClassId::Sigma2; }
bool synthesizable(ClassId c) noexcept {
  return c == ClassId::AT || c == ClassId::Sigma1 || c == ClassId::BSigma1 || c == ClassId::FO2;
}

std::vector<Elem> star_images(const RatingMap& rho) {
  std::vector<Elem> out;
  for (LetterSet b = 0; b <= rho.alphabet.full(); ++b) out.push_back(rm_eval(rho, alphabet_languages(rho.alphabet, b).star));
  return out;
}

std::vector<Elem> exact_images(const RatingMap& rho) {
  std::vector<Elem> out;
  for (LetterSet b = 0; b <= rho.alphabet.full(); ++b) out.push_back(rm_eval(rho, alphabet_languages(rho.alphabet, b).exact));
  return out;
}

namespace {

// Worklist fixpoint over antichains, one antichain per key (monoid element;
// a single key for the universal engine).
class Engine {
 public:
  Engine(const Semiring& r, const MonoidMorphism* alpha, const SaturationOptions& opts)
      : r_(r), alpha_(alpha), opts_(opts), per_key_(alpha ? alpha->size() : 1) {}

  void add(MonoidElem key, const Elem& x) {
    auto& bucket = per_key_[key];
    for (std::size_t i : bucket)
      if (alive_[i] && r_.leq(x, items_[i])) return;
    std::erase_if(bucket, [&](std::size_t i) {
      if (!alive_[i]) return true;
      if (r_.leq(items_[i], x)) {
        alive_[i] = 0;
        return true;
      }
      return false;
    });
    if (items_.size() >= opts_.max_elements) throw CapExceeded("max-elements", opts_.max_elements, "saturation");
    keys_.push_back(key);
    items_.push_back(x);
    alive_.push_back(1);
    bucket.push_back(items_.size() - 1);
    work_.push_back(items_.size() - 1);
    ++stats_.inserted;
  }

  template <class Rule>
  void run(Rule&& rule) {
    while (!work_.empty()) {
      std::size_t i;
      if (opts_.reverse_order) {
        i = work_.back();
        work_.pop_back();
      } else {
        i = work_.front();
        work_.pop_front();
      }
      if (!alive_[i]) continue;
      ++stats_.iterations;
      const MonoidElem key = keys_[i];
      const Elem x = items_[i];
      const std::size_t n = items_.size();
      for (std::size_t j = 0; j < n; ++j) {
        if (!alive_[j]) continue;
        const Elem y = items_[j];
        const MonoidElem kj = keys_[j];
        stats_.products += 2;
        add(alpha_ ? alpha_->multiply(key, kj) : 0, r_.mul(x, y));
        add(alpha_ ? alpha_->multiply(kj, key) : 0, r_.mul(y, x));
        if (!alive_[i]) break;
      }
      rule(key, x);
    }
  }

  std::vector<std::vector<Elem>> result() {
    std::vector<std::vector<Elem>> out(per_key_.size());
    for (std::size_t k = 0; k < per_key_.size(); ++k)
      for (std::size_t i : per_key_[k])
        if (alive_[i]) out[k].push_back(items_[i]);
    stats_.generators = 0;
    for (const auto& v : out) stats_.generators += v.size();
    return out;
  }

  SaturationStats stats_;

 private:
  const Semiring& r_;
  const MonoidMorphism* alpha_;
  SaturationOptions opts_;
  std::vector<std::vector<std::size_t>> per_key_;
  std::vector<Elem> items_;
  std::vector<MonoidElem> keys_;
  std::vector<char> alive_;
  std::deque<std::size_t> work_;
};

// Antichain of idempotents per sub-alphabet, for the FO2 rule.
struct IdempotentPool {
  std::vector<std::vector<Elem>> by_alphabet;

  // Returns false when e is dominated by an element already in the pool.
  bool add(const Semiring& r, LetterSet b, const Elem& e) {
    auto& v = by_alphabet[b];
    for (const auto& f : v)
      if (r.leq(e, f)) return false;
    std::erase_if(v, [&](const Elem& f) { return r.leq(f, e); });
    v.push_back(e);
    return true;
  }
};

void require_cont(const RatingMap& rho, ClassId cls) {
  if (!rho.alphabet_compatible())
    throw InputError(class_name(cls) + " saturation needs an alphabet compatible rating map (augment it first)");
}

}  // namespace

ImprintSet saturate_universal(const RatingMap& rho, ClassId cls, const SaturationOptions& opts,
                              SaturationStats* stats) {
  if (cls == ClassId::AT) return at_imprint(rho);
  if (is_pointed(cls)) throw InputError(class_name(cls) + " is handled by the pointed engine");
  const Semiring& r = rho.R;
  Engine engine(r, nullptr, opts);
  engine.add(0, r.one());
  for (const auto& l : rho.letters) engine.add(0, l);

  if (cls == ClassId::BSigma1) {
    for (const auto& x : exact_images(rho)) engine.add(0, r.omega(x));
    engine.run([](MonoidElem, const Elem&) {});
  } else if (cls == ClassId::FO) {
    engine.run([&](MonoidElem, const Elem& x) {
      Elem e = r.omega(x);
      engine.add(0, r.add(e, r.mul(e, x)));
    });
  } else if (cls == ClassId::FO2) {
    require_cont(rho, cls);
    auto stars = star_images(rho);
    IdempotentPool pool{std::vector<std::vector<Elem>>(stars.size())};
    engine.run([&](MonoidElem, const Elem& x) {
      for (LetterSet b : rho.cont(x)) {
        Elem e = r.omega(rho.with_cont(x, b));
        if (!pool.add(r, b, e)) continue;
        Elem left = r.mul(e, stars[b]);
        // copy: the pool may change while we add
        auto partners = pool.by_alphabet[b];
        for (const auto& f : partners) {
          engine.add(0, r.mul(left, f));
          engine.add(0, r.mul(r.mul(f, stars[b]), e));
        }
      }
    });
  } else {
    throw InputError("unsupported class for the universal engine");
  }
  auto gens = engine.result();
  if (stats) *stats = engine.stats_;
  return ImprintSet(r, gens[0]);
}

PointedImprintSet saturate_pointed(const MonoidMorphism& alpha, const RatingMap& rho, ClassId cls,
                                   const SaturationOptions& opts, SaturationStats* stats) {
  if (!is_pointed(cls)) throw InputError(class_name(cls) + " is handled by the universal engine");
  if (!(alpha.alphabet() == rho.alphabet)) throw InputError("morphism and rating map use different alphabets");
  const Semiring& r = rho.R;
  Engine engine(r, &alpha, opts);
  engine.add(alpha.identity(), r.one());
  for (Symbol a = 0; a < rho.alphabet.size(); ++a) engine.add(alpha.letter_image(a), rho.letter(a));

  if (cls == ClassId::Sigma1) {
    engine.add(alpha.identity(), rm_eval(rho, Nfa::universal(rho.alphabet)));
    engine.run([](MonoidElem, const Elem&) {});
  } else {
    require_cont(rho, cls);
    auto stars = star_images(rho);
    engine.run([&](MonoidElem s, const Elem& x) {
      if (!alpha.is_idempotent(s)) return;
      Elem f = r.omega(x);
      for (LetterSet b : rho.cont(f)) engine.add(s, r.mul(r.mul(f, stars[b]), f));
    });
  }
  auto gens = engine.result();
  if (stats) *stats = engine.stats_;
  PointedImprintSet out(alpha.size(), r);
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (const auto& g : gens[s]) out.insert(s, g);
  return out;
}

ImprintSet at_imprint(const RatingMap& rho) { return ImprintSet(rho.R, exact_images(rho)); }

ImprintSet at_imprint(const RatingMap& rho, const Nfa& language) {
  ImprintSet out(rho.R);
  for (LetterSet b = 0; b <= rho.alphabet.full(); ++b) {
    auto langs = alphabet_languages(rho.alphabet, b);
    if (nfa_intersects(langs.exact, language)) out.insert(rm_eval(rho, langs.exact));
  }
  if (out.empty()) out.insert(rho.R.zero());
  return out;
}

namespace {

void check_antichain(const ImprintSet& s, const std::string& where, std::vector<std::string>& out) {
  const auto& g = s.maximal();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j && s.semiring().leq(g[i], g[j])) {
        out.push_back(where + ": generators are not an antichain");
        return;
      }
}

}  // namespace

std::vector<std::string> check_imprint(const ImprintSet& s, const RatingMap& rho, ClassId cls, std::size_t cap) {
  std::vector<std::string> out;
  const Semiring& r = rho.R;
  check_antichain(s, "imprint", out);
  if (!s.contains(r.one())) out.push_back("1_R is missing");
  if (!s.contains(r.zero())) out.push_back("0_R is missing (not a downset)");
  const auto& g = s.maximal();
  for (const auto& x : g)
    for (const auto& y : g)
      if (!s.contains(r.mul(x, y))) {
        out.push_back("not closed under multiplication: " + r.format(x) + " . " + r.format(y));
        goto products_done;
      }
products_done:
  for (const auto& w : rm_word_images(rho, cap))
    if (!s.contains(w)) {
      out.push_back("trivial imprint element missing: " + r.format(w));
      break;
    }
  // explicit downset closure on small instances
  if (!g.empty()) {
    std::uint64_t total = 0;
    for (const auto& x : g) total += r.count_below(x);
    if (total <= 4096)
      for (const auto& m : s.members(4096))
        if (!s.contains(m)) out.push_back("member enumeration escaped the downset");
  }
  switch (cls) {
    case ClassId::BSigma1:
      for (const auto& x : exact_images(rho))
        if (!s.contains(r.omega(x))) {
          out.push_back("BSIGMA1 rule not closed at " + r.format(x));
          break;
        }
      break;
    case ClassId::FO:
      for (const auto& x : g) {
        Elem e = r.omega(x);
        if (!s.contains(r.add(e, r.mul(e, x)))) out.push_back("FO rule not closed at " + r.format(x));
      }
      break;
    case ClassId::FO2: {
      auto stars = star_images(rho);
      for (const auto& x : g)
        for (const auto& y : g)
          for (LetterSet b : rho.cont(x)) {
            if (!rho.cont_has(y, b)) continue;
            Elem e = r.omega(rho.with_cont(x, b)), f = r.omega(rho.with_cont(y, b));
            if (!s.contains(r.mul(r.mul(e, stars[b]), f))) out.push_back("FO2 rule not closed");
          }
      break;
    }
    case ClassId::AT:
      for (const auto& x : exact_images(rho))
        if (!s.contains(x)) out.push_back("atom image missing");
      break;
    default:
      out.push_back("pointed class checked against a universal imprint");
  }
  return out;
}

std::vector<std::string> check_pointed_imprint(const PointedImprintSet& p, const MonoidMorphism& alpha,
                                               const RatingMap& rho, ClassId cls, std::size_t cap) {
  std::vector<std::string> out;
  const Semiring& r = rho.R;
  for (std::size_t s = 0; s < p.monoid_size(); ++s) check_antichain(p.at(s), "pointed imprint", out);
  if (!p.contains(alpha.identity(), r.one())) out.push_back("(1_M, 1_R) is missing");
  for (std::size_t s = 0; s < p.monoid_size(); ++s)
    for (std::size_t t = 0; t < p.monoid_size(); ++t)
      for (const auto& x : p.at(s).maximal())
        for (const auto& y : p.at(t).maximal())
          if (!p.contains(alpha.multiply(static_cast<MonoidElem>(s), static_cast<MonoidElem>(t)), r.mul(x, y))) {
            out.push_back("not closed under multiplication");
            goto products_done;
          }
products_done:
  for (const auto& [s, w] : rm_pointed_word_images(alpha, rho, cap))
    if (!p.contains(s, w)) {
      out.push_back("pointed trivial imprint element missing");
      break;
    }
  if (cls == ClassId::Sigma1) {
    if (!p.contains(alpha.identity(), rm_eval(rho, Nfa::universal(rho.alphabet))))
      out.push_back("SIGMA1 rule: (1_M, rho(A*)) missing");
  } else if (cls == ClassId::Sigma2) {
    auto stars = star_images(rho);
    for (std::size_t s = 0; s < p.monoid_size(); ++s) {
      if (!alpha.is_idempotent(static_cast<MonoidElem>(s))) continue;
      for (const auto& x : p.at(s).maximal()) {
        Elem f = r.omega(x);
        for (LetterSet b : rho.cont(f))
          if (!p.contains(s, r.mul(r.mul(f, stars[b]), f))) out.push_back("SIGMA2 rule not closed");
      }
    }
  } else {
    out.push_back("universal class checked against a pointed imprint");
  }
  return out;
}

std::vector<LangMask> mask_downset(const std::vector<LangMask>& maxima, std::size_t cap) {
  std::set<LangMask> out;
  for (LangMask m : maxima) {
    for (LangMask sub = m;; sub = (sub - 1) & m) {
      out.insert(sub);
      if (out.size() > cap) throw CapExceeded("max-elements", cap, "subset table");
      if (sub == 0) break;
    }
  }
  return {out.begin(), out.end()};
}

namespace {

// Masks over the languages other than `skip`, packed in order.
LangMask drop_bit(LangMask m, std::size_t skip) {
  LangMask low = m & ((LangMask{1} << skip) - 1);
  LangMask high = skip + 1 >= 64 ? 0 : (m >> (skip + 1)) << skip;
  return low | high;
}

}  // namespace

CoveringDecision decide_universal_covering(const Extension& ext, ClassId cls, std::optional<std::size_t> target_index,
                                           const SaturationOptions& opts) {
  if (is_pointed(cls)) throw InputError(class_name(cls) + " is not a Boolean algebra; use the pointed route");
  if (ext.languages == 0) throw InputError("covering needs an extension built from a multiset");
  if (target_index && *target_index >= ext.languages) throw InputError("target index out of range");
  CoveringDecision d;
  d.cls = cls;
  Extension used = needs_cont(cls) ? rm_augment_extension(ext) : ext;
  d.imprint = saturate_universal(used.tau, cls, opts, &d.stats);
  std::vector<LangMask> maxima;
  for (const auto& g : d.imprint->maximal()) maxima.push_back(used.flags(g));
  d.pulled = mask_downset(maxima, opts.max_elements);
  const LangMask all = used.all_flags();
  d.coverable = std::find(d.pulled.begin(), d.pulled.end(), all) == d.pulled.end();
  for (LangMask m : d.pulled) {
    if (target_index) {
      if (m >> *target_index & 1u) d.noncoverable.push_back(drop_bit(m, *target_index));
    } else {
      d.noncoverable.push_back(m);
    }
  }
  std::sort(d.noncoverable.begin(), d.noncoverable.end());
  d.used = std::move(used);
  return d;
}

CoveringDecision decide_pointed_covering(const RecognizingMorphism& alpha, const Extension& ext, ClassId cls,
                                         const SaturationOptions& opts) {
  if (!is_pointed(cls)) throw InputError(class_name(cls) + " uses the universal route");
  if (ext.languages == 0) throw InputError("covering needs an extension built from a multiset");
  CoveringDecision d;
  d.cls = cls;
  Extension used = needs_cont(cls) ? rm_augment_extension(ext) : ext;
  d.pointed = saturate_pointed(alpha.morphism, used.tau, cls, opts, &d.stats);
  std::vector<LangMask> maxima;
  for (MonoidElem s = 0; s < alpha.accepting.size(); ++s)
    if (alpha.accepting[s])
      for (const auto& g : d.pointed->at(s).maximal()) maxima.push_back(used.flags(g));
  d.pulled = mask_downset(maxima, opts.max_elements);
  d.coverable = std::find(d.pulled.begin(), d.pulled.end(), used.all_flags()) == d.pulled.end();
  d.noncoverable = d.pulled;
  d.used = std::move(used);
  return d;
}

}  // namespace imprint
