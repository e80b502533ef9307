#include "imprint/cover.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "imprint/error.hpp"

namespace imprint {

using nlohmann::json;

// ---- regex extraction ---------------------------------------------------------

std::optional<Regex> nfa_to_regex(const Nfa& input, std::size_t max_size) {
  Nfa n = nfa_trim(input);
  if (nfa_is_empty(n)) return Regex::empty();
  const std::size_t q = n.state_count(), total = q + 2, start = q, final = q + 1;
  std::vector<Regex> e(total * total, Regex::empty());
  auto at = [&](std::size_t i, std::size_t j) -> Regex& { return e[i * total + j]; };
  auto present = [](const Regex& r) { return r.op() != Regex::Op::Empty; };
  for (State s = 0; s < q; ++s) {
    if (n.is_initial(s)) at(start, s) = Regex::epsilon();
    if (n.is_final(s)) at(s, final) = Regex::epsilon();
    for (Symbol a = 0; a < n.alphabet().size(); ++a)
      for (State t : n.successors(s, a)) at(s, t) = Regex::alt_simplified(at(s, t), Regex::letter(a));
  }
  std::vector<char> alive(total, 1);
  for (std::size_t round = 0; round < q; ++round) {
    // eliminate the live state with the fewest in x out edges
    std::size_t best = total, best_cost = 0;
    for (std::size_t s = 0; s < q; ++s) {
      if (!alive[s]) continue;
      std::size_t in = 0, out = 0;
      for (std::size_t t = 0; t < total; ++t) {
        if (!alive[t] || t == s) continue;
        in += present(at(t, s));
        out += present(at(s, t));
      }
      if (best == total || in * out < best_cost) best = s, best_cost = in * out;
    }
    const std::size_t s = best;
    Regex loop = present(at(s, s)) ? Regex::star_simplified(at(s, s)) : Regex::epsilon();
    for (std::size_t p = 0; p < total; ++p) {
      if (!alive[p] || p == s || !present(at(p, s))) continue;
      for (std::size_t r = 0; r < total; ++r) {
        if (!alive[r] || r == s || !present(at(s, r))) continue;
        Regex path = Regex::cat_simplified(Regex::cat_simplified(at(p, s), loop), at(s, r));
        at(p, r) = Regex::alt_simplified(at(p, r), path);
        if (at(p, r).size() > max_size) return std::nullopt;
      }
    }
    alive[s] = 0;
  }
  return at(start, final);
}

CoverPiece piece_from_regex(const Regex& r, const Alphabet& a, std::string label) {
  return CoverPiece{regex_to_nfa(r, a), r, std::move(label)};
}

CoverPiece piece_from_nfa(const Nfa& n, std::string label) {
  Nfa small = nfa_trim(minimize(determinize(n)).to_nfa());
  CoverPiece p{small, nfa_to_regex(small), std::move(label)};
  return p;
}

void cover_prune(Cover& c) {
  std::vector<CoverPiece> kept;
  std::set<std::string> seen;
  for (auto& p : c.pieces) {
    if (nfa_is_empty(p.nfa)) continue;
    if (p.regex && !seen.insert(p.regex->to_string(p.nfa.alphabet())).second) continue;
    kept.push_back(std::move(p));
  }
  c.pieces = std::move(kept);
}

// ---- serialization ------------------------------------------------------------

json Cover::to_json() const {
  json pieces_json = json::array();
  const Alphabet& a = target.alphabet();
  for (const auto& p : pieces) {
    json j;
    if (p.regex)
      j["regex"] = p.regex->to_string(a);
    else
      j["nfa"] = p.nfa.to_json();
    if (!p.label.empty()) j["label"] = p.label;
    pieces_json.push_back(std::move(j));
  }
  json out{{"class", class_name(cls)},
           {"target", target.to_json()},
           {"pieces", std::move(pieces_json)},
           {"optimal", optimal},
           {"provenance", provenance}};
  out["k"] = k ? json(*k) : json(nullptr);
  return out;
}

Cover Cover::from_json(const json& j) {
  try {
    Cover c;
    c.cls = parse_class(j.at("class").get<std::string>());
    c.target = Nfa::from_json(j.at("target"));
    const Alphabet& a = c.target.alphabet();
    for (const auto& pj : j.at("pieces")) {
      std::string label = pj.value("label", std::string{});
      if (pj.contains("regex"))
        c.pieces.push_back(piece_from_regex(regex_parse(pj.at("regex").get<std::string>(), a), a, label));
      else
        c.pieces.push_back(CoverPiece{Nfa::from_json(pj.at("nfa")), std::nullopt, label});
    }
    c.optimal = j.value("optimal", true);
    c.provenance = j.value("provenance", std::string{});
    if (j.contains("k") && !j.at("k").is_null()) c.k = j.at("k").get<std::size_t>();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed cover JSON: ") + e.what());
  }
}

// ---- AT -----------------------------------------------------------------------

namespace {

Cover at_cover_filtered(const Alphabet& a, const Nfa* language) {
  Cover c;
  c.cls = ClassId::AT;
  c.target = language ? *language : Nfa::universal(a);
  for (LetterSet b = 0; b <= a.full(); ++b) {
    CoverPiece p = piece_from_regex(regex_exact_alphabet(b), a, a.format_set(b) + "^⊛");
    if (language && !nfa_intersects(p.nfa, *language)) continue;
    c.pieces.push_back(std::move(p));
  }
  c.provenance = language ? "atoms meeting the target" : "all atoms";
  return c;
}

}  // namespace

Cover at_cover(const Alphabet& a) { return at_cover_filtered(a, nullptr); }

Cover at_cover(const Alphabet& a, const Nfa& language) { return at_cover_filtered(a, &language); }

// ---- SIGMA1 -------------------------------------------------------------------

namespace {

bool is_subword(const Word& u, const Word& w) {
  std::size_t i = 0;
  for (Symbol s : w)
    if (i < u.size() && u[i] == s) ++i;
  return i == u.size();
}

Nfa target_of(const MonoidMorphism& alpha, const std::vector<MonoidElem>& elements) {
  // the minimal DFA over the right Cayley graph of alpha
  const Alphabet& a = alpha.alphabet();
  Nfa n(a, alpha.size());
  n.set_initial(alpha.identity());
  for (MonoidElem m : elements) n.set_final(m);
  for (MonoidElem m = 0; m < alpha.size(); ++m)
    for (Symbol s = 0; s < a.size(); ++s) n.add_transition(m, s, alpha.multiply(m, alpha.letter_image(s)));
  return nfa_trim(n);
}

}  // namespace

Cover sigma1_cover(const MonoidMorphism& alpha, const std::vector<MonoidElem>& elements, std::size_t max_words) {
  const Alphabet& a = alpha.alphabet();
  std::vector<char> wanted(alpha.size(), 0);
  for (MonoidElem m : elements) wanted.at(m) = 1;
  std::vector<Word> found;
  std::deque<std::pair<Word, MonoidElem>> queue{{Word{}, alpha.identity()}};
  std::size_t visited = 0;
  while (!queue.empty()) {
    auto [w, m] = std::move(queue.front());
    queue.pop_front();
    if (++visited > max_words)
      throw CapExceeded("sigma1-words", max_words, "sigma1_cover (use a smaller recognizer)");
    if (std::any_of(found.begin(), found.end(), [&](const Word& f) { return is_subword(f, w); })) continue;
    if (wanted[m]) {
      found.push_back(w);
      continue;
    }
    if (w.size() >= alpha.size()) continue;
    for (Symbol s = 0; s < a.size(); ++s) {
      Word next = w;
      next.push_back(s);
      queue.emplace_back(std::move(next), alpha.multiply(m, alpha.letter_image(s)));
    }
  }
  Cover c;
  c.cls = ClassId::Sigma1;
  c.target = target_of(alpha, elements);
  for (const auto& w : found)
    c.pieces.push_back(piece_from_regex(regex_upward_word(w, a.full()), a, "up(" + a.format(w) + ")"));
  c.provenance = "upward closures of subword-minimal words of length <= |M| = " + std::to_string(alpha.size());
  return c;
}

// ---- assembly -----------------------------------------------------------------

Cover cover_restrict(const Cover& c, const Nfa& target) {
  Cover out;
  out.cls = c.cls;
  out.target = target;
  out.k = c.k;
  out.optimal = c.optimal;
  out.provenance = c.provenance + "; restricted to pieces meeting the target";
  for (const auto& p : c.pieces)
    if (nfa_intersects(p.nfa, target)) out.pieces.push_back(p);
  return out;
}

Cover cover_union(const std::vector<Cover>& parts, const Nfa& target) {
  Cover out;
  out.target = target;
  if (!parts.empty()) {
    out.cls = parts.front().cls;
    out.k = parts.front().k;
  }
  for (const auto& c : parts) {
    out.optimal = out.optimal && c.optimal;
    out.pieces.insert(out.pieces.end(), c.pieces.begin(), c.pieces.end());
    if (!c.provenance.empty()) out.provenance += (out.provenance.empty() ? "" : "; ") + c.provenance;
  }
  return out;
}

ImprintSet cover_imprint(const Cover& c, const RatingMap& rho) {
  ImprintSet out(rho.R);
  for (const auto& p : c.pieces) out.insert(rm_eval(rho, p.nfa));
  return out;
}

// ---- verification -------------------------------------------------------------

namespace {

bool is_atom_union(const Nfa& n) {
  const Alphabet& a = n.alphabet();
  for (LetterSet b = 0; b <= a.full(); ++b) {
    Nfa atom = alphabet_languages(a, b).exact;
    if (nfa_intersects(atom, n) && !nfa_includes(atom, n)) return false;
  }
  return true;
}

Nfa union_of(const std::vector<CoverPiece>& pieces, const Alphabet& a) {
  Nfa u = Nfa::empty_language(a);
  for (const auto& p : pieces) u = nfa_union(u, p.nfa);
  return u;
}

}  // namespace

CoverReport verify_cover(const Cover& c, const Nfa& target, const std::vector<Nfa>& against, bool class_check,
                         const RatingMap* rho) {
  for (const auto& p : c.pieces) require_same_alphabet(p.nfa, target, "verify_cover");
  for (const auto& l : against) require_same_alphabet(l, target, "verify_cover");
  CoverReport r;
  r.covers_target = nfa_includes(target, union_of(c.pieces, target.alphabet()));
  r.separating = true;
  const bool checkable = c.cls == ClassId::AT || c.cls == ClassId::Sigma1 || c.cls == ClassId::BSigma1;
  r.class_check = !class_check ? "off" : checkable ? "checked" : "by-construction, unchecked";
  for (const auto& p : c.pieces) {
    PieceReport pr;
    pr.empty = nfa_is_empty(p.nfa);
    for (std::size_t i = 0; i < against.size() && !pr.misses; ++i)
      if (pr.empty || !nfa_intersects(p.nfa, against[i])) pr.misses = i;
    r.separating = r.separating && pr.misses.has_value();
    if (class_check && checkable) {
      switch (c.cls) {
        case ClassId::AT: pr.class_ok = is_atom_union(p.nfa); break;
        case ClassId::Sigma1: pr.class_ok = nfa_includes(upward_closure(p.nfa), p.nfa); break;
        default: pr.class_ok = c.k.has_value() && is_pt_k(p.nfa, *c.k); break;
      }
      r.class_ok = r.class_ok && *pr.class_ok;
    }
    r.pieces.push_back(pr);
  }
  if (rho) r.imprint = cover_imprint(c, *rho);
  return r;
}

json CoverReport::to_json() const {
  json pieces_json = json::array();
  for (const auto& p : pieces) {
    json j{{"empty", p.empty}};
    j["misses"] = p.misses ? json(*p.misses) : json(nullptr);
    if (p.class_ok) j["class_ok"] = *p.class_ok;
    pieces_json.push_back(std::move(j));
  }
  return json{{"covers_target", covers_target}, {"separating", separating}, {"class_ok", class_ok},
              {"class_check", class_check},     {"pieces", std::move(pieces_json)}};
}

}  // namespace imprint
