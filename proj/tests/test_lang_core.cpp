#include <random>

#include "doctest.h"
#include "imprint/error.hpp"
#include "imprint/nfa.hpp"
#include "imprint/regex.hpp"
#include "support.hpp"

using namespace imprint;
using testsupport::nfa_of;

TEST_CASE("alphabet validation") {
  Alphabet a("cab");
  CHECK(a.symbols() == "abc");
  CHECK(a.index_of('b') == Symbol{1});
  CHECK_FALSE(a.index_of('z').has_value());
  CHECK_THROWS_AS(Alphabet("aa"), InputError);
  CHECK_THROWS_AS(Alphabet(""), InputError);
  CHECK_THROWS_AS(Alphabet("a|"), InputError);
  CHECK_THROWS_AS(Alphabet("abcdefghijklmnopq"), InputError);
  CHECK(a.format(a.parse_word("cab")) == "cab");
}

TEST_CASE("regex parse shapes") {
  Alphabet a("abc");
  Regex r = regex_parse("a(b|c)*", a);
  REQUIRE(r.op() == Regex::Op::Concat);
  CHECK(r.left().op() == Regex::Op::Letter);
  CHECK(r.right().op() == Regex::Op::Star);
  CHECK(r.right().inner().op() == Regex::Op::Union);
  CHECK(regex_parse("%eps", a).op() == Regex::Op::Epsilon);
  CHECK(regex_parse("%empty", a).op() == Regex::Op::Empty);
  CHECK(regex_parse(" a b ", a).op() == Regex::Op::Concat);
  CHECK_THROWS_AS(regex_parse("a(b", a), InputError);
  CHECK_THROWS_AS(regex_parse("ad", a), InputError);
  CHECK_THROWS_AS(regex_parse("|a", a), InputError);
  CHECK_THROWS_AS(regex_parse("%foo", a), InputError);

  Regex p = regex_parse("(ab)+", a);
  CHECK(p.op() == Regex::Op::Plus);
  Nfa n = regex_to_nfa(p, a);
  CHECK(n.accepts(a.parse_word("abab")));
  CHECK_FALSE(n.accepts(a.parse_word("aba")));
}

TEST_CASE("regex printing round-trips") {
  Alphabet a("abc");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Regex r = testsupport::random_regex(rng, 3, 4);
    std::string text = r.to_string(a);
    Regex back = regex_parse(text, a);
    CHECK(nfa_equivalent(regex_to_nfa(r, a), regex_to_nfa(back, a)));
  }
}

TEST_CASE("regex_to_nfa basics") {
  Alphabet a("ab");
  Nfa eps = regex_to_nfa(Regex::epsilon(), a);
  CHECK(eps.accepts({}));
  CHECK_FALSE(eps.accepts(a.parse_word("a")));
  Nfa ap = nfa_of("a+", a);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(ap.accepts(Word(k, 0)));
  CHECK_FALSE(ap.accepts({}));
  CHECK_FALSE(ap.accepts(a.parse_word("b")));
  CHECK(nfa_is_empty(nfa_of("%empty", a)));
}

TEST_CASE("random regexes agree with direct matcher") {
  std::mt19937_64 rng(20240501);
  for (std::size_t k = 1; k <= 3; ++k) {
    Alphabet a(std::string("abc").substr(0, k));
    auto words = testsupport::words_upto(k, 6);
    for (int i = 0; i < 60; ++i) {
      Regex r = testsupport::random_regex(rng, k, 4);
      Nfa n = regex_to_nfa(r, a);
      for (const auto& w : words) REQUIRE(n.accepts(w) == testsupport::matches(r, w));
    }
  }
}

TEST_CASE("combine operations") {
  Alphabet a("abc");
  Nfa x = nfa_of("a+|b+", a), y = nfa_of("b+|c+", a), z = nfa_of("c+|a+", a);
  Nfa xy = nfa_combine(CombineOp::Intersection, x, y);
  CHECK(xy.accepts(a.parse_word("b")));
  CHECK(xy.accepts(a.parse_word("bb")));
  CHECK_FALSE(xy.accepts(a.parse_word("a")));
  CHECK_FALSE(xy.accepts(a.parse_word("c")));
  CHECK(nfa_equivalent(xy, nfa_of("b+", a)));
  CHECK(nfa_is_empty(nfa_intersection(xy, z)));
  CHECK(nfa_equivalent(nfa_union(x, nfa_of("%empty", a)), x));
  CHECK(nfa_equivalent(nfa_concat(nfa_of("a*", a), nfa_of("b", a)), nfa_of("a*b", a)));
  CHECK(nfa_equivalent(nfa_concat(nfa_of("a*", a), nfa_of("b*", a)), nfa_of("a*b*", a)));
  CHECK_THROWS_AS(nfa_union(x, nfa_of("a", Alphabet("ab"))), InputError);
}

TEST_CASE("combine agrees with matcher on random pairs") {
  std::mt19937_64 rng(99);
  Alphabet a("ab");
  auto words = testsupport::words_upto(2, 6);
  for (int i = 0; i < 40; ++i) {
    Regex r = testsupport::random_regex(rng, 2, 3), s = testsupport::random_regex(rng, 2, 3);
    Nfa nr = regex_to_nfa(r, a), ns = regex_to_nfa(s, a);
    Nfa u = nfa_union(nr, ns), in = nfa_intersection(nr, ns), c = nfa_concat(nr, ns);
    Regex rs = Regex::cat(r, s);
    for (const auto& w : words) {
      bool mr = testsupport::matches(r, w), ms = testsupport::matches(s, w);
      REQUIRE(u.accepts(w) == (mr || ms));
      REQUIRE(in.accepts(w) == (mr && ms));
      REQUIRE(c.accepts(w) == testsupport::matches(rs, w));
    }
  }
}

TEST_CASE("complement") {
  Alphabet a("abc");
  CHECK(nfa_is_empty(nfa_complement(Nfa::universal(a))));
  CHECK(nfa_equivalent(nfa_complement(nfa_of("%empty", a)), Nfa::universal(a)));
  Nfa nob = nfa_complement(nfa_of("(a|b|c)*b(a|b|c)*", a));
  CHECK(nob.accepts(a.parse_word("ac")));
  CHECK_FALSE(nob.accepts(a.parse_word("ab")));
  CHECK_THROWS_AS(nfa_complement(nfa_of("(a|b)*a(a|b)(a|b)(a|b)(a|b)", a), 8), CapExceeded);
}

TEST_CASE("De Morgan on random regexes") {
  std::mt19937_64 rng(3);
  Alphabet a("ab");
  for (int i = 0; i < 30; ++i) {
    Nfa x = regex_to_nfa(testsupport::random_regex(rng, 2, 3), a);
    Nfa y = regex_to_nfa(testsupport::random_regex(rng, 2, 3), a);
    CHECK(nfa_equivalent(nfa_complement(nfa_union(x, y)), nfa_intersection(nfa_complement(x), nfa_complement(y))));
  }
}

TEST_CASE("decisions") {
  Alphabet a("abc");
  Nfa any_a = nfa_of("(a|b|c)*a(a|b|c)*", a);
  CHECK(nfa_decide({DecideQuery::Kind::Emptiness}, nfa_of("%empty", a)));
  CHECK(nfa_decide({DecideQuery::Kind::Membership, a.parse_word("ba")}, any_a));
  Nfa ap = nfa_of("a+", a);
  CHECK(nfa_decide({DecideQuery::Kind::Inclusion, {}, &any_a}, ap));
  CHECK_FALSE(nfa_decide({DecideQuery::Kind::Inclusion, {}, &ap}, any_a));
  for (const auto& w : testsupport::words_upto(3, 5))
    if (ap.accepts(w)) CHECK(any_a.accepts(w));
  Alphabet ab("ab");
  Nfa full = Nfa::universal(ab);
  CHECK(nfa_decide({DecideQuery::Kind::Equivalence, {}, &full}, nfa_of("(a|b)*", ab)));
  CHECK_THROWS_AS(nfa_decide({DecideQuery::Kind::Inclusion}, ap), InputError);
}

TEST_CASE("determinize and minimize") {
  Alphabet a("ab");
  Nfa n = nfa_of("(a|b)*a(a|b)", a);
  Dfa d = determinize(n);
  Dfa m = minimize(d);
  CHECK(m.states == 4);
  for (const auto& w : testsupport::words_upto(2, 7)) REQUIRE(m.accepts(w) == n.accepts(w));
  CHECK(minimize(determinize(Nfa::universal(a))).states == 1);
}

TEST_CASE("upward closure") {
  Alphabet a("ab");
  Nfa up = upward_closure(regex_to_nfa(regex_word(a.parse_word("ab")), a));
  CHECK(up.accepts(a.parse_word("ab")));
  CHECK(up.accepts(a.parse_word("aab")));
  CHECK(up.accepts(a.parse_word("abb")));
  CHECK(up.accepts(a.parse_word("bab")));
  CHECK_FALSE(up.accepts(a.parse_word("ba")));
  Word ab = a.parse_word("ab");
  for (const auto& w : testsupport::words_upto(2, 4)) REQUIRE(up.accepts(w) == testsupport::is_piece(ab, w));
  CHECK(nfa_equivalent(upward_closure(Nfa::universal(a)), Nfa::universal(a)));
  CHECK(nfa_is_empty(upward_closure(nfa_of("%empty", a))));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    Nfa l = regex_to_nfa(testsupport::random_regex(rng, 2, 3), a);
    Nfa u = upward_closure(l);
    CHECK(nfa_includes(l, u));
    CHECK(nfa_equivalent(upward_closure(u), u));
  }
}

TEST_CASE("alphabet languages") {
  Alphabet a("abc");
  auto e = alphabet_languages(a, 0);
  CHECK(nfa_equivalent(e.star, Nfa::epsilon_only(a)));
  CHECK(nfa_equivalent(e.exact, Nfa::epsilon_only(a)));
  auto ab = alphabet_languages(a, 0b011);
  CHECK(ab.exact.accepts(a.parse_word("ab")));
  CHECK(ab.exact.accepts(a.parse_word("ba")));
  CHECK_FALSE(ab.exact.accepts(a.parse_word("a")));
  CHECK_FALSE(ab.exact.accepts(a.parse_word("abc")));
  for (const auto& w : testsupport::words_upto(3, 3)) REQUIRE(ab.exact.accepts(w) == (letters_of(w) == 0b011));
  Nfa cac = nfa_of("c(ac)+", a);
  CHECK_FALSE(nfa_intersects(ab.exact, cac));
  CHECK(nfa_intersects(alphabet_languages(a, 0b101).exact, cac));

  for (LetterSet b = 0; b < 8; ++b) {
    auto langs = alphabet_languages(a, b);
    CHECK(nfa_includes(langs.exact, langs.star));
    Nfa def = langs.star;
    for (Symbol s = 0; s < 3; ++s)
      if (b >> s & 1u) def = nfa_intersection(def, Nfa::containing_letter(a, s));
    CHECK(nfa_equivalent(def, langs.exact));
    CHECK(nfa_equivalent(langs.exact, regex_to_nfa(regex_exact_alphabet(b), a)));
    CHECK(nfa_equivalent(langs.star, regex_to_nfa(regex_star_of(b), a)));
  }
}

TEST_CASE("nfa json round-trip") {
  Alphabet a("ab");
  Nfa n = nfa_of("a(b|a)*b", a);
  Nfa back = Nfa::from_json(n.to_json());
  CHECK(nfa_equivalent(n, back));
  CHECK(back.transition_count() == n.transition_count());
  auto j = n.to_json();
  j["transitions"].push_back({0, "z", 1});
  CHECK_THROWS_AS(Nfa::from_json(j), InputError);
}

TEST_CASE("trim and shortest word") {
  Alphabet a("ab");
  Nfa n(a, 4);
  n.set_initial(0);
  n.add_transition(0, 0, 1);
  n.add_transition(1, 1, 2);
  n.add_transition(0, 1, 3);
  n.set_final(2);
  Nfa t = nfa_trim(n);
  CHECK(t.state_count() == 3);
  CHECK(nfa_equivalent(t, n));
  CHECK(nfa_shortest_word(n) == a.parse_word("ab"));
  CHECK_FALSE(nfa_shortest_word(nfa_of("%empty", a)).has_value());
  CHECK(nfa_trim(nfa_of("%empty", a)).state_count() == 1);
}
