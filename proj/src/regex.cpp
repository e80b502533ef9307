#include "imprint/regex.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <vector>

#include "imprint/error.hpp"
#include "imprint/nfa.hpp"

namespace imprint {

struct Regex::Node {
  Op op;
  Symbol symbol = 0;
  Regex lhs;
  Regex rhs;
  std::size_t size = 1;
};

Regex::Regex() : node_(nullptr) {}

Regex Regex::empty() { return Regex(); }

Regex Regex::epsilon() {
  auto n = std::make_shared<Node>();
  n->op = Op::Epsilon;
  return Regex(std::move(n));
}

Regex Regex::letter(Symbol s) {
  auto n = std::make_shared<Node>();
  n->op = Op::Letter;
  n->symbol = s;
  return Regex(std::move(n));
}

Regex Regex::alt(Regex lhs, Regex rhs) {
  auto n = std::make_shared<Node>();
  n->op = Op::Union;
  n->size = 1 + lhs.size() + rhs.size();
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Regex(std::move(n));
}

Regex Regex::cat(Regex lhs, Regex rhs) {
  auto n = std::make_shared<Node>();
  n->op = Op::Concat;
  n->size = 1 + lhs.size() + rhs.size();
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Regex(std::move(n));
}

Regex Regex::star(Regex inner) {
  auto n = std::make_shared<Node>();
  n->op = Op::Star;
  n->size = 1 + inner.size();
  n->lhs = std::move(inner);
  return Regex(std::move(n));
}

Regex Regex::plus(Regex inner) {
  auto n = std::make_shared<Node>();
  n->op = Op::Plus;
  n->size = 1 + inner.size();
  n->lhs = std::move(inner);
  return Regex(std::move(n));
}

Regex Regex::alt_simplified(Regex lhs, Regex rhs) {
  if (lhs.op() == Op::Empty) return rhs;
  if (rhs.op() == Op::Empty) return lhs;
  if (lhs.node_ == rhs.node_) return lhs;
  // ε | r+ = r*, ε | r* = r*
  if (lhs.op() == Op::Epsilon && (rhs.op() == Op::Star)) return rhs;
  if (rhs.op() == Op::Epsilon && (lhs.op() == Op::Star)) return lhs;
  if (lhs.op() == Op::Epsilon && rhs.op() == Op::Plus) return star(rhs.inner());
  if (rhs.op() == Op::Epsilon && lhs.op() == Op::Plus) return star(lhs.inner());
  return alt(std::move(lhs), std::move(rhs));
}

Regex Regex::cat_simplified(Regex lhs, Regex rhs) {
  if (lhs.op() == Op::Empty || rhs.op() == Op::Empty) return empty();
  if (lhs.op() == Op::Epsilon) return rhs;
  if (rhs.op() == Op::Epsilon) return lhs;
  return cat(std::move(lhs), std::move(rhs));
}

Regex Regex::star_simplified(Regex inner) {
  switch (inner.op()) {
    case Op::Empty:
    case Op::Epsilon:
      return epsilon();
    case Op::Star:
      return inner;
    case Op::Plus:
      return star(inner.inner());
    default:
      return star(std::move(inner));
  }
}

Regex::Op Regex::op() const noexcept { return node_ ? node_->op : Op::Empty; }

Symbol Regex::symbol() const {
  if (op() != Op::Letter) throw std::logic_error("Regex::symbol on non-letter node");
  return node_->symbol;
}

const Regex& Regex::left() const {
  if (!node_ || !(op() == Op::Union || op() == Op::Concat || op() == Op::Star || op() == Op::Plus))
    throw std::logic_error("Regex node has no children");
  return node_->lhs;
}

const Regex& Regex::right() const {
  if (!node_ || !(op() == Op::Union || op() == Op::Concat))
    throw std::logic_error("Regex node has no right child");
  return node_->rhs;
}

std::size_t Regex::size() const noexcept { return node_ ? node_->size : 1; }

namespace {

// Precedence: 0 union, 1 concat, 2 postfix/atom.
int precedence(Regex::Op op) {
  switch (op) {
    case Regex::Op::Union:
      return 0;
    case Regex::Op::Concat:
      return 1;
    default:
      return 2;
  }
}

void print(const Regex& r, const Alphabet& a, std::string& out) {
  auto child = [&](const Regex& c, int min_prec) {
    bool paren = precedence(c.op()) < min_prec;
    if (paren) out.push_back('(');
    print(c, a, out);
    if (paren) out.push_back(')');
  };
  switch (r.op()) {
    case Regex::Op::Empty:
      out += "%empty";
      break;
    case Regex::Op::Epsilon:
      out += "%eps";
      break;
    case Regex::Op::Letter:
      out.push_back(a.symbol(r.symbol()));
      break;
    case Regex::Op::Union:
      child(r.left(), 0);
      out.push_back('|');
      child(r.right(), 0);
      break;
    case Regex::Op::Concat:
      child(r.left(), 1);
      // "%eps" followed by a letter would still lex fine; no separator needed.
      child(r.right(), 1);
      break;
    case Regex::Op::Star:
    case Regex::Op::Plus: {
      // Postfix on a postfix node needs parentheses to stay a single factor.
      const Regex& in = r.inner();
      bool paren = precedence(in.op()) < 2 || in.op() == Regex::Op::Star || in.op() == Regex::Op::Plus;
      if (paren) out.push_back('(');
      print(in, a, out);
      if (paren) out.push_back(')');
      out.push_back(r.op() == Regex::Op::Star ? '*' : '+');
      break;
    }
  }
}

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& a) : text_(text), alphabet_(a) {}

  Regex parse() {
    Regex r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("regex syntax error at position " + std::to_string(pos_) + ": " + what +
                     " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_atom_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c != '|' && c != ')' && c != '*' && c != '+';
  }

  Regex expr() {
    Regex r = term();
    while (peek('|')) {
      ++pos_;
      r = Regex::alt(std::move(r), term());
    }
    return r;
  }

  Regex term() {
    if (!at_atom_start()) fail("expected an atom");
    Regex r = factor();
    while (at_atom_start()) r = Regex::cat(std::move(r), factor());
    return r;
  }

  Regex factor() {
    Regex r = atom();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r = Regex::star(std::move(r));
      } else if (peek('+')) {
        ++pos_;
        r = Regex::plus(std::move(r));
      } else {
        return r;
      }
    }
  }

  Regex atom() {
    skip_ws();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Regex r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == '%') {
      if (text_.substr(pos_, 4) == "%eps") {
        pos_ += 4;
        return Regex::epsilon();
      }
      if (text_.substr(pos_, 6) == "%empty") {
        pos_ += 6;
        return Regex::empty();
      }
      fail("unknown keyword");
    }
    auto idx = alphabet_.index_of(c);
    if (!idx)
      throw InputError("regex symbol '" + std::string(1, c) + "' at position " + std::to_string(pos_) +
                       " is not in alphabet '" + alphabet_.symbols() + "'");
    ++pos_;
    return Regex::letter(*idx);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

// Glushkov sets over positions.
struct Glushkov {
  std::vector<Symbol> pos_symbol;
  std::vector<std::vector<std::size_t>> follow;

  struct Info {
    bool nullable;
    std::vector<std::size_t> first;
    std::vector<std::size_t> last;
  };

  static void merge(std::vector<std::size_t>& into, const std::vector<std::size_t>& from) {
    into.insert(into.end(), from.begin(), from.end());
  }

  void link(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    for (std::size_t p : from) merge(follow[p], to);
  }

  Info walk(const Regex& r) {
    switch (r.op()) {
      case Regex::Op::Empty:
        return {false, {}, {}};
      case Regex::Op::Epsilon:
        return {true, {}, {}};
      case Regex::Op::Letter: {
        std::size_t p = pos_symbol.size();
        pos_symbol.push_back(r.symbol());
        follow.emplace_back();
        return {false, {p}, {p}};
      }
      case Regex::Op::Union: {
        Info a = walk(r.left());
        Info b = walk(r.right());
        merge(a.first, b.first);
        merge(a.last, b.last);
        return {a.nullable || b.nullable, std::move(a.first), std::move(a.last)};
      }
      case Regex::Op::Concat: {
        Info a = walk(r.left());
        Info b = walk(r.right());
        link(a.last, b.first);
        Info out{a.nullable && b.nullable, a.first, b.last};
        if (a.nullable) merge(out.first, b.first);
        if (b.nullable) merge(out.last, a.last);
        return out;
      }
      case Regex::Op::Star:
      case Regex::Op::Plus: {
        Info a = walk(r.inner());
        link(a.last, a.first);
        if (r.op() == Regex::Op::Star) a.nullable = true;
        return a;
      }
    }
    return {false, {}, {}};
  }
};

}  // namespace

std::string Regex::to_string(const Alphabet& alphabet) const {
  std::string out;
  print(*this, alphabet, out);
  return out;
}

Regex regex_parse(std::string_view text, const Alphabet& alphabet) {
  return Parser(text, alphabet).parse();
}

Nfa regex_to_nfa(const Regex& r, const Alphabet& alphabet) {
  Glushkov g;
  Glushkov::Info info = g.walk(r);
  const std::size_t n = g.pos_symbol.size() + 1;
  Nfa out(alphabet, n);
  out.set_initial(0);
  if (info.nullable) out.set_final(0);
  for (std::size_t p : info.first) out.add_transition(0, g.pos_symbol[p], p + 1);
  for (std::size_t p = 0; p < g.follow.size(); ++p)
    for (std::size_t q : g.follow[p]) out.add_transition(p + 1, g.pos_symbol[q], q + 1);
  for (std::size_t p : info.last) out.set_final(p + 1);
  return out;
}

Regex regex_star_of(LetterSet letters) {
  Regex body = Regex::empty();
  for (Symbol s = 0; s < 32; ++s)
    if (letters >> s & 1u) body = Regex::alt_simplified(std::move(body), Regex::letter(s));
  return Regex::star_simplified(std::move(body));
}

Regex regex_exact_alphabet(LetterSet letters) {
  // Sum over the orders in which letters first appear:
  // b1 {b1}* b2 {b1,b2}* ... bk B*.
  std::vector<Symbol> syms;
  for (Symbol s = 0; s < 32; ++s)
    if (letters >> s & 1u) syms.push_back(s);
  if (syms.empty()) return Regex::epsilon();
  Regex out = Regex::empty();
  do {
    Regex term = Regex::epsilon();
    LetterSet seen = 0;
    for (Symbol s : syms) {
      seen |= 1u << s;
      term = Regex::cat_simplified(std::move(term), Regex::letter(s));
      term = Regex::cat_simplified(std::move(term), regex_star_of(seen));
    }
    out = Regex::alt_simplified(std::move(out), std::move(term));
  } while (std::next_permutation(syms.begin(), syms.end()));
  return out;
}

Regex regex_upward_word(const Word& w, LetterSet all_letters) {
  Regex any = regex_star_of(all_letters);
  Regex out = any;
  for (Symbol s : w) out = Regex::cat(Regex::cat(std::move(out), Regex::letter(s)), any);
  return out;
}

Regex regex_word(const Word& w) {
  Regex out = Regex::epsilon();
  for (Symbol s : w) out = Regex::cat_simplified(std::move(out), Regex::letter(s));
  return out;
}

}  // namespace imprint
