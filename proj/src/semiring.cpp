#include "imprint/semiring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "imprint/error.hpp"

namespace imprint {

std::string Elem::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  bool started = false;
  for (std::size_t i = w.size(); i-- > 0;) {
    if (!started && w[i] == 0 && i > 0) continue;
    for (int nib = 15; nib >= 0; --nib) {
      int d = static_cast<int>(w[i] >> (nib * 4) & 15);
      if (!started && d == 0 && !(i == 0 && nib == 0)) continue;
      started = true;
      out.push_back(digits[d]);
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

// Component bits re-based at offset 0.
Elem extract(const Elem& x, std::size_t offset, std::size_t width) {
  Elem part;
  for (std::size_t k = 0; k * 64 < width; ++k) part.w[k] = x.get_bits(offset + 64 * k, std::min<std::size_t>(64, width - 64 * k));
  return part;
}

void inject(Elem& into, std::size_t offset, std::size_t width, const Elem& part) {
  for (std::size_t k = 0; k * 64 < width; ++k)
    into.or_bits(offset + 64 * k, std::min<std::size_t>(64, width - 64 * k), part.w[k]);
}

std::size_t table_index(const Elem& x, const SemiringComponent& c) {
  for (std::size_t i = 0; i < c.width; ++i)
    if (x.test(c.offset + i)) return i;
  throw std::logic_error("table element without a set bit");
}

template <class F>
void for_each_bit(std::uint64_t v, F&& f) {
  while (v) {
    unsigned i = static_cast<unsigned>(std::countr_zero(v));
    f(i);
    v &= v - 1;
  }
}

bool is_bit_kind(SemiringKind k) { return k != SemiringKind::Table; }

}  // namespace

ExplicitTable ExplicitTable::from_json(const nlohmann::json& j) {
  try {
    ExplicitTable t;
    t.size = j.at("size").get<std::size_t>();
    if (t.size == 0 || t.size > kMaxTableSize) throw CapExceeded("table-size", kMaxTableSize, "explicit semiring");
    auto read = [&](const char* key, std::vector<std::uint32_t>& out) {
      const auto& rows = j.at(key);
      if (rows.size() != t.size) throw InputError(std::string("semiring JSON: '") + key + "' must have `size` rows");
      for (const auto& row : rows) {
        if (row.size() != t.size) throw InputError(std::string("semiring JSON: '") + key + "' rows must have `size` entries");
        for (const auto& v : row) {
          auto x = v.get<std::uint32_t>();
          if (x >= t.size) throw InputError("semiring JSON: entry out of range");
          out.push_back(x);
        }
      }
    };
    read("add", t.add);
    read("mul", t.mul);
    t.zero = j.at("zero").get<std::uint32_t>();
    t.one = j.at("one").get<std::uint32_t>();
    if (t.zero >= t.size || t.one >= t.size) throw InputError("semiring JSON: zero/one out of range");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("semiring JSON: ") + e.what());
  }
}

nlohmann::json ExplicitTable::to_json() const {
  auto rows = [&](const std::vector<std::uint32_t>& v) {
    auto out = nlohmann::json::array();
    for (std::size_t i = 0; i < size; ++i) out.push_back(std::vector<std::uint32_t>(v.begin() + i * size, v.begin() + (i + 1) * size));
    return out;
  };
  return {{"size", size}, {"add", rows(add)}, {"mul", rows(mul)}, {"zero", zero}, {"one", one}};
}

Semiring Semiring::table(ExplicitTable t) {
  Semiring r;
  SemiringComponent c{SemiringKind::Table, t.size, 0, t.size, nullptr, nullptr};
  c.table = std::make_shared<const ExplicitTable>(std::move(t));
  r.parts_.push_back(std::move(c));
  r.finish();
  return r;
}

Semiring Semiring::powerset(std::shared_ptr<const MonoidMorphism> m) {
  if (m->size() > kMaxPowersetMonoid) throw CapExceeded("powerset-monoid", kMaxPowersetMonoid, "powerset semiring");
  Semiring r;
  r.parts_.push_back({SemiringKind::Powerset, m->size(), 0, m->size(), std::move(m), nullptr});
  r.finish();
  return r;
}

Semiring Semiring::relation(std::size_t states) {
  if (states > kMaxRelationStates) throw CapExceeded("relation-states", kMaxRelationStates, "relation semiring");
  if (states == 0) throw InputError("relation semiring needs at least one state");
  Semiring r;
  r.parts_.push_back({SemiringKind::Relation, states, 0, states * states, nullptr, nullptr});
  r.finish();
  return r;
}

Semiring Semiring::alphabet_sets(std::size_t letters) {
  if (letters > kMaxAlphabetSets) throw CapExceeded("alphabet-sets", kMaxAlphabetSets, "alphabet semiring");
  Semiring r;
  r.parts_.push_back({SemiringKind::AlphabetSets, letters, 0, std::size_t{1} << letters, nullptr, nullptr});
  r.finish();
  return r;
}

Semiring Semiring::flags(std::size_t n) {
  if (n > kMaxFlags) throw CapExceeded("flags", kMaxFlags, "flag semiring");
  if (n == 0) throw InputError("flag semiring needs at least one flag");
  Semiring r;
  r.parts_.push_back({SemiringKind::Flags, n, 0, n, nullptr, nullptr});
  r.finish();
  return r;
}

Semiring Semiring::product(const std::vector<Semiring>& parts) {
  if (parts.empty()) throw InputError("product semiring needs at least one part");
  Semiring r;
  for (const auto& p : parts)
    for (const auto& c : p.parts_) r.parts_.push_back(c);
  r.finish();
  return r;
}

void Semiring::finish() {
  width_ = 0;
  bit_ordered_ = true;
  for (auto& c : parts_) {
    c.offset = width_;
    width_ += c.width;
    if (!is_bit_kind(c.kind)) bit_ordered_ = false;
  }
  if (width_ > kElemBits) throw CapExceeded("element-bits", kElemBits, "semiring " + describe());
  zero_ = Elem{};
  one_ = Elem{};
  for (const auto& c : parts_) {
    switch (c.kind) {
      case SemiringKind::Table:
        zero_.set(c.offset + c.table->zero);
        one_.set(c.offset + c.table->one);
        break;
      case SemiringKind::Powerset:
        one_.set(c.offset + c.monoid->identity());
        break;
      case SemiringKind::Relation:
        for (std::size_t q = 0; q < c.param; ++q) one_.set(c.offset + q * c.param + q);
        break;
      case SemiringKind::AlphabetSets:
        one_.set(c.offset);  // {empty set}
        break;
      case SemiringKind::Flags:
        for (std::size_t i = 0; i < c.param; ++i) one_.set(c.offset + i);
        break;
    }
  }
}

Elem Semiring::add(const Elem& x, const Elem& y) const {
  if (bit_ordered_) return x | y;
  Elem out;
  for (const auto& c : parts_) {
    if (c.kind == SemiringKind::Table) {
      out.set(c.offset + c.table->add[table_index(x, c) * c.param + table_index(y, c)]);
    } else {
      inject(out, c.offset, c.width, extract(x, c.offset, c.width) | extract(y, c.offset, c.width));
    }
  }
  return out;
}

Elem Semiring::component_mul(const SemiringComponent& c, const Elem& x, const Elem& y, Elem& out) const {
  switch (c.kind) {
    case SemiringKind::Table:
      out.set(c.offset + c.table->mul[table_index(x, c) * c.param + table_index(y, c)]);
      break;
    case SemiringKind::Powerset: {
      std::uint64_t s = x.get_bits(c.offset, c.width), t = y.get_bits(c.offset, c.width), r = 0;
      const auto& m = *c.monoid;
      for_each_bit(s, [&](unsigned a) { for_each_bit(t, [&](unsigned b) { r |= std::uint64_t{1} << m.multiply(a, b); }); });
      out.or_bits(c.offset, c.width, r);
      break;
    }
    case SemiringKind::Relation: {
      const std::size_t q = c.param;
      const std::uint64_t row_mask = (std::uint64_t{1} << q) - 1;
      std::uint64_t s = x.get_bits(c.offset, c.width), t = y.get_bits(c.offset, c.width), r = 0;
      std::uint64_t trow[kMaxRelationStates];
      for (std::size_t j = 0; j < q; ++j) trow[j] = t >> (j * q) & row_mask;
      for (std::size_t i = 0; i < q; ++i) {
        std::uint64_t row = 0;
        for_each_bit(s >> (i * q) & row_mask, [&](unsigned j) { row |= trow[j]; });
        r |= row << (i * q);
      }
      out.or_bits(c.offset, c.width, r);
      break;
    }
    case SemiringKind::AlphabetSets: {
      Elem xs = extract(x, c.offset, c.width), ys = extract(y, c.offset, c.width), r;
      std::vector<unsigned> ybits;
      for (std::size_t k = 0; k < 4; ++k) for_each_bit(ys.w[k], [&](unsigned b) { ybits.push_back(static_cast<unsigned>(64 * k + b)); });
      for (std::size_t k = 0; k < 4; ++k)
        for_each_bit(xs.w[k], [&](unsigned a) {
          unsigned bset = static_cast<unsigned>(64 * k + a);
          for (unsigned cset : ybits) r.set(bset | cset);
        });
      inject(out, c.offset, c.width, r);
      break;
    }
    case SemiringKind::Flags:
      for (std::size_t k = 0; k * 64 < c.width; ++k) {
        std::size_t w = std::min<std::size_t>(64, c.width - 64 * k);
        out.or_bits(c.offset + 64 * k, w, x.get_bits(c.offset + 64 * k, w) & y.get_bits(c.offset + 64 * k, w));
      }
      break;
  }
  return out;
}

Elem Semiring::mul(const Elem& x, const Elem& y) const {
  Elem out;
  for (const auto& c : parts_) component_mul(c, x, y, out);
  return out;
}

bool Semiring::leq(const Elem& x, const Elem& y) const {
  if (bit_ordered_) return x.subset_of(y);
  for (const auto& c : parts_) {
    if (c.kind == SemiringKind::Table) {
      std::size_t a = table_index(x, c), b = table_index(y, c);
      if (c.table->add[a * c.param + b] != b) return false;
    } else if (!extract(x, c.offset, c.width).subset_of(extract(y, c.offset, c.width))) {
      return false;
    }
  }
  return true;
}

Elem Semiring::power(const Elem& x, std::size_t n) const {
  Elem result = one_, base = x;
  while (n) {
    if (n & 1u) result = mul(result, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return result;
}

Elem Semiring::omega(const Elem& x) const {
  // powers[m] = x^(m+1); stop at the first repeat x^j = x^i
  std::vector<Elem> powers{x};
  std::unordered_map<Elem, std::size_t, ElemHash> seen{{x, 1}};
  for (;;) {
    Elem next = mul(powers.back(), x);
    std::size_t j = powers.size() + 1;
    auto it = seen.find(next);
    if (it != seen.end()) {
      std::size_t i = it->second, period = j - i;
      std::size_t k = (i + period - 1) / period * period;
      return powers[k - 1];
    }
    seen.emplace(next, j);
    powers.push_back(next);
  }
}

Elem Semiring::project(const Elem& x, std::size_t first, std::size_t count) const {
  if (first + count > parts_.size() || count == 0) throw std::out_of_range("semiring projection");
  std::size_t begin = parts_[first].offset;
  std::size_t end = parts_[first + count - 1].offset + parts_[first + count - 1].width;
  return extract(x, begin, end - begin);
}

Semiring Semiring::slice(std::size_t first, std::size_t count) const {
  if (first + count > parts_.size() || count == 0) throw std::out_of_range("semiring slice");
  Semiring r;
  r.parts_.assign(parts_.begin() + first, parts_.begin() + first + count);
  r.finish();
  return r;
}

void Semiring::assign_component(Elem& x, std::size_t i, const Elem& part) const {
  const auto& c = parts_.at(i);
  x.clear_bits(c.offset, c.width);
  inject(x, c.offset, c.width, part);
}

double Semiring::log2_size() const {
  double bits = 0;
  for (const auto& c : parts_) bits += c.kind == SemiringKind::Table ? std::log2(static_cast<double>(c.param)) : static_cast<double>(c.width);
  return bits;
}

std::optional<std::uint64_t> Semiring::size() const {
  if (log2_size() >= 63.5) return std::nullopt;
  std::uint64_t n = 1;
  for (const auto& c : parts_) n *= c.kind == SemiringKind::Table ? c.param : (std::uint64_t{1} << c.width);
  return n;
}

namespace {

// Per-component candidate lists for cartesian enumeration.
void cartesian(const std::vector<SemiringComponent>& parts, const std::vector<std::vector<Elem>>& options,
               const std::function<void(const Elem&)>& f) {
  std::vector<std::size_t> idx(parts.size(), 0);
  for (;;) {
    Elem e;
    for (std::size_t i = 0; i < parts.size(); ++i) inject(e, parts[i].offset, parts[i].width, options[i][idx[i]]);
    f(e);
    std::size_t i = 0;
    while (i < parts.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
    if (i == parts.size()) return;
  }
}

std::vector<Elem> submasks(const Elem& mask) {
  std::vector<unsigned> bits;
  for (std::size_t k = 0; k < mask.w.size(); ++k) for_each_bit(mask.w[k], [&](unsigned b) { bits.push_back(static_cast<unsigned>(64 * k + b)); });
  std::vector<Elem> out;
  out.reserve(std::size_t{1} << bits.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits.size()); ++m) {
    Elem e;
    for_each_bit(m, [&](unsigned i) { e.set(bits[i]); });
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<Elem> Semiring::elements(std::size_t cap) const {
  auto n = size();
  if (!n || *n > cap) throw CapExceeded("max-elements", cap, "enumerating " + describe());
  std::vector<std::vector<Elem>> options;
  for (const auto& c : parts_) {
    std::vector<Elem> opts;
    if (c.kind == SemiringKind::Table) {
      for (std::size_t i = 0; i < c.param; ++i) {
        Elem e;
        e.set(i);
        opts.push_back(e);
      }
    } else {
      Elem full;
      for (std::size_t i = 0; i < c.width; ++i) full.set(i);
      opts = submasks(full);
    }
    options.push_back(std::move(opts));
  }
  std::vector<Elem> out;
  out.reserve(*n);
  cartesian(parts_, options, [&](const Elem& e) { out.push_back(e); });
  return out;
}

std::uint64_t Semiring::count_below(const Elem& x) const {
  std::uint64_t n = 1;
  for (const auto& c : parts_) {
    std::uint64_t k = 0;
    if (c.kind == SemiringKind::Table) {
      std::size_t b = table_index(x, c);
      for (std::size_t a = 0; a < c.param; ++a)
        if (c.table->add[a * c.param + b] == b) ++k;
    } else {
      std::size_t bits = extract(x, c.offset, c.width).count();
      if (bits >= 63) return UINT64_MAX;
      k = std::uint64_t{1} << bits;
    }
    if (n > UINT64_MAX / k) return UINT64_MAX;
    n *= k;
  }
  return n;
}

void Semiring::for_each_below(const Elem& x, std::size_t cap, const std::function<void(const Elem&)>& f) const {
  if (count_below(x) > cap) throw CapExceeded("max-elements", cap, "downset enumeration");
  std::vector<std::vector<Elem>> options;
  for (const auto& c : parts_) {
    std::vector<Elem> opts;
    if (c.kind == SemiringKind::Table) {
      std::size_t b = table_index(x, c);
      for (std::size_t a = 0; a < c.param; ++a)
        if (c.table->add[a * c.param + b] == b) {
          Elem e;
          e.set(a);
          opts.push_back(e);
        }
    } else {
      opts = submasks(extract(x, c.offset, c.width));
    }
    options.push_back(std::move(opts));
  }
  cartesian(parts_, options, f);
}

Elem Semiring::random_element(std::mt19937_64& rng) const {
  Elem e;
  for (const auto& c : parts_) {
    if (c.kind == SemiringKind::Table) {
      e.set(c.offset + std::uniform_int_distribution<std::size_t>(0, c.param - 1)(rng));
    } else {
      // sparse-ish elements exercise more interesting products
      std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.1, 0.7)(rng));
      for (std::size_t i = 0; i < c.width; ++i)
        if (coin(rng)) e.set(c.offset + i);
    }
  }
  return e;
}

std::string Semiring::format(const Elem& x) const {
  std::ostringstream os;
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    const auto& c = parts_[p];
    if (p) os << '|';
    if (c.kind == SemiringKind::Table) {
      os << '#' << table_index(x, c);
      continue;
    }
    os << '{';
    bool first = true;
    for (std::size_t i = 0; i < c.width; ++i) {
      if (!x.test(c.offset + i)) continue;
      if (!first) os << ',';
      first = false;
      if (c.kind == SemiringKind::Relation)
        os << '(' << i / c.param << ',' << i % c.param << ')';
      else if (c.kind == SemiringKind::AlphabetSets)
        os << "0x" << std::hex << i << std::dec;
      else
        os << i;
    }
    os << '}';
  }
  return os.str();
}

std::string Semiring::describe() const {
  std::ostringstream os;
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    const auto& c = parts_[p];
    if (p) os << " x ";
    switch (c.kind) {
      case SemiringKind::Table: os << "table(" << c.param << ")"; break;
      case SemiringKind::Powerset: os << "2^M(|M|=" << c.param << ")"; break;
      case SemiringKind::Relation: os << "2^{Q^2}(|Q|=" << c.param << ")"; break;
      case SemiringKind::AlphabetSets: os << "2^{2^A}(|A|=" << c.param << ")"; break;
      case SemiringKind::Flags: os << "2^" << c.param; break;
    }
  }
  return os.str();
}

bool Semiring::operator==(const Semiring& o) const {
  if (parts_.size() != o.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto &a = parts_[i], &b = o.parts_[i];
    if (a.kind != b.kind || a.param != b.param) return false;
    if (a.monoid != b.monoid && (a.monoid->table() != b.monoid->table() || a.monoid->identity() != b.monoid->identity()))
      return false;
    if (a.table != b.table && (a.table->add != b.table->add || a.table->mul != b.table->mul)) return false;
  }
  return true;
}

std::vector<std::string> semiring_validate(const Semiring& r, std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> out;
  auto check = [&](const Elem& x, const Elem& y, const Elem& z) {
    auto fail = [&](const char* what) {
      if (out.size() < 20)
        out.push_back(std::string(what) + " at (" + r.format(x) + ", " + r.format(y) + ", " + r.format(z) + ")");
    };
    if (r.add(x, y) != r.add(y, x)) fail("add not commutative");
    if (r.add(r.add(x, y), z) != r.add(x, r.add(y, z))) fail("add not associative");
    if (r.add(x, x) != x) fail("add not idempotent");
    if (r.add(x, r.zero()) != x) fail("zero not neutral");
    if (r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z))) fail("mul not associative");
    if (r.mul(x, r.one()) != x || r.mul(r.one(), x) != x) fail("one not neutral");
    if (r.mul(x, r.zero()) != r.zero() || r.mul(r.zero(), x) != r.zero()) fail("zero not annihilating");
    if (r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z))) fail("left distributivity");
    if (r.mul(r.add(y, z), x) != r.add(r.mul(y, x), r.mul(z, x))) fail("right distributivity");
    if (r.leq(x, y) != (r.add(x, y) == y)) fail("order differs from r+s=s");
  };
  auto n = r.size();
  if (n && *n <= 512) {
    auto all = r.elements(512);
    for (const auto& x : all)
      for (const auto& y : all)
        for (const auto& z : all) check(x, y, z);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) check(r.random_element(rng), r.random_element(rng), r.random_element(rng));
  }
  return out;
}

SemiringMorphism SemiringMorphism::identity(const Semiring& r) {
  return {r, r, [](const Elem& x) { return x; }, "id"};
}

SemiringMorphism SemiringMorphism::projection(const Semiring& r, std::size_t first, std::size_t count) {
  Semiring target = r.slice(first, count);
  return {r, target, [r, first, count](const Elem& x) { return r.project(x, first, count); },
          "proj[" + std::to_string(first) + "," + std::to_string(first + count) + ")"};
}

SemiringMorphism compose(const SemiringMorphism& outer, const SemiringMorphism& inner) {
  if (!(inner.target == outer.source)) throw InputError("morphism composition: rating sets do not match");
  auto f = outer.fn, g = inner.fn;
  return {inner.source, outer.target, [f, g](const Elem& x) { return f(g(x)); }, outer.name + " . " + inner.name};
}

}  // namespace imprint
