#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprint/elem.hpp"
#include "imprint/monoid.hpp"

namespace imprint {

inline constexpr std::size_t kMaxPowersetMonoid = 20;
inline constexpr std::size_t kMaxRelationStates = 6;
inline constexpr std::size_t kMaxAlphabetSets = 8;
inline constexpr std::size_t kMaxFlags = 64;
inline constexpr std::size_t kMaxTableSize = kElemBits;

/// Finite idempotent semiring given by explicit tables, elements 0..size-1.
struct ExplicitTable {
  std::size_t size = 0;
  std::vector<std::uint32_t> add;  // size * size
  std::vector<std::uint32_t> mul;  // size * size
  std::uint32_t zero = 0;
  std::uint32_t one = 0;

  /// {"size":n,"add":[[..]],"mul":[[..]],"zero":z,"one":o}
  static ExplicitTable from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

enum class SemiringKind { Table, Powerset, Relation, AlphabetSets, Flags };

struct SemiringComponent {
  SemiringKind kind;
  std::size_t param = 0;  // table size, |M|, |Q|, |A| or number of flags
  std::size_t offset = 0;
  std::size_t width = 0;
  std::shared_ptr<const MonoidMorphism> monoid;  // Powerset only
  std::shared_ptr<const ExplicitTable> table;    // Table only (one-hot encoding)
};

/// Finite idempotent semiring with value-encoded elements. A semiring is a
/// product of one or more components laid out side by side in an Elem; every
/// kind except Table is ordered by bit inclusion.
class Semiring {
 public:
  Semiring() = default;

  static Semiring table(ExplicitTable t);
  /// 2^M with pointwise product.
  static Semiring powerset(std::shared_ptr<const MonoidMorphism> m);
  /// 2^{Q^2} with relation composition.
  static Semiring relation(std::size_t states);
  /// 2^{2^A} with S.T = {B u C}.
  static Semiring alphabet_sets(std::size_t letters);
  /// 2^{n} with union and intersection; hosts rating sets of the form 2^L.
  static Semiring flags(std::size_t n);
  /// Componentwise product; nested products are flattened.
  static Semiring product(const std::vector<Semiring>& parts);

  const std::vector<SemiringComponent>& components() const noexcept { return parts_; }
  std::size_t width() const noexcept { return width_; }
  bool bit_ordered() const noexcept { return bit_ordered_; }

  const Elem& zero() const noexcept { return zero_; }
  const Elem& one() const noexcept { return one_; }
  Elem add(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  bool leq(const Elem& x, const Elem& y) const;
  Elem power(const Elem& x, std::size_t n) const;
  /// The idempotent power x^omega.
  Elem omega(const Elem& x) const;
  bool is_idempotent(const Elem& x) const { return mul(x, x) == x; }

  /// Restriction of x to components [first, first+count), re-based at offset 0.
  Elem project(const Elem& x, std::size_t first, std::size_t count) const;
  /// Sub-semiring made of components [first, first+count).
  Semiring slice(std::size_t first, std::size_t count) const;
  /// Writes `part` (encoded for component i alone) into x.
  void assign_component(Elem& x, std::size_t i, const Elem& part) const;

  /// log2 of the number of elements (exact for bit kinds).
  double log2_size() const;
  /// Number of elements if it fits in 64 bits.
  std::optional<std::uint64_t> size() const;
  /// All elements; throws CapExceeded when there are more than `cap`.
  std::vector<Elem> elements(std::size_t cap) const;
  /// Calls f on every y <= x; throws CapExceeded when there are more than `cap`.
  void for_each_below(const Elem& x, std::size_t cap, const std::function<void(const Elem&)>& f) const;
  /// Number of elements below x (saturating at UINT64_MAX).
  std::uint64_t count_below(const Elem& x) const;
  Elem random_element(std::mt19937_64& rng) const;

  /// Human-readable element, e.g. "{0,2}|{(0,1)}".
  std::string format(const Elem& x) const;
  std::string describe() const;

  bool operator==(const Semiring& o) const;

 private:
  void finish();
  Elem component_mul(const SemiringComponent& c, const Elem& x, const Elem& y, Elem& out) const;

  std::vector<SemiringComponent> parts_;
  std::size_t width_ = 0;
  bool bit_ordered_ = true;
  Elem zero_;
  Elem one_;
};

/// Exhaustive (|R| <= 512) or sampled (`samples` triples) axiom check; returns violations.
std::vector<std::string> semiring_validate(const Semiring& r, std::size_t samples = 10000, std::uint64_t seed = 1);

/// Additive, zero-preserving map between rating sets.
struct SemiringMorphism {
  Semiring source;
  Semiring target;
  std::function<Elem(const Elem&)> fn;
  std::string name;

  Elem apply(const Elem& x) const { return fn(x); }

  static SemiringMorphism identity(const Semiring& r);
  /// Projection onto components [first, first+count).
  static SemiringMorphism projection(const Semiring& r, std::size_t first, std::size_t count);
};

/// outer . inner
SemiringMorphism compose(const SemiringMorphism& outer, const SemiringMorphism& inner);

}  // namespace imprint
